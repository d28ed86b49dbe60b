//! `corpus`: the generated-instance suites.

use clap::ValueEnum;
use ttw_core::suites::{self, SuiteReport};
use ttw_presheaf::suites as psh_suites;

use crate::lab::from_report;
use crate::outcome::{Outcome, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusSuite {
    /// Normal forms of size at most `size` normalize to themselves.
    Stability,
    /// β-redexes against substitution; `size` bounds the redex.
    Beta,
    /// Normalization commutes with renaming.
    Naturality,
    /// Closed booleans up to depth `size` compute to a literal.
    Canonicity,
    /// Computation rules for `elimB`.
    Computation,
    /// η-long normal forms.
    Eta,
    /// Kan extension laws on random finite presheaves with fibers up to `size`.
    PshRandom,
    /// Agreement of the two preservation criteria on random instances.
    Preservation,
}

impl CorpusSuite {
    pub fn default_count(self) -> usize {
        match self {
            CorpusSuite::Stability => 0,
            CorpusSuite::Beta => 500,
            CorpusSuite::Naturality => 300,
            CorpusSuite::Canonicity => 2000,
            CorpusSuite::Computation => 200,
            CorpusSuite::Eta => 200,
            CorpusSuite::PshRandom => 100,
            CorpusSuite::Preservation => 50,
        }
    }
}

fn from_suite(r: &SuiteReport) -> Outcome {
    let mut lines = vec![format!(
        "{} {}: {} checked, {} failed",
        if r.passed() { "PASS" } else { "FAIL" },
        r.name,
        r.checked,
        r.failed
    )];
    lines.extend(r.notes.iter().map(|n| format!("  {n}")));
    Outcome {
        status: if r.passed() { Status::Pass } else { Status::Fail },
        lines,
        witnesses: r.failures.clone(),
    }
}

pub fn run(suite: CorpusSuite, seed: u64, size: usize, count: Option<usize>) -> Outcome {
    let count = count.unwrap_or_else(|| suite.default_count());
    match suite {
        CorpusSuite::Stability => from_suite(&suites::stability(size)),
        CorpusSuite::Beta => from_suite(&suites::beta(seed, count, size)),
        CorpusSuite::Naturality => from_suite(&suites::naturality(seed, count)),
        CorpusSuite::Canonicity => from_suite(&suites::canonicity(size.min(3), seed, count, size)),
        CorpusSuite::Computation => from_suite(&suites::computation(seed, count)),
        CorpusSuite::Eta => from_suite(&suites::eta(seed, count)),
        CorpusSuite::PshRandom => from_report(&psh_suites::laws(seed, count, size)),
        CorpusSuite::Preservation => from_report(&psh_suites::preservation(seed, count)),
    }
}
