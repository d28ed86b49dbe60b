//! One line per acceptance criterion. Runs without the test harness so the
//! lines always reach the output; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use ttw_core::suites;
use ttw_presheaf::cat::{Mor, Obj};
use ttw_presheaf::psh::DepFinPsh;
use ttw_presheaf::random::PshGen;
use ttw_presheaf::rep::local_rep;
use ttw_presheaf::suites as psh_suites;

const KERNEL_SEED: u64 = 1;
const PRESHEAF_SEED: u64 = 7;
const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Verdict {
    passed: bool,
    checked: usize,
    failed: usize,
    notes: Vec<String>,
    failures: Vec<String>,
}

impl From<suites::SuiteReport> for Verdict {
    fn from(r: suites::SuiteReport) -> Verdict {
        Verdict {
            passed: r.passed(),
            checked: r.checked,
            failed: r.failed,
            notes: r.notes,
            failures: r.failures,
        }
    }
}

impl From<ttw_presheaf::Report> for Verdict {
    fn from(r: ttw_presheaf::Report) -> Verdict {
        Verdict {
            passed: r.passed(),
            checked: r.checked,
            failed: r.failed,
            notes: r.notes,
            failures: r.failures,
        }
    }
}

/// Objects `(Δ, σ : Δ → Γ)` of the slice over `Γ`.
fn slice(y: &DepFinPsh, g: Obj) -> Vec<(Obj, Mor)> {
    let c = y.cat();
    (0..c.num_objects())
        .flat_map(|d| c.hom(d, g).iter().map(move |&s| (d, s)))
        .collect()
}

/// Whether `Y|x`, as a presheaf on the slice over `Γ`, is isomorphic to the
/// representable at `(E, p)`. Searches for the isomorphism itself: a
/// bijection at every object of the slice, natural in every slice morphism.
/// Does not use the Yoneda lemma.
fn isomorphic_to_representable(y: &DepFinPsh, g: Obj, x: usize, e: Obj, p: Mor) -> bool {
    let c = y.cat();
    let base = y.base();
    let objs = slice(y, g);
    // hom((Δ, σ), (E, p)) and Y|x (Δ, σ)
    let homs: Vec<Vec<Mor>> = objs
        .iter()
        .map(|&(d, s)| c.hom(d, e).iter().copied().filter(|&m| c.compose(p, m) == s).collect())
        .collect();
    let fibers: Vec<usize> = objs
        .iter()
        .map(|&(d, s)| y.fiber_size(d, base.restrict(s, x)))
        .collect();
    if homs.iter().zip(&fibers).any(|(h, &n)| h.len() != n) {
        return false;
    }
    // slice morphisms τ : (Δ', σ') → (Δ, σ), as (source, target, τ)
    let mut arrows = Vec::new();
    for (j, &(d2, s2)) in objs.iter().enumerate() {
        for (i, &(d, s)) in objs.iter().enumerate() {
            for &t in c.hom(d2, d) {
                if c.compose(s, t) == s2 {
                    arrows.push((j, i, t));
                }
            }
        }
    }
    let natural = |beta: &[Vec<usize>], upto: usize| {
        arrows
            .iter()
            .filter(|&&(j, i, _)| j < upto && i < upto)
            .all(|&(j, i, t)| {
                let over = base.restrict(objs[i].1, x);
                homs[i].iter().enumerate().all(|(k, &m)| {
                    let mt = c.compose(m, t);
                    let k2 = homs[j].iter().position(|&h| h == mt).expect("m ∘ τ lies over σ'");
                    beta[j][k2] == y.restrict(t, over, beta[i][k])
                })
            })
    };
    fn search(beta: &mut Vec<Vec<usize>>, sizes: &[usize], natural: &dyn Fn(&[Vec<usize>], usize) -> bool) -> bool {
        let i = beta.len();
        if i == sizes.len() {
            return true;
        }
        for perm in (0..sizes[i]).permutations(sizes[i]) {
            beta.push(perm);
            if natural(beta, i + 1) && search(beta, sizes, natural) {
                return true;
            }
            beta.pop();
        }
        false
    }
    search(&mut Vec::new(), &fibers, &natural)
}

/// Compares `local_rep` with the isomorphism search at every `(Γ, x)` and
/// every candidate `(E, p)`.
fn local_representability(seed: u64, count: usize) -> Verdict {
    let mut g = PshGen::new(seed);
    let mut v = Verdict {
        passed: true,
        checked: 0,
        failed: 0,
        notes: Vec::new(),
        failures: Vec::new(),
    };
    let (mut yes, mut no, mut drawn) = (0, 0, 0);
    while yes + no < count && drawn < 100 * count {
        drawn += 1;
        let c = g.category();
        let x = g.presheaf(&c, 2);
        let y = if drawn % 2 == 0 {
            g.representable_dependent(&x)
        } else {
            match g.dependent(&x, 3) {
                Some(y) => y,
                None => continue,
            }
        };
        let verdict = local_rep(&y);
        let mut oracle = true;
        for gamma in 0..c.num_objects() {
            for e in 0..x.size(gamma) {
                let mut found: Vec<(Obj, Mor)> = Vec::new();
                for ext in 0..c.num_objects() {
                    for &p in c.hom(ext, gamma) {
                        if isomorphic_to_representable(&y, gamma, e, ext, p) {
                            found.push((ext, p));
                        }
                    }
                }
                oracle &= !found.is_empty();
                if let Some(s) = verdict.structure() {
                    let mut by_search: Vec<(Obj, Mor)> = s.witnesses(gamma, e).iter().map(|w| (w.obj, w.p)).collect();
                    by_search.dedup();
                    v.checked += 1;
                    if by_search != found {
                        v.failed += 1;
                        v.failures.push(format!(
                            "draw {drawn} at ({gamma}, {e}): search found {by_search:?}, isomorphisms exist for {found:?}"
                        ));
                    }
                }
            }
        }
        v.checked += 1;
        if oracle != verdict.is_representable() {
            v.failed += 1;
            v.failures.push(format!(
                "draw {drawn}: local_rep says {verdict}, the oracle says {oracle}"
            ));
        }
        if oracle {
            yes += 1;
        } else {
            no += 1;
        }
    }
    if yes == 0 || no == 0 || yes + no < count {
        v.failed += 1;
        v.failures
            .push(format!("corpus is degenerate: {yes} representable, {no} not"));
    }
    v.notes.push(format!("{yes} representable, {no} not; {drawn} draws"));
    v.passed = v.failed == 0 && v.checked > 0;
    v
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Box<dyn Fn() -> Verdict>);
    let criteria: Vec<Criterion> = vec![
        (
            "stability of normalization (size <= 6)",
            Box::new(|| suites::stability(6).into()),
        ),
        (
            "computation rules (200 instances)",
            Box::new(|| suites::computation(KERNEL_SEED, 200).into()),
        ),
        (
            "beta soundness (500 instances, size <= 8)",
            Box::new(|| suites::beta(KERNEL_SEED, 500, 8).into()),
        ),
        (
            "canonicity (closed booleans, depth <= 5)",
            Box::new(|| suites::canonicity(3, KERNEL_SEED, 10_000, 5).into()),
        ),
        ("eta-long discipline", Box::new(|| suites::eta(KERNEL_SEED, 200).into())),
        (
            "renaming naturality (300 pairs)",
            Box::new(|| suites::naturality(KERNEL_SEED, 300).into()),
        ),
        (
            "Kan extension laws (100 instances)",
            Box::new(|| psh_suites::laws(PRESHEAF_SEED, 100, 3).into()),
        ),
        (
            "preservation criteria agree (50 instances)",
            Box::new(|| psh_suites::preservation(PRESHEAF_SEED, 50).into()),
        ),
        (
            "local representability vs isomorphism search (50 instances)",
            Box::new(|| local_representability(PRESHEAF_SEED, 50)),
        ),
    ];
    let mut all = true;
    for (name, run) in &criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let ok = v.passed && elapsed < TIME_LIMIT;
        all &= ok;
        println!(
            "{} {name}: {} checked, {} failed, {:.2}s",
            if ok { "PASS" } else { "FAIL" },
            v.checked,
            v.failed,
            elapsed.as_secs_f64()
        );
        for n in &v.notes {
            println!("    {n}");
        }
        if elapsed >= TIME_LIMIT {
            println!("    exceeded the {}s limit", TIME_LIMIT.as_secs());
        }
        for f in v.failures.iter().take(5) {
            println!("    failure: {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
