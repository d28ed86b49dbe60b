//! `psh-verify`.

use std::path::Path;

use clap::ValueEnum;
use ttw_presheaf::json::{load_str, Instance, LoadError};
use ttw_presheaf::kan::{check_adjunction, check_dependent_adjunction, left_kan, DEFAULT_MAP_LIMIT};
use ttw_presheaf::preserve::PreservationError;
use ttw_presheaf::rep::{local_rep, LocalRep};
use ttw_presheaf::KanError;
use ttw_presheaf::Report;

use crate::outcome::{Outcome, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PshSuite {
    Adjunction,
    Rep,
    Preservation,
}

pub fn verify(path: &Path, suite: PshSuite) -> Outcome {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(Status::Malformed, format!("{}: {e}", path.display())),
    };
    let inst = match load_str(&src) {
        Ok(i) => i,
        Err(LoadError::Schema(m)) => return Outcome::failed(Status::Malformed, format!("{}: {m}", path.display())),
        Err(LoadError::Law(e)) => return Outcome::failed(Status::LawViolation, format!("{}: {e}", path.display())),
    };
    match suite {
        PshSuite::Adjunction => adjunction(&inst),
        PshSuite::Rep => rep(&inst),
        PshSuite::Preservation => preservation(&inst),
    }
}

fn missing(suite: &str, field: &str) -> Outcome {
    Outcome::failed(Status::Malformed, format!("the {suite} suite needs \"{field}\""))
}

fn kan_failure(e: KanError) -> Outcome {
    match e {
        KanError::Law(l) => Outcome::failed(Status::LawViolation, l.to_string()),
        other => Outcome::failed(Status::Fail, other.to_string()),
    }
}

pub fn from_report(r: &Report) -> Outcome {
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

/// `F_! ⊣ F^*` at `X` and `X'`. Without a target presheaf, `X' = F_! X`.
/// With a preservation section, the dependent transposition is also checked
/// on its type over `F_! X`.
fn adjunction(inst: &Instance) -> Outcome {
    let Some(x) = &inst.presheaf else {
        return missing("adjunction", "presheaf");
    };
    let lk = match left_kan(&inst.functor, x) {
        Ok(lk) => lk,
        Err(e) => return Outcome::failed(Status::LawViolation, e.to_string()),
    };
    let xp = inst.target_presheaf.as_ref().unwrap_or(lk.psh());
    let mut r = match check_adjunction(&inst.functor, x, xp, DEFAULT_MAP_LIMIT) {
        Ok(r) => r,
        Err(e) => return kan_failure(e),
    };
    if let Some(p) = &inst.preservation {
        match check_dependent_adjunction(&lk, &p.a_d, DEFAULT_MAP_LIMIT) {
            Ok(d) => r.absorb(d),
            Err(e) => return kan_failure(e),
        }
    }
    r.note(format!("|F_! X| = {}", lk.psh().total_size()));
    from_report(&r)
}

fn rep(inst: &Instance) -> Outcome {
    let Some(y) = &inst.dependent else {
        return missing("rep", "dependent");
    };
    let x = y.base();
    let c = x.base();
    match local_rep(y) {
        LocalRep::Representable(s) => {
            let mut lines = vec!["PASS locally representable".to_string()];
            for g in 0..c.num_objects() {
                for e in 0..x.size(g) {
                    let ext = s.extension(g, e);
                    lines.push(format!(
                        "  at {} over {}: extension {}, projection {}, generic element {}",
                        c.obj_name(g),
                        x.label(g, e),
                        c.obj_name(ext.obj),
                        c.mor_name(ext.p),
                        y.label(ext.obj, x.restrict(ext.p, e), ext.q)
                    ));
                }
            }
            Outcome::pass(lines)
        }
        LocalRep::NotRepresentable { description, .. } => Outcome {
            status: Status::Fail,
            lines: vec!["FAIL not locally representable".to_string()],
            witnesses: vec![description],
        },
    }
}

fn preservation(inst: &Instance) -> Outcome {
    let Some(p) = &inst.preservation else {
        return missing("preservation", "preservation");
    };
    match p.check() {
        Ok(r) => {
            let ok = r.preserved() && r.agree();
            let verdict = if ok { "PASS" } else { "FAIL" };
            let mut lines = vec![
                format!("{verdict} preservation of context extension"),
                format!("  {}", r.to_string().lines().next().unwrap_or_default()),
            ];
            lines.push(format!("  {} sites checked", r.sites.len()));
            Outcome {
                status: if ok { Status::Pass } else { Status::Fail },
                lines,
                witnesses: r.witnesses().into_iter().map(|s| s.detail.clone()).collect(),
            }
        }
        Err(PreservationError::Law(e)) => Outcome::failed(Status::LawViolation, e.to_string()),
        Err(e) => Outcome::failed(Status::Fail, e.to_string()),
    }
}
