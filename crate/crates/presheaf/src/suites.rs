//! Seeded corpora of random instances, each checked exhaustively.

use crate::cat::FinFunctor;
use crate::catalog;
use crate::kan::{check_adjunction, check_dependent_adjunction, left_kan, precompose, DEFAULT_MAP_LIMIT};
use crate::random::PshGen;
use crate::report::Report;

/// Adjunction laws on `count` random `(F, X, X', A')` with fibers of at
/// most `max_fiber` elements.
pub fn laws(seed: u64, count: usize, max_fiber: usize) -> Report {
    let mut r = Report::new("presheaf laws");
    let mut g = PshGen::new(seed);
    let mut identities = 0;
    for i in 0..count {
        let f = g.functor_pair();
        let x = g.presheaf(f.dom(), max_fiber);
        let xp = g.presheaf(f.cod(), max_fiber);
        let ctx = || format!("instance {i}: F = {f}, X = {x}, X' = {xp}");
        match check_adjunction(&f, &x, &xp, DEFAULT_MAP_LIMIT) {
            Ok(rep) => {
                if !rep.passed() {
                    r.fail(format!("{}: {rep}", ctx()));
                }
                r.checked += rep.checked;
            }
            Err(e) => r.fail(format!("{}: {e}", ctx())),
        }
        let lk = match left_kan(&f, &x) {
            Ok(lk) => lk,
            Err(e) => {
                r.fail(format!("{}: {e}", ctx()));
                continue;
            }
        };
        if let Some(ap) = g.dependent(lk.psh(), 2) {
            match check_dependent_adjunction(&lk, &ap, DEFAULT_MAP_LIMIT) {
                Ok(rep) => {
                    if !rep.passed() {
                        r.fail(format!("{}: {rep}", ctx()));
                    }
                    r.checked += rep.checked;
                }
                Err(e) => r.fail(format!("{}: {e}", ctx())),
            }
        }
        if *f.dom() == *f.cod() && f == FinFunctor::identity(f.dom()) {
            identities += 1;
            r.check(precompose(&f, &xp).as_ref() == Ok(&xp), || {
                format!("{}: F^* X' ≠ X'", ctx())
            });
            r.check(lk.unit().is_ok_and(|u| u.is_iso()), || {
                format!("{}: η is not invertible", ctx())
            });
        }
    }
    r.note(format!("{count} instances, {identities} along an identity functor"));
    r
}

/// Both formulations of preservation of context extension agree on
/// `count` random instances. Half the corpus is drawn from instances where
/// preservation fails, which are otherwise rare.
pub fn preservation(seed: u64, count: usize) -> Report {
    let mut r = Report::new("preservation equivalence");
    let mut g = PshGen::new(seed);
    let want_failing = count / 2;
    let want_holding = count - want_failing;
    let (mut holding, mut failing, mut drawn) = (0, 0, 0);
    let mut sites = 0;
    while holding + failing < count && drawn < 200 * count.max(1) {
        drawn += 1;
        let Some(inst) = g.preservation_instance() else {
            continue;
        };
        let rep = match inst.check() {
            Ok(rep) => rep,
            Err(e) => {
                r.fail(format!("draw {drawn}: {e}"));
                continue;
            }
        };
        let invertible = rep.comparison_invertible();
        if invertible && holding >= want_holding || !invertible && failing >= want_failing {
            continue;
        }
        if invertible {
            holding += 1;
        } else {
            failing += 1;
        }
        sites += rep.sites.len();
        for s in &rep.sites {
            r.check(s.agree(), || {
                format!(
                    "draw {drawn}: verdicts differ: F = {}, X = {}; {}",
                    inst.functor, inst.x, s.detail
                )
            });
        }
    }
    if holding + failing < count {
        r.fail(format!("only {} of {count} instances found", holding + failing));
    }
    r.note(format!(
        "{holding} instances preserve extension, {failing} do not; {sites} sites; {drawn} draws"
    ));
    r
}

/// The fixed examples: identity functors preserve, and the walking-arrow
/// counterexample fails in both formulations.
pub fn preservation_examples() -> Report {
    let mut r = Report::new("preservation examples");
    let bad = crate::preserve::non_preserving_example().check();
    r.check(
        bad.as_ref()
            .is_ok_and(|b| !b.image_represents() && !b.comparison_invertible()),
        || format!("counterexample: {bad:?}"),
    );
    for c in [
        catalog::terminal(),
        catalog::walking_arrow(),
        catalog::split_idempotent(),
    ] {
        let id = FinFunctor::identity(&c);
        let x = catalog::terminal_psh(&c);
        let a = catalog::terminal_dep(&x);
        let lk = left_kan(&id, &x).expect("left Kan extension");
        let ad = catalog::terminal_dep(lk.psh());
        let ok = crate::preserve::identity_map(&id, &x, &a, &ad)
            .map_err(|e| e.to_string())
            .and_then(|fa| crate::preserve::check_ext_preservation(&id, &x, &a, &ad, &fa).map_err(|e| e.to_string()));
        r.check(ok.as_ref().is_ok_and(|rep| rep.preserved() && rep.agree()), || {
            format!("identity on {c}: {ok:?}")
        });
    }
    r
}
