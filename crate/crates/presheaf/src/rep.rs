//! Local representability: for every `(Γ, x)`, an extended context
//! `Γ ▷ Y|x` with projection `p` and generic element `q` such that each pair
//! `(σ : Δ → Γ, y ∈ |Y|_Δ (x[σ]))` factors as `⟨σ, y⟩` uniquely.

use std::fmt;

use crate::cat::{Mor, Obj};
use crate::psh::DepFinPsh;

/// A candidate representation of `Y|x` at `(Γ, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extension {
    pub obj: Obj,
    pub p: Mor,
    pub q: usize,
}

/// Why a candidate is not a representation: the pair `(σ, y)` over `Θ` has
/// `count` factorizations instead of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub theta: Obj,
    pub sigma: Mor,
    pub y: usize,
    pub count: usize,
}

/// Checks the universal property of `(E, p, q)` at `(Γ, x)`.
pub fn is_representation(ty: &DepFinPsh, g: Obj, x: usize, ext: Extension) -> Result<(), Counterexample> {
    let base = ty.base();
    let c = base.base();
    for theta in 0..c.num_objects() {
        for &sigma in c.hom(theta, g) {
            let over = base.restrict(sigma, x);
            for y in 0..ty.fiber_size(theta, over) {
                let count = factorizations(ty, x, ext, theta, sigma, y).count();
                if count != 1 {
                    return Err(Counterexample { theta, sigma, y, count });
                }
            }
        }
    }
    Ok(())
}

/// Morphisms `m : Θ → E` with `p ∘ m = σ` and `q[m] = y`.
fn factorizations(
    ty: &DepFinPsh,
    x: usize,
    ext: Extension,
    theta: Obj,
    sigma: Mor,
    y: usize,
) -> impl Iterator<Item = Mor> + '_ {
    let base = ty.base();
    let c = base.base();
    let xp = base.restrict(ext.p, x);
    c.hom(theta, ext.obj)
        .iter()
        .copied()
        .filter(move |&m| c.compose(ext.p, m) == sigma && ty.restrict(m, xp, ext.q) == y)
}

/// The chosen extension at every `(Γ, x)`, plus every representation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepStructure {
    chosen: Vec<Vec<Extension>>,
    witnesses: Vec<Vec<Vec<Extension>>>,
}

impl RepStructure {
    pub fn extension(&self, g: Obj, x: usize) -> Extension {
        self.chosen[g][x]
    }

    pub fn witnesses(&self, g: Obj, x: usize) -> &[Extension] {
        &self.witnesses[g][x]
    }

    /// `⟨σ, y⟩ : Θ → Γ ▷ Y|x`, where `Θ` is the domain of `σ`.
    pub fn pair(&self, ty: &DepFinPsh, g: Obj, x: usize, sigma: Mor, y: usize) -> Option<Mor> {
        let ext = self.extension(g, x);
        let theta = ty.cat().dom(sigma);
        let mut it = factorizations(ty, x, ext, theta, sigma, y);
        let m = it.next()?;
        it.next().is_none().then_some(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalRep {
    Representable(RepStructure),
    /// No object of the slice over `obj` represents the fiber over `elem`.
    NotRepresentable {
        obj: Obj,
        elem: usize,
        description: String,
    },
}

impl LocalRep {
    pub fn structure(&self) -> Option<&RepStructure> {
        match self {
            LocalRep::Representable(s) => Some(s),
            LocalRep::NotRepresentable { .. } => None,
        }
    }

    pub fn is_representable(&self) -> bool {
        matches!(self, LocalRep::Representable(_))
    }
}

impl fmt::Display for LocalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalRep::Representable(_) => write!(f, "locally representable"),
            LocalRep::NotRepresentable { description, .. } => write!(f, "not representable: {description}"),
        }
    }
}

/// Searches every `(E, p : E → Γ, q ∈ |Y|_E (x[p]))` at every `(Γ, x)`.
/// The first representation in object order is chosen.
pub fn local_rep(ty: &DepFinPsh) -> LocalRep {
    let base = ty.base();
    let c = base.base();
    let mut chosen = Vec::new();
    let mut witnesses = Vec::new();
    for g in 0..c.num_objects() {
        let mut row = Vec::new();
        let mut wrow = Vec::new();
        for x in 0..base.size(g) {
            let mut found = Vec::new();
            for e in 0..c.num_objects() {
                for &p in c.hom(e, g) {
                    for q in 0..ty.fiber_size(e, base.restrict(p, x)) {
                        let ext = Extension { obj: e, p, q };
                        if is_representation(ty, g, x, ext).is_ok() {
                            found.push(ext);
                        }
                    }
                }
            }
            let Some(&first) = found.first() else {
                return LocalRep::NotRepresentable {
                    obj: g,
                    elem: x,
                    description: format!(
                        "nothing in the slice over {} represents the fiber over {}",
                        c.obj_name(g),
                        base.label(g, x)
                    ),
                };
            };
            row.push(first);
            wrow.push(found);
        }
        chosen.push(row);
        witnesses.push(wrow);
    }
    LocalRep::Representable(RepStructure { chosen, witnesses })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::psh::FinPsh;

    #[test]
    fn singleton_fibers_over_a_point() {
        let t = catalog::terminal();
        let x = catalog::terminal_psh(&t);
        let y = catalog::terminal_dep(&x);
        let s = local_rep(&y).structure().cloned().unwrap();
        assert_eq!(
            s.extension(0, 0),
            Extension {
                obj: 0,
                p: t.id(0),
                q: 0
            }
        );
    }

    #[test]
    fn two_element_fiber_over_a_point() {
        let t = Arc::new(catalog::terminal());
        let x = Arc::new(catalog::terminal_psh(&t));
        let y = DepFinPsh::new(x, vec![vec![vec!["u".into(), "v".into()]]], vec![vec![vec![0, 1]]]).unwrap();
        assert!(matches!(
            local_rep(&y),
            LocalRep::NotRepresentable { obj: 0, elem: 0, .. }
        ));
        let empty = DepFinPsh::new(
            Arc::new(catalog::terminal_psh(&t)),
            vec![vec![vec![]]],
            vec![vec![vec![]]],
        )
        .unwrap();
        assert!(!local_rep(&empty).is_representable());
    }

    #[test]
    fn representable_over_the_arrow() {
        let w = catalog::walking_arrow();
        let x = catalog::representable(&w, 1);
        let y = catalog::constant_dep(&x, &catalog::representable(&w, 0));
        let s = local_rep(&y).structure().cloned().unwrap();
        let a = w.find_morphism("a").unwrap();
        assert_eq!(s.extension(1, 0), Extension { obj: 0, p: a, q: 0 });
        assert_eq!(s.extension(0, 0).obj, 0);
        assert_eq!(s.pair(&y, 1, 0, a, 0), Some(w.id(0)));
    }

    #[test]
    fn constant_two_element_type_is_not_representable() {
        let w = Arc::new(catalog::walking_arrow());
        let x = catalog::terminal_psh(&w);
        let two = FinPsh::new(
            w.clone(),
            vec![vec!["u".into(), "v".into()]; 2],
            vec![vec![0, 1], vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        assert!(!local_rep(&catalog::constant_dep(&x, &two)).is_representable());
    }
}
