//! Whether a map `F^A : A_C → F^* A_D` preserves context extension. Two
//! formulations are tested at every `(Γ, x)`:
//!
//! * the image `F^A q` of the generic element, over `(F (Γ ▷ A_C|x), F p)`,
//!   is itself a representation of `A_D` at `η x`;
//! * the comparison `⟨F p, F^A q⟩ : F (Γ ▷ A_C|x) → F Γ ▷ A_D|η x` is
//!   invertible.
//!
//! They should always agree.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cat::{FinFunctor, Mor, Obj};
use crate::catalog;
use crate::error::LawError;
use crate::kan::{left_kan, precompose_dep};
use crate::psh::{DepFinPsh, DepNat, FinPsh};
use crate::rep::{is_representation, local_rep, Extension, LocalRep};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PreservationError {
    #[error("{0}")]
    Law(#[from] LawError),
    #[error("{which} is {rep}")]
    NotLocallyRepresentable { which: &'static str, rep: LocalRep },
}

/// The verdicts at one `(Γ, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteVerdict {
    pub obj: Obj,
    pub elem: usize,
    /// The image of the generic element is a representation.
    pub image_represents: bool,
    /// The comparison morphism is invertible.
    pub comparison_invertible: bool,
    pub comparison: Option<Mor>,
    pub detail: String,
}

impl SiteVerdict {
    pub fn agree(&self) -> bool {
        self.image_represents == self.comparison_invertible
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    pub sites: Vec<SiteVerdict>,
}

impl PreservationReport {
    pub fn image_represents(&self) -> bool {
        self.sites.iter().all(|s| s.image_represents)
    }

    pub fn comparison_invertible(&self) -> bool {
        self.sites.iter().all(|s| s.comparison_invertible)
    }

    /// Both formulations give the same answer at every site.
    pub fn agree(&self) -> bool {
        self.sites.iter().all(SiteVerdict::agree)
    }

    pub fn preserved(&self) -> bool {
        self.image_represents() && self.comparison_invertible()
    }

    /// Sites where something failed.
    pub fn witnesses(&self) -> Vec<&SiteVerdict> {
        self.sites
            .iter()
            .filter(|s| !s.image_represents || !s.comparison_invertible)
            .collect()
    }
}

impl fmt::Display for PreservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "image is a representation: {}; comparison invertible: {}; agree: {}",
            verdict(self.image_represents()),
            verdict(self.comparison_invertible()),
            verdict(self.agree())
        )?;
        for s in self.witnesses() {
            write!(f, "\n  {}", s.detail)?;
        }
        Ok(())
    }
}

/// `A_C` lives over `X`, `A_D` over `F_! X`, and `fa` goes from `A_C` to
/// `F^* A_D` (see [`precompose_dep`]).
pub fn check_ext_preservation(
    f: &FinFunctor,
    x: &FinPsh,
    a_c: &DepFinPsh,
    a_d: &DepFinPsh,
    fa: &DepNat,
) -> Result<PreservationReport, PreservationError> {
    let lk = left_kan(f, x)?;
    if !a_c.base().same_shape(x) {
        return Err(LawError::Shape("A_C is not over X".into()).into());
    }
    let pulled = Arc::new(precompose_dep(&lk, a_d)?);
    if **fa.source() != *a_c || **fa.target() != *pulled {
        return Err(LawError::Shape("F^A does not go from A_C to F^* A_D".into()).into());
    }
    let rep_c = match local_rep(a_c) {
        LocalRep::Representable(s) => s,
        rep => return Err(PreservationError::NotLocallyRepresentable { which: "A_C", rep }),
    };
    let rep_d = match local_rep(a_d) {
        LocalRep::Representable(s) => s,
        rep => return Err(PreservationError::NotLocallyRepresentable { which: "A_D", rep }),
    };
    let (c, d) = (f.dom(), f.cod());
    let mut sites = Vec::new();
    for g in 0..c.num_objects() {
        for e in 0..x.size(g) {
            let ext = rep_c.extension(g, e);
            let fg = f.on_obj(g);
            let over = lk.eta(g, e);
            let xp = x.restrict(ext.p, e);
            let image = Extension {
                obj: f.on_obj(ext.obj),
                p: f.on_mor(ext.p),
                q: fa.at(ext.obj, xp, ext.q),
            };
            let represents = is_representation(a_d, fg, over, image);
            let comparison = rep_d.pair(a_d, fg, over, image.p, image.q);
            let invertible = comparison.is_some_and(|m| d.inverse(m).is_some());
            let target = rep_d.extension(fg, over);
            let mut detail = format!(
                "at {} over {}: Γ ▷ A_C = {}, F of it = {}, F Γ ▷ A_D = {}",
                c.obj_name(g),
                x.label(g, e),
                c.obj_name(ext.obj),
                d.obj_name(image.obj),
                d.obj_name(target.obj)
            );
            match comparison {
                Some(m) if !invertible => detail += &format!("; comparison {} is not invertible", d.mor_name(m)),
                None => detail += "; comparison does not exist",
                _ => {}
            }
            if let Err(ce) = &represents {
                detail += &format!(
                    "; image of q is not a representation: ({} : {} → {}, {}) has {} factorizations",
                    d.mor_name(ce.sigma),
                    d.obj_name(ce.theta),
                    d.obj_name(fg),
                    a_d.label(ce.theta, lk.psh().restrict(ce.sigma, over), ce.y),
                    ce.count
                );
            }
            sites.push(SiteVerdict {
                obj: g,
                elem: e,
                image_represents: represents.is_ok(),
                comparison_invertible: invertible,
                comparison,
                detail,
            });
        }
    }
    Ok(PreservationReport { sites })
}

/// The map with identity components. Only valid when every fiber of `A_C`
/// has the same size as the matching fiber of `F^* A_D`.
pub fn identity_map(f: &FinFunctor, x: &FinPsh, a_c: &DepFinPsh, a_d: &DepFinPsh) -> Result<DepNat, LawError> {
    let lk = left_kan(f, x)?;
    let pulled = precompose_dep(&lk, a_d)?;
    let c = f.dom();
    let comps = (0..c.num_objects())
        .map(|g| (0..x.size(g)).map(|e| (0..a_c.fiber_size(g, e)).collect()).collect())
        .collect();
    DepNat::new(Arc::new(a_c.clone()), Arc::new(pulled), comps)
}

/// Everything [`check_ext_preservation`] needs.
#[derive(Clone, Debug)]
pub struct PreservationInstance {
    pub functor: FinFunctor,
    pub x: FinPsh,
    pub a_c: DepFinPsh,
    pub a_d: DepFinPsh,
    pub fa: DepNat,
}

impl PreservationInstance {
    pub fn check(&self) -> Result<PreservationReport, PreservationError> {
        check_ext_preservation(&self.functor, &self.x, &self.a_c, &self.a_d, &self.fa)
    }
}

/// Over the walking arrow with `F` the identity, the unique map from the
/// type "`0` over `1`" to the type with singleton fibers. At `(1, *)` the
/// comparison is the arrow `0 → 1` itself.
pub fn non_preserving_example() -> PreservationInstance {
    let w = catalog::walking_arrow();
    let functor = FinFunctor::identity(&w);
    let x = catalog::terminal_psh(&w);
    let a_c = catalog::constant_dep(&x, &catalog::representable(&w, 0));
    let lk = left_kan(&functor, &x).expect("left Kan extension");
    let a_d = catalog::terminal_dep(lk.psh());
    let pulled = Arc::new(precompose_dep(&lk, &a_d).expect("pullback"));
    let source = Arc::new(a_c.clone());
    let fa = DepNat::enumerate(&source, &pulled, 2)
        .expect("maps")
        .pop()
        .expect("a map into a type with singleton fibers");
    PreservationInstance {
        functor,
        x,
        a_c,
        a_d,
        fa,
    }
}
