//! The category of renamings.
//!
//! A renaming `Δ → Γ` sends every variable of `Γ` to a variable of `Δ` of the
//! same type. Renamings may permute, drop and duplicate variables. They act
//! contravariantly on syntax: a term over `Γ` becomes a term over `Δ`.

use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Context, ScopeError, Tm, Ty};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenamingError {
    #[error("renaming has {got} entries but its target context has {expected} variables")]
    Arity { expected: usize, got: usize },
    #[error("variable {var} is sent to {image}, outside a source context of length {len}")]
    OutOfRange { var: usize, image: usize, len: usize },
    #[error("variable {var} has type {expected:?} but its image {image} has type {found:?}")]
    TypeMismatch {
        var: usize,
        image: usize,
        expected: Ty,
        found: Ty,
    },
    #[error("cannot compose: intermediate contexts differ")]
    ContextMismatch,
    #[error(transparent)]
    Scope(#[from] ScopeError),
}

/// A morphism `source → target` of the category of renamings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Renaming {
    source: Context,
    target: Context,
    /// `map[k]` is the index in `source` of the image of index `k` of `target`.
    map: Vec<usize>,
}

impl Renaming {
    /// Builds a renaming, checking that every variable keeps its type.
    pub fn new(source: Context, target: Context, map: Vec<usize>) -> Result<Renaming, RenamingError> {
        if map.len() != target.len() {
            return Err(RenamingError::Arity {
                expected: target.len(),
                got: map.len(),
            });
        }
        for (var, &image) in map.iter().enumerate() {
            if image >= source.len() {
                return Err(RenamingError::OutOfRange {
                    var,
                    image,
                    len: source.len(),
                });
            }
            let expected = rename_ty(&map, &target.lookup(var)?)?;
            let found = source.lookup(image)?;
            if expected != found {
                return Err(RenamingError::TypeMismatch {
                    var,
                    image,
                    expected,
                    found,
                });
            }
        }
        Ok(Renaming { source, target, map })
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn rename_tm(&self, t: &Tm) -> Result<Tm, RenamingError> {
        Ok(rename_tm(&self.map, t)?)
    }

    pub fn rename_ty(&self, t: &Ty) -> Result<Ty, RenamingError> {
        Ok(rename_ty(&self.map, t)?)
    }
}

pub fn rid(ctx: &Context) -> Renaming {
    Renaming {
        source: ctx.clone(),
        target: ctx.clone(),
        map: (0..ctx.len()).collect(),
    }
}

/// `ρ : Δ → Γ` and `σ : Θ → Δ` give `ρ ∘ σ : Θ → Γ`.
pub fn compose(rho: &Renaming, sigma: &Renaming) -> Result<Renaming, RenamingError> {
    if sigma.target != rho.source {
        return Err(RenamingError::ContextMismatch);
    }
    Ok(Renaming {
        source: sigma.source.clone(),
        target: rho.target.clone(),
        map: rho.map.iter().map(|&k| sigma.map[k]).collect(),
    })
}

/// The projection `Γ ▷ A → Γ`.
pub fn wk(ctx: &Context, ty: Ty) -> Result<Renaming, RenamingError> {
    if !ty.is_scoped(ctx.len()) {
        return Err(ScopeError::Unbound {
            index: ctx.len(),
            len: ctx.len(),
        }
        .into());
    }
    Ok(Renaming {
        source: ctx.extend(ty),
        target: ctx.clone(),
        map: (1..=ctx.len()).collect(),
    })
}

/// Applies a raw variable map (indexed like [`Renaming::map`]) to a term.
pub fn rename_tm(map: &[usize], t: &Tm) -> Result<Tm, ScopeError> {
    rename_tm_at(map, 0, t)
}

pub fn rename_ty(map: &[usize], t: &Ty) -> Result<Ty, ScopeError> {
    rename_ty_at(map, 0, t)
}

/// Image of index `ix` under `map` lifted past `depth` binders.
pub(crate) fn lift_var(map: &[usize], depth: usize, ix: usize) -> Result<usize, ScopeError> {
    if ix < depth {
        return Ok(ix);
    }
    map.get(ix - depth)
        .map(|image| image + depth)
        .ok_or(ScopeError::Unbound {
            index: ix - depth,
            len: map.len(),
        })
}

fn rename_tm_at(map: &[usize], depth: usize, t: &Tm) -> Result<Tm, ScopeError> {
    let go = |t: &Arc<Tm>| rename_tm_at(map, depth, t).map(Arc::new);
    Ok(match t {
        Tm::Var(ix) => Tm::Var(lift_var(map, depth, *ix)?),
        Tm::Lam(b) => Tm::Lam(Arc::new(rename_tm_at(map, depth + 1, b)?)),
        Tm::App(f, a) => Tm::App(go(f)?, go(a)?),
        Tm::True(i) => Tm::True(*i),
        Tm::False(i) => Tm::False(*i),
        Tm::ElimB {
            scrut_level,
            motive_level,
            motive,
            on_true,
            on_false,
            scrutinee,
        } => Tm::ElimB {
            scrut_level: *scrut_level,
            motive_level: *motive_level,
            motive: Arc::new(rename_ty_at(map, depth + 1, motive)?),
            on_true: go(on_true)?,
            on_false: go(on_false)?,
            scrutinee: go(scrutinee)?,
        },
        Tm::Lift(a) => Tm::Lift(go(a)?),
        Tm::Unlift(a) => Tm::Unlift(go(a)?),
        Tm::Code(a) => Tm::Code(Arc::new(rename_ty_at(map, depth, a)?)),
    })
}

fn rename_ty_at(map: &[usize], depth: usize, t: &Ty) -> Result<Ty, ScopeError> {
    Ok(match t {
        Ty::U(i) => Ty::U(*i),
        Ty::Bool(i) => Ty::Bool(*i),
        Ty::El(a) => Ty::El(Arc::new(rename_tm_at(map, depth, a)?)),
        Ty::Lift(a) => Ty::Lift(Arc::new(rename_ty_at(map, depth, a)?)),
        Ty::Pi(a, b) => Ty::Pi(
            Arc::new(rename_ty_at(map, depth, a)?),
            Arc::new(rename_ty_at(map, depth + 1, b)?),
        ),
    })
}
