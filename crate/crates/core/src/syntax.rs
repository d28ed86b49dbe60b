//! De Bruijn-indexed syntax of types and terms.
//!
//! Variables are de Bruijn indices counted from the innermost binder. `Pi`'s
//! codomain, `Lam`'s body and the motive of `ElimB` each bind one variable.
//! Structural equality on this representation is α-equivalence.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A universe level. The hierarchy is not cumulative, so levels are carried
/// explicitly by every type former and boolean constructor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(u8);

impl Level {
    /// Largest level accepted anywhere in the kernel.
    pub const MAX: u8 = 64;
    pub const ZERO: Level = Level(0);

    pub fn new(value: u32) -> Option<Level> {
        (value <= u32::from(Self::MAX)).then_some(Level(value as u8))
    }

    pub fn value(self) -> u32 {
        u32::from(self.0)
    }

    pub fn succ(self) -> Option<Level> {
        Level::new(self.value() + 1)
    }

    pub fn pred(self) -> Option<Level> {
        self.0.checked_sub(1).map(Level)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shorthand used heavily by tests and generators. Panics above [`Level::MAX`].
pub fn lvl(value: u32) -> Level {
    Level::new(value).expect("level out of range")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    U(Level),
    El(Arc<Tm>),
    Lift(Arc<Ty>),
    Bool(Level),
    /// Dependent function type; the codomain binds one variable.
    Pi(Arc<Ty>, Arc<Ty>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tm {
    Var(usize),
    Lam(Arc<Tm>),
    App(Arc<Tm>, Arc<Tm>),
    True(Level),
    False(Level),
    /// `elimB i j (x. P) t f b`: `b : Bool i`, motive `P : Ty j` under one
    /// boolean binder.
    ElimB {
        scrut_level: Level,
        motive_level: Level,
        motive: Arc<Ty>,
        on_true: Arc<Tm>,
        on_false: Arc<Tm>,
        scrutinee: Arc<Tm>,
    },
    Lift(Arc<Tm>),
    Unlift(Arc<Tm>),
    /// The inverse of `El`: the code in `U i` of a type of level `i`.
    Code(Arc<Ty>),
}

impl Ty {
    pub fn u(i: Level) -> Ty {
        Ty::U(i)
    }

    pub fn bool(i: Level) -> Ty {
        Ty::Bool(i)
    }

    pub fn el(t: Tm) -> Ty {
        Ty::El(Arc::new(t))
    }

    pub fn lift(a: Ty) -> Ty {
        Ty::Lift(Arc::new(a))
    }

    pub fn pi(dom: Ty, cod: Ty) -> Ty {
        Ty::Pi(Arc::new(dom), Arc::new(cod))
    }

    /// Non-dependent function type; `cod` is given in the outer scope.
    pub fn arrow(dom: Ty, cod: Ty) -> Ty {
        let cod = cod.shift(0, 1).expect("weakening never underflows");
        Ty::pi(dom, cod)
    }

    pub fn shift(&self, cutoff: usize, delta: isize) -> Result<Ty, ScopeError> {
        Ok(match self {
            Ty::U(i) => Ty::U(*i),
            Ty::Bool(i) => Ty::Bool(*i),
            Ty::El(t) => Ty::El(Arc::new(t.shift(cutoff, delta)?)),
            Ty::Lift(a) => Ty::Lift(Arc::new(a.shift(cutoff, delta)?)),
            Ty::Pi(a, b) => Ty::Pi(Arc::new(a.shift(cutoff, delta)?), Arc::new(b.shift(cutoff + 1, delta)?)),
        })
    }

    /// Replaces variable `ix` by `s` and closes the gap it leaves.
    /// `s` is scoped over the variables older than `ix`.
    pub fn subst(&self, ix: usize, s: &Tm) -> Result<Ty, ScopeError> {
        self.subst_at(ix, 0, s)
    }

    fn subst_at(&self, ix: usize, depth: usize, s: &Tm) -> Result<Ty, ScopeError> {
        Ok(match self {
            Ty::U(i) => Ty::U(*i),
            Ty::Bool(i) => Ty::Bool(*i),
            Ty::El(t) => Ty::El(Arc::new(t.subst_at(ix, depth, s)?)),
            Ty::Lift(a) => Ty::Lift(Arc::new(a.subst_at(ix, depth, s)?)),
            Ty::Pi(a, b) => Ty::Pi(
                Arc::new(a.subst_at(ix, depth, s)?),
                Arc::new(b.subst_at(ix, depth + 1, s)?),
            ),
        })
    }

    /// Is every free index below `bound`?
    pub fn is_scoped(&self, bound: usize) -> bool {
        match self {
            Ty::U(_) | Ty::Bool(_) => true,
            Ty::El(t) => t.is_scoped(bound),
            Ty::Lift(a) => a.is_scoped(bound),
            Ty::Pi(a, b) => a.is_scoped(bound) && b.is_scoped(bound + 1),
        }
    }
}

impl Tm {
    pub fn var(ix: usize) -> Tm {
        Tm::Var(ix)
    }

    pub fn lam(body: Tm) -> Tm {
        Tm::Lam(Arc::new(body))
    }

    pub fn app(f: Tm, a: Tm) -> Tm {
        Tm::App(Arc::new(f), Arc::new(a))
    }

    pub fn lift(a: Tm) -> Tm {
        Tm::Lift(Arc::new(a))
    }

    pub fn unlift(a: Tm) -> Tm {
        Tm::Unlift(Arc::new(a))
    }

    pub fn code(a: Ty) -> Tm {
        Tm::Code(Arc::new(a))
    }

    pub fn elim_b(scrut_level: Level, motive_level: Level, motive: Ty, on_true: Tm, on_false: Tm, scrutinee: Tm) -> Tm {
        Tm::ElimB {
            scrut_level,
            motive_level,
            motive: Arc::new(motive),
            on_true: Arc::new(on_true),
            on_false: Arc::new(on_false),
            scrutinee: Arc::new(scrutinee),
        }
    }

    pub fn shift(&self, cutoff: usize, delta: isize) -> Result<Tm, ScopeError> {
        Ok(match self {
            Tm::Var(k) if *k >= cutoff => {
                let moved = *k as isize + delta;
                if moved < 0 {
                    return Err(ScopeError::Underflow { index: *k, delta });
                }
                Tm::Var(moved as usize)
            }
            Tm::Var(k) => Tm::Var(*k),
            Tm::Lam(b) => Tm::Lam(Arc::new(b.shift(cutoff + 1, delta)?)),
            Tm::App(f, a) => Tm::App(Arc::new(f.shift(cutoff, delta)?), Arc::new(a.shift(cutoff, delta)?)),
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
                motive: Arc::new(motive.shift(cutoff + 1, delta)?),
                on_true: Arc::new(on_true.shift(cutoff, delta)?),
                on_false: Arc::new(on_false.shift(cutoff, delta)?),
                scrutinee: Arc::new(scrutinee.shift(cutoff, delta)?),
            },
            Tm::Lift(a) => Tm::Lift(Arc::new(a.shift(cutoff, delta)?)),
            Tm::Unlift(a) => Tm::Unlift(Arc::new(a.shift(cutoff, delta)?)),
            Tm::Code(a) => Tm::Code(Arc::new(a.shift(cutoff, delta)?)),
        })
    }

    /// Replaces variable `ix` by `s` and closes the gap it leaves.
    /// `s` is scoped over the variables older than `ix`.
    pub fn subst(&self, ix: usize, s: &Tm) -> Result<Tm, ScopeError> {
        self.subst_at(ix, 0, s)
    }

    fn subst_at(&self, ix: usize, depth: usize, s: &Tm) -> Result<Tm, ScopeError> {
        let target = ix + depth;
        Ok(match self {
            Tm::Var(k) if *k == target => s.shift(0, target as isize)?,
            Tm::Var(k) if *k > target => Tm::Var(k - 1),
            Tm::Var(k) => Tm::Var(*k),
            Tm::Lam(b) => Tm::Lam(Arc::new(b.subst_at(ix, depth + 1, s)?)),
            Tm::App(f, a) => Tm::App(Arc::new(f.subst_at(ix, depth, s)?), Arc::new(a.subst_at(ix, depth, s)?)),
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
                motive: Arc::new(motive.subst_at(ix, depth + 1, s)?),
                on_true: Arc::new(on_true.subst_at(ix, depth, s)?),
                on_false: Arc::new(on_false.subst_at(ix, depth, s)?),
                scrutinee: Arc::new(scrutinee.subst_at(ix, depth, s)?),
            },
            Tm::Lift(a) => Tm::Lift(Arc::new(a.subst_at(ix, depth, s)?)),
            Tm::Unlift(a) => Tm::Unlift(Arc::new(a.subst_at(ix, depth, s)?)),
            Tm::Code(a) => Tm::Code(Arc::new(a.subst_at(ix, depth, s)?)),
        })
    }

    pub fn is_scoped(&self, bound: usize) -> bool {
        match self {
            Tm::Var(k) => *k < bound,
            Tm::Lam(b) => b.is_scoped(bound + 1),
            Tm::App(f, a) => f.is_scoped(bound) && a.is_scoped(bound),
            Tm::True(_) | Tm::False(_) => true,
            Tm::ElimB {
                motive,
                on_true,
                on_false,
                scrutinee,
                ..
            } => {
                motive.is_scoped(bound + 1)
                    && on_true.is_scoped(bound)
                    && on_false.is_scoped(bound)
                    && scrutinee.is_scoped(bound)
            }
            Tm::Lift(a) | Tm::Unlift(a) => a.is_scoped(bound),
            Tm::Code(a) => a.is_scoped(bound),
        }
    }

    /// Number of constructors, types included.
    pub fn size(&self) -> usize {
        match self {
            Tm::Var(_) | Tm::True(_) | Tm::False(_) => 1,
            Tm::Lam(b) => 1 + b.size(),
            Tm::App(f, a) => 1 + f.size() + a.size(),
            Tm::ElimB {
                motive,
                on_true,
                on_false,
                scrutinee,
                ..
            } => 1 + ty_size(motive) + on_true.size() + on_false.size() + scrutinee.size(),
            Tm::Lift(a) | Tm::Unlift(a) => 1 + a.size(),
            Tm::Code(a) => 1 + ty_size(a),
        }
    }
}

fn ty_size(ty: &Ty) -> usize {
    match ty {
        Ty::U(_) | Ty::Bool(_) => 1,
        Ty::El(t) => 1 + t.size(),
        Ty::Lift(a) => 1 + ty_size(a),
        Ty::Pi(a, b) => 1 + ty_size(a) + ty_size(b),
    }
}

/// α-equivalence. With de Bruijn indices this is structural equality.
pub fn alpha_eq<T: PartialEq>(a: &T, b: &T) -> bool {
    a == b
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScopeError {
    #[error("index {index} shifted by {delta} drops below zero")]
    Underflow { index: usize, delta: isize },
    #[error("variable {index} is not bound in a scope of length {len}")]
    Unbound { index: usize, len: usize },
}

/// A telescope of types; entry `k` is scoped over entries `0..k`.
/// Variable index 0 refers to the last entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    entries: Vec<Ty>,
}

impl Context {
    pub fn empty() -> Context {
        Context::default()
    }

    pub fn from_entries(entries: Vec<Ty>) -> Result<Context, ScopeError> {
        for (k, ty) in entries.iter().enumerate() {
            if !ty.is_scoped(k) {
                return Err(ScopeError::Unbound { index: k, len: k });
            }
        }
        Ok(Context { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Ty] {
        &self.entries
    }

    pub fn extend(&self, ty: Ty) -> Context {
        let mut entries = self.entries.clone();
        entries.push(ty);
        Context { entries }
    }

    /// The type of variable `ix`, weakened to live in the whole context.
    pub fn lookup(&self, ix: usize) -> Result<Ty, ScopeError> {
        let len = self.entries.len();
        if ix >= len {
            return Err(ScopeError::Unbound { index: ix, len });
        }
        self.entries[len - 1 - ix].shift(0, ix as isize + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b0() -> Ty {
        Ty::Bool(Level::ZERO)
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Tm::var(0).shift(0, 1).unwrap(), Tm::var(1));
        assert_eq!(Tm::lam(Tm::var(0)).shift(0, 1).unwrap(), Tm::lam(Tm::var(0)));
        assert_eq!(Tm::lam(Tm::var(1)).shift(0, 2).unwrap(), Tm::lam(Tm::var(3)));
    }

    #[test]
    fn shift_underflow_is_a_scope_error() {
        assert!(matches!(
            Tm::var(0).shift(0, -1),
            Err(ScopeError::Underflow { index: 0, .. })
        ));
        assert_eq!(Tm::var(0).shift(1, -1).unwrap(), Tm::var(0));
    }

    #[test]
    fn subst_examples() {
        let t0 = Tm::True(Level::ZERO);
        assert_eq!(Tm::var(0).subst(0, &t0).unwrap(), t0);
        assert_eq!(
            Tm::app(Tm::var(0), Tm::var(1)).subst(0, &Tm::lam(Tm::var(0))).unwrap(),
            Tm::app(Tm::lam(Tm::var(0)), Tm::var(0))
        );
        assert_eq!(Tm::lam(Tm::var(1)).subst(0, &t0).unwrap(), Tm::lam(t0.clone()));
    }

    #[test]
    fn subst_weakens_under_binders() {
        // (λ. x1 y0)[y := z0] where the substituted term mentions an outer variable.
        let body = Tm::lam(Tm::app(Tm::var(1), Tm::var(0)));
        assert_eq!(
            body.subst(0, &Tm::var(0)).unwrap(),
            Tm::lam(Tm::app(Tm::var(1), Tm::var(0)))
        );
        let ty = Ty::pi(b0(), Ty::el(Tm::var(1)));
        assert_eq!(ty.subst(0, &Tm::var(3)).unwrap(), Ty::pi(b0(), Ty::el(Tm::var(4))));
    }

    #[test]
    fn alpha_eq_examples() {
        assert!(alpha_eq(&Tm::lam(Tm::var(0)), &Tm::lam(Tm::var(0))));
        assert!(!alpha_eq(&Tm::True(Level::ZERO), &Tm::False(Level::ZERO)));
        assert!(!alpha_eq(&Ty::U(lvl(0)), &Ty::U(lvl(1))));
    }

    #[test]
    fn level_bounds() {
        assert!(Level::new(64).is_some());
        assert!(Level::new(65).is_none());
        assert!(lvl(64).succ().is_none());
        assert_eq!(lvl(3).succ(), Some(lvl(4)));
        assert_eq!(Level::ZERO.pred(), None);
    }

    #[test]
    fn context_lookup_weakens() {
        let ctx = Context::from_entries(vec![Ty::U(lvl(0)), Ty::el(Tm::var(0))]).unwrap();
        assert_eq!(ctx.lookup(0).unwrap(), Ty::el(Tm::var(1)));
        assert_eq!(ctx.lookup(1).unwrap(), Ty::U(lvl(0)));
        assert!(ctx.lookup(2).is_err());
        assert!(Context::from_entries(vec![Ty::el(Tm::var(0))]).is_err());
    }

    fn arb_tm() -> impl Strategy<Value = Tm> {
        let leaf = prop_oneof![
            (0usize..4).prop_map(Tm::Var),
            (0u32..2).prop_map(|i| Tm::True(lvl(i))),
            (0u32..2).prop_map(|i| Tm::False(lvl(i))),
        ];
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(Tm::lam),
                (inner.clone(), inner.clone()).prop_map(|(f, a)| Tm::app(f, a)),
                inner.clone().prop_map(Tm::lift),
                inner.clone().prop_map(Tm::unlift),
                inner.clone().prop_map(|t| Tm::code(Ty::el(t))),
                (inner.clone(), inner.clone(), inner.clone(), inner.clone()).prop_map(|(p, t, f, b)| Tm::elim_b(
                    lvl(0),
                    lvl(1),
                    Ty::el(p),
                    t,
                    f,
                    b
                )),
            ]
        })
    }

    proptest! {
        #[test]
        fn shift_by_zero_is_identity(t in arb_tm(), c in 0usize..4) {
            prop_assert_eq!(t.shift(c, 0).unwrap(), t);
        }

        #[test]
        fn subst_into_weakened_is_identity(t in arb_tm(), s in arb_tm()) {
            let weakened = t.shift(0, 1).unwrap();
            prop_assert_eq!(weakened.subst(0, &s).unwrap(), t);
        }

        #[test]
        fn alpha_eq_is_reflexive_and_symmetric(a in arb_tm(), b in arb_tm()) {
            prop_assert!(alpha_eq(&a, &a));
            prop_assert_eq!(alpha_eq(&a, &b), alpha_eq(&b, &a));
        }
    }
}
