//! Normal types, normal forms and neutral terms.
//!
//! These are de Bruijn-indexed like [`crate::syntax`]. Each value witnesses
//! that the term or type returned by [`erase`](Nf::erase) is normal. Normal
//! forms are η-long: the only normal form at a `Pi` type is [`Nf::Lam`], and
//! the only one at a `Lift` type is [`Nf::Lift`].

use std::fmt;

use crate::renaming::lift_var;
use crate::syntax::{Level, ScopeError, Tm, Ty};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NfTy {
    /// `El n` for a neutral code `n : U i`.
    NeU(Ne),
    U(Level),
    Lift(Box<NfTy>),
    Bool(Level),
    /// The codomain binds one variable of the domain type.
    Pi(Box<NfTy>, Box<NfTy>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Nf {
    /// A normal type, as an element of its universe.
    TypeCode(NfTy),
    /// A neutral boolean.
    NeBool(Ne),
    /// A neutral element of `El n` for a neutral code `n`.
    NeEl(Ne),
    Lift(Box<Nf>),
    True(Level),
    False(Level),
    /// `cod` and `body` bind one variable of type `dom`.
    Lam {
        dom: NfTy,
        cod: NfTy,
        body: Box<Nf>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ne {
    Var(usize),
    Unlift(Box<Ne>),
    App {
        head: Box<Ne>,
        dom: Box<NfTy>,
        /// Binds one variable of type `dom`.
        cod: Box<NfTy>,
        arg: Box<Nf>,
    },
    ElimBool {
        scrut_level: Level,
        motive_level: Level,
        /// Binds one variable of type `Bool scrut_level`.
        motive: Box<NfTy>,
        on_true: Box<Nf>,
        on_false: Box<Nf>,
        scrutinee: Box<Ne>,
    },
}

impl NfTy {
    pub fn erase(&self) -> Ty {
        match self {
            NfTy::NeU(n) => Ty::el(n.erase()),
            NfTy::U(i) => Ty::U(*i),
            NfTy::Lift(a) => Ty::lift(a.erase()),
            NfTy::Bool(i) => Ty::Bool(*i),
            NfTy::Pi(a, b) => Ty::pi(a.erase(), b.erase()),
        }
    }

    pub fn rename(&self, map: &[usize]) -> Result<NfTy, ScopeError> {
        self.rename_at(map, 0)
    }

    fn rename_at(&self, map: &[usize], depth: usize) -> Result<NfTy, ScopeError> {
        Ok(match self {
            NfTy::NeU(n) => NfTy::NeU(n.rename_at(map, depth)?),
            NfTy::U(i) => NfTy::U(*i),
            NfTy::Lift(a) => NfTy::Lift(Box::new(a.rename_at(map, depth)?)),
            NfTy::Bool(i) => NfTy::Bool(*i),
            NfTy::Pi(a, b) => NfTy::Pi(
                Box::new(a.rename_at(map, depth)?),
                Box::new(b.rename_at(map, depth + 1)?),
            ),
        })
    }

    /// Constructor count.
    pub fn size(&self) -> usize {
        match self {
            NfTy::NeU(n) => 1 + n.size(),
            NfTy::U(_) | NfTy::Bool(_) => 1,
            NfTy::Lift(a) => 1 + a.size(),
            NfTy::Pi(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl Nf {
    pub fn erase(&self) -> Tm {
        match self {
            Nf::TypeCode(a) => Tm::code(a.erase()),
            Nf::NeBool(n) | Nf::NeEl(n) => n.erase(),
            Nf::Lift(a) => Tm::lift(a.erase()),
            Nf::True(i) => Tm::True(*i),
            Nf::False(i) => Tm::False(*i),
            Nf::Lam { body, .. } => Tm::lam(body.erase()),
        }
    }

    pub fn rename(&self, map: &[usize]) -> Result<Nf, ScopeError> {
        self.rename_at(map, 0)
    }

    fn rename_at(&self, map: &[usize], depth: usize) -> Result<Nf, ScopeError> {
        Ok(match self {
            Nf::TypeCode(a) => Nf::TypeCode(a.rename_at(map, depth)?),
            Nf::NeBool(n) => Nf::NeBool(n.rename_at(map, depth)?),
            Nf::NeEl(n) => Nf::NeEl(n.rename_at(map, depth)?),
            Nf::Lift(a) => Nf::Lift(Box::new(a.rename_at(map, depth)?)),
            Nf::True(i) => Nf::True(*i),
            Nf::False(i) => Nf::False(*i),
            Nf::Lam { dom, cod, body } => Nf::Lam {
                dom: dom.rename_at(map, depth)?,
                cod: cod.rename_at(map, depth + 1)?,
                body: Box::new(body.rename_at(map, depth + 1)?),
            },
        })
    }

    /// Constructor count, not counting the type annotations of `Lam`, which
    /// are determined by the type the normal form inhabits.
    pub fn size(&self) -> usize {
        match self {
            Nf::TypeCode(a) => 1 + a.size(),
            Nf::NeBool(n) | Nf::NeEl(n) => n.size(),
            Nf::Lift(a) => 1 + a.size(),
            Nf::True(_) | Nf::False(_) => 1,
            Nf::Lam { body, .. } => 1 + body.size(),
        }
    }
}

impl Ne {
    pub fn erase(&self) -> Tm {
        match self {
            Ne::Var(ix) => Tm::Var(*ix),
            Ne::Unlift(n) => Tm::unlift(n.erase()),
            Ne::App { head, arg, .. } => Tm::app(head.erase(), arg.erase()),
            Ne::ElimBool {
                scrut_level,
                motive_level,
                motive,
                on_true,
                on_false,
                scrutinee,
            } => Tm::elim_b(
                *scrut_level,
                *motive_level,
                motive.erase(),
                on_true.erase(),
                on_false.erase(),
                scrutinee.erase(),
            ),
        }
    }

    pub fn rename(&self, map: &[usize]) -> Result<Ne, ScopeError> {
        self.rename_at(map, 0)
    }

    fn rename_at(&self, map: &[usize], depth: usize) -> Result<Ne, ScopeError> {
        Ok(match self {
            Ne::Var(ix) => Ne::Var(lift_var(map, depth, *ix)?),
            Ne::Unlift(n) => Ne::Unlift(Box::new(n.rename_at(map, depth)?)),
            Ne::App { head, dom, cod, arg } => Ne::App {
                head: Box::new(head.rename_at(map, depth)?),
                dom: Box::new(dom.rename_at(map, depth)?),
                cod: Box::new(cod.rename_at(map, depth + 1)?),
                arg: Box::new(arg.rename_at(map, depth)?),
            },
            Ne::ElimBool {
                scrut_level,
                motive_level,
                motive,
                on_true,
                on_false,
                scrutinee,
            } => Ne::ElimBool {
                scrut_level: *scrut_level,
                motive_level: *motive_level,
                motive: Box::new(motive.rename_at(map, depth + 1)?),
                on_true: Box::new(on_true.rename_at(map, depth)?),
                on_false: Box::new(on_false.rename_at(map, depth)?),
                scrutinee: Box::new(scrutinee.rename_at(map, depth)?),
            },
        })
    }

    /// Constructor count; the motive of an eliminator counts, the
    /// annotations of an application do not.
    pub fn size(&self) -> usize {
        match self {
            Ne::Var(_) => 1,
            Ne::Unlift(n) => 1 + n.size(),
            Ne::App { head, arg, .. } => 1 + head.size() + arg.size(),
            Ne::ElimBool {
                motive,
                on_true,
                on_false,
                scrutinee,
                ..
            } => 1 + motive.size() + on_true.size() + on_false.size() + scrutinee.size(),
        }
    }
}

/// Decidable equality of normal forms: strict syntactic equality, levels
/// included.
pub fn eq_nf<T: PartialEq>(a: &T, b: &T) -> bool {
    a == b
}

impl fmt::Display for NfTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NfTy::NeU(n) => write!(f, "NeU({n})"),
            NfTy::U(i) => write!(f, "U {i}"),
            NfTy::Lift(a) => write!(f, "Lift({a})"),
            NfTy::Bool(i) => write!(f, "Bool {i}"),
            NfTy::Pi(a, b) => write!(f, "Pi({a}, {b})"),
        }
    }
}

impl fmt::Display for Nf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nf::TypeCode(a) => write!(f, "Code({a})"),
            Nf::NeBool(n) => write!(f, "NeBool({n})"),
            Nf::NeEl(n) => write!(f, "NeEl({n})"),
            Nf::Lift(a) => write!(f, "Lift({a})"),
            Nf::True(i) => write!(f, "True {i}"),
            Nf::False(i) => write!(f, "False {i}"),
            Nf::Lam { dom, cod, body } => write!(f, "Lam({dom}, {cod}, {body})"),
        }
    }
}

impl fmt::Display for Ne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ne::Var(ix) => write!(f, "Var {ix}"),
            Ne::Unlift(n) => write!(f, "Unlift({n})"),
            Ne::App { head, dom, cod, arg } => write!(f, "App({head}, {dom}, {cod}, {arg})"),
            Ne::ElimBool {
                scrut_level,
                motive_level,
                motive,
                on_true,
                on_false,
                scrutinee,
            } => write!(
                f,
                "ElimBool({scrut_level}, {motive_level}, {motive}, {on_true}, {on_false}, {scrutinee})"
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::renaming::{rename_tm, rename_ty};
    use crate::syntax::lvl;
    use proptest::prelude::*;

    fn b0() -> NfTy {
        NfTy::Bool(lvl(0))
    }

    fn app(head: Ne, arg: Nf) -> Ne {
        Ne::App {
            head: Box::new(head),
            dom: Box::new(b0()),
            cod: Box::new(b0()),
            arg: Box::new(arg),
        }
    }

    #[test]
    fn erase_examples() {
        assert_eq!(Nf::True(lvl(0)).erase(), Tm::True(lvl(0)));
        let id = Nf::Lam {
            dom: b0(),
            cod: b0(),
            body: Box::new(Nf::NeBool(Ne::Var(0))),
        };
        assert_eq!(id.erase(), Tm::lam(Tm::var(0)));
        assert_eq!(Nf::TypeCode(b0()).erase(), Tm::code(Ty::Bool(lvl(0))));
        assert_eq!(NfTy::NeU(Ne::Var(2)).erase(), Ty::el(Tm::var(2)));
    }

    #[test]
    fn rename_examples() {
        let n = Nf::NeBool(app(Ne::Var(0), Nf::NeBool(Ne::Var(1))));
        assert_eq!(n.rename(&[0, 1]).unwrap(), n);
        assert_eq!(Ne::Var(0).rename(&[1]).unwrap(), Ne::Var(1));
        assert_eq!(
            n.rename(&[1, 0]).unwrap(),
            Nf::NeBool(app(Ne::Var(1), Nf::NeBool(Ne::Var(0))))
        );
        assert!(Ne::Var(3).rename(&[0]).is_err());
    }

    #[test]
    fn eq_examples() {
        assert!(eq_nf(&Nf::True(lvl(0)), &Nf::True(lvl(0))));
        assert!(!eq_nf(&Nf::True(lvl(0)), &Nf::True(lvl(1))));
        let lam = || Nf::Lam {
            dom: b0(),
            cod: b0(),
            body: Box::new(Nf::NeBool(Ne::Var(0))),
        };
        assert!(eq_nf(&lam(), &lam()));
        assert!(!eq_nf(&Nf::NeBool(Ne::Var(0)), &Nf::NeEl(Ne::Var(0))));
    }

    #[test]
    fn sizes_skip_lambda_annotations() {
        let id = Nf::Lam {
            dom: NfTy::Pi(Box::new(b0()), Box::new(b0())),
            cod: b0(),
            body: Box::new(Nf::NeBool(Ne::Var(0))),
        };
        assert_eq!(id.size(), 2);
        assert_eq!(NfTy::Pi(Box::new(b0()), Box::new(b0())).size(), 3);
    }

    fn arb_ne() -> impl Strategy<Value = Ne> {
        (0usize..3).prop_map(Ne::Var).prop_recursive(3, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|n| Ne::Unlift(Box::new(n))),
                (inner.clone(), inner.clone()).prop_map(|(f, a)| app(f, Nf::NeBool(a))),
                (inner.clone(), inner.clone()).prop_map(|(b, m)| Ne::ElimBool {
                    scrut_level: lvl(0),
                    motive_level: lvl(1),
                    motive: Box::new(NfTy::NeU(m)),
                    on_true: Box::new(Nf::True(lvl(0))),
                    on_false: Box::new(Nf::Lam {
                        dom: b0(),
                        cod: b0(),
                        body: Box::new(Nf::NeBool(Ne::Var(0))),
                    }),
                    scrutinee: Box::new(b),
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn erase_commutes_with_renaming(n in arb_ne(), map in proptest::collection::vec(0usize..5, 3)) {
            let renamed = n.rename(&map).unwrap();
            prop_assert_eq!(renamed.erase(), rename_tm(&map, &n.erase()).unwrap());
            let ty = NfTy::Pi(Box::new(NfTy::NeU(n.clone())), Box::new(NfTy::NeU(Ne::Var(0))));
            prop_assert_eq!(ty.rename(&map).unwrap().erase(), rename_ty(&map, &ty.erase()).unwrap());
        }

        #[test]
        fn eq_nf_agrees_with_erasure_on_neutrals(a in arb_ne(), b in arb_ne()) {
            // Neutrals with equal erasure and equal annotations are equal.
            prop_assert_eq!(eq_nf(&a, &b), a.erase() == b.erase());
        }
    }
}
