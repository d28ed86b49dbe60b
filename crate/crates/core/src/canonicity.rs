//! Closed evaluation. On closed, well-typed input the evaluator never meets a
//! neutral, so every closed boolean is literally `true` or `false`. Both facts
//! are asserted at runtime rather than assumed.

use thiserror::Error;

use crate::nbe::{self, eval, Closure, Env, NbeError, TyClosure, TypeValue, Value};
use crate::normal::Nf;
use crate::syntax::{Context, Level, Tm, Ty};
use crate::typecheck::{check_in_context, TypeError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("{0}")]
    Type(#[from] TypeError),
    #[error("{0}")]
    Eval(#[from] NbeError),
    /// Would contradict canonicity.
    #[error("closed evaluation produced a neutral: {0}")]
    NeutralEncountered(String),
    #[error("closed evaluation gave {closed} but the normal form is {normal}")]
    Disagreement { closed: bool, normal: String },
}

/// A value of the empty context. Contains no neutrals.
#[derive(Clone, Debug)]
pub struct ClosedValue(Value);

impl ClosedValue {
    pub fn value(&self) -> &Value {
        &self.0
    }

    pub fn into_value(self) -> Value {
        self.0
    }
}

/// Evaluates `· ⊢ t : A`.
pub fn eval_closed(t: &Tm, ty: &Ty) -> Result<ClosedValue, CanonError> {
    check_in_context(&Context::empty(), t, ty)?;
    nbe::reset_steps();
    let v = eval(&Env::new(), t)?;
    assert_closed_value(&v)?;
    Ok(ClosedValue(v))
}

/// The boolean that the closed term `t : Bool i` computes to, checked
/// against its normal form.
pub fn canon_bool(t: &Tm, i: Level) -> Result<bool, CanonError> {
    let ty = Ty::Bool(i);
    let closed = match eval_closed(t, &ty)?.into_value() {
        Value::True(_) => true,
        Value::False(_) => false,
        other => return Err(CanonError::NeutralEncountered(format!("{other:?}"))),
    };
    let normal = nbe::norm(&Context::empty(), &ty, t)?;
    let agrees = match normal {
        Nf::True(_) => closed,
        Nf::False(_) => !closed,
        _ => false,
    };
    if agrees {
        Ok(closed)
    } else {
        Err(CanonError::Disagreement {
            closed,
            normal: normal.to_string(),
        })
    }
}

fn neutral<T>(what: &str) -> Result<T, CanonError> {
    Err(CanonError::NeutralEncountered(what.to_string()))
}

fn assert_closed_value(v: &Value) -> Result<(), CanonError> {
    match v {
        Value::True(_) | Value::False(_) => Ok(()),
        Value::NeBool(n) => neutral(&format!("{n:?}")),
        Value::NeEl(n) => neutral(&format!("{n:?}")),
        Value::Lam(Closure::Term { env, .. }) => assert_closed_env(env),
        Value::Lam(Closure::Reflected { head, .. }) => neutral(&format!("{head:?}")),
        Value::Code(a) => assert_closed_type(a),
    }
}

fn assert_closed_env(env: &Env) -> Result<(), CanonError> {
    env.values().iter().try_for_each(assert_closed_value)
}

fn assert_closed_type(ty: &TypeValue) -> Result<(), CanonError> {
    match ty {
        TypeValue::U(_) | TypeValue::Bool(_) => Ok(()),
        TypeValue::Lift(a) => assert_closed_type(a),
        TypeValue::Pi(a, b) => {
            assert_closed_type(a)?;
            assert_closed_ty_closure(b)
        }
        TypeValue::ElNe { code, .. } => neutral(&format!("{code:?}")),
    }
}

fn assert_closed_ty_closure(c: &TyClosure) -> Result<(), CanonError> {
    // The closure body is syntax; only its environment can hold values.
    assert_closed_env(c.env())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_tm;
    use crate::syntax::lvl;

    fn b0() -> Ty {
        Ty::Bool(lvl(0))
    }

    #[test]
    fn closed_evaluation() {
        let t = Tm::elim_b(
            lvl(0),
            lvl(0),
            b0(),
            Tm::True(lvl(0)),
            Tm::False(lvl(0)),
            Tm::True(lvl(0)),
        );
        assert!(matches!(eval_closed(&t, &b0()).unwrap().value(), Value::True(_)));
        let t = Tm::app(Tm::lam(Tm::var(0)), Tm::False(lvl(0)));
        assert!(matches!(eval_closed(&t, &b0()).unwrap().value(), Value::False(_)));
        let t = Tm::unlift(Tm::lift(Tm::True(lvl(0))));
        assert!(matches!(eval_closed(&t, &b0()).unwrap().value(), Value::True(_)));
    }

    #[test]
    fn canonical_booleans() {
        assert!(canon_bool(&Tm::True(lvl(0)), lvl(0)).unwrap());
        let t = Tm::elim_b(
            lvl(0),
            lvl(0),
            b0(),
            Tm::False(lvl(0)),
            Tm::True(lvl(0)),
            Tm::True(lvl(0)),
        );
        assert!(!canon_bool(&t, lvl(0)).unwrap());
        let k = Tm::app(
            Tm::app(Tm::lam(Tm::lam(Tm::var(1))), Tm::True(lvl(0))),
            Tm::False(lvl(0)),
        );
        assert!(canon_bool(&k, lvl(0)).unwrap());
    }

    #[test]
    fn closed_functions_and_codes() {
        let f = parse_tm(
            "(fun x => elimB 0 0 (b. Bool 0 -> Bool 0) (fun y => x) (fun y => y) x) (true 0)",
            &[],
        )
        .unwrap();
        let ty = Ty::arrow(b0(), b0());
        assert!(matches!(eval_closed(&f, &ty).unwrap().value(), Value::Lam(_)));
        let c = Tm::code(Ty::arrow(b0(), b0()));
        assert!(eval_closed(&c, &Ty::U(lvl(0))).is_ok());
    }

    #[test]
    fn ill_typed_input_is_rejected() {
        assert!(matches!(
            canon_bool(&Tm::True(lvl(1)), lvl(0)),
            Err(CanonError::Type(_))
        ));
        assert!(matches!(eval_closed(&Tm::var(0), &b0()), Err(CanonError::Type(_))));
    }
}
