//! Normalization by evaluation.
//!
//! Types evaluate to [`TypeValue`]s and terms to [`Value`]s. Every type value
//! supports four operations: [`quote_type`] reads back its normal type,
//! inhabitation by [`Value`] is the logical predicate, [`reflect`] turns a
//! neutral into a value, and [`quote`] reads a value back as a normal form.
//!
//! Neutral variables inside values are de Bruijn *levels*, so values computed
//! in a context stay valid in every extension of it. Quoting converts levels
//! back to indices.
//!
//! `lift` and `unlift` are the identity on values: a value at `Lift A` is a
//! value at `A`, and a neutral at `Lift A` is reflected as `unlift n` at `A`.

use std::cell::Cell;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::normal::{Ne, Nf, NfTy};
use crate::syntax::{Context, Level, Tm, Ty};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NbeError {
    /// Reaching this means the input was not well-typed.
    #[error("ill-typed input reached the evaluator: {0}")]
    IllTyped(String),
    #[error("evaluation exceeded the step limit of {0}")]
    StepLimit(u64),
}

type Result<T> = std::result::Result<T, NbeError>;

fn ill_typed<T>(msg: impl Into<String>) -> Result<T> {
    Err(NbeError::IllTyped(msg.into()))
}

/// Default divergence guard, overridable through `TTW_MAX_STEPS`.
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

fn env_max_steps() -> u64 {
    static LIMIT: OnceLock<u64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("TTW_MAX_STEPS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_STEPS)
    })
}

thread_local! {
    static STEPS: Cell<u64> = const { Cell::new(0) };
    static LIMIT_OVERRIDE: Cell<Option<u64>> = const { Cell::new(None) };
}

/// Overrides the step limit for the current thread.
pub fn set_step_limit(limit: Option<u64>) {
    LIMIT_OVERRIDE.with(|l| l.set(limit));
}

pub fn step_limit() -> u64 {
    LIMIT_OVERRIDE.with(|l| l.get()).unwrap_or_else(env_max_steps)
}

/// Resets the step counter; called at the entry of every top-level
/// normalization or type-checking request.
pub fn reset_steps() {
    STEPS.with(|s| s.set(0));
}

fn tick() -> Result<()> {
    let limit = step_limit();
    STEPS.with(|s| {
        let n = s.get() + 1;
        s.set(n);
        if n > limit {
            Err(NbeError::StepLimit(limit))
        } else {
            Ok(())
        }
    })
}

/// A de Bruijn level: position counted from the start of the context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lvl(pub usize);

impl Lvl {
    fn to_index(self, len: usize) -> Result<usize> {
        if self.0 < len {
            Ok(len - 1 - self.0)
        } else {
            ill_typed(format!("level {} escapes a context of length {len}", self.0))
        }
    }
}

#[derive(Clone, Debug)]
pub enum TypeValue {
    U(Level),
    Bool(Level),
    Lift(Arc<TypeValue>),
    Pi(Arc<TypeValue>, TyClosure),
    /// `El n` for a neutral code `n : U level`.
    ElNe {
        level: Level,
        code: Neutral,
    },
}

#[derive(Clone, Debug)]
pub enum Value {
    True(Level),
    False(Level),
    NeBool(Neutral),
    Lam(Closure),
    Code(Arc<TypeValue>),
    NeEl(Neutral),
}

/// Stuck computations, with the data needed to read them back.
#[derive(Clone, Debug)]
pub enum Neutral {
    Var(Lvl),
    Unlift(Arc<Neutral>),
    App {
        head: Arc<Neutral>,
        arg: Arc<Value>,
        dom: Arc<TypeValue>,
        cod: TyClosure,
    },
    ElimBool {
        scrut_level: Level,
        motive_level: Level,
        motive: TyClosure,
        on_true: Arc<Value>,
        on_false: Arc<Value>,
        scrutinee: Arc<Neutral>,
    },
}

/// Values of the variables of a context, innermost last.
#[derive(Clone, Debug, Default)]
pub struct Env {
    values: Vec<Value>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn push(&mut self, v: Value) {
        self.values.push(v);
    }

    pub fn extended(&self, v: Value) -> Env {
        let mut env = self.clone();
        env.push(v);
        env
    }

    pub fn lookup(&self, ix: usize) -> Result<&Value> {
        let len = self.values.len();
        if ix < len {
            Ok(&self.values[len - 1 - ix])
        } else {
            ill_typed(format!("unbound variable {ix} in an environment of length {len}"))
        }
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    /// The environment in which every variable of `ctx` is a fresh neutral,
    /// reflected at its evaluated type. Also returns those types.
    pub fn reflect_context(ctx: &Context) -> Result<(Env, Vec<TypeValue>)> {
        let mut env = Env::new();
        let mut types = Vec::with_capacity(ctx.len());
        for (k, ty) in ctx.entries().iter().enumerate() {
            let tv = eval_type(&env, ty)?;
            env.push(reflect(&tv, Neutral::Var(Lvl(k))));
            types.push(tv);
        }
        Ok((env, types))
    }
}

/// A type with one free variable, awaiting its value.
#[derive(Clone, Debug)]
pub struct TyClosure {
    env: Env,
    body: Arc<Ty>,
}

impl TyClosure {
    pub fn new(env: Env, body: Arc<Ty>) -> TyClosure {
        TyClosure { env, body }
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn instantiate(&self, v: Value) -> Result<TypeValue> {
        eval_type(&self.env.extended(v), &self.body)
    }
}

/// The semantic counterpart of a function.
#[derive(Clone, Debug)]
pub enum Closure {
    /// A lambda body under its defining environment.
    Term { env: Env, body: Arc<Tm> },
    /// The η-expansion of a neutral function.
    Reflected {
        head: Arc<Neutral>,
        dom: Arc<TypeValue>,
        cod: TyClosure,
    },
}

pub fn eval_type(env: &Env, ty: &Ty) -> Result<TypeValue> {
    tick()?;
    Ok(match ty {
        Ty::U(i) => TypeValue::U(*i),
        Ty::Bool(i) => TypeValue::Bool(*i),
        Ty::Lift(a) => TypeValue::Lift(Arc::new(eval_type(env, a)?)),
        Ty::Pi(a, b) => TypeValue::Pi(Arc::new(eval_type(env, a)?), TyClosure::new(env.clone(), b.clone())),
        Ty::El(t) => match eval(env, t)? {
            Value::Code(a) => Arc::unwrap_or_clone(a),
            other => return ill_typed(format!("El applied to a non-code value {other:?}")),
        },
    })
}

pub fn eval(env: &Env, t: &Tm) -> Result<Value> {
    tick()?;
    match t {
        Tm::Var(ix) => Ok(env.lookup(*ix)?.clone()),
        Tm::Lam(body) => Ok(Value::Lam(Closure::Term {
            env: env.clone(),
            body: body.clone(),
        })),
        Tm::App(f, a) => apply(&eval(env, f)?, eval(env, a)?),
        Tm::True(i) => Ok(Value::True(*i)),
        Tm::False(i) => Ok(Value::False(*i)),
        Tm::ElimB {
            scrut_level,
            motive_level,
            motive,
            on_true,
            on_false,
            scrutinee,
        } => {
            let motive = TyClosure::new(env.clone(), motive.clone());
            elim_bool_sem(
                *scrut_level,
                *motive_level,
                &motive,
                eval(env, on_true)?,
                eval(env, on_false)?,
                eval(env, scrutinee)?,
            )
        }
        Tm::Lift(a) | Tm::Unlift(a) => eval(env, a),
        Tm::Code(a) => Ok(Value::Code(Arc::new(eval_type(env, a)?))),
    }
}

pub fn apply(f: &Value, a: Value) -> Result<Value> {
    tick()?;
    match f {
        Value::Lam(Closure::Term { env, body }) => eval(&env.extended(a), body),
        Value::Lam(Closure::Reflected { head, dom, cod }) => {
            let result_ty = cod.instantiate(a.clone())?;
            let n = Neutral::App {
                head: head.clone(),
                arg: Arc::new(a),
                dom: dom.clone(),
                cod: cod.clone(),
            };
            Ok(reflect(&result_ty, n))
        }
        other => ill_typed(format!("applied a non-function value {other:?}")),
    }
}

/// The boolean eliminator on values. A neutral scrutinee produces a neutral
/// eliminator reflected at the motive instantiated with that scrutinee.
pub fn elim_bool_sem(
    scrut_level: Level,
    motive_level: Level,
    motive: &TyClosure,
    on_true: Value,
    on_false: Value,
    scrutinee: Value,
) -> Result<Value> {
    match scrutinee {
        Value::True(_) => Ok(on_true),
        Value::False(_) => Ok(on_false),
        Value::NeBool(n) => {
            let result_ty = motive.instantiate(Value::NeBool(n.clone()))?;
            let stuck = Neutral::ElimBool {
                scrut_level,
                motive_level,
                motive: motive.clone(),
                on_true: Arc::new(on_true),
                on_false: Arc::new(on_false),
                scrutinee: Arc::new(n),
            };
            Ok(reflect(&result_ty, stuck))
        }
        other => ill_typed(format!("eliminated a non-boolean value {other:?}")),
    }
}

/// Turns a neutral of type `ty` into a value of `ty`.
pub fn reflect(ty: &TypeValue, n: Neutral) -> Value {
    match ty {
        TypeValue::U(i) => Value::Code(Arc::new(TypeValue::ElNe { level: *i, code: n })),
        TypeValue::Bool(_) => Value::NeBool(n),
        TypeValue::Lift(a) => reflect(a, Neutral::Unlift(Arc::new(n))),
        TypeValue::Pi(dom, cod) => Value::Lam(Closure::Reflected {
            head: Arc::new(n),
            dom: dom.clone(),
            cod: cod.clone(),
        }),
        TypeValue::ElNe { .. } => Value::NeEl(n),
    }
}

/// Inverse of [`reflect`]: the neutral that `v` reflects at `ty`, if `v` is
/// of that shape.
pub fn neutral_of(ty: &TypeValue, v: &Value) -> Option<Neutral> {
    match (ty, v) {
        (TypeValue::U(_), Value::Code(a)) => match &**a {
            TypeValue::ElNe { code, .. } => Some(code.clone()),
            _ => None,
        },
        (TypeValue::Bool(_), Value::NeBool(n)) => Some(n.clone()),
        (TypeValue::Lift(a), v) => match neutral_of(a, v)? {
            Neutral::Unlift(n) => Some((*n).clone()),
            _ => None,
        },
        (TypeValue::Pi(..), Value::Lam(Closure::Reflected { head, .. })) => Some((**head).clone()),
        (TypeValue::ElNe { .. }, Value::NeEl(n)) => Some(n.clone()),
        _ => None,
    }
}

/// A fresh variable at level `len` and type `ty`.
pub fn fresh(len: usize, ty: &TypeValue) -> Value {
    reflect(ty, Neutral::Var(Lvl(len)))
}

/// Reads back a value of type `ty` in a context of length `len`.
pub fn quote(len: usize, ty: &TypeValue, v: &Value) -> Result<Nf> {
    tick()?;
    match (ty, v) {
        (TypeValue::Pi(dom, cod), f @ Value::Lam(_)) => {
            let x = fresh(len, dom);
            let cod_x = cod.instantiate(x.clone())?;
            let body = quote(len + 1, &cod_x, &apply(f, x)?)?;
            Ok(Nf::Lam {
                dom: quote_type(len, dom)?,
                cod: quote_type(len + 1, &cod_x)?,
                body: Box::new(body),
            })
        }
        (TypeValue::Bool(i), Value::True(j)) if i == j => Ok(Nf::True(*i)),
        (TypeValue::Bool(i), Value::False(j)) if i == j => Ok(Nf::False(*i)),
        (TypeValue::Bool(_), Value::NeBool(n)) => Ok(Nf::NeBool(quote_ne(len, n)?)),
        (TypeValue::Lift(a), v) => Ok(Nf::Lift(Box::new(quote(len, a, v)?))),
        (TypeValue::U(_), Value::Code(a)) => Ok(Nf::TypeCode(quote_type(len, a)?)),
        (TypeValue::ElNe { .. }, Value::NeEl(n)) => Ok(Nf::NeEl(quote_ne(len, n)?)),
        (ty, v) => ill_typed(format!("value {v:?} does not inhabit {ty:?}")),
    }
}

pub fn quote_type(len: usize, ty: &TypeValue) -> Result<NfTy> {
    tick()?;
    Ok(match ty {
        TypeValue::U(i) => NfTy::U(*i),
        TypeValue::Bool(i) => NfTy::Bool(*i),
        TypeValue::Lift(a) => NfTy::Lift(Box::new(quote_type(len, a)?)),
        TypeValue::Pi(dom, cod) => {
            let cod_x = cod.instantiate(fresh(len, dom))?;
            NfTy::Pi(Box::new(quote_type(len, dom)?), Box::new(quote_type(len + 1, &cod_x)?))
        }
        TypeValue::ElNe { code, .. } => NfTy::NeU(quote_ne(len, code)?),
    })
}

pub fn quote_ne(len: usize, n: &Neutral) -> Result<Ne> {
    tick()?;
    Ok(match n {
        Neutral::Var(l) => Ne::Var(l.to_index(len)?),
        Neutral::Unlift(n) => Ne::Unlift(Box::new(quote_ne(len, n)?)),
        Neutral::App { head, arg, dom, cod } => {
            let cod_x = cod.instantiate(fresh(len, dom))?;
            Ne::App {
                head: Box::new(quote_ne(len, head)?),
                dom: Box::new(quote_type(len, dom)?),
                cod: Box::new(quote_type(len + 1, &cod_x)?),
                arg: Box::new(quote(len, dom, arg)?),
            }
        }
        Neutral::ElimBool {
            scrut_level,
            motive_level,
            motive,
            on_true,
            on_false,
            scrutinee,
        } => {
            let bool_ty = TypeValue::Bool(*scrut_level);
            let motive_x = motive.instantiate(fresh(len, &bool_ty))?;
            let motive_t = motive.instantiate(Value::True(*scrut_level))?;
            let motive_f = motive.instantiate(Value::False(*scrut_level))?;
            Ne::ElimBool {
                scrut_level: *scrut_level,
                motive_level: *motive_level,
                motive: Box::new(quote_type(len + 1, &motive_x)?),
                on_true: Box::new(quote(len, &motive_t, on_true)?),
                on_false: Box::new(quote(len, &motive_f, on_false)?),
                scrutinee: Box::new(quote_ne(len, scrutinee)?),
            }
        }
    })
}

/// Normal form of `a : A` in `ctx`. The caller is responsible for
/// type-checking; ill-typed input yields [`NbeError::IllTyped`].
pub fn norm(ctx: &Context, ty: &Ty, a: &Tm) -> Result<Nf> {
    reset_steps();
    let (env, _) = Env::reflect_context(ctx)?;
    let tv = eval_type(&env, ty)?;
    let v = eval(&env, a)?;
    quote(ctx.len(), &tv, &v)
}

pub fn norm_type(ctx: &Context, ty: &Ty) -> Result<NfTy> {
    reset_steps();
    let (env, _) = Env::reflect_context(ctx)?;
    quote_type(ctx.len(), &eval_type(&env, ty)?)
}

/// The universe level of a type value.
pub fn type_level(ty: &TypeValue) -> Option<Level> {
    match ty {
        TypeValue::U(i) => i.succ(),
        TypeValue::Bool(i) => Some(*i),
        TypeValue::Lift(a) => type_level(a)?.succ(),
        TypeValue::Pi(dom, _) => type_level(dom),
        TypeValue::ElNe { level, .. } => Some(*level),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::lvl;

    fn b0() -> Ty {
        Ty::Bool(lvl(0))
    }

    fn vb0() -> TypeValue {
        TypeValue::Bool(lvl(0))
    }

    fn t0() -> Tm {
        Tm::True(lvl(0))
    }

    fn f0() -> Tm {
        Tm::False(lvl(0))
    }

    fn closed(t: &Tm) -> Value {
        eval(&Env::new(), t).unwrap()
    }

    fn id_closure() -> Value {
        closed(&Tm::lam(Tm::var(0)))
    }

    fn is_true(v: &Value) -> bool {
        matches!(v, Value::True(i) if *i == lvl(0))
    }

    fn is_false(v: &Value) -> bool {
        matches!(v, Value::False(i) if *i == lvl(0))
    }

    #[test]
    fn eval_type_examples() {
        assert!(matches!(eval_type(&Env::new(), &b0()).unwrap(), TypeValue::Bool(i) if i == lvl(0)));
        assert!(matches!(
            eval_type(&Env::new(), &Ty::pi(b0(), b0())).unwrap(),
            TypeValue::Pi(dom, _) if matches!(*dom, TypeValue::Bool(_))
        ));
        let env = Env::new().extended(Value::Code(Arc::new(vb0())));
        assert!(matches!(
            eval_type(&env, &Ty::el(Tm::var(0))).unwrap(),
            TypeValue::Bool(i) if i == lvl(0)
        ));
    }

    #[test]
    fn eval_examples() {
        let motive = b0();
        assert!(is_true(&closed(&Tm::elim_b(lvl(0), lvl(0), motive, t0(), f0(), t0()))));
        assert!(is_false(&closed(&Tm::app(Tm::lam(Tm::var(0)), f0()))));
        assert!(is_true(&closed(&Tm::unlift(Tm::lift(t0())))));
    }

    #[test]
    fn apply_examples() {
        assert!(is_true(&apply(&id_closure(), Value::True(lvl(0))).unwrap()));
        let konst = closed(&Tm::lam(t0()));
        assert!(is_true(&apply(&konst, Value::NeBool(Neutral::Var(Lvl(0)))).unwrap()));
        assert!(apply(&Value::True(lvl(0)), Value::True(lvl(0))).is_err());
    }

    #[test]
    fn applying_a_reflected_function_builds_a_neutral_application() {
        let pi = eval_type(&Env::new(), &Ty::pi(b0(), b0())).unwrap();
        let f = reflect(&pi, Neutral::Var(Lvl(0)));
        let out = apply(&f, Value::True(lvl(0))).unwrap();
        let Value::NeBool(n) = &out else {
            panic!("expected a neutral boolean, got {out:?}")
        };
        assert_eq!(
            quote_ne(1, n).unwrap(),
            Ne::App {
                head: Box::new(Ne::Var(0)),
                dom: Box::new(NfTy::Bool(lvl(0))),
                cod: Box::new(NfTy::Bool(lvl(0))),
                arg: Box::new(Nf::True(lvl(0))),
            }
        );
    }

    #[test]
    fn reflect_examples() {
        let n = || Neutral::Var(Lvl(0));
        assert!(matches!(reflect(&vb0(), n()), Value::NeBool(Neutral::Var(Lvl(0)))));
        let lifted = TypeValue::Lift(Arc::new(vb0()));
        let v = reflect(&lifted, n());
        assert!(matches!(&v, Value::NeBool(Neutral::Unlift(inner)) if matches!(**inner, Neutral::Var(Lvl(0)))));
        assert_eq!(
            quote(1, &lifted, &v).unwrap(),
            Nf::Lift(Box::new(Nf::NeBool(Ne::Unlift(Box::new(Ne::Var(0))))))
        );
        let code = reflect(&TypeValue::U(lvl(0)), n());
        let Value::Code(ty) = &code else {
            panic!("expected a code")
        };
        assert!(matches!(**ty, TypeValue::ElNe { level, code: Neutral::Var(Lvl(0)) } if level == lvl(0)));
        assert_eq!(quote_type(1, ty).unwrap(), NfTy::NeU(Ne::Var(0)));
    }

    #[test]
    fn quote_examples() {
        assert_eq!(quote(0, &vb0(), &Value::True(lvl(0))).unwrap(), Nf::True(lvl(0)));
        let pi = eval_type(&Env::new(), &Ty::pi(b0(), b0())).unwrap();
        assert_eq!(
            quote(0, &pi, &id_closure()).unwrap(),
            Nf::Lam {
                dom: NfTy::Bool(lvl(0)),
                cod: NfTy::Bool(lvl(0)),
                body: Box::new(Nf::NeBool(Ne::Var(0))),
            }
        );
        assert_eq!(
            quote(1, &vb0(), &Value::NeBool(Neutral::Var(Lvl(0)))).unwrap(),
            Nf::NeBool(Ne::Var(0))
        );
        // Level mismatch is a kernel bug, reported as ill-typed.
        assert!(quote(0, &TypeValue::Bool(lvl(1)), &Value::True(lvl(0))).is_err());
    }

    #[test]
    fn quote_type_examples() {
        assert_eq!(quote_type(0, &vb0()).unwrap(), NfTy::Bool(lvl(0)));
        let pi = eval_type(&Env::new(), &Ty::pi(b0(), b0())).unwrap();
        assert_eq!(
            quote_type(0, &pi).unwrap(),
            NfTy::Pi(Box::new(NfTy::Bool(lvl(0))), Box::new(NfTy::Bool(lvl(0))))
        );
        let el = TypeValue::ElNe {
            level: lvl(0),
            code: Neutral::Var(Lvl(0)),
        };
        assert_eq!(quote_type(1, &el).unwrap(), NfTy::NeU(Ne::Var(0)));
    }

    #[test]
    fn elim_bool_examples() {
        let motive = TyClosure::new(Env::new(), Arc::new(b0()));
        let t = || Value::True(lvl(0));
        let f = || Value::False(lvl(0));
        let r = elim_bool_sem(lvl(0), lvl(0), &motive, t(), f(), t()).unwrap();
        assert!(is_true(&r));
        let r = elim_bool_sem(lvl(0), lvl(0), &motive, t(), f(), f()).unwrap();
        assert!(is_false(&r));
        let r = elim_bool_sem(lvl(0), lvl(0), &motive, t(), f(), Value::NeBool(Neutral::Var(Lvl(0)))).unwrap();
        assert_eq!(
            quote(1, &vb0(), &r).unwrap(),
            Nf::NeBool(Ne::ElimBool {
                scrut_level: lvl(0),
                motive_level: lvl(0),
                motive: Box::new(NfTy::Bool(lvl(0))),
                on_true: Box::new(Nf::True(lvl(0))),
                on_false: Box::new(Nf::False(lvl(0))),
                scrutinee: Box::new(Ne::Var(0)),
            })
        );
    }

    #[test]
    fn norm_examples() {
        let empty = Context::empty();
        assert_eq!(
            norm(&empty, &b0(), &Tm::elim_b(lvl(0), lvl(0), b0(), t0(), f0(), f0())).unwrap(),
            Nf::False(lvl(0))
        );
        assert_eq!(norm(&empty, &b0(), &t0()).unwrap(), Nf::True(lvl(0)));
        // η-expansion of a function variable: the head is index 1 under the binder.
        let pi = Ty::pi(b0(), b0());
        let ctx = Context::from_entries(vec![pi.clone()]).unwrap();
        assert_eq!(
            norm(&ctx, &pi, &Tm::var(0)).unwrap(),
            Nf::Lam {
                dom: NfTy::Bool(lvl(0)),
                cod: NfTy::Bool(lvl(0)),
                body: Box::new(Nf::NeBool(Ne::App {
                    head: Box::new(Ne::Var(1)),
                    dom: Box::new(NfTy::Bool(lvl(0))),
                    cod: Box::new(NfTy::Bool(lvl(0))),
                    arg: Box::new(Nf::NeBool(Ne::Var(0))),
                })),
            }
        );
    }

    #[test]
    fn el_of_code_collapses() {
        let ctx = Context::empty();
        let a = Ty::pi(b0(), Ty::lift(b0()));
        assert_eq!(
            norm_type(&ctx, &Ty::el(Tm::code(a.clone()))).unwrap(),
            norm_type(&ctx, &a).unwrap()
        );
    }

    #[test]
    fn step_limit_stops_evaluation() {
        set_step_limit(Some(3));
        let r = norm(
            &Context::empty(),
            &b0(),
            &Tm::app(Tm::lam(Tm::app(Tm::lam(Tm::var(0)), Tm::var(0))), t0()),
        );
        set_step_limit(None);
        assert_eq!(r, Err(NbeError::StepLimit(3)));
    }

    #[test]
    fn type_levels() {
        assert_eq!(type_level(&TypeValue::U(lvl(0))), Some(lvl(1)));
        assert_eq!(type_level(&TypeValue::Lift(Arc::new(vb0()))), Some(lvl(1)));
        assert_eq!(type_level(&TypeValue::U(lvl(64))), None);
    }
}
