//! Bidirectional type checking. Conversion compares normal types produced by
//! [`crate::nbe`].
//!
//! Beyond the usual inference rules, a β-redex `(fun x => b) a u …` infers
//! when `a` infers: `b` is inferred under `x : A` and its type is then
//! instantiated with the value of `a`.

use std::fmt;

use thiserror::Error;

use crate::nbe::{self, eval, eval_type, fresh, quote_type, type_level, Env, NbeError, TyClosure, TypeValue, Value};
use crate::parse::Definition;
use crate::pretty::{ty_to_string, var_name};
use crate::syntax::{Context, Level, Tm, Ty};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeErrorKind {
    UnboundVariable(usize),
    CannotInfer,
    NotAFunction,
    NotALift,
    NotAUniverse,
    LevelMismatch,
    TypeMismatch,
    LevelOverflow,
    ExpectedFunctionType,
    Eval(NbeError),
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeErrorKind::UnboundVariable(ix) => write!(f, "unbound variable #{ix}"),
            TypeErrorKind::CannotInfer => f.write_str("cannot infer the type of this term"),
            TypeErrorKind::NotAFunction => f.write_str("applying a term that is not a function"),
            TypeErrorKind::NotALift => f.write_str("unlift of a term whose type is not a Lift"),
            TypeErrorKind::NotAUniverse => f.write_str("El of a term that is not a type code"),
            TypeErrorKind::LevelMismatch => f.write_str("universe level mismatch"),
            TypeErrorKind::TypeMismatch => f.write_str("type mismatch"),
            TypeErrorKind::LevelOverflow => {
                write!(f, "universe level exceeds the maximum {}", Level::MAX)
            }
            TypeErrorKind::ExpectedFunctionType => f.write_str("a function was checked against a non-function type"),
            TypeErrorKind::Eval(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    /// The context, printed.
    pub context: String,
    pub expected: Option<String>,
    pub actual: Option<String>,
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\n  in context: {}", self.kind, self.context)?;
        if let Some(e) = &self.expected {
            write!(f, "\n  expected:   {e}")?;
        }
        if let Some(a) = &self.actual {
            write!(f, "\n  actual:     {a}")?;
        }
        Ok(())
    }
}

pub type Result<T> = std::result::Result<T, TypeError>;

/// A context during checking: the types of the variables as values, and the
/// environment assigning each variable a fresh neutral.
#[derive(Clone, Debug, Default)]
pub struct TyCtx {
    env: Env,
    types: Vec<TypeValue>,
}

impl TyCtx {
    pub fn empty() -> TyCtx {
        TyCtx::default()
    }

    /// Checks that every entry of `ctx` is a type and builds the checking
    /// context.
    pub fn from_context(ctx: &Context) -> Result<TyCtx> {
        nbe::reset_steps();
        let mut tc = TyCtx::empty();
        for ty in ctx.entries() {
            check_type_in(&tc, ty)?;
            let tv = tc.eval_type(ty)?;
            tc = tc.extend(tv);
        }
        Ok(tc)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn types(&self) -> &[TypeValue] {
        &self.types
    }

    pub fn extend(&self, ty: TypeValue) -> TyCtx {
        let mut next = self.clone();
        next.env.push(fresh(self.len(), &ty));
        next.types.push(ty);
        next
    }

    fn eval_type(&self, ty: &Ty) -> Result<TypeValue> {
        eval_type(&self.env, ty).map_err(|e| self.nbe_error(e))
    }

    fn eval(&self, t: &Tm) -> Result<Value> {
        eval(&self.env, t).map_err(|e| self.nbe_error(e))
    }

    fn show(&self, ty: &TypeValue) -> String {
        show_type(self.len(), ty)
    }

    fn context_string(&self) -> String {
        if self.types.is_empty() {
            return "·".to_string();
        }
        self.types
            .iter()
            .enumerate()
            .map(|(k, ty)| format!("{} : {}", var_name(k), show_type(k, ty)))
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn error(&self, kind: TypeErrorKind) -> TypeError {
        TypeError {
            kind,
            context: self.context_string(),
            expected: None,
            actual: None,
        }
    }

    fn mismatch(&self, kind: TypeErrorKind, expected: &TypeValue, actual: &TypeValue) -> TypeError {
        TypeError {
            expected: Some(self.show(expected)),
            actual: Some(self.show(actual)),
            ..self.error(kind)
        }
    }

    fn nbe_error(&self, e: NbeError) -> TypeError {
        self.error(TypeErrorKind::Eval(e))
    }
}

fn show_type(len: usize, ty: &TypeValue) -> String {
    match quote_type(len, ty) {
        Ok(nf) => ty_to_string(len, &nf.erase()),
        Err(_) => format!("{ty:?}"),
    }
}

/// Definitional equality of two types in `ctx`.
pub fn convert(ctx: &TyCtx, a: &TypeValue, b: &TypeValue) -> std::result::Result<bool, NbeError> {
    Ok(quote_type(ctx.len(), a)? == quote_type(ctx.len(), b)?)
}

/// Definitional equality of two terms of type `ty` (given as syntax) in
/// `ctx`. The inputs are assumed to be well-typed.
pub fn convert_terms(ctx: &TyCtx, ty: &Ty, a: &Tm, b: &Tm) -> std::result::Result<bool, NbeError> {
    let tv = eval_type(&ctx.env, ty)?;
    let va = eval(&ctx.env, a)?;
    let vb = eval(&ctx.env, b)?;
    Ok(nbe::quote(ctx.len(), &tv, &va)? == nbe::quote(ctx.len(), &tv, &vb)?)
}

fn succ(ctx: &TyCtx, i: Level) -> Result<Level> {
    i.succ().ok_or_else(|| ctx.error(TypeErrorKind::LevelOverflow))
}

fn level_of(ctx: &TyCtx, ty: &TypeValue) -> Result<Level> {
    type_level(ty).ok_or_else(|| ctx.error(TypeErrorKind::LevelOverflow))
}

/// Checks that `ty` is a type in `ctx` and returns its universe level.
pub fn check_type(ctx: &TyCtx, ty: &Ty) -> Result<Level> {
    nbe::reset_steps();
    check_type_in(ctx, ty)
}

/// Infers the type of `t` in `ctx`.
pub fn infer(ctx: &TyCtx, t: &Tm) -> Result<TypeValue> {
    nbe::reset_steps();
    infer_in(ctx, t)
}

/// Checks `t` against `ty` in `ctx`.
pub fn check(ctx: &TyCtx, t: &Tm, ty: &TypeValue) -> Result<()> {
    nbe::reset_steps();
    check_in(ctx, t, ty)
}

fn check_type_in(ctx: &TyCtx, ty: &Ty) -> Result<Level> {
    match ty {
        Ty::U(i) => succ(ctx, *i),
        Ty::Bool(i) => Ok(*i),
        Ty::El(t) => match infer_in(ctx, t)? {
            TypeValue::U(i) => Ok(i),
            other => Err(TypeError {
                actual: Some(ctx.show(&other)),
                ..ctx.error(TypeErrorKind::NotAUniverse)
            }),
        },
        Ty::Lift(a) => {
            let i = check_type_in(ctx, a)?;
            succ(ctx, i)
        }
        Ty::Pi(a, b) => {
            let i = check_type_in(ctx, a)?;
            let dom = ctx.eval_type(a)?;
            let j = check_type_in(&ctx.extend(dom), b)?;
            if i != j {
                return Err(TypeError {
                    expected: Some(format!("codomain at level {i}")),
                    actual: Some(format!("codomain at level {j}")),
                    ..ctx.error(TypeErrorKind::LevelMismatch)
                });
            }
            Ok(i)
        }
    }
}

fn check_in(ctx: &TyCtx, t: &Tm, ty: &TypeValue) -> Result<()> {
    match (t, ty) {
        (Tm::Lam(body), TypeValue::Pi(dom, cod)) => {
            let x = fresh(ctx.len(), dom);
            let cod_x = cod.instantiate(x).map_err(|e| ctx.nbe_error(e))?;
            check_in(&ctx.extend((**dom).clone()), body, &cod_x)
        }
        (Tm::Lam(_), other) => Err(TypeError {
            actual: Some(ctx.show(other)),
            ..ctx.error(TypeErrorKind::ExpectedFunctionType)
        }),
        (Tm::Lift(a), TypeValue::Lift(inner)) => check_in(ctx, a, inner),
        (Tm::Unlift(a), ty) => check_in(ctx, a, &TypeValue::Lift(ty.clone().into())),
        _ => {
            let actual = match infer_in(ctx, t) {
                Err(e) if e.kind == TypeErrorKind::CannotInfer && is_redex(t) => {
                    let (head, args) = spine(t);
                    return check_spine(ctx, head, &args, ty);
                }
                other => other?,
            };
            let same = convert(ctx, ty, &actual).map_err(|e| ctx.nbe_error(e))?;
            if same {
                return Ok(());
            }
            let kind = if type_level(ty) != type_level(&actual) {
                TypeErrorKind::LevelMismatch
            } else {
                TypeErrorKind::TypeMismatch
            };
            Err(ctx.mismatch(kind, ty, &actual))
        }
    }
}

fn infer_in(ctx: &TyCtx, t: &Tm) -> Result<TypeValue> {
    match t {
        Tm::Var(ix) => {
            let len = ctx.len();
            if *ix < len {
                Ok(ctx.types[len - 1 - ix].clone())
            } else {
                Err(ctx.error(TypeErrorKind::UnboundVariable(*ix)))
            }
        }
        Tm::Lam(_) => Err(ctx.error(TypeErrorKind::CannotInfer)),
        Tm::App(..) => {
            let (head, args) = spine(t);
            infer_spine(ctx, head, &args)
        }
        Tm::True(i) | Tm::False(i) => Ok(TypeValue::Bool(*i)),
        Tm::ElimB {
            scrut_level,
            motive_level,
            motive,
            on_true,
            on_false,
            scrutinee,
        } => {
            let bool_ty = TypeValue::Bool(*scrut_level);
            let j = check_type_in(&ctx.extend(bool_ty.clone()), motive)?;
            if j != *motive_level {
                return Err(TypeError {
                    expected: Some(format!("motive at level {motive_level}")),
                    actual: Some(format!("motive at level {j}")),
                    ..ctx.error(TypeErrorKind::LevelMismatch)
                });
            }
            let motive = TyClosure::new(ctx.env.clone(), motive.clone());
            let at = |v: Value| motive.instantiate(v).map_err(|e| ctx.nbe_error(e));
            check_in(ctx, scrutinee, &bool_ty)?;
            check_in(ctx, on_true, &at(Value::True(*scrut_level))?)?;
            check_in(ctx, on_false, &at(Value::False(*scrut_level))?)?;
            at(ctx.eval(scrutinee)?)
        }
        Tm::Lift(a) => {
            let ty = infer_in(ctx, a)?;
            let i = level_of(ctx, &ty)?;
            succ(ctx, i)?;
            Ok(TypeValue::Lift(ty.into()))
        }
        Tm::Unlift(a) => match infer_in(ctx, a)? {
            TypeValue::Lift(inner) => Ok((*inner).clone()),
            other => Err(TypeError {
                actual: Some(ctx.show(&other)),
                ..ctx.error(TypeErrorKind::NotALift)
            }),
        },
        Tm::Code(a) => {
            let i = check_type_in(ctx, a)?;
            succ(ctx, i)?;
            Ok(TypeValue::U(i))
        }
    }
}

fn spine(t: &Tm) -> (&Tm, Vec<Tm>) {
    let mut args = Vec::new();
    let mut head = t;
    while let Tm::App(f, a) = head {
        args.push((**a).clone());
        head = f;
    }
    args.reverse();
    (head, args)
}

fn is_redex(t: &Tm) -> bool {
    matches!(spine(t).0, Tm::Lam(_)) && matches!(t, Tm::App(..))
}

fn shift_args(ctx: &TyCtx, args: &[Tm]) -> Result<Vec<Tm>> {
    args.iter()
        .map(|a| a.shift(0, 1))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| ctx.error(TypeErrorKind::CannotInfer))
}

/// Checks `(fun x => b) a u …` against a type that does not mention `x`,
/// for bodies whose type cannot be inferred.
fn check_spine(ctx: &TyCtx, head: &Tm, args: &[Tm], ty: &TypeValue) -> Result<()> {
    match (head, args.split_first()) {
        (Tm::Lam(body), Some((first, rest))) => {
            let dom = infer_in(ctx, first)?;
            let rest = shift_args(ctx, rest)?;
            check_spine(&ctx.extend(dom), body, &rest, ty)
        }
        _ => {
            let t = args.iter().fold(head.clone(), |f, a| Tm::app(f, a.clone()));
            check_in(ctx, &t, ty)
        }
    }
}

fn infer_spine(ctx: &TyCtx, head: &Tm, args: &[Tm]) -> Result<TypeValue> {
    if let (Tm::Lam(body), Some((first, rest))) = (head, args.split_first()) {
        let dom = infer_in(ctx, first)?;
        let v = ctx.eval(first)?;
        let rest = shift_args(ctx, rest)?;
        let inner = ctx.extend(dom);
        let body_ty = infer_spine(&inner, body, &rest)?;
        // Instantiate the bound variable of `body_ty` with `v`.
        let nf = quote_type(inner.len(), &body_ty).map_err(|e| ctx.nbe_error(e))?;
        return eval_type(&ctx.env.extended(v), &nf.erase()).map_err(|e| ctx.nbe_error(e));
    }
    let mut ty = infer_in(ctx, head)?;
    for arg in args {
        match ty {
            TypeValue::Pi(dom, cod) => {
                check_in(ctx, arg, &dom)?;
                let v = ctx.eval(arg)?;
                ty = cod.instantiate(v).map_err(|e| ctx.nbe_error(e))?;
            }
            other => {
                return Err(TypeError {
                    actual: Some(ctx.show(&other)),
                    ..ctx.error(TypeErrorKind::NotAFunction)
                })
            }
        }
    }
    Ok(ty)
}

/// A checked definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedDef {
    pub name: String,
    pub ty: Ty,
    pub body: Tm,
    pub level: Level,
}

/// Checks a closed definition: its type is a type and its body has it.
pub fn check_def(def: &Definition) -> Result<TypedDef> {
    nbe::reset_steps();
    let ctx = TyCtx::empty();
    let level = check_type_in(&ctx, &def.ty)?;
    let ty = ctx.eval_type(&def.ty)?;
    check_in(&ctx, &def.body, &ty)?;
    Ok(TypedDef {
        name: def.name.clone(),
        ty: def.ty.clone(),
        body: def.body.clone(),
        level,
    })
}

/// Checks `t : A` in `ctx`, all given as syntax.
pub fn check_in_context(ctx: &Context, t: &Tm, ty: &Ty) -> Result<()> {
    let tc = TyCtx::from_context(ctx)?;
    check_type_in(&tc, ty)?;
    let tv = tc.eval_type(ty)?;
    check_in(&tc, t, &tv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_file, parse_tm, parse_ty};
    use crate::syntax::lvl;

    fn b(i: u32) -> TypeValue {
        TypeValue::Bool(lvl(i))
    }

    fn closed_ty(src: &str) -> TypeValue {
        let ty = parse_ty(src).unwrap();
        eval_type(&Env::new(), &ty).unwrap()
    }

    #[test]
    fn infers_basic_forms() {
        let ctx = TyCtx::empty();
        assert!(matches!(infer(&ctx, &Tm::True(lvl(0))).unwrap(), TypeValue::Bool(l) if l == lvl(0)));
        let ctx1 = ctx.extend(b(0));
        assert!(matches!(infer(&ctx1, &Tm::var(0)).unwrap(), TypeValue::Bool(l) if l == lvl(0)));
        let err = infer(&ctx, &Tm::lam(Tm::var(0))).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::CannotInfer);
        let err = infer(&ctx, &Tm::var(0)).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::UnboundVariable(0));
    }

    #[test]
    fn checks_against_types() {
        let ctx = TyCtx::empty();
        check(&ctx, &Tm::lam(Tm::var(0)), &closed_ty("Bool 0 -> Bool 0")).unwrap();
        let err = check(&ctx, &Tm::True(lvl(0)), &b(1)).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::LevelMismatch);
        assert_eq!(err.expected.as_deref(), Some("Bool 1"));
        assert_eq!(err.actual.as_deref(), Some("Bool 0"));
        check(&ctx, &Tm::lift(Tm::True(lvl(0))), &closed_ty("Lift (Bool 0)")).unwrap();
        let err = check(&ctx, &Tm::True(lvl(0)), &closed_ty("Lift (Bool 0)")).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::LevelMismatch);
        let err = check(&ctx, &Tm::True(lvl(1)), &closed_ty("Lift (Bool 0)")).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::TypeMismatch);
    }

    #[test]
    fn conversion() {
        let ctx = TyCtx::empty();
        assert!(convert(&ctx, &b(0), &b(0)).unwrap());
        assert!(convert(&ctx, &closed_ty("El (code (Bool 0))"), &b(0)).unwrap());
        assert!(!convert(&ctx, &b(0), &closed_ty("Lift (Bool 0)")).unwrap());
    }

    #[test]
    fn levels_of_types() {
        let ctx = TyCtx::empty();
        assert_eq!(check_type(&ctx, &parse_ty("U 0").unwrap()).unwrap(), lvl(1));
        assert_eq!(check_type(&ctx, &parse_ty("Lift (Bool 2)").unwrap()).unwrap(), lvl(3));
        assert_eq!(
            check_type(&ctx, &parse_ty("(a : U 0) -> El a -> El a").unwrap())
                .unwrap_err()
                .kind,
            TypeErrorKind::LevelMismatch
        );
        assert_eq!(
            check_type(&ctx, &parse_ty("(a : U 0) -> Lift (El a) -> Lift (El a)").unwrap()).unwrap(),
            lvl(1)
        );
        assert_eq!(
            check_type(&ctx, &parse_ty("U 64").unwrap()).unwrap_err().kind,
            TypeErrorKind::LevelOverflow
        );
        assert_eq!(
            check_type(&ctx, &parse_ty("El (true 0)").unwrap()).unwrap_err().kind,
            TypeErrorKind::NotAUniverse
        );
    }

    #[test]
    fn beta_redexes_infer() {
        let ctx = TyCtx::empty();
        let k = parse_tm("(fun x y => x) (true 0) (false 1)", &[]).unwrap();
        assert!(convert(&ctx, &infer(&ctx, &k).unwrap(), &b(0)).unwrap());
        // The result type depends on the argument.
        let dep = parse_tm(
            "(fun x => elimB 0 1 (b. U 0) (code (Bool 0)) (code (Bool 0 -> Bool 0)) x) (false 0)",
            &[],
        )
        .unwrap();
        let ty = infer(&ctx, &dep).unwrap();
        assert!(matches!(ty, TypeValue::U(l) if l == lvl(0)));
        let inner = ctx.extend(eval_type(&Env::new(), &Ty::el(dep.clone())).unwrap());
        let applied = Tm::app(Tm::var(0), Tm::True(lvl(0)));
        assert!(matches!(infer(&inner, &applied).unwrap(), TypeValue::Bool(l) if l == lvl(0)));
    }

    #[test]
    fn elim_motive_is_instantiated() {
        let src = "def sel : (b : Bool 0) -> El (elimB 0 1 (x. U 0) (code (Bool 0)) (code (Bool 0 -> Bool 0)) b) \
                   := fun b => elimB 0 0 (x. El (elimB 0 1 (y. U 0) (code (Bool 0)) (code (Bool 0 -> Bool 0)) x)) (true 0) (fun y => y) b";
        let defs = parse_file(src).unwrap();
        let td = check_def(&defs[0]).unwrap();
        assert_eq!(td.level, lvl(0));
        let bad = "def sel : (b : Bool 0) -> Bool 0 := fun b => elimB 0 1 (x. Bool 0) (true 0) (false 0) b";
        let err = check_def(&parse_file(bad).unwrap()[0]).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::LevelMismatch);
    }

    #[test]
    fn errors_print_context_and_types() {
        let ctx =
            TyCtx::from_context(&Context::from_entries(vec![Ty::U(lvl(0)), Ty::el(Tm::var(0))]).unwrap()).unwrap();
        let err = check(&ctx, &Tm::var(0), &b(0)).unwrap_err();
        assert_eq!(err.context, "x0 : U 0, x1 : El x0");
        assert_eq!(err.actual.as_deref(), Some("El x0"));
        let text = err.to_string();
        assert!(text.contains("type mismatch") && text.contains("Bool 0"));
    }

    #[test]
    fn unlift_checks_through_lift() {
        let ctx = TyCtx::empty().extend(TypeValue::Lift(b(0).into()));
        check(&ctx, &Tm::unlift(Tm::var(0)), &b(0)).unwrap();
        assert_eq!(
            infer(&ctx.extend(b(0)), &Tm::unlift(Tm::var(0))).unwrap_err().kind,
            TypeErrorKind::NotALift
        );
        let f = parse_tm("lift (fun x => x)", &[]).unwrap();
        check(&TyCtx::empty(), &f, &closed_ty("Lift (Bool 0 -> Bool 0)")).unwrap();
    }
}
