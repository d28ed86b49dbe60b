//! Exhaustive enumeration of normal forms, neutrals and normal types by
//! exact size, and of the closed boolean terms used to exercise canonicity.
//!
//! Enumeration is type-directed, so everything produced is well-typed by
//! construction. Results are memoized per context.

use std::collections::HashMap;

use crate::nbe::{eval, eval_type, fresh, quote_type, NbeError, TyClosure, TypeValue, Value};
use crate::normal::{Ne, Nf, NfTy};
use crate::syntax::{Level, Tm, Ty};
use crate::typecheck::TyCtx;

type Result<T> = std::result::Result<T, NbeError>;

/// A neutral together with its type.
#[derive(Clone, Debug)]
pub struct TypedNe {
    pub ne: Ne,
    pub ty: TypeValue,
    pub ty_nf: NfTy,
}

type CtxKey = Vec<NfTy>;

/// Memoizing enumerator. Eliminator motives range over levels
/// `0..=max_motive_level`.
pub struct Enumerator {
    max_motive_level: u32,
    ne_cache: HashMap<(CtxKey, usize), Vec<TypedNe>>,
    nf_cache: HashMap<(CtxKey, NfTy, usize), Vec<Nf>>,
    nfty_cache: HashMap<(CtxKey, Level, usize), Vec<NfTy>>,
}

fn ctx_key(ctx: &TyCtx) -> Result<CtxKey> {
    ctx.types()
        .iter()
        .enumerate()
        .map(|(k, ty)| quote_type(k, ty))
        .collect()
}

impl Enumerator {
    pub fn new(max_motive_level: u32) -> Enumerator {
        Enumerator {
            max_motive_level,
            ne_cache: HashMap::new(),
            nf_cache: HashMap::new(),
            nfty_cache: HashMap::new(),
        }
    }

    /// Normal types of level `level` and size at most `size`.
    pub fn normal_types_up_to(&mut self, ctx: &TyCtx, level: Level, size: usize) -> Result<Vec<NfTy>> {
        let mut out = Vec::new();
        for k in 1..=size {
            out.extend(self.normal_types(ctx, level, k)?);
        }
        Ok(out)
    }

    pub fn normal_forms_up_to(&mut self, ctx: &TyCtx, ty: &TypeValue, size: usize) -> Result<Vec<Nf>> {
        let mut out = Vec::new();
        for k in 1..=size {
            out.extend(self.normal_forms(ctx, ty, k)?);
        }
        Ok(out)
    }

    pub fn neutrals_up_to(&mut self, ctx: &TyCtx, size: usize) -> Result<Vec<TypedNe>> {
        let mut out = Vec::new();
        for k in 1..=size {
            out.extend(self.neutrals(ctx, k)?);
        }
        Ok(out)
    }

    /// Normal types of level `level` and size exactly `size`.
    pub fn normal_types(&mut self, ctx: &TyCtx, level: Level, size: usize) -> Result<Vec<NfTy>> {
        let key = (ctx_key(ctx)?, level, size);
        if let Some(hit) = self.nfty_cache.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(NfTy::Bool(level));
            if let Some(below) = level.pred() {
                out.push(NfTy::U(below));
            }
        }
        if size >= 2 {
            if let Some(below) = level.pred() {
                for a in self.normal_types(ctx, below, size - 1)? {
                    out.push(NfTy::Lift(Box::new(a)));
                }
            }
            for n in self.neutrals(ctx, size - 1)? {
                if n.ty_nf == NfTy::U(level) {
                    out.push(NfTy::NeU(n.ne));
                }
            }
        }
        for dom_size in 1..size.saturating_sub(1) {
            let cod_size = size - 1 - dom_size;
            for a in self.normal_types(ctx, level, dom_size)? {
                let inner = ctx.extend(eval_type(ctx.env(), &a.erase())?);
                for b in self.normal_types(&inner, level, cod_size)? {
                    out.push(NfTy::Pi(Box::new(a.clone()), Box::new(b)));
                }
            }
        }
        self.nfty_cache.insert(key, out.clone());
        Ok(out)
    }

    /// Normal forms of type `ty` and size exactly `size`.
    pub fn normal_forms(&mut self, ctx: &TyCtx, ty: &TypeValue, size: usize) -> Result<Vec<Nf>> {
        if size == 0 {
            return Ok(Vec::new());
        }
        let len = ctx.len();
        let ty_nf = quote_type(len, ty)?;
        let key = (ctx_key(ctx)?, ty_nf.clone(), size);
        if let Some(hit) = self.nf_cache.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        match ty {
            TypeValue::Pi(dom, cod) => {
                let cod_x = cod.instantiate(fresh(len, dom))?;
                let dom_nf = quote_type(len, dom)?;
                let cod_nf = quote_type(len + 1, &cod_x)?;
                let inner = ctx.extend((**dom).clone());
                for body in self.normal_forms(&inner, &cod_x, size - 1)? {
                    out.push(Nf::Lam {
                        dom: dom_nf.clone(),
                        cod: cod_nf.clone(),
                        body: Box::new(body),
                    });
                }
            }
            TypeValue::Lift(a) => {
                for v in self.normal_forms(ctx, a, size - 1)? {
                    out.push(Nf::Lift(Box::new(v)));
                }
            }
            TypeValue::U(i) => {
                for a in self.normal_types(ctx, *i, size - 1)? {
                    out.push(Nf::TypeCode(a));
                }
            }
            TypeValue::Bool(i) => {
                if size == 1 {
                    out.push(Nf::True(*i));
                    out.push(Nf::False(*i));
                }
                for n in self.neutrals(ctx, size)? {
                    if n.ty_nf == ty_nf {
                        out.push(Nf::NeBool(n.ne));
                    }
                }
            }
            TypeValue::ElNe { .. } => {
                for n in self.neutrals(ctx, size)? {
                    if n.ty_nf == ty_nf {
                        out.push(Nf::NeEl(n.ne));
                    }
                }
            }
        }
        self.nf_cache.insert(key, out.clone());
        Ok(out)
    }

    /// Neutrals of size exactly `size`, with their types.
    pub fn neutrals(&mut self, ctx: &TyCtx, size: usize) -> Result<Vec<TypedNe>> {
        let key = (ctx_key(ctx)?, size);
        if let Some(hit) = self.ne_cache.get(&key) {
            return Ok(hit.clone());
        }
        let len = ctx.len();
        let typed = |ne: Ne, ty: TypeValue| -> Result<TypedNe> {
            let ty_nf = quote_type(len, &ty)?;
            Ok(TypedNe { ne, ty, ty_nf })
        };
        let mut out = Vec::new();
        if size == 1 {
            for ix in 0..len {
                out.push(typed(Ne::Var(ix), ctx.types()[len - 1 - ix].clone())?);
            }
        }
        if size >= 2 {
            for n in self.neutrals(ctx, size - 1)? {
                if let TypeValue::Lift(a) = &n.ty {
                    out.push(typed(Ne::Unlift(Box::new(n.ne.clone())), (**a).clone())?);
                }
            }
        }
        for head_size in 1..size.saturating_sub(1) {
            let arg_size = size - 1 - head_size;
            for head in self.neutrals(ctx, head_size)? {
                let TypeValue::Pi(dom, cod) = &head.ty else {
                    continue;
                };
                let dom_nf = quote_type(len, dom)?;
                let cod_nf = quote_type(len + 1, &cod.instantiate(fresh(len, dom))?)?;
                for arg in self.normal_forms(ctx, dom, arg_size)? {
                    let v = eval(ctx.env(), &arg.erase())?;
                    let result = cod.instantiate(v)?;
                    let ne = Ne::App {
                        head: Box::new(head.ne.clone()),
                        dom: Box::new(dom_nf.clone()),
                        cod: Box::new(cod_nf.clone()),
                        arg: Box::new(arg),
                    };
                    out.push(typed(ne, result)?);
                }
            }
        }
        // 1 + motive + on_true + on_false + scrutinee, each at least 1.
        for scrut_size in 1..size.saturating_sub(3) {
            for scrut in self.neutrals(ctx, scrut_size)? {
                let TypeValue::Bool(i) = scrut.ty else {
                    continue;
                };
                let scrut_value = eval(ctx.env(), &scrut.ne.erase())?;
                let inner = ctx.extend(TypeValue::Bool(i));
                let rest = size - 1 - scrut_size;
                for j in 0..=self.max_motive_level {
                    let j = Level::new(j).expect("motive level within bounds");
                    for motive_size in 1..rest - 1 {
                        for motive in self.normal_types(&inner, j, motive_size)? {
                            let closure = TyClosure::new(ctx.env().clone(), motive.erase().into());
                            let at_true = closure.instantiate(Value::True(i))?;
                            let at_false = closure.instantiate(Value::False(i))?;
                            let result = closure.instantiate(scrut_value.clone())?;
                            for true_size in 1..rest - motive_size {
                                let false_size = rest - motive_size - true_size;
                                let trues = self.normal_forms(ctx, &at_true, true_size)?;
                                if trues.is_empty() {
                                    continue;
                                }
                                let falses = self.normal_forms(ctx, &at_false, false_size)?;
                                for t in &trues {
                                    for f in &falses {
                                        let ne = Ne::ElimBool {
                                            scrut_level: i,
                                            motive_level: j,
                                            motive: Box::new(motive.clone()),
                                            on_true: Box::new(t.clone()),
                                            on_false: Box::new(f.clone()),
                                            scrutinee: Box::new(scrut.ne.clone()),
                                        };
                                        out.push(typed(ne, result.clone())?);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        self.ne_cache.insert(key, out.clone());
        Ok(out)
    }
}

/// The closed types over which the canonicity corpus is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallTy {
    Bool0,
    LiftBool0,
}

impl SmallTy {
    pub const ALL: [SmallTy; 2] = [SmallTy::Bool0, SmallTy::LiftBool0];

    pub fn to_ty(self) -> Ty {
        match self {
            SmallTy::Bool0 => Ty::Bool(Level::ZERO),
            SmallTy::LiftBool0 => Ty::lift(Ty::Bool(Level::ZERO)),
        }
    }

    pub fn level(self) -> Level {
        match self {
            SmallTy::Bool0 => Level::ZERO,
            SmallTy::LiftBool0 => Level::ZERO.succ().expect("level 1 exists"),
        }
    }
}

/// All terms of type `ty` in `ctx` with depth at most `depth`, built from
/// `true`, `false`, variables, `elimB` with a constant motive, `lift`,
/// `unlift`, and β-redexes `(fun x => b) a`. A β-redex counts as one level.
pub fn small_terms(ctx: &[SmallTy], ty: SmallTy, depth: usize) -> Vec<Tm> {
    let mut out = Vec::new();
    if depth == 0 {
        return out;
    }
    let b0 = Level::ZERO;
    if ty == SmallTy::Bool0 {
        out.push(Tm::True(b0));
        out.push(Tm::False(b0));
    }
    for (ix, entry) in ctx.iter().rev().enumerate() {
        if *entry == ty {
            out.push(Tm::Var(ix));
        }
    }
    if depth == 1 {
        return out;
    }
    let d = depth - 1;
    match ty {
        SmallTy::Bool0 => {
            for t in small_terms(ctx, SmallTy::LiftBool0, d) {
                out.push(Tm::unlift(t));
            }
        }
        SmallTy::LiftBool0 => {
            for t in small_terms(ctx, SmallTy::Bool0, d) {
                out.push(Tm::lift(t));
            }
        }
    }
    let branches = small_terms(ctx, ty, d);
    let scrutinees = small_terms(ctx, SmallTy::Bool0, d);
    let motive = ty.to_ty();
    for t in &branches {
        for f in &branches {
            for b in &scrutinees {
                out.push(Tm::elim_b(
                    b0,
                    ty.level(),
                    motive.clone(),
                    t.clone(),
                    f.clone(),
                    b.clone(),
                ));
            }
        }
    }
    for arg_ty in SmallTy::ALL {
        let args = small_terms(ctx, arg_ty, d);
        if args.is_empty() {
            continue;
        }
        let mut inner = ctx.to_vec();
        inner.push(arg_ty);
        for body in small_terms(&inner, ty, d) {
            for a in &args {
                out.push(Tm::app(Tm::lam(body.clone()), a.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbe::norm;
    use crate::syntax::{lvl, Context};

    #[test]
    fn closed_booleans_by_size() {
        let mut e = Enumerator::new(1);
        let ctx = TyCtx::empty();
        let b0 = TypeValue::Bool(lvl(0));
        assert_eq!(
            e.normal_forms(&ctx, &b0, 1).unwrap(),
            vec![Nf::True(lvl(0)), Nf::False(lvl(0))]
        );
        // No closed neutrals, so nothing bigger.
        assert!(e.normal_forms_up_to(&ctx, &b0, 6).unwrap().len() == 2);
        let f = eval_type(ctx.env(), &Ty::arrow(Ty::Bool(lvl(0)), Ty::Bool(lvl(0)))).unwrap();
        // fun x => true | false | x
        assert_eq!(e.normal_forms(&ctx, &f, 2).unwrap().len(), 3);
    }

    #[test]
    fn normal_types_are_stable() {
        let mut e = Enumerator::new(1);
        let ctx = Context::from_entries(vec![Ty::U(lvl(0))]).unwrap();
        let tc = TyCtx::from_context(&ctx).unwrap();
        for level in [lvl(0), lvl(1)] {
            let tys = e.normal_types_up_to(&tc, level, 4).unwrap();
            assert!(!tys.is_empty());
            for a in tys {
                assert_eq!(crate::nbe::norm_type(&ctx, &a.erase()).unwrap(), a);
            }
        }
    }

    #[test]
    fn eliminators_appear_at_size_five() {
        let mut e = Enumerator::new(0);
        let ctx = Context::from_entries(vec![Ty::Bool(lvl(0))]).unwrap();
        let tc = TyCtx::from_context(&ctx).unwrap();
        let b0 = TypeValue::Bool(lvl(0));
        let forms = e.normal_forms(&tc, &b0, 5).unwrap();
        assert!(forms.iter().any(|n| matches!(n, Nf::NeBool(Ne::ElimBool { .. }))));
        for n in forms {
            assert_eq!(norm(&ctx, &Ty::Bool(lvl(0)), &n.erase()).unwrap(), n);
        }
    }

    #[test]
    fn small_term_counts() {
        assert_eq!(small_terms(&[], SmallTy::Bool0, 1).len(), 2);
        assert!(small_terms(&[], SmallTy::LiftBool0, 1).is_empty());
        // Depth 2: true, false, 8 eliminators, and 2 * 3 redexes at Bool0.
        assert_eq!(small_terms(&[], SmallTy::Bool0, 2).len(), 16);
    }
}
