//! Seeded random generation of well-typed contexts, types and terms.
//!
//! Generation is type-directed and depth-bounded. It may fail to find an
//! inhabitant (for instance of `El x` for a variable code `x`), in which
//! case it returns `None` and the caller retries.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::SmallTy;
use crate::nbe::{eval, eval_type, quote_type, type_level, NbeError, TypeValue, Value};
use crate::renaming::{rename_ty, Renaming};
use crate::syntax::{Context, Level, Tm, Ty};
use crate::typecheck::TyCtx;

type Result<T> = std::result::Result<T, NbeError>;

pub struct TermGen {
    rng: ChaCha8Rng,
    max_level: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Choice {
    Intro,
    Var,
    Elim,
    Beta,
    Unlift,
}

impl TermGen {
    /// Levels of generated types stay at or below `max_level`.
    pub fn new(seed: u64, max_level: u32) -> TermGen {
        TermGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_level,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn level(&mut self) -> Level {
        Level::new(self.rng.gen_range(0..=self.max_level)).expect("small level")
    }

    /// A random telescope of length `len`.
    pub fn context(&mut self, len: usize, depth: usize) -> Result<Context> {
        let mut entries = Vec::new();
        let mut tc = TyCtx::empty();
        for _ in 0..len {
            let level = self.level();
            let ty = self.ty(&tc, level, depth)?;
            tc = tc.extend(eval_type(tc.env(), &ty)?);
            entries.push(ty);
        }
        Ok(Context::from_entries(entries).expect("generated entries are scoped"))
    }

    /// A random type of the given level.
    pub fn ty(&mut self, ctx: &TyCtx, level: Level, depth: usize) -> Result<Ty> {
        let mut options = vec![0u8, 1, 2, 3, 4, 5, 5];
        options.shuffle(&mut self.rng);
        for option in options {
            match option {
                0 => return Ok(Ty::Bool(level)),
                1 => {
                    if let Some(below) = level.pred() {
                        return Ok(Ty::U(below));
                    }
                }
                2 if depth > 0 => {
                    if let Some(below) = level.pred() {
                        return Ok(Ty::lift(self.ty(ctx, below, depth - 1)?));
                    }
                }
                3 if depth > 0 => {
                    let dom = self.ty(ctx, level, depth - 1)?;
                    let inner = ctx.extend(eval_type(ctx.env(), &dom)?);
                    let cod = self.ty(&inner, level, depth - 1)?;
                    return Ok(Ty::pi(dom, cod));
                }
                4 if depth > 0 && level.succ().is_some() => {
                    if let Some(code) = self.tm(ctx, &TypeValue::U(level), depth - 1)? {
                        return Ok(Ty::el(code));
                    }
                }
                5 if depth > 0 => {
                    if let Some(t) = self.dependent_ty(ctx, level, depth - 1)? {
                        return Ok(t);
                    }
                }
                _ => {}
            }
        }
        Ok(Ty::Bool(level))
    }

    /// `El (elimB i (l+1) (_. U l) (code A) (code B) x)` for a boolean
    /// variable `x`: a type that varies with `x`.
    fn dependent_ty(&mut self, ctx: &TyCtx, level: Level, depth: usize) -> Result<Option<Ty>> {
        let Some(up) = level.succ() else {
            return Ok(None);
        };
        let len = ctx.len();
        let bools: Vec<(usize, Level)> = (0..len)
            .filter_map(|ix| match ctx.types()[len - 1 - ix] {
                TypeValue::Bool(i) => Some((ix, i)),
                _ => None,
            })
            .collect();
        let Some(&(ix, i)) = bools.choose(&mut self.rng) else {
            return Ok(None);
        };
        let a = self.ty(ctx, level, depth)?;
        let b = self.ty(ctx, level, depth)?;
        Ok(Some(Ty::el(Tm::elim_b(
            i,
            up,
            Ty::U(level),
            Tm::code(a),
            Tm::code(b),
            Tm::Var(ix),
        ))))
    }

    /// A random term of type `ty`, if one is found.
    pub fn tm(&mut self, ctx: &TyCtx, ty: &TypeValue, depth: usize) -> Result<Option<Tm>> {
        let mut choices = vec![Choice::Intro, Choice::Intro, Choice::Var, Choice::Var];
        if depth > 0 {
            choices.extend([Choice::Elim, Choice::Beta, Choice::Unlift]);
        }
        choices.shuffle(&mut self.rng);
        for choice in choices {
            let found = match choice {
                Choice::Intro => self.intro(ctx, ty, depth)?,
                Choice::Var => self.var_spine(ctx, ty, depth)?,
                Choice::Elim => self.elim(ctx, ty, depth - 1)?,
                Choice::Beta => self.beta(ctx, ty, depth - 1)?,
                Choice::Unlift => self.unlift(ctx, ty, depth - 1)?,
            };
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn intro(&mut self, ctx: &TyCtx, ty: &TypeValue, depth: usize) -> Result<Option<Tm>> {
        Ok(match ty {
            TypeValue::Bool(i) => Some(if self.rng.gen() { Tm::True(*i) } else { Tm::False(*i) }),
            TypeValue::U(i) => Some(Tm::code(self.ty(ctx, *i, depth.saturating_sub(1))?)),
            TypeValue::Lift(a) if depth > 0 => self.tm(ctx, a, depth - 1)?.map(Tm::lift),
            TypeValue::Pi(dom, cod) if depth > 0 => {
                let x = crate::nbe::fresh(ctx.len(), dom);
                let cod_x = cod.instantiate(x)?;
                let inner = ctx.extend((**dom).clone());
                self.tm(&inner, &cod_x, depth - 1)?.map(Tm::lam)
            }
            _ => None,
        })
    }

    /// A variable, possibly applied, unlifted or eliminated, whose type
    /// converts to `ty`.
    fn var_spine(&mut self, ctx: &TyCtx, ty: &TypeValue, depth: usize) -> Result<Option<Tm>> {
        let len = ctx.len();
        if len == 0 {
            return Ok(None);
        }
        let target = quote_type(len, ty)?;
        let mut vars: Vec<usize> = (0..len).collect();
        vars.shuffle(&mut self.rng);
        for ix in vars {
            let mut tm = Tm::Var(ix);
            let mut cur = ctx.types()[len - 1 - ix].clone();
            for _ in 0..=depth {
                if quote_type(len, &cur)? == target {
                    return Ok(Some(tm));
                }
                match cur.clone() {
                    TypeValue::Lift(a) => {
                        tm = Tm::unlift(tm);
                        cur = (*a).clone();
                    }
                    TypeValue::Pi(dom, cod) if depth > 0 => {
                        let Some(arg) = self.tm(ctx, &dom, depth - 1)? else {
                            break;
                        };
                        let v = eval(ctx.env(), &arg)?;
                        cur = cod.instantiate(v)?;
                        tm = Tm::app(tm, arg);
                    }
                    _ => break,
                }
            }
            if quote_type(len, &cur)? == target {
                return Ok(Some(tm));
            }
        }
        Ok(None)
    }

    /// `elimB` with a constant motive, or with the motive obtained by
    /// abstracting a boolean variable out of `ty`.
    fn elim(&mut self, ctx: &TyCtx, ty: &TypeValue, depth: usize) -> Result<Option<Tm>> {
        let Some(j) = type_level(ty) else {
            return Ok(None);
        };
        if self.rng.gen_bool(0.5) {
            if let Some(t) = self.elim_on_var(ctx, ty, j, depth)? {
                return Ok(Some(t));
            }
        }
        let i = self.level();
        let Some(scrutinee) = self.tm(ctx, &TypeValue::Bool(i), depth)? else {
            return Ok(None);
        };
        let Some(on_true) = self.tm(ctx, ty, depth)? else {
            return Ok(None);
        };
        let Some(on_false) = self.tm(ctx, ty, depth)? else {
            return Ok(None);
        };
        let motive = quote_type(ctx.len(), ty)?
            .erase()
            .shift(0, 1)
            .expect("weakening cannot underflow");
        Ok(Some(Tm::elim_b(i, j, motive, on_true, on_false, scrutinee)))
    }

    fn elim_on_var(&mut self, ctx: &TyCtx, ty: &TypeValue, j: Level, depth: usize) -> Result<Option<Tm>> {
        let len = ctx.len();
        let bools: Vec<(usize, Level)> = (0..len)
            .filter_map(|ix| match ctx.types()[len - 1 - ix] {
                TypeValue::Bool(i) => Some((ix, i)),
                _ => None,
            })
            .collect();
        let Some(&(x, i)) = bools.choose(&mut self.rng) else {
            return Ok(None);
        };
        // Move to `ctx, y : Bool i`, sending `x` to `y`.
        let map: Vec<usize> = (0..len).map(|ix| if ix == x { 0 } else { ix + 1 }).collect();
        let motive = rename_ty(&map, &quote_type(len, ty)?.erase()).expect("scoped");
        let at = |b: Tm| motive.subst(0, &b).expect("closed boolean substitutes");
        let at_true = eval_type(ctx.env(), &at(Tm::True(i)))?;
        let at_false = eval_type(ctx.env(), &at(Tm::False(i)))?;
        let Some(on_true) = self.tm(ctx, &at_true, depth)? else {
            return Ok(None);
        };
        let Some(on_false) = self.tm(ctx, &at_false, depth)? else {
            return Ok(None);
        };
        Ok(Some(Tm::elim_b(i, j, motive, on_true, on_false, Tm::Var(x))))
    }

    /// `(fun x => b) a` where `b` does not change type with `x`. Only
    /// arguments whose type can be inferred are used, so that the redex
    /// type-checks without annotations.
    fn beta(&mut self, ctx: &TyCtx, ty: &TypeValue, depth: usize) -> Result<Option<Tm>> {
        let level = self.level();
        let dom = self.ty(ctx, level, depth / 2)?;
        let dom_v = eval_type(ctx.env(), &dom)?;
        let Some(arg) = self.tm(ctx, &dom_v, depth)? else {
            return Ok(None);
        };
        if crate::typecheck::infer(ctx, &arg).is_err() {
            return Ok(None);
        }
        let inner = ctx.extend(dom_v);
        let Some(body) = self.tm(&inner, ty, depth)? else {
            return Ok(None);
        };
        Ok(Some(Tm::app(Tm::lam(body), arg)))
    }

    fn unlift(&mut self, ctx: &TyCtx, ty: &TypeValue, depth: usize) -> Result<Option<Tm>> {
        match type_level(ty).and_then(Level::succ) {
            Some(l) if l.value() <= self.max_level + 1 => Ok(self
                .tm(ctx, &TypeValue::Lift(ty.clone().into()), depth)?
                .map(Tm::unlift)),
            _ => Ok(None),
        }
    }

    /// A random renaming into `target`: its source is `target` with fresh
    /// entries inserted, and some variables may be identified with others of
    /// the same type.
    pub fn renaming_into(&mut self, target: &Context, max_len: usize, depth: usize) -> Result<Renaming> {
        let extra = max_len.saturating_sub(target.len());
        let extra = if extra == 0 { 0 } else { self.rng.gen_range(0..=extra) };
        // Positions (from the start) that the original entries occupy.
        let total = target.len() + extra;
        let mut slots: Vec<bool> = (0..total).map(|k| k < target.len()).collect();
        slots.shuffle(&mut self.rng);
        let mut pos = Vec::new();
        let mut entries: Vec<Ty> = Vec::new();
        let mut tc = TyCtx::empty();
        let mut original = 0;
        for (p, is_original) in slots.iter().enumerate() {
            let ty = if *is_original {
                let k = original;
                original += 1;
                let map: Vec<usize> = (0..k).map(|ix| p - 1 - pos[k - 1 - ix]).collect();
                let ty = rename_ty(&map, &target.entries()[k]).expect("entries are scoped");
                pos.push(p);
                ty
            } else {
                let level = self.level();
                self.ty(&tc, level, depth)?
            };
            tc = tc.extend(eval_type(tc.env(), &ty)?);
            entries.push(ty);
        }
        let source = Context::from_entries(entries).expect("entries are scoped");
        let n = target.len();
        let mut map: Vec<usize> = (0..n).map(|ix| total - 1 - pos[n - 1 - ix]).collect();
        // Identify variables with equally typed ones, outermost first.
        for k in (0..n).rev() {
            if !self.rng.gen_bool(0.3) {
                continue;
            }
            let want = rename_ty(&map, &target.lookup(k).expect("in range")).expect("scoped");
            let candidates: Vec<usize> = (0..total)
                .filter(|&j| source.lookup(j).map(|t| t == want).unwrap_or(false))
                .collect();
            if let Some(&j) = candidates.choose(&mut self.rng) {
                let mut trial = map.clone();
                trial[k] = j;
                // Inner entries may mention variable k; keep the change only
                // if they still match.
                if Renaming::new(source.clone(), target.clone(), trial.clone()).is_ok() {
                    map = trial;
                }
            }
        }
        Ok(Renaming::new(source, target.clone(), map).expect("constructed renaming is valid"))
    }

    /// A random term of the canonicity corpus: see
    /// [`small_terms`](crate::enumerate::small_terms) for the grammar.
    pub fn small_term(&mut self, ctx: &[SmallTy], ty: SmallTy, depth: usize) -> Option<Tm> {
        if depth == 0 {
            return None;
        }
        let b0 = Level::ZERO;
        let vars: Vec<usize> = ctx
            .iter()
            .rev()
            .enumerate()
            .filter(|(_, e)| **e == ty)
            .map(|(ix, _)| ix)
            .collect();
        let leaf = |g: &mut TermGen| -> Option<Tm> {
            let use_var = !vars.is_empty() && (ty == SmallTy::LiftBool0 || g.rng.gen_bool(0.4));
            if use_var {
                Some(Tm::Var(*vars.choose(&mut g.rng)?))
            } else if ty == SmallTy::Bool0 {
                Some(if g.rng.gen() { Tm::True(b0) } else { Tm::False(b0) })
            } else {
                None
            }
        };
        if depth == 1 || self.rng.gen_bool(0.15) {
            if let Some(t) = leaf(self) {
                return Some(t);
            }
        }
        if depth == 1 {
            return None;
        }
        let d = depth - 1;
        let mut order = [0u8, 1, 2];
        order.shuffle(&mut self.rng);
        for choice in order {
            let found = match choice {
                0 => match ty {
                    SmallTy::Bool0 => self.small_term(ctx, SmallTy::LiftBool0, d).map(Tm::unlift),
                    SmallTy::LiftBool0 => self.small_term(ctx, SmallTy::Bool0, d).map(Tm::lift),
                },
                1 => {
                    let t = self.small_term(ctx, ty, d);
                    let f = self.small_term(ctx, ty, d);
                    let b = self.small_term(ctx, SmallTy::Bool0, d);
                    match (t, f, b) {
                        (Some(t), Some(f), Some(b)) => Some(Tm::elim_b(b0, ty.level(), ty.to_ty(), t, f, b)),
                        _ => None,
                    }
                }
                _ => {
                    let arg_ty = *SmallTy::ALL.choose(&mut self.rng)?;
                    let mut inner = ctx.to_vec();
                    inner.push(arg_ty);
                    match (self.small_term(ctx, arg_ty, d), self.small_term(&inner, ty, d)) {
                        (Some(a), Some(body)) => Some(Tm::app(Tm::lam(body), a)),
                        _ => None,
                    }
                }
            };
            if found.is_some() {
                return found;
            }
        }
        leaf(self)
    }
}

/// The value `true` or `false` at `i`, for instantiating motives.
pub fn bool_value(b: bool, i: Level) -> Value {
    if b {
        Value::True(i)
    } else {
        Value::False(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::lvl;
    use crate::typecheck::check_in_context;

    #[test]
    fn generated_terms_typecheck() {
        let mut g = TermGen::new(7, 1);
        let mut produced = 0;
        for _ in 0..300 {
            let len = g.rng().gen_range(0..=3);
            let ctx = g.context(len, 2).unwrap();
            let tc = TyCtx::from_context(&ctx).unwrap();
            let level = g.level();
            let ty = g.ty(&tc, level, 2).unwrap();
            let tv = eval_type(tc.env(), &ty).unwrap();
            if let Some(t) = g.tm(&tc, &tv, 3).unwrap() {
                produced += 1;
                check_in_context(&ctx, &t, &ty).unwrap_or_else(|e| {
                    panic!("{t:?} : {ty:?} in {ctx:?}\n{e}");
                });
            }
        }
        assert!(produced > 200, "only {produced} terms generated");
    }

    #[test]
    fn renamings_are_valid() {
        let mut g = TermGen::new(3, 1);
        for _ in 0..100 {
            let len = g.rng().gen_range(0..=3);
            let ctx = g.context(len, 1).unwrap();
            let r = g.renaming_into(&ctx, 4, 1).unwrap();
            assert_eq!(r.target(), &ctx);
            assert!(r.source().len() <= 4.max(ctx.len()));
        }
    }

    #[test]
    fn small_terms_typecheck() {
        let mut g = TermGen::new(11, 1);
        for _ in 0..200 {
            if let Some(t) = g.small_term(&[], SmallTy::Bool0, 5) {
                check_in_context(&Context::empty(), &t, &Ty::Bool(lvl(0))).unwrap();
            }
        }
    }
}
