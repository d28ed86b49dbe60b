//! Property suites over enumerated and seeded random corpora. Each suite
//! returns a [`SuiteReport`] rather than panicking, so that callers can print
//! every failure.

use std::fmt;

use rand::Rng;

use crate::canonicity::canon_bool;
use crate::enumerate::{small_terms, Enumerator, SmallTy};
use crate::gen::TermGen;
use crate::nbe::{
    self, eval, eval_type, fresh, neutral_of, norm, norm_type, quote_ne, NbeError, TyClosure, TypeValue, Value,
};
use crate::normal::{Ne, Nf};
use crate::syntax::{Context, Level, Tm, Ty};
use crate::typecheck::{check_in_context, TyCtx};

/// Failures beyond this many are counted but not kept.
const MAX_KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    /// Extra facts about the corpus, such as how many instances were
    /// dependent.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport {
            name: name.to_string(),
            ..SuiteReport::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_KEPT_FAILURES {
            self.failures.push(msg);
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checked, {} failed",
            self.name, self.checked, self.failed
        )?;
        for note in &self.notes {
            write!(f, "\n  {note}")?;
        }
        for failure in &self.failures {
            write!(f, "\n  failure: {failure}")?;
        }
        Ok(())
    }
}

fn mentions_var0_tm(t: &Tm) -> bool {
    t.shift(0, -1).is_err()
}

fn mentions_var0_ty(t: &Ty) -> bool {
    t.shift(0, -1).is_err()
}

/// The context entries used by the stability suite.
pub fn stability_context_types() -> Vec<Ty> {
    let b0 = Ty::Bool(Level::ZERO);
    vec![
        b0.clone(),
        Ty::Bool(Level::new(1).expect("level 1")),
        Ty::lift(b0.clone()),
        Ty::arrow(b0.clone(), b0),
        Ty::U(Level::ZERO),
    ]
}

/// Every context of length at most `max_len` over `entries`.
pub fn contexts_over(entries: &[Ty], max_len: usize) -> Vec<Context> {
    let mut out = vec![Context::empty()];
    let mut frontier = vec![Context::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for ctx in &frontier {
            for ty in entries {
                next.push(ctx.extend(ty.clone()));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Normalizing the erasure of a normal form gives it back. Covers normal
/// types of levels 0 and 1, normal forms at each of those types, and
/// neutrals, all of size at most `max_size`, over contexts of length at most
/// 2.
pub fn stability(max_size: usize) -> SuiteReport {
    let mut report = SuiteReport::new("stability");
    let mut enumerator = Enumerator::new(1);
    let levels = [Level::ZERO, Level::new(1).expect("level 1")];
    let (mut n_ty, mut n_nf, mut n_ne) = (0usize, 0usize, 0usize);
    for ctx in contexts_over(&stability_context_types(), 2) {
        if let Err(e) = stability_in(
            &ctx,
            max_size,
            &levels,
            &mut enumerator,
            &mut report,
            (&mut n_ty, &mut n_nf, &mut n_ne),
        ) {
            report.fail(format!("in {ctx:?}: {e}"));
        }
    }
    report
        .notes
        .push(format!("{n_ty} normal types, {n_nf} normal forms, {n_ne} neutrals"));
    report
}

fn stability_in(
    ctx: &Context,
    max_size: usize,
    levels: &[Level],
    enumerator: &mut Enumerator,
    report: &mut SuiteReport,
    counts: (&mut usize, &mut usize, &mut usize),
) -> Result<(), String> {
    let tc = TyCtx::from_context(ctx).map_err(|e| e.to_string())?;
    let e = |err: NbeError| err.to_string();
    for &level in levels {
        for a in enumerator.normal_types_up_to(&tc, level, max_size).map_err(e)? {
            *counts.0 += 1;
            let back = norm_type(ctx, &a.erase());
            report.check(back.as_ref() == Ok(&a), || {
                format!("type {a} in {ctx:?} normalized to {back:?}")
            });
        }
        for target in enumerator.normal_types_up_to(&tc, level, max_size).map_err(e)? {
            let tv = eval_type(tc.env(), &target.erase()).map_err(e)?;
            let target_ty = target.erase();
            for nf in enumerator.normal_forms_up_to(&tc, &tv, max_size).map_err(e)? {
                *counts.1 += 1;
                let back = norm(ctx, &target_ty, &nf.erase());
                report.check(back.as_ref() == Ok(&nf), || {
                    format!("{nf} : {target} in {ctx:?} normalized to {back:?}")
                });
            }
        }
    }
    for n in enumerator.neutrals_up_to(&tc, max_size).map_err(e)? {
        *counts.2 += 1;
        nbe::reset_steps();
        let back = eval(tc.env(), &n.ne.erase())
            .ok()
            .and_then(|v| neutral_of(&n.ty, &v))
            .map(|m| quote_ne(tc.len(), &m));
        let ok = matches!(&back, Some(Ok(m)) if *m == n.ne);
        report.check(ok, || format!("neutral {} in {ctx:?} came back as {back:?}", n.ne));
    }
    Ok(())
}

/// `elimB P t f true = t` and `elimB P t f false = f`, on random instances
/// with possibly dependent motives.
pub fn computation(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("computation rules");
    let mut g = TermGen::new(seed, 1);
    let mut dependent = 0;
    let mut attempts = 0;
    while report.checked < 2 * count && attempts < 100 * count {
        attempts += 1;
        match computation_instance(&mut g) {
            Ok(Some((ok_t, ok_f, desc, dep))) => {
                dependent += usize::from(dep);
                report.check(ok_t, || format!("true branch: {desc}"));
                report.check(ok_f, || format!("false branch: {desc}"));
            }
            Ok(None) => {}
            Err(e) => report.fail(e),
        }
    }
    report.notes.push(format!(
        "{} instances, {dependent} with a dependent motive",
        report.checked / 2
    ));
    report
}

type Instance = Option<(bool, bool, String, bool)>;

fn computation_instance(g: &mut TermGen) -> Result<Instance, String> {
    let e = |err: NbeError| err.to_string();
    let len = g.rng().gen_range(0..=2);
    let ctx = g.context(len, 1).map_err(e)?;
    let tc = TyCtx::from_context(&ctx).map_err(|err| err.to_string())?;
    let i = g.level();
    let j = g.level();
    let inner = tc.extend(TypeValue::Bool(i));
    let motive = g.ty(&inner, j, 2).map_err(e)?;
    let at = |b: Tm| motive.subst(0, &b).expect("closed boolean substitutes");
    let (p_true, p_false) = (at(Tm::True(i)), at(Tm::False(i)));
    let tv_true = eval_type(tc.env(), &p_true).map_err(e)?;
    let tv_false = eval_type(tc.env(), &p_false).map_err(e)?;
    let (Some(t), Some(f)) = (g.tm(&tc, &tv_true, 2).map_err(e)?, g.tm(&tc, &tv_false, 2).map_err(e)?) else {
        return Ok(None);
    };
    let elim = |b: Tm| Tm::elim_b(i, j, motive.clone(), t.clone(), f.clone(), b);
    let (on_true, on_false) = (elim(Tm::True(i)), elim(Tm::False(i)));
    let desc = format!("{on_true:?} in {ctx:?}");
    check_in_context(&ctx, &on_true, &p_true).map_err(|err| format!("{desc}: {err}"))?;
    check_in_context(&ctx, &on_false, &p_false).map_err(|err| format!("{desc}: {err}"))?;
    let ok_t = norm(&ctx, &p_true, &on_true).map_err(e)? == norm(&ctx, &p_true, &t).map_err(e)?;
    let ok_f = norm(&ctx, &p_false, &on_false).map_err(e)? == norm(&ctx, &p_false, &f).map_err(e)?;
    Ok(Some((ok_t, ok_f, desc, mentions_var0_ty(&motive))))
}

/// `norm((fun x => b) a) = norm(b[a/x])` with substitution as the oracle,
/// for redexes of size at most `max_size`.
pub fn beta(seed: u64, count: usize, max_size: usize) -> SuiteReport {
    let mut report = SuiteReport::new("beta soundness");
    let mut g = TermGen::new(seed, 1);
    let (mut uses_var, mut dependent) = (0, 0);
    let mut attempts = 0;
    while report.checked < count && attempts < 1000 * count {
        attempts += 1;
        match beta_instance(&mut g, max_size) {
            Ok(Some((ok, desc, uses, dep))) => {
                uses_var += usize::from(uses);
                dependent += usize::from(dep);
                report.check(ok, || desc);
            }
            Ok(None) => {}
            Err(e) => report.fail(e),
        }
    }
    report.notes.push(format!(
        "{uses_var} bodies use the bound variable, {dependent} have a dependent type"
    ));
    report
}

fn beta_instance(g: &mut TermGen, max_size: usize) -> Result<Option<(bool, String, bool, bool)>, String> {
    let e = |err: NbeError| err.to_string();
    let len = g.rng().gen_range(0..=2);
    let ctx = g.context(len, 1).map_err(e)?;
    let tc = TyCtx::from_context(&ctx).map_err(|err| err.to_string())?;
    // A third of the instances abstract over a type code, so that the
    // codomain can depend on the bound variable.
    let over_code = g.rng().gen_bool(0.33);
    let (l, dom) = if over_code {
        (Level::new(1).expect("level 1"), Ty::U(Level::ZERO))
    } else {
        let l = g.level();
        (l, g.ty(&tc, l, 1).map_err(e)?)
    };
    let dom_v = eval_type(tc.env(), &dom).map_err(e)?;
    let Some(arg) = g.tm(&tc, &dom_v, 2).map_err(e)? else {
        return Ok(None);
    };
    let inner = tc.extend(dom_v);
    let mut cod = g.ty(&inner, l, 2).map_err(e)?;
    for _ in 0..20 {
        if !over_code || mentions_var0_ty(&cod) {
            break;
        }
        cod = g.ty(&inner, l, 2).map_err(e)?;
    }
    let cod_v = eval_type(inner.env(), &cod).map_err(e)?;
    let Some(body) = g.tm(&inner, &cod_v, 2).map_err(e)? else {
        return Ok(None);
    };
    let redex = Tm::app(Tm::lam(body.clone()), arg.clone());
    if redex.size() > max_size {
        return Ok(None);
    }
    let desc = format!("{redex:?} in {ctx:?}");
    // The pieces are checked separately: an unannotated redex need not infer.
    check_in_context(&ctx, &Tm::lam(body.clone()), &Ty::pi(dom.clone(), cod.clone()))
        .map_err(|err| format!("{desc}: {err}"))?;
    check_in_context(&ctx, &arg, &dom).map_err(|err| format!("{desc}: {err}"))?;
    let result_ty = cod.subst(0, &arg).map_err(|err| err.to_string())?;
    let reduced = body.subst(0, &arg).map_err(|err| err.to_string())?;
    let lhs = norm(&ctx, &result_ty, &redex).map_err(e)?;
    let rhs = norm(&ctx, &result_ty, &reduced).map_err(e)?;
    Ok(Some((
        lhs == rhs,
        format!("{desc}: {lhs} vs {rhs}"),
        mentions_var0_tm(&body),
        mentions_var0_ty(&cod),
    )))
}

/// Normalization commutes with renaming, over contexts of length at most 4.
pub fn naturality(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("renaming naturality");
    let mut g = TermGen::new(seed, 1);
    let (mut non_injective, mut attempts) = (0, 0);
    while report.checked < count && attempts < 100 * count {
        attempts += 1;
        match naturality_instance(&mut g) {
            Ok(Some((ok, desc, contracts))) => {
                non_injective += usize::from(contracts);
                report.check(ok, || desc);
            }
            Ok(None) => {}
            Err(e) => report.fail(e),
        }
    }
    report
        .notes
        .push(format!("{non_injective} renamings identify variables"));
    report
}

fn naturality_instance(g: &mut TermGen) -> Result<Option<(bool, String, bool)>, String> {
    let e = |err: NbeError| err.to_string();
    let len = g.rng().gen_range(0..=3);
    let target = g.context(len, 1).map_err(e)?;
    let rho = g.renaming_into(&target, 4, 1).map_err(e)?;
    let tc = TyCtx::from_context(&target).map_err(|err| err.to_string())?;
    let l = g.level();
    let ty = g.ty(&tc, l, 2).map_err(e)?;
    let tv = eval_type(tc.env(), &ty).map_err(e)?;
    let Some(t) = g.tm(&tc, &tv, 3).map_err(e)? else {
        return Ok(None);
    };
    let desc = format!("{t:?} : {ty:?} in {target:?} along {:?}", rho.map());
    check_in_context(&target, &t, &ty).map_err(|err| format!("{desc}: {err}"))?;
    let renamed_ty = rho.rename_ty(&ty).map_err(|err| err.to_string())?;
    let renamed_tm = rho.rename_tm(&t).map_err(|err| err.to_string())?;
    let lhs = norm(&target, &ty, &t)
        .map_err(e)?
        .rename(rho.map())
        .map_err(|err| err.to_string())?;
    let rhs = norm(rho.source(), &renamed_ty, &renamed_tm).map_err(e)?;
    let mut seen = rho.map().to_vec();
    seen.sort_unstable();
    seen.dedup();
    let contracts = seen.len() < rho.map().len();
    Ok(Some((lhs == rhs, format!("{desc}: {lhs} vs {rhs}"), contracts)))
}

/// Every closed boolean of the small corpus evaluates to `true` or `false`
/// without meeting a neutral, in agreement with its normal form. Exhaustive
/// up to `exhaustive_depth`, then `random_count` samples up to
/// `random_depth`.
pub fn canonicity(exhaustive_depth: usize, seed: u64, random_count: usize, random_depth: usize) -> SuiteReport {
    let mut report = SuiteReport::new("canonicity");
    let (mut trues, mut falses) = (0, 0);
    let mut run = |t: &Tm, report: &mut SuiteReport| match canon_bool(t, Level::ZERO) {
        Ok(b) => {
            if b {
                trues += 1;
            } else {
                falses += 1;
            }
            report.check(true, String::new);
        }
        Err(err) => {
            report.checked += 1;
            report.fail(format!("{t:?}: {err}"));
        }
    };
    let exhaustive = small_terms(&[], SmallTy::Bool0, exhaustive_depth);
    let exhaustive_len = exhaustive.len();
    for t in &exhaustive {
        run(t, &mut report);
    }
    let mut g = TermGen::new(seed, 0);
    let mut sampled = 0;
    let mut deepest = 0;
    while sampled < random_count {
        if let Some(t) = g.small_term(&[], SmallTy::Bool0, random_depth) {
            deepest = deepest.max(small_depth(&t));
            sampled += 1;
            run(&t, &mut report);
        }
    }
    report.notes.push(format!(
        "{exhaustive_len} terms up to depth {exhaustive_depth}, {sampled} samples up to depth {random_depth} (deepest {deepest}); {trues} true, {falses} false"
    ));
    report
}

/// Depth in the sense of [`small_terms`]: a β-redex is one level.
pub fn small_depth(t: &Tm) -> usize {
    match t {
        Tm::App(f, a) => match &**f {
            Tm::Lam(body) => 1 + small_depth(body).max(small_depth(a)),
            other => 1 + small_depth(other).max(small_depth(a)),
        },
        Tm::Lam(b) | Tm::Lift(b) | Tm::Unlift(b) => 1 + small_depth(b),
        Tm::ElimB {
            on_true,
            on_false,
            scrutinee,
            ..
        } => {
            1 + small_depth(on_true)
                .max(small_depth(on_false))
                .max(small_depth(scrutinee))
        }
        Tm::Var(_) | Tm::True(_) | Tm::False(_) | Tm::Code(_) => 1,
    }
}

/// Does `nf` have the η-long shape demanded by its type? Functions are
/// lambdas, lifted values are `lift`, codes are `code`, and so on,
/// recursively through neutral arguments and eliminator branches.
pub fn is_eta_long(ctx: &TyCtx, ty: &TypeValue, nf: &Nf) -> Result<bool, NbeError> {
    let len = ctx.len();
    Ok(match (ty, nf) {
        (TypeValue::Pi(dom, cod), Nf::Lam { body, .. }) => {
            let cod_x = cod.instantiate(fresh(len, dom))?;
            is_eta_long(&ctx.extend((**dom).clone()), &cod_x, body)?
        }
        (TypeValue::Lift(a), Nf::Lift(inner)) => is_eta_long(ctx, a, inner)?,
        (TypeValue::U(_), Nf::TypeCode(_)) => true,
        (TypeValue::Bool(_), Nf::True(_) | Nf::False(_)) => true,
        (TypeValue::Bool(_), Nf::NeBool(n)) | (TypeValue::ElNe { .. }, Nf::NeEl(n)) => ne_is_eta_long(ctx, n)?,
        _ => false,
    })
}

fn ne_is_eta_long(ctx: &TyCtx, n: &Ne) -> Result<bool, NbeError> {
    Ok(match n {
        Ne::Var(_) => true,
        Ne::Unlift(m) => ne_is_eta_long(ctx, m)?,
        Ne::App { head, dom, arg, .. } => {
            let dom = eval_type(ctx.env(), &dom.erase())?;
            ne_is_eta_long(ctx, head)? && is_eta_long(ctx, &dom, arg)?
        }
        Ne::ElimBool {
            scrut_level,
            motive,
            on_true,
            on_false,
            scrutinee,
            ..
        } => {
            let closure = TyClosure::new(ctx.env().clone(), motive.erase().into());
            let at_true = closure.instantiate(Value::True(*scrut_level))?;
            let at_false = closure.instantiate(Value::False(*scrut_level))?;
            ne_is_eta_long(ctx, scrutinee)?
                && is_eta_long(ctx, &at_true, on_true)?
                && is_eta_long(ctx, &at_false, on_false)?
        }
    })
}

/// The η-expansion of variable `ix` at a type with `arity` leading binders.
fn eta_expand(ix: usize, arity: usize) -> Tm {
    let mut t = Tm::Var(ix + arity);
    for k in (0..arity).rev() {
        t = Tm::app(t, Tm::Var(k));
    }
    for _ in 0..arity {
        t = Tm::lam(t);
    }
    t
}

fn pi_arity(ty: &Ty) -> usize {
    match ty {
        Ty::Pi(_, b) => 1 + pi_arity(b),
        _ => 0,
    }
}

/// η-long normal forms for function variables: a variable `f` normalizes to
/// a lambda around an application of `f`, and to the same normal form as
/// its η-expansion. Also checks the η-long shape of random normal forms.
pub fn eta(seed: u64, random_count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("eta-long discipline");
    let b0 = Ty::Bool(Level::ZERO);
    let l1 = Level::new(1).expect("level 1");
    let u0 = Ty::U(Level::ZERO);
    let f_ty = Ty::arrow(b0.clone(), b0.clone());
    // f : Bool 0 -> Bool 0 normalizes to fun x => f x, with `f x` neutral.
    let ctx = Context::empty().extend(f_ty.clone());
    let expected = Nf::Lam {
        dom: crate::normal::NfTy::Bool(Level::ZERO),
        cod: crate::normal::NfTy::Bool(Level::ZERO),
        body: Box::new(Nf::NeBool(Ne::App {
            head: Box::new(Ne::Var(1)),
            dom: Box::new(crate::normal::NfTy::Bool(Level::ZERO)),
            cod: Box::new(crate::normal::NfTy::Bool(Level::ZERO)),
            arg: Box::new(Nf::NeBool(Ne::Var(0))),
        })),
    };
    let got = norm(&ctx, &f_ty, &Tm::Var(0));
    report.check(got.as_ref() == Ok(&expected), || {
        format!("f : Bool 0 -> Bool 0 normalized to {got:?}")
    });

    let function_types = vec![
        f_ty.clone(),
        Ty::arrow(Ty::lift(b0.clone()), Ty::lift(b0.clone())),
        Ty::arrow(b0.clone(), f_ty.clone()),
        Ty::arrow(f_ty.clone(), b0.clone()),
        Ty::pi(
            u0.clone(),
            Ty::arrow(Ty::lift(Ty::el(Tm::Var(0))), Ty::lift(Ty::el(Tm::Var(0)))),
        ),
        Ty::arrow(Ty::Bool(l1), Ty::U(Level::ZERO)),
    ];
    for f_ty in &function_types {
        for prefix in [vec![], vec![b0.clone()], vec![u0.clone(), b0.clone()]] {
            let mut entries = prefix.clone();
            entries.push(f_ty.clone());
            let ctx = Context::from_entries(entries).expect("closed types");
            let res = eta_case(&ctx, f_ty);
            match res {
                Ok(ok) => report.check(ok, || format!("{f_ty:?} in {ctx:?}")),
                Err(err) => report.fail(format!("{f_ty:?} in {ctx:?}: {err}")),
            }
        }
    }

    let mut g = TermGen::new(seed, 1);
    let mut sampled = 0;
    let mut attempts = 0;
    while sampled < random_count && attempts < 100 * random_count {
        attempts += 1;
        let res: Result<Option<bool>, String> = (|| {
            let e = |err: NbeError| err.to_string();
            let len = g.rng().gen_range(0..=2);
            let ctx = g.context(len, 2).map_err(e)?;
            let tc = TyCtx::from_context(&ctx).map_err(|err| err.to_string())?;
            let l = g.level();
            let ty = g.ty(&tc, l, 2).map_err(e)?;
            let tv = eval_type(tc.env(), &ty).map_err(e)?;
            let Some(t) = g.tm(&tc, &tv, 3).map_err(e)? else {
                return Ok(None);
            };
            let nf = norm(&ctx, &ty, &t).map_err(e)?;
            Ok(Some(is_eta_long(&tc, &tv, &nf).map_err(e)?))
        })();
        match res {
            Ok(Some(ok)) => {
                sampled += 1;
                report.check(ok, || "random normal form is not eta-long".to_string());
            }
            Ok(None) => {}
            Err(err) => report.fail(err),
        }
    }
    report
}

fn eta_case(ctx: &Context, f_ty: &Ty) -> Result<bool, String> {
    let e = |err: NbeError| err.to_string();
    // The last entry is f_ty, which is closed.
    let nf = norm(ctx, f_ty, &Tm::Var(0)).map_err(e)?;
    let arity = pi_arity(f_ty);
    let mut body = &nf;
    for _ in 0..arity {
        match body {
            Nf::Lam { body: b, .. } => body = b,
            _ => return Ok(false),
        }
    }
    // Under the binders, the head of the application spine is f.
    let head_ok = match body {
        Nf::NeBool(n) | Nf::NeEl(n) => spine_head(n) == Some(arity),
        Nf::TypeCode(crate::normal::NfTy::NeU(n)) => spine_head(n) == Some(arity),
        Nf::Lift(inner) => match &**inner {
            Nf::NeBool(n) | Nf::NeEl(n) => spine_head(n) == Some(arity),
            _ => false,
        },
        _ => false,
    };
    let expanded = norm(ctx, f_ty, &eta_expand(0, arity)).map_err(e)?;
    let tc = TyCtx::from_context(ctx).map_err(|err| err.to_string())?;
    let conv = crate::typecheck::convert_terms(&tc, f_ty, &Tm::Var(0), &eta_expand(0, arity))
        .map_err(|err| err.to_string())?;
    Ok(head_ok && expanded == nf && conv)
}

fn spine_head(n: &Ne) -> Option<usize> {
    match n {
        Ne::Var(ix) => Some(*ix),
        Ne::App { head, .. } => spine_head(head),
        Ne::Unlift(m) => spine_head(m),
        Ne::ElimBool { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for report in [
            stability(4),
            computation(1, 20),
            beta(2, 30, 8),
            naturality(3, 30),
            canonicity(2, 4, 50, 4),
            eta(5, 20),
        ] {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn contexts_are_counted() {
        assert_eq!(contexts_over(&stability_context_types(), 2).len(), 31);
    }

    #[test]
    fn eta_expansion_shape() {
        assert_eq!(eta_expand(0, 1), Tm::lam(Tm::app(Tm::Var(1), Tm::Var(0))));
        assert_eq!(
            eta_expand(2, 2),
            Tm::lam(Tm::lam(Tm::app(Tm::app(Tm::Var(4), Tm::Var(1)), Tm::Var(0))))
        );
    }
}
