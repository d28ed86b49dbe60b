//! Surface-syntax printer. Bound variables are named `x0, x1, …` by their
//! de Bruijn level, so the output parses back to the same term.

use std::fmt::Write;

use crate::syntax::{Context, Tm, Ty};

/// Prints a type whose free variables are the `depth` variables of an
/// enclosing context.
pub fn ty_to_string(depth: usize, ty: &Ty) -> String {
    let mut out = String::new();
    write_ty(&mut out, depth, ty, Prec::Top);
    out
}

pub fn tm_to_string(depth: usize, tm: &Tm) -> String {
    let mut out = String::new();
    write_tm(&mut out, depth, tm, Prec::Top);
    out
}

/// `x0 : A0, x1 : A1, …`, or `·` for the empty context.
pub fn context_to_string(ctx: &Context) -> String {
    if ctx.is_empty() {
        return "·".to_string();
    }
    ctx.entries()
        .iter()
        .enumerate()
        .map(|(k, ty)| format!("{} : {}", var_name(k), ty_to_string(k, ty)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn var_name(level: usize) -> String {
    format!("x{level}")
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Atom,
    App,
    Top,
}

fn paren(out: &mut String, needed: bool, f: impl FnOnce(&mut String)) {
    if needed {
        out.push('(');
    }
    f(out);
    if needed {
        out.push(')');
    }
}

fn write_ty(out: &mut String, depth: usize, ty: &Ty, prec: Prec) {
    match ty {
        Ty::U(i) => paren(out, prec == Prec::Atom, |out| {
            let _ = write!(out, "U {i}");
        }),
        Ty::Bool(i) => paren(out, prec == Prec::Atom, |out| {
            let _ = write!(out, "Bool {i}");
        }),
        Ty::El(t) => paren(out, prec == Prec::Atom, |out| {
            out.push_str("El ");
            write_tm(out, depth, t, Prec::Atom);
        }),
        Ty::Lift(a) => paren(out, prec == Prec::Atom, |out| {
            out.push_str("Lift ");
            write_ty(out, depth, a, Prec::Atom);
        }),
        Ty::Pi(a, b) => paren(out, prec != Prec::Top, |out| {
            let _ = write!(out, "({} : ", var_name(depth));
            write_ty(out, depth, a, Prec::Top);
            out.push_str(") -> ");
            write_ty(out, depth + 1, b, Prec::Top);
        }),
    }
}

fn write_tm(out: &mut String, depth: usize, tm: &Tm, prec: Prec) {
    match tm {
        Tm::Var(ix) => {
            if *ix < depth {
                out.push_str(&var_name(depth - 1 - ix));
            } else {
                // Out of scope; printed so that debugging output stays total.
                let _ = write!(out, "#{ix}");
            }
        }
        Tm::True(i) => paren(out, prec == Prec::Atom, |out| {
            let _ = write!(out, "true {i}");
        }),
        Tm::False(i) => paren(out, prec == Prec::Atom, |out| {
            let _ = write!(out, "false {i}");
        }),
        Tm::Lam(body) => paren(out, prec != Prec::Top, |out| {
            let _ = write!(out, "fun {} => ", var_name(depth));
            write_tm(out, depth + 1, body, Prec::Top);
        }),
        Tm::App(f, a) => paren(out, prec == Prec::Atom, |out| {
            write_tm(out, depth, f, Prec::App);
            out.push(' ');
            write_tm(out, depth, a, Prec::Atom);
        }),
        Tm::Lift(a) => paren(out, prec == Prec::Atom, |out| {
            out.push_str("lift ");
            write_tm(out, depth, a, Prec::Atom);
        }),
        Tm::Unlift(a) => paren(out, prec == Prec::Atom, |out| {
            out.push_str("unlift ");
            write_tm(out, depth, a, Prec::Atom);
        }),
        Tm::Code(a) => paren(out, prec == Prec::Atom, |out| {
            out.push_str("code ");
            write_ty(out, depth, a, Prec::Atom);
        }),
        Tm::ElimB {
            scrut_level,
            motive_level,
            motive,
            on_true,
            on_false,
            scrutinee,
        } => paren(out, prec == Prec::Atom, |out| {
            let _ = write!(out, "elimB {scrut_level} {motive_level} ({}. ", var_name(depth));
            write_ty(out, depth + 1, motive, Prec::Top);
            out.push_str(") ");
            write_tm(out, depth, on_true, Prec::Atom);
            out.push(' ');
            write_tm(out, depth, on_false, Prec::Atom);
            out.push(' ');
            write_tm(out, depth, scrutinee, Prec::Atom);
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::lvl;

    #[test]
    fn prints_binders_by_level() {
        let id = Tm::lam(Tm::var(0));
        assert_eq!(tm_to_string(0, &id), "fun x0 => x0");
        assert_eq!(tm_to_string(2, &id), "fun x2 => x2");
        let k = Tm::lam(Tm::lam(Tm::var(1)));
        assert_eq!(tm_to_string(0, &k), "fun x0 => fun x1 => x0");
    }

    #[test]
    fn prints_applications_and_prefix_forms() {
        let t = Tm::app(Tm::app(Tm::var(1), Tm::lift(Tm::var(0))), Tm::True(lvl(0)));
        assert_eq!(tm_to_string(2, &t), "x0 (lift x1) (true 0)");
        let e = Tm::elim_b(
            lvl(0),
            lvl(1),
            Ty::U(lvl(0)),
            Tm::code(Ty::Bool(lvl(0))),
            Tm::code(Ty::pi(Ty::Bool(lvl(0)), Ty::Bool(lvl(0)))),
            Tm::var(0),
        );
        assert_eq!(
            tm_to_string(1, &e),
            "elimB 0 1 (x1. U 0) (code (Bool 0)) (code ((x1 : Bool 0) -> Bool 0)) x0"
        );
    }

    #[test]
    fn prints_types() {
        let ty = Ty::pi(Ty::U(lvl(0)), Ty::pi(Ty::el(Tm::var(0)), Ty::lift(Ty::el(Tm::var(1)))));
        assert_eq!(ty_to_string(0, &ty), "(x0 : U 0) -> (x1 : El x0) -> Lift (El x0)");
        let ctx = Context::from_entries(vec![Ty::U(lvl(0)), Ty::el(Tm::var(0))]).unwrap();
        assert_eq!(context_to_string(&ctx), "x0 : U 0, x1 : El x0");
        assert_eq!(context_to_string(&Context::empty()), "·");
    }
}
