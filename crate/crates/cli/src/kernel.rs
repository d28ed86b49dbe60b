//! `check`, `norm` and `canon`.

use std::path::Path;

use ttw_core::canonicity::canon_bool;
use ttw_core::nbe::{norm, norm_type};
use ttw_core::normal::{eq_nf, NfTy};
use ttw_core::parse::{parse_file, parse_tm, Definition};
use ttw_core::pretty::{tm_to_string, ty_to_string};
use ttw_core::syntax::Context;
use ttw_core::typecheck::{check_def, check_in_context};

use crate::outcome::{Outcome, Status};

fn load(path: &Path) -> Result<Vec<Definition>, Outcome> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Outcome::failed(Status::Malformed, format!("{}: {e}", path.display())))?;
    parse_file(&src).map_err(|e| Outcome::failed(Status::Malformed, format!("{}:{e}", path.display())))
}

fn find<'a>(defs: &'a [Definition], name: &str) -> Result<&'a Definition, Outcome> {
    defs.iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Outcome::failed(Status::Fail, format!("unknown definition `{name}`")))
}

fn check_one(path: &Path, def: &Definition) -> Result<(), Outcome> {
    check_def(def).map(|_| ()).map_err(|e| {
        Outcome::failed(
            Status::Fail,
            format!("{}:{}: in `{}`: {e}", path.display(), def.line, def.name),
        )
    })
}

pub fn check(path: &Path) -> Outcome {
    let defs = match load(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let mut lines = Vec::new();
    for d in &defs {
        if let Err(mut o) = check_one(path, d) {
            o.lines = lines;
            return o;
        }
        lines.push(format!("{} : {}", d.name, ty_to_string(0, &d.ty)));
    }
    let n = defs.len();
    lines.push(format!("{n} definition{}", if n == 1 { "" } else { "s" }));
    Outcome::pass(lines)
}

pub fn normalize(path: &Path, name: &str) -> Outcome {
    let res = (|| {
        let defs = load(path)?;
        let def = find(&defs, name)?;
        check_one(path, def)?;
        let fail = |e: &dyn std::fmt::Display| Outcome::failed(Status::Fail, format!("`{name}`: {e}"));
        let ctx = Context::empty();
        let nf = norm(&ctx, &def.ty, &def.body).map_err(|e| fail(&e))?;
        let nf_ty = norm_type(&ctx, &def.ty).map_err(|e| fail(&e))?;
        let erased = tm_to_string(0, &nf.erase());
        let ty = ty_to_string(0, &nf_ty.erase());

        // The printed normal form must parse, check and normalize to itself.
        let back = parse_tm(&erased, &[]).map_err(|e| fail(&format!("printed normal form does not parse: {e}")))?;
        check_in_context(&ctx, &back, &def.ty)
            .map_err(|e| fail(&format!("printed normal form does not check: {e}")))?;
        let again = norm(&ctx, &def.ty, &back).map_err(|e| fail(&e))?;
        if !eq_nf(&again, &nf) {
            return Err(fail(&format!(
                "round trip changed the normal form: {nf} became {again}"
            )));
        }
        Ok(Outcome::pass(vec![
            format!("def {name} : {ty} := {erased}"),
            format!("normal form: {nf}"),
        ]))
    })();
    res.unwrap_or_else(|o| o)
}

pub fn canon(path: &Path, name: &str) -> Outcome {
    let res = (|| {
        let defs = load(path)?;
        let def = find(&defs, name)?;
        check_one(path, def)?;
        let level = match norm_type(&Context::empty(), &def.ty) {
            Ok(NfTy::Bool(i)) => i,
            Ok(other) => {
                return Err(Outcome::failed(
                    Status::Fail,
                    format!("`{name}` has type {}, not a boolean", ty_to_string(0, &other.erase())),
                ))
            }
            Err(e) => return Err(Outcome::failed(Status::Fail, format!("`{name}`: {e}"))),
        };
        let b = canon_bool(&def.body, level).map_err(|e| Outcome::failed(Status::Fail, format!("`{name}`: {e}")))?;
        Ok(Outcome::pass(vec![b.to_string()]))
    })();
    res.unwrap_or_else(|o| o)
}
