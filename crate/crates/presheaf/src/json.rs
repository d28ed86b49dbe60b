//! Loading and writing instances as JSON. The layout is documented in
//! `docs/psh-schema.md`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cat::{CatBuilder, FinCat, FinFunctor, Mor};
use crate::error::LawError;
use crate::kan::left_kan;
use crate::preserve::PreservationInstance;
use crate::psh::{DepFinPsh, DepNat, FinPsh};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("law violation: {0}")]
    Law(#[from] LawError),
}

impl From<serde_json::Error> for LoadError {
    fn from(e: serde_json::Error) -> LoadError {
        LoadError::Schema(e.to_string())
    }
}

fn schema<T>(msg: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError::Schema(msg.into()))
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CatJson {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ids: BTreeMap<String, String>,
    #[serde(default)]
    pub homs: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub comp: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub target: CatJson,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PshJson {
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub restrictions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DepJson {
    pub fibers: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    pub restrictions: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PreservationJson {
    pub dependent: DepJson,
    pub map: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub category: CatJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functor: Option<FunctorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presheaf: Option<PshJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_presheaf: Option<PshJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dependent: Option<DepJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preservation: Option<PreservationJson>,
}

/// A loaded and law-checked instance. The functor defaults to the identity.
#[derive(Clone, Debug)]
pub struct Instance {
    pub category: FinCat,
    pub functor: FinFunctor,
    pub presheaf: Option<FinPsh>,
    pub target_presheaf: Option<FinPsh>,
    pub dependent: Option<DepFinPsh>,
    pub preservation: Option<PreservationInstance>,
}

pub fn load_str(src: &str) -> Result<Instance, LoadError> {
    let raw: InstanceJson = serde_json::from_str(src)?;
    load(&raw)
}

pub fn load(raw: &InstanceJson) -> Result<Instance, LoadError> {
    let category = load_cat(&raw.category)?;
    let functor = match &raw.functor {
        None => FinFunctor::identity(&category),
        Some(f) => load_functor(&category, f)?,
    };
    let presheaf = raw.presheaf.as_ref().map(|p| load_psh(&category, p)).transpose()?;
    let target_presheaf = raw
        .target_presheaf
        .as_ref()
        .map(|p| load_psh(functor.cod(), p))
        .transpose()?;
    let need_x = |what: &str| -> Result<&FinPsh, LoadError> {
        match &presheaf {
            Some(x) => Ok(x),
            None => schema(format!("\"{what}\" needs \"presheaf\"")),
        }
    };
    let dependent = match &raw.dependent {
        Some(d) => Some(load_dep(need_x("dependent")?, d)?),
        None => None,
    };
    let preservation = match &raw.preservation {
        Some(p) => {
            let x = need_x("preservation")?;
            let a_c = match &dependent {
                Some(a) => a.clone(),
                None => return schema("\"preservation\" needs \"dependent\""),
            };
            let lk = left_kan(&functor, x)?;
            let a_d = load_dep(lk.psh(), &p.dependent)?;
            let pulled = crate::kan::precompose_dep(&lk, &a_d)?;
            let fa = load_dep_map(&a_c, &pulled, &p.map)?;
            Some(PreservationInstance {
                functor: functor.clone(),
                x: x.clone(),
                a_c,
                a_d,
                fa,
            })
        }
        None => None,
    };
    Ok(Instance {
        category,
        functor,
        presheaf,
        target_presheaf,
        dependent,
        preservation,
    })
}

fn split_once<'a>(key: &'a str, sep: &str, what: &str) -> Result<(&'a str, &'a str), LoadError> {
    match key.split_once(sep) {
        Some((a, b)) => Ok((a.trim(), b.trim())),
        None => schema(format!("{what} key {key:?} should look like \"a{sep}b\"")),
    }
}

pub fn load_cat(raw: &CatJson) -> Result<FinCat, LoadError> {
    let mut b = CatBuilder::new();
    let mut obj = BTreeMap::new();
    for o in &raw.objects {
        let id = raw.ids.get(o).cloned().unwrap_or_else(|| format!("id_{o}"));
        if obj.insert(o.clone(), b.object_with_id(o, &id)).is_some() {
            return schema(format!("object {o} is listed twice"));
        }
    }
    for o in raw.ids.keys() {
        if !obj.contains_key(o) {
            return schema(format!("identity given for unknown object {o}"));
        }
    }
    let lookup_obj = |n: &str| match obj.get(n) {
        Some(&a) => Ok(a),
        None => schema(format!("unknown object {n}")),
    };
    let mut mors: BTreeMap<String, Mor> = raw
        .objects
        .iter()
        .map(|o| {
            let a = obj[o];
            (raw.ids.get(o).cloned().unwrap_or_else(|| format!("id_{o}")), b.id(a))
        })
        .collect();
    for (key, names) in &raw.homs {
        let (a, c) = split_once(key, "->", "hom")?;
        let (a, c) = (lookup_obj(a)?, lookup_obj(c)?);
        for n in names {
            if let Some(&m) = mors.get(n) {
                // listing an identity is allowed
                if a == c && b.id(a) == m {
                    continue;
                }
                return schema(format!("morphism {n} is declared twice"));
            }
            mors.insert(n.clone(), b.morphism(n, a, c));
        }
    }
    let lookup = |n: &str| match mors.get(n) {
        Some(&m) => Ok(m),
        None => schema(format!("unknown morphism {n}")),
    };
    for (key, h) in &raw.comp {
        let (g, f) = split_once(key, "∘", "comp")?;
        b.compose(lookup(g)?, lookup(f)?, lookup(h)?)?;
    }
    Ok(b.build()?)
}

fn load_functor(c: &FinCat, raw: &FunctorJson) -> Result<FinFunctor, LoadError> {
    let d = load_cat(&raw.target)?;
    let mut obj = Vec::new();
    for a in 0..c.num_objects() {
        let Some(name) = raw.objects.get(c.obj_name(a)) else {
            return schema(format!("functor does not say where {} goes", c.obj_name(a)));
        };
        match d.find_object(name) {
            Some(b) => obj.push(b),
            None => return schema(format!("unknown target object {name}")),
        }
    }
    check_keys(raw.objects.keys(), |k| c.find_object(k).is_some(), "object")?;
    let mut mor = Vec::new();
    for f in c.morphisms() {
        if c.is_id(f) {
            mor.push(d.id(obj[c.dom(f)]));
            continue;
        }
        let Some(name) = raw.morphisms.get(c.mor_name(f)) else {
            return schema(format!("functor does not say where {} goes", c.mor_name(f)));
        };
        match d.find_morphism(name) {
            Some(g) => mor.push(g),
            None => return schema(format!("unknown target morphism {name}")),
        }
    }
    check_keys(raw.morphisms.keys(), |k| c.find_morphism(k).is_some(), "morphism")?;
    Ok(FinFunctor::new(c.clone(), d, obj, mor)?)
}

fn check_keys<'a>(
    keys: impl Iterator<Item = &'a String>,
    known: impl Fn(&str) -> bool,
    what: &str,
) -> Result<(), LoadError> {
    for k in keys {
        if !known(k) {
            return schema(format!("unknown {what} {k}"));
        }
    }
    Ok(())
}

fn index_of(labels: &[String], name: &str, place: &str) -> Result<usize, LoadError> {
    match labels.iter().position(|l| l == name) {
        Some(i) => Ok(i),
        None => schema(format!("unknown element {name} at {place}")),
    }
}

/// Reads a function between label lists. Every source label must be mapped.
fn load_function(
    raw: Option<&BTreeMap<String, String>>,
    from: &[String],
    to: &[String],
    place: &str,
) -> Result<Vec<usize>, LoadError> {
    let empty = BTreeMap::new();
    let raw = raw.unwrap_or(&empty);
    check_keys(
        raw.keys(),
        |k| from.iter().any(|l| l == k),
        &format!("element at {place}"),
    )?;
    from.iter()
        .map(|l| match raw.get(l) {
            Some(v) => index_of(to, v, place),
            None => schema(format!("{place} does not say where {l} goes")),
        })
        .collect()
}

pub fn load_psh(c: &FinCat, raw: &PshJson) -> Result<FinPsh, LoadError> {
    check_keys(raw.sets.keys(), |k| c.find_object(k).is_some(), "object")?;
    check_keys(raw.restrictions.keys(), |k| c.find_morphism(k).is_some(), "morphism")?;
    let sets: Vec<Vec<String>> = (0..c.num_objects())
        .map(|a| raw.sets.get(c.obj_name(a)).cloned().unwrap_or_default())
        .collect();
    let mut restr = Vec::new();
    for f in c.morphisms() {
        let (a, b) = (c.dom(f), c.cod(f));
        if c.is_id(f) && !raw.restrictions.contains_key(c.mor_name(f)) {
            restr.push((0..sets[b].len()).collect());
            continue;
        }
        let place = format!("restriction along {}", c.mor_name(f));
        restr.push(load_function(
            raw.restrictions.get(c.mor_name(f)),
            &sets[b],
            &sets[a],
            &place,
        )?);
    }
    Ok(FinPsh::new(Arc::new(c.clone()), sets, restr)?)
}

pub fn load_dep(x: &FinPsh, raw: &DepJson) -> Result<DepFinPsh, LoadError> {
    let c = x.base();
    check_keys(raw.fibers.keys(), |k| c.find_object(k).is_some(), "object")?;
    check_keys(raw.restrictions.keys(), |k| c.find_morphism(k).is_some(), "morphism")?;
    let mut fibers = Vec::new();
    for a in 0..c.num_objects() {
        let row = raw.fibers.get(c.obj_name(a));
        if let Some(row) = row {
            check_keys(
                row.keys(),
                |k| x.find(a, k).is_some(),
                &format!("element at {}", c.obj_name(a)),
            )?;
        }
        fibers.push(
            (0..x.size(a))
                .map(|e| row.and_then(|r| r.get(x.label(a, e))).cloned().unwrap_or_default())
                .collect::<Vec<_>>(),
        );
    }
    let mut restr = Vec::new();
    for f in c.morphisms() {
        let (a, b) = (c.dom(f), c.cod(f));
        let table = raw.restrictions.get(c.mor_name(f));
        let mut row = Vec::new();
        for e in 0..x.size(b) {
            let below = x.restrict(f, e);
            let from = &fibers[b][e];
            if c.is_id(f) && table.is_none() {
                row.push((0..from.len()).collect());
                continue;
            }
            let place = format!("restriction along {} over {}", c.mor_name(f), x.label(b, e));
            row.push(load_function(
                table.and_then(|t| t.get(x.label(b, e))),
                from,
                &fibers[a][below],
                &place,
            )?);
        }
        restr.push(row);
    }
    Ok(DepFinPsh::new(Arc::new(x.clone()), fibers, restr)?)
}

fn load_dep_map(
    source: &DepFinPsh,
    target: &DepFinPsh,
    raw: &BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
) -> Result<DepNat, LoadError> {
    let x = source.base();
    let c = x.base();
    let mut comps = Vec::new();
    for a in 0..c.num_objects() {
        let row = raw.get(c.obj_name(a));
        let mut out = Vec::new();
        for e in 0..x.size(a) {
            let place = format!("map at {} over {}", c.obj_name(a), x.label(a, e));
            let table = row.and_then(|r| r.get(x.label(a, e)));
            out.push(load_function(table, source.labels(a, e), target.labels(a, e), &place)?);
        }
        comps.push(out);
    }
    Ok(DepNat::new(Arc::new(source.clone()), Arc::new(target.clone()), comps)?)
}

pub fn cat_to_json(c: &FinCat) -> CatJson {
    let mut homs: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for f in c.non_identities() {
        let key = format!("{}->{}", c.obj_name(c.dom(f)), c.obj_name(c.cod(f)));
        homs.entry(key).or_default().push(c.mor_name(f).to_string());
    }
    let mut comp = BTreeMap::new();
    for f in c.non_identities() {
        for g in c.non_identities() {
            if c.dom(g) == c.cod(f) {
                let key = format!("{}∘{}", c.mor_name(g), c.mor_name(f));
                comp.insert(key, c.mor_name(c.compose(g, f)).to_string());
            }
        }
    }
    let ids = (0..c.num_objects())
        .filter(|&a| c.mor_name(c.id(a)) != format!("id_{}", c.obj_name(a)))
        .map(|a| (c.obj_name(a).to_string(), c.mor_name(c.id(a)).to_string()))
        .collect();
    CatJson {
        objects: c.objects().to_vec(),
        ids,
        homs,
        comp,
    }
}

pub fn functor_to_json(f: &FinFunctor) -> FunctorJson {
    let c = f.dom();
    FunctorJson {
        target: cat_to_json(f.cod()),
        objects: (0..c.num_objects())
            .map(|a| (c.obj_name(a).to_string(), f.cod().obj_name(f.on_obj(a)).to_string()))
            .collect(),
        morphisms: c
            .non_identities()
            .into_iter()
            .map(|m| (c.mor_name(m).to_string(), f.cod().mor_name(f.on_mor(m)).to_string()))
            .collect(),
    }
}

pub fn psh_to_json(x: &FinPsh) -> PshJson {
    let c = x.base();
    PshJson {
        sets: (0..c.num_objects())
            .map(|a| (c.obj_name(a).to_string(), x.labels(a).to_vec()))
            .collect(),
        restrictions: c
            .non_identities()
            .into_iter()
            .map(|f| {
                let (a, b) = (c.dom(f), c.cod(f));
                let table = (0..x.size(b))
                    .map(|e| (x.label(b, e).to_string(), x.label(a, x.restrict(f, e)).to_string()))
                    .collect();
                (c.mor_name(f).to_string(), table)
            })
            .collect(),
    }
}

pub fn dep_to_json(y: &DepFinPsh) -> DepJson {
    let x = y.base();
    let c = x.base();
    DepJson {
        fibers: (0..c.num_objects())
            .map(|a| {
                let row = (0..x.size(a))
                    .map(|e| (x.label(a, e).to_string(), y.labels(a, e).to_vec()))
                    .collect();
                (c.obj_name(a).to_string(), row)
            })
            .collect(),
        restrictions: c
            .non_identities()
            .into_iter()
            .map(|f| {
                let (a, b) = (c.dom(f), c.cod(f));
                let per_elem = (0..x.size(b))
                    .map(|e| {
                        let below = x.restrict(f, e);
                        let t = (0..y.fiber_size(b, e))
                            .map(|v| {
                                (
                                    y.label(b, e, v).to_string(),
                                    y.label(a, below, y.restrict(f, e, v)).to_string(),
                                )
                            })
                            .collect();
                        (x.label(b, e).to_string(), t)
                    })
                    .collect();
                (c.mor_name(f).to_string(), per_elem)
            })
            .collect(),
    }
}

pub fn preservation_to_json(p: &PreservationInstance) -> InstanceJson {
    let c = p.functor.dom();
    let x = &p.x;
    let map = (0..c.num_objects())
        .map(|a| {
            let row = (0..x.size(a))
                .map(|e| {
                    let t = (0..p.a_c.fiber_size(a, e))
                        .map(|v| {
                            let w = p.fa.at(a, e, v);
                            (
                                p.a_c.label(a, e, v).to_string(),
                                p.fa.target().label(a, e, w).to_string(),
                            )
                        })
                        .collect();
                    (x.label(a, e).to_string(), t)
                })
                .collect();
            (c.obj_name(a).to_string(), row)
        })
        .collect();
    InstanceJson {
        category: cat_to_json(c),
        functor: Some(functor_to_json(&p.functor)),
        presheaf: Some(psh_to_json(x)),
        target_presheaf: None,
        dependent: Some(dep_to_json(&p.a_c)),
        preservation: Some(PreservationJson {
            dependent: dep_to_json(&p.a_d),
            map,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::random::PshGen;

    #[test]
    fn categories_round_trip() {
        for c in [catalog::walking_arrow(), catalog::split_idempotent(), catalog::z2()] {
            assert_eq!(load_cat(&cat_to_json(&c)).unwrap(), c);
        }
    }

    #[test]
    fn random_instances_round_trip() {
        let mut g = PshGen::new(2);
        let mut n = 0;
        while n < 10 {
            let Some(p) = g.preservation_instance() else { continue };
            n += 1;
            let text = serde_json::to_string(&preservation_to_json(&p)).unwrap();
            let back = load_str(&text).unwrap().preservation.unwrap();
            assert_eq!(back.check().unwrap(), p.check().unwrap());
        }
    }

    #[test]
    fn errors_are_classified() {
        let bad_json = load_str("{\"category\": 3}");
        assert!(matches!(bad_json, Err(LoadError::Schema(_))));
        let unknown = load_str(r#"{"category": {"objects": ["a"], "homs": {"a->b": ["f"]}}}"#);
        assert!(matches!(unknown, Err(LoadError::Schema(_))));
        let law = load_str(
            r#"{"category": {"objects": ["a"], "homs": {"a->a": ["t"]}, "comp": {"t∘t": "id_a"}},
                "presheaf": {"sets": {"a": ["u", "v"]}, "restrictions": {"t": {"u": "u", "v": "u"}}}}"#,
        );
        assert!(matches!(law, Err(LoadError::Law(LawError::Presheaf(_)))), "{law:?}");
    }
}
