//! Finite categories and functors, given by explicit tables.
//!
//! Composition is written `g∘f` for `f : a → b` then `g : b → c`.

use std::collections::HashMap;
use std::fmt;

use crate::error::LawError;

pub type Obj = usize;
pub type Mor = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorInfo {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    mors: Vec<MorInfo>,
    ids: Vec<Mor>,
    /// `homs[a][b]`, in the order the morphisms were declared.
    homs: Vec<Vec<Vec<Mor>>>,
    /// `comp[g][f] = g∘f` whenever `cod f = dom g`.
    comp: Vec<Vec<Option<Mor>>>,
}

/// Accumulates a category. Identities are created with their objects and
/// composites with identities are filled in by [`CatBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct CatBuilder {
    objects: Vec<String>,
    mors: Vec<MorInfo>,
    ids: Vec<Mor>,
    comp: HashMap<(Mor, Mor), Mor>,
}

impl CatBuilder {
    pub fn new() -> CatBuilder {
        CatBuilder::default()
    }

    /// Adds an object whose identity is called `id_<name>`.
    pub fn object(&mut self, name: &str) -> Obj {
        let id_name = format!("id_{name}");
        self.object_with_id(name, &id_name)
    }

    pub fn object_with_id(&mut self, name: &str, id_name: &str) -> Obj {
        let a = self.objects.len();
        self.objects.push(name.to_string());
        let id = self.mors.len();
        self.mors.push(MorInfo {
            name: id_name.to_string(),
            dom: a,
            cod: a,
        });
        self.ids.push(id);
        a
    }

    pub fn morphism(&mut self, name: &str, dom: Obj, cod: Obj) -> Mor {
        self.mors.push(MorInfo {
            name: name.to_string(),
            dom,
            cod,
        });
        self.mors.len() - 1
    }

    pub fn id(&self, a: Obj) -> Mor {
        self.ids[a]
    }

    /// Records `g∘f = h`. A second, different entry for the same pair is an
    /// error at build time.
    pub fn compose(&mut self, g: Mor, f: Mor, h: Mor) -> Result<(), LawError> {
        match self.comp.insert((g, f), h) {
            Some(old) if old != h => Err(LawError::ConflictingComposite {
                g: self.mors[g].name.clone(),
                f: self.mors[f].name.clone(),
                first: self.mors[old].name.clone(),
                second: self.mors[h].name.clone(),
            }),
            _ => Ok(()),
        }
    }

    pub fn build(mut self) -> Result<FinCat, LawError> {
        let mut seen = HashMap::new();
        for (i, n) in self.objects.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(LawError::DuplicateName(n.clone()));
            }
        }
        let mut seen = HashMap::new();
        for (i, m) in self.mors.iter().enumerate() {
            if seen.insert(m.name.clone(), i).is_some() {
                return Err(LawError::DuplicateName(m.name.clone()));
            }
        }
        for f in 0..self.mors.len() {
            let (a, b) = (self.mors[f].dom, self.mors[f].cod);
            let (ida, idb) = (self.ids[a], self.ids[b]);
            self.comp.entry((f, ida)).or_insert(f);
            self.comp.entry((idb, f)).or_insert(f);
        }
        let n = self.objects.len();
        let mut homs = vec![vec![Vec::new(); n]; n];
        for (f, m) in self.mors.iter().enumerate() {
            homs[m.dom][m.cod].push(f);
        }
        let mut comp = vec![vec![None; self.mors.len()]; self.mors.len()];
        for (&(g, f), &h) in &self.comp {
            comp[g][f] = Some(h);
        }
        let cat = FinCat {
            objects: self.objects,
            mors: self.mors,
            ids: self.ids,
            homs,
            comp,
        };
        cat.check_laws()?;
        Ok(cat)
    }
}

impl FinCat {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mors.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> {
        0..self.mors.len()
    }

    /// Morphisms that are not identities.
    pub fn non_identities(&self) -> Vec<Mor> {
        self.morphisms().filter(|&f| !self.is_id(f)).collect()
    }

    pub fn info(&self, f: Mor) -> &MorInfo {
        &self.mors[f]
    }

    pub fn dom(&self, f: Mor) -> Obj {
        self.mors[f].dom
    }

    pub fn cod(&self, f: Mor) -> Obj {
        self.mors[f].cod
    }

    pub fn id(&self, a: Obj) -> Mor {
        self.ids[a]
    }

    pub fn is_id(&self, f: Mor) -> bool {
        self.ids[self.dom(f)] == f
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a][b]
    }

    pub fn obj_name(&self, a: Obj) -> &str {
        &self.objects[a]
    }

    pub fn mor_name(&self, f: Mor) -> &str {
        &self.mors[f].name
    }

    pub fn find_object(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_morphism(&self, name: &str) -> Option<Mor> {
        self.mors.iter().position(|m| m.name == name)
    }

    /// `g∘f`. Panics if the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.comp[g][f].unwrap_or_else(|| panic!("{} and {} are not composable", self.mor_name(g), self.mor_name(f)))
    }

    /// Composes a path given outermost-first: `[h, g, f]` is `h∘g∘f`.
    pub fn compose_all(&self, path: &[Mor]) -> Mor {
        let (&last, rest) = path.split_last().expect("empty path");
        rest.iter().rev().fold(last, |acc, &g| self.compose(g, acc))
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.id(a) && self.compose(f, g) == self.id(b))
    }

    fn check_laws(&self) -> Result<(), LawError> {
        let name = |f: Mor| self.mors[f].name.clone();
        for g in self.morphisms() {
            for f in self.morphisms() {
                let composable = self.cod(f) == self.dom(g);
                match self.comp[g][f] {
                    None if composable => return Err(LawError::MissingComposite { g: name(g), f: name(f) }),
                    Some(h) if !composable => {
                        return Err(LawError::IllTypedComposite {
                            g: name(g),
                            f: name(f),
                            h: name(h),
                        })
                    }
                    Some(h) if self.dom(h) != self.dom(f) || self.cod(h) != self.cod(g) => {
                        return Err(LawError::IllTypedComposite {
                            g: name(g),
                            f: name(f),
                            h: name(h),
                        })
                    }
                    _ => {}
                }
            }
        }
        for f in self.morphisms() {
            let (a, b) = (self.dom(f), self.cod(f));
            if self.compose(f, self.id(a)) != f || self.compose(self.id(b), f) != f {
                return Err(LawError::Identity { f: name(f) });
            }
        }
        for f in self.morphisms() {
            for &g in self.morphisms_from(self.cod(f)) {
                for &h in self.morphisms_from(self.cod(g)) {
                    let left = self.compose(self.compose(h, g), f);
                    let right = self.compose(h, self.compose(g, f));
                    if left != right {
                        return Err(LawError::Associativity {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                            left: name(left),
                            right: name(right),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn morphisms_from(&self, a: Obj) -> impl Iterator<Item = &Mor> {
        self.homs[a].iter().flatten()
    }

    /// Replaces one entry of the composition table without checking the
    /// laws. Only useful for exercising the law checks.
    pub fn corrupt_composite(&self, g: Mor, f: Mor, h: Mor) -> Result<FinCat, LawError> {
        let mut c = self.clone();
        c.comp[g][f] = Some(h);
        c.check_laws()?;
        Ok(c)
    }
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "objects {{{}}}", self.objects.join(", "))?;
        let gens: Vec<String> = self
            .non_identities()
            .into_iter()
            .map(|m| {
                let i = self.info(m);
                format!("{}: {}->{}", i.name, self.objects[i.dom], self.objects[i.cod])
            })
            .collect();
        write!(f, ", morphisms {{{}}}", gens.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    dom: FinCat,
    cod: FinCat,
    obj: Vec<Obj>,
    mor: Vec<Mor>,
}

impl FinFunctor {
    pub fn new(dom: FinCat, cod: FinCat, obj: Vec<Obj>, mor: Vec<Mor>) -> Result<FinFunctor, LawError> {
        let f = FinFunctor { dom, cod, obj, mor };
        f.check_laws()?;
        Ok(f)
    }

    pub fn identity(c: &FinCat) -> FinFunctor {
        FinFunctor {
            dom: c.clone(),
            cod: c.clone(),
            obj: (0..c.num_objects()).collect(),
            mor: c.morphisms().collect(),
        }
    }

    pub fn dom(&self) -> &FinCat {
        &self.dom
    }

    pub fn cod(&self) -> &FinCat {
        &self.cod
    }

    pub fn on_obj(&self, a: Obj) -> Obj {
        self.obj[a]
    }

    pub fn on_mor(&self, f: Mor) -> Mor {
        self.mor[f]
    }

    fn check_laws(&self) -> Result<(), LawError> {
        let (c, d) = (&self.dom, &self.cod);
        if self.obj.len() != c.num_objects() || self.mor.len() != c.num_morphisms() {
            return Err(LawError::Functor("object or morphism map is not total".into()));
        }
        if let Some(&b) = self.obj.iter().find(|&&b| b >= d.num_objects()) {
            return Err(LawError::Functor(format!("object index {b} out of range")));
        }
        for f in c.morphisms() {
            let g = self.mor[f];
            if g >= d.num_morphisms() {
                return Err(LawError::Functor(format!("morphism index {g} out of range")));
            }
            if d.dom(g) != self.obj[c.dom(f)] || d.cod(g) != self.obj[c.cod(f)] {
                return Err(LawError::Functor(format!(
                    "{} is sent to {}, which has the wrong endpoints",
                    c.mor_name(f),
                    d.mor_name(g)
                )));
            }
        }
        for a in 0..c.num_objects() {
            if self.mor[c.id(a)] != d.id(self.obj[a]) {
                return Err(LawError::Functor(format!(
                    "identity of {} is not preserved",
                    c.obj_name(a)
                )));
            }
        }
        for f in c.morphisms() {
            for &g in c.homs[c.cod(f)].iter().flatten() {
                let lhs = self.mor[c.compose(g, f)];
                let rhs = d.compose(self.mor[g], self.mor[f]);
                if lhs != rhs {
                    return Err(LawError::Functor(format!(
                        "F({}∘{}) = {} but F{}∘F{} = {}",
                        c.mor_name(g),
                        c.mor_name(f),
                        d.mor_name(lhs),
                        c.mor_name(g),
                        c.mor_name(f),
                        d.mor_name(rhs)
                    )));
                }
            }
        }
        Ok(())
    }

    /// All functors between two categories, up to `limit` of them.
    pub fn enumerate(c: &FinCat, d: &FinCat, limit: usize) -> Vec<FinFunctor> {
        let mut out = Vec::new();
        let nc = c.num_objects();
        let nd = d.num_objects();
        if nd == 0 && nc > 0 {
            return out;
        }
        let gens = c.non_identities();
        let mut obj = vec![0; nc];
        loop {
            let mut mor = vec![usize::MAX; c.num_morphisms()];
            for a in 0..nc {
                mor[c.id(a)] = d.id(obj[a]);
            }
            extend_functor(c, d, &obj, &gens, 0, &mut mor, &mut out, limit);
            if out.len() >= limit {
                break;
            }
            // next object map in lexicographic order
            let mut i = 0;
            while i < nc {
                obj[i] += 1;
                if obj[i] < nd {
                    break;
                }
                obj[i] = 0;
                i += 1;
            }
            if i == nc {
                break;
            }
        }
        out.truncate(limit);
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_functor(
    c: &FinCat,
    d: &FinCat,
    obj: &[Obj],
    gens: &[Mor],
    k: usize,
    mor: &mut Vec<Mor>,
    out: &mut Vec<FinFunctor>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if k == gens.len() {
        out.push(FinFunctor {
            dom: c.clone(),
            cod: d.clone(),
            obj: obj.to_vec(),
            mor: mor.clone(),
        });
        return;
    }
    let f = gens[k];
    for &g in d.hom(obj[c.dom(f)], obj[c.cod(f)]) {
        mor[f] = g;
        if composites_agree(c, d, mor) {
            extend_functor(c, d, obj, gens, k + 1, mor, out, limit);
        }
    }
    mor[f] = usize::MAX;
}

/// Checks `F(g∘f) = Fg∘Ff` for every triple that is already assigned.
fn composites_agree(c: &FinCat, d: &FinCat, mor: &[Mor]) -> bool {
    for f in c.morphisms() {
        if mor[f] == usize::MAX {
            continue;
        }
        for &g in c.homs[c.cod(f)].iter().flatten() {
            let h = c.compose(g, f);
            if mor[g] == usize::MAX || mor[h] == usize::MAX {
                continue;
            }
            if mor[h] != d.compose(mor[g], mor[f]) {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.dom.num_objects())
            .map(|a| format!("{}↦{}", self.dom.obj_name(a), self.cod.obj_name(self.obj[a])))
            .chain(
                self.dom
                    .non_identities()
                    .into_iter()
                    .map(|m| format!("{}↦{}", self.dom.mor_name(m), self.cod.mor_name(self.mor[m]))),
            )
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identities_are_filled_in() {
        let c = catalog::walking_arrow();
        let a = c.find_morphism("a").unwrap();
        assert_eq!(c.compose(a, c.id(0)), a);
        assert_eq!(c.compose(c.id(1), a), a);
        assert_eq!(c.hom(1, 0), &[] as &[Mor]);
    }

    #[test]
    fn corrupted_table_names_the_triple() {
        let c = catalog::split_idempotent();
        let e = c.find_morphism("e").unwrap();
        let s = c.find_morphism("s").unwrap();
        // e∘s should be s; pretending it is e breaks typing, so use id instead
        let err = c.corrupt_composite(e, e, c.id(0)).unwrap_err();
        assert!(matches!(
            err,
            LawError::Associativity { .. } | LawError::Identity { .. }
        ));
        assert!(c.corrupt_composite(e, s, e).is_err());
    }

    #[test]
    fn missing_composite_is_rejected() {
        let mut b = CatBuilder::new();
        let x = b.object("x");
        let y = b.object("y");
        let z = b.object("z");
        b.morphism("f", x, y);
        b.morphism("g", y, z);
        let err = b.build().unwrap_err();
        assert_eq!(err.to_string(), "composite g∘f is missing from the table");
    }

    #[test]
    fn functor_enumeration() {
        let t = catalog::terminal();
        let w = catalog::walking_arrow();
        assert_eq!(FinFunctor::enumerate(&t, &w, 100).len(), 2);
        // functors from the arrow to itself: two constants and the identity
        assert_eq!(FinFunctor::enumerate(&w, &w, 100).len(), 3);
        assert_eq!(FinFunctor::enumerate(&w, &t, 100).len(), 1);
    }

    #[test]
    fn bad_functor_is_rejected() {
        let w = catalog::walking_arrow();
        let a = w.find_morphism("a").unwrap();
        // swaps objects but keeps the arrow
        let err = FinFunctor::new(w.clone(), w.clone(), vec![1, 0], vec![w.id(1), w.id(0), a]);
        assert!(err.is_err());
    }
}
