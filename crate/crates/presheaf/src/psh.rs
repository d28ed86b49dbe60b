//! Presheaves, dependent presheaves and the maps between them, stored as
//! explicit finite tables. Elements are indices into per-object label lists.
//!
//! For `f : a → b` the restriction of a presheaf `X` along `f` is the table
//! `|X|_b → |X|_a`, written `x[f]`.

use std::fmt;
use std::sync::Arc;

use crate::cat::{FinCat, Mor, Obj};
use crate::error::{KanError, LawError};
use crate::solve::Equations;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPsh {
    base: Arc<FinCat>,
    sets: Vec<Vec<String>>,
    restr: Vec<Vec<usize>>,
}

impl FinPsh {
    pub fn new(base: Arc<FinCat>, sets: Vec<Vec<String>>, restr: Vec<Vec<usize>>) -> Result<FinPsh, LawError> {
        let x = FinPsh { base, sets, restr };
        x.check_laws()?;
        Ok(x)
    }

    /// The empty presheaf.
    pub fn empty(base: Arc<FinCat>) -> FinPsh {
        let sets = vec![Vec::new(); base.num_objects()];
        let restr = vec![Vec::new(); base.num_morphisms()];
        FinPsh { base, sets, restr }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn size(&self, a: Obj) -> usize {
        self.sets[a].len()
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, a: Obj) -> &[String] {
        &self.sets[a]
    }

    pub fn label(&self, a: Obj, x: usize) -> &str {
        &self.sets[a][x]
    }

    pub fn find(&self, a: Obj, label: &str) -> Option<usize> {
        self.sets[a].iter().position(|l| l == label)
    }

    /// `x[f]`.
    pub fn restrict(&self, f: Mor, x: usize) -> usize {
        self.restr[f][x]
    }

    pub fn restriction(&self, f: Mor) -> &[usize] {
        &self.restr[f]
    }

    /// Same shape, ignoring labels.
    pub fn same_shape(&self, other: &FinPsh) -> bool {
        self.base == other.base
            && self.restr == other.restr
            && (0..self.sets.len()).all(|a| self.size(a) == other.size(a))
    }

    fn check_laws(&self) -> Result<(), LawError> {
        let c = &*self.base;
        if self.sets.len() != c.num_objects() || self.restr.len() != c.num_morphisms() {
            return Err(LawError::Shape("presheaf tables do not match the category".into()));
        }
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            let t = &self.restr[f];
            if t.len() != self.size(b) || t.iter().any(|&x| x >= self.size(a)) {
                return Err(LawError::Presheaf(format!(
                    "restriction along {} is not a function from the set at {} to the set at {}",
                    c.mor_name(f),
                    c.obj_name(b),
                    c.obj_name(a)
                )));
            }
        }
        for a in 0..c.num_objects() {
            for x in 0..self.size(a) {
                if self.restrict(c.id(a), x) != x {
                    return Err(LawError::Presheaf(format!(
                        "{}[{}] ≠ {}",
                        self.label(a, x),
                        c.mor_name(c.id(a)),
                        self.label(a, x)
                    )));
                }
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms().filter(|&g| c.dom(g) == c.cod(f)) {
                let gf = c.compose(g, f);
                for x in 0..self.size(c.cod(g)) {
                    if self.restrict(gf, x) != self.restrict(f, self.restrict(g, x)) {
                        return Err(LawError::Presheaf(format!(
                            "{x}[{g}∘{f}] ≠ {x}[{g}][{f}]",
                            x = self.label(c.cod(g), x),
                            g = c.mor_name(g),
                            f = c.mor_name(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for FinPsh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.sets.len())
            .map(|a| format!("{}: {{{}}}", self.base.obj_name(a), self.sets[a].join(", ")))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A dependent presheaf over `base`: a set over every element, with
/// restriction `y[f] ∈ |Y|_a (x[f])` for `y ∈ |Y|_b x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepFinPsh {
    base: Arc<FinPsh>,
    fibers: Vec<Vec<Vec<String>>>,
    restr: Vec<Vec<Vec<usize>>>,
}

impl DepFinPsh {
    pub fn new(
        base: Arc<FinPsh>,
        fibers: Vec<Vec<Vec<String>>>,
        restr: Vec<Vec<Vec<usize>>>,
    ) -> Result<DepFinPsh, LawError> {
        let y = DepFinPsh { base, fibers, restr };
        y.check_laws()?;
        Ok(y)
    }

    pub fn base(&self) -> &Arc<FinPsh> {
        &self.base
    }

    pub fn cat(&self) -> &FinCat {
        self.base.base()
    }

    pub fn fiber_size(&self, a: Obj, x: usize) -> usize {
        self.fibers[a][x].len()
    }

    pub fn labels(&self, a: Obj, x: usize) -> &[String] {
        &self.fibers[a][x]
    }

    pub fn label(&self, a: Obj, x: usize, y: usize) -> &str {
        &self.fibers[a][x][y]
    }

    /// `y[f]` for `y` over `x`.
    pub fn restrict(&self, f: Mor, x: usize, y: usize) -> usize {
        self.restr[f][x][y]
    }

    pub fn restriction(&self, f: Mor, x: usize) -> &[usize] {
        &self.restr[f][x]
    }

    fn check_laws(&self) -> Result<(), LawError> {
        let x = &*self.base;
        let c = x.base();
        let shape_ok = self.fibers.len() == c.num_objects()
            && (0..c.num_objects()).all(|a| self.fibers[a].len() == x.size(a))
            && self.restr.len() == c.num_morphisms()
            && c.morphisms().all(|f| self.restr[f].len() == x.size(c.cod(f)));
        if !shape_ok {
            return Err(LawError::Shape(
                "dependent presheaf tables do not match the base".into(),
            ));
        }
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            for e in 0..x.size(b) {
                let t = &self.restr[f][e];
                let below = self.fiber_size(a, x.restrict(f, e));
                if t.len() != self.fiber_size(b, e) || t.iter().any(|&y| y >= below) {
                    return Err(LawError::Dependent(format!(
                        "restriction along {} over {} has the wrong shape",
                        c.mor_name(f),
                        x.label(b, e)
                    )));
                }
            }
        }
        for a in 0..c.num_objects() {
            for e in 0..x.size(a) {
                for y in 0..self.fiber_size(a, e) {
                    if self.restrict(c.id(a), e, y) != y {
                        return Err(LawError::Dependent(format!(
                            "{}[{}] ≠ {}",
                            self.label(a, e, y),
                            c.mor_name(c.id(a)),
                            self.label(a, e, y)
                        )));
                    }
                }
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms().filter(|&g| c.dom(g) == c.cod(f)) {
                let gf = c.compose(g, f);
                let top = c.cod(g);
                for e in 0..x.size(top) {
                    let mid = x.restrict(g, e);
                    for y in 0..self.fiber_size(top, e) {
                        let lhs = self.restrict(gf, e, y);
                        let rhs = self.restrict(f, mid, self.restrict(g, e, y));
                        if lhs != rhs {
                            return Err(LawError::Dependent(format!(
                                "{y}[{g}∘{f}] ≠ {y}[{g}][{f}] over {x}",
                                y = self.label(top, e, y),
                                g = c.mor_name(g),
                                f = c.mor_name(f),
                                x = x.label(top, e)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks that two presheaves share a base category.
fn same_base(x: &FinPsh, y: &FinPsh) -> Result<(), LawError> {
    if x.base() == y.base() {
        Ok(())
    } else {
        Err(LawError::Shape("presheaves live over different categories".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinNat {
    source: Arc<FinPsh>,
    target: Arc<FinPsh>,
    comps: Vec<Vec<usize>>,
}

impl FinNat {
    pub fn new(source: Arc<FinPsh>, target: Arc<FinPsh>, comps: Vec<Vec<usize>>) -> Result<FinNat, LawError> {
        same_base(&source, &target)?;
        let n = FinNat { source, target, comps };
        n.check_laws()?;
        Ok(n)
    }

    pub(crate) fn unchecked(source: Arc<FinPsh>, target: Arc<FinPsh>, comps: Vec<Vec<usize>>) -> FinNat {
        FinNat { source, target, comps }
    }

    /// Re-runs the law checks, for maps built by a construction.
    pub fn validate(&self) -> Result<(), LawError> {
        self.check_laws()
    }

    pub fn identity(x: Arc<FinPsh>) -> FinNat {
        let comps = (0..x.base().num_objects()).map(|a| (0..x.size(a)).collect()).collect();
        FinNat {
            source: x.clone(),
            target: x,
            comps,
        }
    }

    pub fn source(&self) -> &Arc<FinPsh> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinPsh> {
        &self.target
    }

    pub fn at(&self, a: Obj, x: usize) -> usize {
        self.comps[a][x]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.comps
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinNat) -> FinNat {
        let comps = first
            .comps
            .iter()
            .enumerate()
            .map(|(a, row)| row.iter().map(|&x| self.comps[a][x]).collect())
            .collect();
        FinNat {
            source: first.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    /// Bijective on every object.
    pub fn is_iso(&self) -> bool {
        self.comps.iter().enumerate().all(|(a, row)| {
            let mut seen = vec![false; self.target.size(a)];
            row.len() == seen.len() && row.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    fn check_laws(&self) -> Result<(), LawError> {
        let (x, y) = (&*self.source, &*self.target);
        let c = x.base();
        let shape_ok = self.comps.len() == c.num_objects()
            && (0..c.num_objects())
                .all(|a| self.comps[a].len() == x.size(a) && self.comps[a].iter().all(|&v| v < y.size(a)));
        if !shape_ok {
            return Err(LawError::Shape("components do not match the presheaves".into()));
        }
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            for e in 0..x.size(b) {
                if self.at(a, x.restrict(f, e)) != y.restrict(f, self.at(b, e)) {
                    return Err(LawError::Naturality(format!(
                        "square for {} fails at {}",
                        c.mor_name(f),
                        x.label(b, e)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every natural transformation `source → target`.
    pub fn enumerate(source: &Arc<FinPsh>, target: &Arc<FinPsh>, limit: usize) -> Result<Vec<FinNat>, KanError> {
        same_base(source, target)?;
        let c = source.base();
        let offsets = offsets(&(0..c.num_objects()).map(|a| source.size(a)).collect::<Vec<_>>());
        let mut domains = Vec::new();
        for a in 0..c.num_objects() {
            domains.extend(std::iter::repeat_n(target.size(a), source.size(a)));
        }
        let mut eqs = Equations::new(domains);
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            for e in 0..source.size(b) {
                let u = offsets[a] + source.restrict(f, e);
                eqs.require(u, offsets[b] + e, target.restriction(f).to_vec());
            }
        }
        let sols = eqs.solve_all(limit)?;
        Ok(sols
            .into_iter()
            .map(|v| FinNat {
                source: source.clone(),
                target: target.clone(),
                comps: split(&v, &offsets, source, c.num_objects()),
            })
            .collect())
    }
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for s in sizes {
        out.push(acc);
        acc += s;
    }
    out
}

fn split(v: &[usize], offsets: &[usize], x: &FinPsh, n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| v[offsets[a]..offsets[a] + x.size(a)].to_vec()).collect()
}

/// A section `(x : X) → Y x` of a dependent presheaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepSection {
    ty: Arc<DepFinPsh>,
    comps: Vec<Vec<usize>>,
}

impl DepSection {
    pub fn new(ty: Arc<DepFinPsh>, comps: Vec<Vec<usize>>) -> Result<DepSection, LawError> {
        let s = DepSection { ty, comps };
        s.check_laws()?;
        Ok(s)
    }

    pub(crate) fn unchecked(ty: Arc<DepFinPsh>, comps: Vec<Vec<usize>>) -> DepSection {
        DepSection { ty, comps }
    }

    pub fn validate(&self) -> Result<(), LawError> {
        self.check_laws()
    }

    pub fn ty(&self) -> &Arc<DepFinPsh> {
        &self.ty
    }

    pub fn at(&self, a: Obj, x: usize) -> usize {
        self.comps[a][x]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.comps
    }

    fn check_laws(&self) -> Result<(), LawError> {
        let y = &*self.ty;
        let x = y.base();
        let c = x.base();
        let shape_ok = self.comps.len() == c.num_objects()
            && (0..c.num_objects()).all(|a| {
                self.comps[a].len() == x.size(a) && (0..x.size(a)).all(|e| self.comps[a][e] < y.fiber_size(a, e))
            });
        if !shape_ok {
            return Err(LawError::Shape("section does not match its type".into()));
        }
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            for e in 0..x.size(b) {
                if self.at(a, x.restrict(f, e)) != y.restrict(f, e, self.at(b, e)) {
                    return Err(LawError::Naturality(format!(
                        "section is not stable under {} at {}",
                        c.mor_name(f),
                        x.label(b, e)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn enumerate(ty: &Arc<DepFinPsh>, limit: usize) -> Result<Vec<DepSection>, KanError> {
        let x = ty.base();
        let c = x.base();
        let offsets = offsets(&(0..c.num_objects()).map(|a| x.size(a)).collect::<Vec<_>>());
        let mut domains = Vec::new();
        for a in 0..c.num_objects() {
            domains.extend((0..x.size(a)).map(|e| ty.fiber_size(a, e)));
        }
        let mut eqs = Equations::new(domains);
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            for e in 0..x.size(b) {
                let u = offsets[a] + x.restrict(f, e);
                eqs.require(u, offsets[b] + e, ty.restriction(f, e).to_vec());
            }
        }
        let sols = eqs.solve_all(limit)?;
        Ok(sols
            .into_iter()
            .map(|v| DepSection {
                ty: ty.clone(),
                comps: split(&v, &offsets, x, c.num_objects()),
            })
            .collect())
    }
}

/// A map of dependent presheaves over the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepNat {
    source: Arc<DepFinPsh>,
    target: Arc<DepFinPsh>,
    comps: Vec<Vec<Vec<usize>>>,
}

impl DepNat {
    pub fn new(
        source: Arc<DepFinPsh>,
        target: Arc<DepFinPsh>,
        comps: Vec<Vec<Vec<usize>>>,
    ) -> Result<DepNat, LawError> {
        if !source.base().same_shape(target.base()) {
            return Err(LawError::Shape("dependent presheaves over different bases".into()));
        }
        let n = DepNat { source, target, comps };
        n.check_laws()?;
        Ok(n)
    }

    pub fn source(&self) -> &Arc<DepFinPsh> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DepFinPsh> {
        &self.target
    }

    pub fn at(&self, a: Obj, x: usize, y: usize) -> usize {
        self.comps[a][x][y]
    }

    pub fn components(&self) -> &[Vec<Vec<usize>>] {
        &self.comps
    }

    fn check_laws(&self) -> Result<(), LawError> {
        let (s, t) = (&*self.source, &*self.target);
        let x = s.base();
        let c = x.base();
        let shape_ok = self.comps.len() == c.num_objects()
            && (0..c.num_objects()).all(|a| {
                self.comps[a].len() == x.size(a)
                    && (0..x.size(a)).all(|e| {
                        self.comps[a][e].len() == s.fiber_size(a, e)
                            && self.comps[a][e].iter().all(|&v| v < t.fiber_size(a, e))
                    })
            });
        if !shape_ok {
            return Err(LawError::Shape(
                "components do not match the dependent presheaves".into(),
            ));
        }
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            for e in 0..x.size(b) {
                let below = x.restrict(f, e);
                for y in 0..s.fiber_size(b, e) {
                    if self.at(a, below, s.restrict(f, e, y)) != t.restrict(f, e, self.at(b, e, y)) {
                        return Err(LawError::Naturality(format!(
                            "square for {} fails at {} over {}",
                            c.mor_name(f),
                            s.label(b, e, y),
                            x.label(b, e)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn enumerate(source: &Arc<DepFinPsh>, target: &Arc<DepFinPsh>, limit: usize) -> Result<Vec<DepNat>, KanError> {
        let x = source.base();
        let c = x.base();
        // one variable per (a, x, y)
        let mut index = Vec::new();
        let mut domains = Vec::new();
        for a in 0..c.num_objects() {
            let mut row = Vec::new();
            for e in 0..x.size(a) {
                row.push(domains.len());
                domains.extend(std::iter::repeat_n(target.fiber_size(a, e), source.fiber_size(a, e)));
            }
            index.push(row);
        }
        let mut eqs = Equations::new(domains);
        for f in c.morphisms() {
            let (a, b) = (c.dom(f), c.cod(f));
            for e in 0..x.size(b) {
                let below = x.restrict(f, e);
                for y in 0..source.fiber_size(b, e) {
                    let u = index[a][below] + source.restrict(f, e, y);
                    eqs.require(u, index[b][e] + y, target.restriction(f, e).to_vec());
                }
            }
        }
        let sols = eqs.solve_all(limit)?;
        Ok(sols
            .into_iter()
            .map(|v| {
                let comps = (0..c.num_objects())
                    .map(|a| {
                        (0..x.size(a))
                            .map(|e| {
                                let start = index[a][e];
                                v[start..start + source.fiber_size(a, e)].to_vec()
                            })
                            .collect()
                    })
                    .collect();
                DepNat {
                    source: source.clone(),
                    target: target.clone(),
                    comps,
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn representables_are_presheaves() {
        let c = catalog::split_idempotent();
        let y0 = catalog::representable(&c, 0);
        assert_eq!(y0.size(0), 2);
        assert_eq!(y0.size(1), 1);
    }

    #[test]
    fn bad_restriction_is_named() {
        let c = Arc::new(catalog::z2());
        // t acting as a constant map breaks t∘t = 1
        let err = FinPsh::new(c, vec![vec!["u".into(), "v".into()]], vec![vec![0, 1], vec![0, 0]]).unwrap_err();
        assert_eq!(err.to_string(), "not a presheaf: v[t∘t] ≠ v[t][t]");
    }

    #[test]
    fn yoneda_counts() {
        // maps y(a) → X correspond to elements of X at a
        let c = catalog::split_idempotent();
        let x = Arc::new(catalog::representable(&c, 1));
        for a in 0..2 {
            let ya = Arc::new(catalog::representable(&c, a));
            assert_eq!(FinNat::enumerate(&ya, &x, 100).unwrap().len(), x.size(a));
        }
    }

    #[test]
    fn sections_of_terminal_dep() {
        let c = catalog::walking_arrow();
        let x = catalog::representable(&c, 1);
        let t = Arc::new(catalog::terminal_dep(&x));
        assert_eq!(DepSection::enumerate(&t, 10).unwrap().len(), 1);
        let y = Arc::new(catalog::constant_dep(&x, &catalog::representable(&c, 0)));
        // a section picks an element of y(0) at 1: there is none
        assert_eq!(DepSection::enumerate(&y, 10).unwrap().len(), 0);
        assert_eq!(DepNat::enumerate(&y, &t, 10).unwrap().len(), 1);
    }
}
