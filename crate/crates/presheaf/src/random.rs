//! Seeded random instances: small categories, functors between them,
//! presheaves and dependent presheaves found by backtracking over
//! restriction tables.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cat::{CatBuilder, FinCat, FinFunctor, Mor};
use crate::catalog;
use crate::kan::{left_kan, precompose_dep};
use crate::preserve::PreservationInstance;
use crate::psh::{DepFinPsh, DepNat, FinPsh};
use crate::rep::local_rep;

/// Non-identity morphisms allowed in a generated category.
pub const MAX_MORPHISMS: usize = 6;
pub const MAX_OBJECTS: usize = 3;

/// Search nodes spent on one attempt at a restriction table.
const NODE_BUDGET: usize = 20_000;

pub struct PshGen {
    rng: ChaCha8Rng,
}

impl PshGen {
    pub fn new(seed: u64) -> PshGen {
        PshGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A free category on a DAG, a finite poset, or a small monoid.
    pub fn category(&mut self) -> FinCat {
        match self.rng.gen_range(0..7) {
            0..=2 => self.free_dag(),
            3 | 4 => self.poset(),
            5 => self.monoid(),
            _ => catalog::split_idempotent(),
        }
    }

    pub fn free_dag(&mut self) -> FinCat {
        loop {
            let n = self.rng.gen_range(1..=MAX_OBJECTS);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for _ in 0..self.rng.gen_range(0..=2) {
                        edges.push((i, j));
                    }
                }
            }
            if let Some(c) = free_category(n, &edges) {
                return c;
            }
        }
    }

    pub fn poset(&mut self) -> FinCat {
        let n = self.rng.gen_range(1..=MAX_OBJECTS);
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
            for cell in row.iter_mut().skip(i + 1) {
                *cell = self.rng.gen_bool(0.5);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let mut b = CatBuilder::new();
        for i in 0..n {
            b.object(&i.to_string());
        }
        let mut m = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = if i == j {
                    Some(b.id(i))
                } else if le[i][j] {
                    Some(b.morphism(&format!("r{i}{j}"), i, j))
                } else {
                    None
                };
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if let (Some(f), Some(g), Some(h)) = (m[i][j], m[j][k], m[i][k]) {
                        b.compose(g, f, h).expect("poset composite");
                    }
                }
            }
        }
        b.build().expect("poset")
    }

    pub fn monoid(&mut self) -> FinCat {
        match self.rng.gen_range(0..6) {
            0 => catalog::z2(),
            1 => catalog::idempotent(),
            2 => catalog::monoid(&["1", "t", "t2"], &[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]),
            // left zeros: x·y = x
            3 => catalog::monoid(&["1", "a", "b"], &[&[0, 1, 2], &[1, 1, 1], &[2, 2, 2]]),
            // right zeros: x·y = y
            4 => catalog::monoid(&["1", "a", "b"], &[&[0, 1, 2], &[1, 1, 2], &[2, 1, 2]]),
            // a·a = z, z absorbing
            _ => catalog::monoid(&["1", "a", "z"], &[&[0, 1, 2], &[1, 2, 2], &[2, 2, 2]]),
        }
    }

    /// A uniformly chosen functor, if there is one.
    pub fn functor(&mut self, c: &FinCat, d: &FinCat) -> Option<FinFunctor> {
        let all = FinFunctor::enumerate(c, d, 10_000);
        all.choose(&mut self.rng).cloned()
    }

    /// A pair of categories with a functor between them; a third of the time
    /// the functor is an identity.
    pub fn functor_pair(&mut self) -> FinFunctor {
        loop {
            if self.rng.gen_ratio(1, 3) {
                let c = self.category();
                return FinFunctor::identity(&c);
            }
            let c = self.category();
            let d = self.category();
            if let Some(f) = self.functor(&c, &d) {
                return f;
            }
        }
    }

    fn set_sizes(&mut self, n: usize, max: usize) -> Vec<usize> {
        (0..n)
            .map(|_| {
                if max == 0 || self.rng.gen_ratio(1, 8) {
                    0
                } else {
                    self.rng.gen_range(1..=max)
                }
            })
            .collect()
    }

    /// A presheaf with at most `max_fiber` elements per object.
    pub fn presheaf(&mut self, c: &FinCat, max_fiber: usize) -> FinPsh {
        let base = Arc::new(c.clone());
        loop {
            let sizes = self.set_sizes(c.num_objects(), max_fiber);
            let mut slots = Vec::new();
            for f in c.morphisms() {
                let (n, m) = (sizes[c.cod(f)], sizes[c.dom(f)]);
                let fixed = c.is_id(f).then(|| (0..n).collect());
                slots.push(Slot { dom: n, cod: m, fixed });
            }
            let mut laws = Vec::new();
            for f in c.morphisms() {
                for g in c.morphisms().filter(|&g| c.dom(g) == c.cod(f)) {
                    // x[g∘f] = x[g][f]
                    laws.push((c.compose(g, f), f, g));
                }
            }
            let Some(restr) = solve_slots(&mut self.rng, &slots, &laws) else {
                continue;
            };
            let sets = sizes
                .iter()
                .enumerate()
                .map(|(a, &n)| (0..n).map(|i| format!("{}{}", element_prefix(a), i)).collect())
                .collect();
            return FinPsh::new(base, sets, restr).expect("generated presheaf");
        }
    }

    /// A dependent presheaf over `x` with fibers of at most `max_fiber`
    /// elements, or `None` if the search ran out of budget.
    pub fn dependent(&mut self, x: &FinPsh, max_fiber: usize) -> Option<DepFinPsh> {
        let c = x.base().clone();
        for _ in 0..20 {
            let sizes: Vec<Vec<usize>> = (0..c.num_objects())
                .map(|a| self.set_sizes(x.size(a), max_fiber))
                .collect();
            // one slot per (morphism, element over its codomain)
            let mut index = Vec::new();
            let mut slots = Vec::new();
            for f in c.morphisms() {
                let (a, b) = (c.dom(f), c.cod(f));
                let mut row = Vec::new();
                for e in 0..x.size(b) {
                    let n = sizes[b][e];
                    let m = sizes[a][x.restrict(f, e)];
                    let fixed = c.is_id(f).then(|| (0..n).collect());
                    row.push(slots.len());
                    slots.push(Slot { dom: n, cod: m, fixed });
                }
                index.push(row);
            }
            let mut laws = Vec::new();
            for f in c.morphisms() {
                for g in c.morphisms().filter(|&g| c.dom(g) == c.cod(f)) {
                    let gf = c.compose(g, f);
                    for e in 0..x.size(c.cod(g)) {
                        let mid = x.restrict(g, e);
                        laws.push((index[gf][e], index[f][mid], index[g][e]));
                    }
                }
            }
            let Some(tables) = solve_slots(&mut self.rng, &slots, &laws) else {
                continue;
            };
            let fibers = sizes
                .iter()
                .enumerate()
                .map(|(a, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(e, &n)| (0..n).map(|i| format!("q{a}{e}{i}")).collect())
                        .collect()
                })
                .collect();
            let restr = index
                .iter()
                .map(|row| row.iter().map(|&s| tables[s].clone()).collect())
                .collect();
            return Some(DepFinPsh::new(Arc::new(x.clone()), fibers, restr).expect("generated dependent presheaf"));
        }
        None
    }

    /// A locally representable dependent presheaf over `x`. Mixes random
    /// search with the constant family and the fibers of elements.
    pub fn representable_dependent(&mut self, x: &FinPsh) -> DepFinPsh {
        let c = x.base().clone();
        for _ in 0..200 {
            let candidate = match self.rng.gen_range(0..4) {
                0 => {
                    let t = self.rng.gen_range(0..c.num_objects());
                    if x.size(t) == 0 {
                        continue;
                    }
                    let x0 = self.rng.gen_range(0..x.size(t));
                    catalog::sections_through(x, t, x0)
                }
                1 => {
                    let t = self.rng.gen_range(0..c.num_objects());
                    catalog::constant_dep(x, &catalog::representable(&c, t))
                }
                _ => match self.dependent(x, 2) {
                    Some(y) => y,
                    None => continue,
                },
            };
            if local_rep(&candidate).is_representable() {
                return candidate;
            }
        }
        catalog::terminal_dep(x)
    }

    /// `F`, `X` and a locally representable `A_C`, `A_D` with a map between
    /// them, or `None` when no map exists for the drawn data.
    pub fn preservation_instance(&mut self) -> Option<PreservationInstance> {
        let functor = self.functor_pair();
        let x = self.presheaf(functor.dom(), 2);
        let mut a_c = self.representable_dependent(&x);
        // types whose extension is the context itself are the common case;
        // half the time insist on a proper one
        if self.rng.gen_bool(0.5) {
            for _ in 0..10 {
                if has_proper_extension(&a_c) {
                    break;
                }
                a_c = self.representable_dependent(&x);
            }
        }
        let lk = left_kan(&functor, &x).expect("left Kan extension");
        if lk.psh().total_size() > 12 {
            return None;
        }
        // the one-element type receives a map from anything, which is how
        // non-preserving instances mostly arise
        let a_d = if self.rng.gen_ratio(1, 3) {
            catalog::terminal_dep(lk.psh())
        } else {
            self.representable_dependent(lk.psh())
        };
        let pulled = Arc::new(precompose_dep(&lk, &a_d).expect("pullback"));
        let maps = DepNat::enumerate(&Arc::new(a_c.clone()), &pulled, 10_000).ok()?;
        let fa = maps.choose(&mut self.rng)?.clone();
        Some(PreservationInstance {
            functor,
            x,
            a_c,
            a_d,
            fa,
        })
    }
}

fn has_proper_extension(ty: &DepFinPsh) -> bool {
    let x = ty.base();
    let c = x.base();
    local_rep(ty)
        .structure()
        .is_some_and(|s| (0..c.num_objects()).any(|a| (0..x.size(a)).any(|e| c.inverse(s.extension(a, e).p).is_none())))
}

fn element_prefix(a: usize) -> char {
    (b'u' + (a % 6) as u8) as char
}

/// The free category on `n` objects and the given edges, or `None` if it
/// has more than [`MAX_MORPHISMS`] non-identity morphisms.
pub fn free_category(n: usize, edges: &[(usize, usize)]) -> Option<FinCat> {
    // paths as edge lists, innermost (first applied) edge first
    let mut paths: Vec<Vec<usize>> = edges.iter().enumerate().map(|(i, _)| vec![i]).collect();
    let mut frontier = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = edges[*p.last().unwrap()].1;
            for (i, e) in edges.iter().enumerate() {
                if e.0 == end {
                    let mut q = p.clone();
                    q.push(i);
                    next.push(q);
                }
            }
        }
        paths.extend(next.iter().cloned());
        if paths.len() > MAX_MORPHISMS {
            return None;
        }
        frontier = next;
    }
    let mut b = CatBuilder::new();
    for i in 0..n {
        b.object(&i.to_string());
    }
    let name = |p: &[usize]| -> String { p.iter().rev().map(|i| format!("g{i}")).collect::<Vec<_>>().join("_") };
    let mors: Vec<Mor> = paths
        .iter()
        .map(|p| b.morphism(&name(p), edges[p[0]].0, edges[*p.last().unwrap()].1))
        .collect();
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate() {
            // q after p
            if edges[*p.last().unwrap()].1 == edges[q[0]].0 {
                let mut pq = p.clone();
                pq.extend(q);
                let k = paths.iter().position(|r| *r == pq).expect("path closure");
                b.compose(mors[j], mors[i], mors[k]).ok()?;
            }
        }
    }
    b.build().ok()
}

struct Slot {
    dom: usize,
    cod: usize,
    fixed: Option<Vec<usize>>,
}

/// Finds tables for every slot such that `slot h = slot f ∘ slot g` for each
/// law `(h, f, g)`, i.e. `h[i] = f[g[i]]`. Candidates are tried in random
/// order.
fn solve_slots(rng: &mut ChaCha8Rng, slots: &[Slot], laws: &[(usize, usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut val: Vec<Option<Vec<usize>>> = slots.iter().map(|s| s.fixed.clone()).collect();
    let free: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].fixed.is_none()).collect();
    let mut order = vec![usize::MAX; slots.len()];
    for (k, &i) in free.iter().enumerate() {
        order[i] = k;
    }
    // a law is checked once its last free slot is assigned
    let mut due: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); free.len() + 1];
    for &(h, f, g) in laws {
        let last = [h, f, g]
            .iter()
            .map(|&s| if order[s] == usize::MAX { 0 } else { order[s] + 1 })
            .max()
            .unwrap();
        due[last].push((h, f, g));
    }
    if !due[0].iter().all(|&l| law_holds(&val, l)) {
        return None;
    }
    let mut budget = NODE_BUDGET;
    if fill(rng, slots, &free, &due, 0, &mut val, &mut budget) {
        Some(val.into_iter().map(|v| v.expect("assigned")).collect())
    } else {
        None
    }
}

fn law_holds(val: &[Option<Vec<usize>>], (h, f, g): (usize, usize, usize)) -> bool {
    let (Some(h), Some(f), Some(g)) = (&val[h], &val[f], &val[g]) else {
        return true;
    };
    h.iter().zip(g).all(|(&hi, &gi)| f[gi] == hi)
}

fn fill(
    rng: &mut ChaCha8Rng,
    slots: &[Slot],
    free: &[usize],
    due: &[Vec<(usize, usize, usize)>],
    k: usize,
    val: &mut Vec<Option<Vec<usize>>>,
    budget: &mut usize,
) -> bool {
    if k == free.len() {
        return true;
    }
    let s = &slots[free[k]];
    let mut cands = all_functions(s.dom, s.cod);
    cands.shuffle(rng);
    for cand in cands {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        val[free[k]] = Some(cand);
        if due[k + 1].iter().all(|&l| law_holds(val, l)) && fill(rng, slots, free, due, k + 1, val, budget) {
            return true;
        }
    }
    val[free[k]] = None;
    false
}

fn all_functions(dom: usize, cod: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dom {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..cod).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}
