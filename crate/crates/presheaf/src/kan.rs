//! Precomposition `F^*` and its two adjoints `F_!` and `F_*`, with the unit,
//! counit and hom-set bijections that witness `F_! ⊣ F^* ⊣ F_*`.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::cat::{FinFunctor, Mor, Obj};
use crate::error::{KanError, LawError};
use crate::psh::{DepFinPsh, DepSection, FinNat, FinPsh};
use crate::report::Report;

/// Default bound on candidate families for [`right_kan`].
pub const DEFAULT_RIGHT_KAN_BOUND: u128 = 1_000_000;

/// Default bound on enumerated maps in the hom-set checks.
pub const DEFAULT_MAP_LIMIT: usize = 100_000;

fn check_base(f: &FinFunctor, x: &FinPsh, dom: bool) -> Result<(), LawError> {
    let want = if dom { f.dom() } else { f.cod() };
    if **x.base() == *want {
        Ok(())
    } else {
        Err(LawError::Shape("presheaf is not over the expected category".into()))
    }
}

/// `|F^* X'|_Γ = |X'|_{F Γ}`.
pub fn precompose(f: &FinFunctor, xp: &FinPsh) -> Result<FinPsh, LawError> {
    check_base(f, xp, false)?;
    let c = f.dom();
    let sets = (0..c.num_objects()).map(|a| xp.labels(f.on_obj(a)).to_vec()).collect();
    let restr = c.morphisms().map(|r| xp.restriction(f.on_mor(r)).to_vec()).collect();
    FinPsh::new(Arc::new(c.clone()), sets, restr)
}

/// `|F^* n|_Γ = |n|_{F Γ}`.
pub fn precompose_nat(f: &FinFunctor, n: &FinNat) -> Result<FinNat, LawError> {
    let s = Arc::new(precompose(f, n.source())?);
    let t = Arc::new(precompose(f, n.target())?);
    let c = f.dom();
    let comps = (0..c.num_objects())
        .map(|a| n.components()[f.on_obj(a)].clone())
        .collect();
    FinNat::new(s, t, comps)
}

/// An element `(Γ, δ', x)` of the disjoint union that `F_! X` is a quotient
/// of, with `δ' : Γ' → F Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub obj: Obj,
    pub mor: Mor,
    pub elem: usize,
}

/// `F_! X` together with the quotient it was computed from.
#[derive(Clone, Debug)]
pub struct LeftKan {
    functor: FinFunctor,
    source: Arc<FinPsh>,
    psh: Arc<FinPsh>,
    class_of: Vec<HashMap<Triple, usize>>,
    members: Vec<Vec<Vec<Triple>>>,
}

/// `|F_! X|_{Γ'} = (Σ Γ. D(Γ' → F Γ) × |X|_Γ) / ∼`, where `∼` is the
/// equivalence closure of `(Γ, δ', x[ρ]) ∼ (Δ, F ρ ∘ δ', x)`.
pub fn left_kan(f: &FinFunctor, x: &FinPsh) -> Result<LeftKan, LawError> {
    check_base(f, x, true)?;
    let (c, d) = (f.dom(), f.cod());
    let mut class_of = Vec::new();
    let mut members = Vec::new();
    for gp in 0..d.num_objects() {
        let mut triples = Vec::new();
        let mut index = HashMap::new();
        for g in 0..c.num_objects() {
            for &dl in d.hom(gp, f.on_obj(g)) {
                for e in 0..x.size(g) {
                    let t = Triple {
                        obj: g,
                        mor: dl,
                        elem: e,
                    };
                    index.insert(t, triples.len());
                    triples.push(t);
                }
            }
        }
        let mut uf = UnionFind::<usize>::new(triples.len());
        for rho in c.morphisms() {
            let (g, dt) = (c.dom(rho), c.cod(rho));
            for &dl in d.hom(gp, f.on_obj(g)) {
                for e in 0..x.size(dt) {
                    let lhs = Triple {
                        obj: g,
                        mor: dl,
                        elem: x.restrict(rho, e),
                    };
                    let rhs = Triple {
                        obj: dt,
                        mor: d.compose(f.on_mor(rho), dl),
                        elem: e,
                    };
                    uf.union(index[&lhs], index[&rhs]);
                }
            }
        }
        // classes numbered by their first member
        let mut root_class = HashMap::new();
        let mut cls: Vec<Vec<Triple>> = Vec::new();
        let mut of = HashMap::new();
        for (i, t) in triples.iter().enumerate() {
            let r = uf.find(i);
            let k = *root_class.entry(r).or_insert_with(|| {
                cls.push(Vec::new());
                cls.len() - 1
            });
            cls[k].push(*t);
            of.insert(*t, k);
        }
        class_of.push(of);
        members.push(cls);
    }
    let label = |t: &Triple| {
        format!(
            "<{}|{}|{}>",
            c.obj_name(t.obj),
            d.mor_name(t.mor),
            x.label(t.obj, t.elem)
        )
    };
    let sets = members
        .iter()
        .map(|cls| cls.iter().map(|m| label(&m[0])).collect())
        .collect();
    let mut restr = Vec::new();
    for rp in d.morphisms() {
        let (dp, gp) = (d.dom(rp), d.cod(rp));
        let mut table = Vec::new();
        for cls in &members[gp] {
            let image = |t: &Triple| {
                class_of[dp][&Triple {
                    mor: d.compose(t.mor, rp),
                    ..*t
                }]
            };
            let k = image(&cls[0]);
            if let Some(bad) = cls.iter().find(|t| image(t) != k) {
                return Err(LawError::Presheaf(format!(
                    "restriction along {} is not well defined at {}",
                    d.mor_name(rp),
                    label(bad)
                )));
            }
            table.push(k);
        }
        restr.push(table);
    }
    let psh = FinPsh::new(Arc::new(d.clone()), sets, restr)?;
    Ok(LeftKan {
        functor: f.clone(),
        source: Arc::new(x.clone()),
        psh: Arc::new(psh),
        class_of,
        members,
    })
}

impl LeftKan {
    pub fn psh(&self) -> &Arc<FinPsh> {
        &self.psh
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.functor
    }

    pub fn source(&self) -> &Arc<FinPsh> {
        &self.source
    }

    /// The class of `(Γ, δ', x)` in `|F_! X|_{Γ'}`.
    pub fn class(&self, gp: Obj, t: Triple) -> usize {
        self.class_of[gp][&t]
    }

    pub fn members(&self, gp: Obj, k: usize) -> &[Triple] {
        &self.members[gp][k]
    }

    /// `|η_X|_Γ x = (Γ, id_{F Γ}, x)`.
    pub fn eta(&self, g: Obj, x: usize) -> usize {
        let f = &self.functor;
        let fg = f.on_obj(g);
        self.class(
            fg,
            Triple {
                obj: g,
                mor: f.cod().id(fg),
                elem: x,
            },
        )
    }

    /// `η_X : X → F^* (F_! X)`.
    pub fn unit(&self) -> Result<FinNat, LawError> {
        let pulled = Arc::new(precompose(&self.functor, &self.psh)?);
        let c = self.functor.dom();
        let comps = (0..c.num_objects())
            .map(|g| (0..self.source.size(g)).map(|x| self.eta(g, x)).collect())
            .collect();
        FinNat::new(self.source.clone(), pulled, comps)
    }
}

/// `|F_! n|_{Γ'} (Γ, δ', x) = (Γ, δ', |n|_Γ x)`.
pub fn left_kan_nat(from: &LeftKan, to: &LeftKan, n: &FinNat) -> Result<FinNat, LawError> {
    let d = from.functor.cod();
    let comps = (0..d.num_objects())
        .map(|gp| {
            from.members[gp]
                .iter()
                .map(|cls| {
                    let t = cls[0];
                    to.class(
                        gp,
                        Triple {
                            elem: n.at(t.obj, t.elem),
                            ..t
                        },
                    )
                })
                .collect()
        })
        .collect();
    FinNat::new(from.psh.clone(), to.psh.clone(), comps)
}

/// `ε_{X'} : F_! (F^* X') → X'`, sending `(Γ, δ', x')` to `x'[δ']`. `lk` must
/// be the left Kan extension of `F^* X'`.
pub fn counit(lk: &LeftKan, xp: &Arc<FinPsh>) -> Result<FinNat, LawError> {
    let d = lk.functor.cod();
    let mut comps = Vec::new();
    for gp in 0..d.num_objects() {
        let mut row = Vec::new();
        for cls in &lk.members[gp] {
            let v = xp.restrict(cls[0].mor, cls[0].elem);
            if cls.iter().any(|t| xp.restrict(t.mor, t.elem) != v) {
                return Err(LawError::Naturality("counit is not constant on a class".into()));
            }
            row.push(v);
        }
        comps.push(row);
    }
    FinNat::new(lk.psh.clone(), xp.clone(), comps)
}

/// `φ f' = F^* f' ∘ η_X`, for `f' : F_! X → X'`.
pub fn phi(lk: &LeftKan, pulled: &Arc<FinPsh>, fp: &FinNat) -> FinNat {
    let c = lk.functor.dom();
    let comps = (0..c.num_objects())
        .map(|g| {
            let fg = lk.functor.on_obj(g);
            (0..lk.source.size(g)).map(|x| fp.at(fg, lk.eta(g, x))).collect()
        })
        .collect();
    FinNat::unchecked(lk.source.clone(), pulled.clone(), comps)
}

/// `|φ⁻¹ f|_{Γ'} (Γ, δ', x) = (|f|_Γ x)[δ']`, for `f : X → F^* X'`. Fails if
/// the formula disagrees on two members of a class.
pub fn phi_inv(lk: &LeftKan, xp: &Arc<FinPsh>, f: &FinNat) -> Result<FinNat, LawError> {
    let d = lk.functor.cod();
    let mut comps = Vec::new();
    for gp in 0..d.num_objects() {
        let mut row = Vec::new();
        for cls in &lk.members[gp] {
            let at = |t: &Triple| xp.restrict(t.mor, f.at(t.obj, t.elem));
            let v = at(&cls[0]);
            if cls.iter().any(|t| at(t) != v) {
                return Err(LawError::Naturality(format!(
                    "φ⁻¹ is not well defined at {}",
                    lk.psh.label(gp, lk.class(gp, cls[0]))
                )));
            }
            row.push(v);
        }
        comps.push(row);
    }
    Ok(FinNat::unchecked(lk.psh.clone(), xp.clone(), comps))
}

/// `F^* A'` for `A'` over `F_! X`: the dependent presheaf over `X` with
/// `|F^* A'|_Γ x = |A'|_{F Γ} (|η_X|_Γ x)`.
pub fn precompose_dep(lk: &LeftKan, ap: &DepFinPsh) -> Result<DepFinPsh, LawError> {
    if !ap.base().same_shape(&lk.psh) {
        return Err(LawError::Shape("dependent presheaf is not over F_! X".into()));
    }
    let f = &lk.functor;
    let c = f.dom();
    let x = &lk.source;
    let fibers = (0..c.num_objects())
        .map(|g| {
            (0..x.size(g))
                .map(|e| ap.labels(f.on_obj(g), lk.eta(g, e)).to_vec())
                .collect()
        })
        .collect();
    let restr = c
        .morphisms()
        .map(|r| {
            let b = c.cod(r);
            (0..x.size(b))
                .map(|e| ap.restriction(f.on_mor(r), lk.eta(b, e)).to_vec())
                .collect()
        })
        .collect();
    DepFinPsh::new(x.clone(), fibers, restr)
}

/// `|ψ f'|_Γ x = |f'|_{F Γ} (|η_X|_Γ x)`, turning a section of `A'` over
/// `F_! X` into a section of `F^* A'` over `X`.
pub fn psi(lk: &LeftKan, pulled: &Arc<DepFinPsh>, fp: &DepSection) -> DepSection {
    let f = &lk.functor;
    let c = f.dom();
    let comps = (0..c.num_objects())
        .map(|g| {
            (0..lk.source.size(g))
                .map(|x| fp.at(f.on_obj(g), lk.eta(g, x)))
                .collect()
        })
        .collect();
    DepSection::unchecked(pulled.clone(), comps)
}

/// `|ψ⁻¹ f|_{Γ'} (Γ, δ', x) = (|f|_Γ x)[δ']`.
pub fn psi_inv(lk: &LeftKan, ap: &Arc<DepFinPsh>, s: &DepSection) -> Result<DepSection, LawError> {
    let d = lk.functor.cod();
    let mut comps = Vec::new();
    for gp in 0..d.num_objects() {
        let mut row = Vec::new();
        for cls in &lk.members[gp] {
            let at = |t: &Triple| ap.restrict(t.mor, lk.eta(t.obj, t.elem), s.at(t.obj, t.elem));
            let v = at(&cls[0]);
            if cls.iter().any(|t| at(t) != v) {
                return Err(LawError::Naturality(format!(
                    "ψ⁻¹ is not well defined at {}",
                    lk.psh.label(gp, lk.class(gp, cls[0]))
                )));
            }
            row.push(v);
        }
        comps.push(row);
    }
    Ok(DepSection::unchecked(ap.clone(), comps))
}

/// `F_* X` with its families listed explicitly.
#[derive(Clone, Debug)]
pub struct RightKan {
    psh: Arc<FinPsh>,
    /// `slots[Γ']` lists the pairs `(Γ, δ' : F Γ → Γ')` a family is indexed by.
    slots: Vec<Vec<(Obj, Mor)>>,
    families: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl RightKan {
    pub fn psh(&self) -> &Arc<FinPsh> {
        &self.psh
    }

    pub fn slots(&self, gp: Obj) -> &[(Obj, Mor)] {
        &self.slots[gp]
    }

    pub fn family(&self, gp: Obj, k: usize) -> &[usize] {
        &self.families[gp][k]
    }

    pub fn find(&self, gp: Obj, family: &[usize]) -> Option<usize> {
        self.lookup[gp].get(family).copied()
    }

    /// `α Γ δ'`.
    pub fn apply(&self, gp: Obj, k: usize, g: Obj, dl: Mor) -> usize {
        let i = self.slots[gp]
            .iter()
            .position(|&s| s == (g, dl))
            .expect("slot of F_* X");
        self.families[gp][k][i]
    }
}

/// `|F_* X|_{Γ'} = { α : (Γ)(δ' : F Γ → Γ') → |X|_Γ | α Γ (δ' ∘ F σ) = (α Δ δ')[σ] }`.
/// Refuses when the raw candidate count at some object exceeds `bound`.
pub fn right_kan(f: &FinFunctor, x: &FinPsh, bound: u128) -> Result<RightKan, KanError> {
    check_base(f, x, true)?;
    let (c, d) = (f.dom(), f.cod());
    let mut slots = Vec::new();
    let mut families = Vec::new();
    let mut lookup: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for gp in 0..d.num_objects() {
        let ss: Vec<(Obj, Mor)> = (0..c.num_objects())
            .flat_map(|g| d.hom(f.on_obj(g), gp).iter().map(move |&dl| (g, dl)))
            .collect();
        let count = ss
            .iter()
            .try_fold(1u128, |acc, &(g, _)| acc.checked_mul(x.size(g) as u128))
            .unwrap_or(u128::MAX);
        if count > bound {
            return Err(KanError::TooLarge {
                object: d.obj_name(gp).to_string(),
                count,
                bound,
            });
        }
        let index: HashMap<(Obj, Mor), usize> = ss.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut eqs = crate::solve::Equations::new(ss.iter().map(|&(g, _)| x.size(g)).collect());
        for sigma in c.morphisms() {
            let (g, dt) = (c.dom(sigma), c.cod(sigma));
            for &dl in d.hom(f.on_obj(dt), gp) {
                let u = index[&(g, d.compose(dl, f.on_mor(sigma)))];
                eqs.require(u, index[&(dt, dl)], x.restriction(sigma).to_vec());
            }
        }
        let fams = eqs.solve_all(bound as usize)?;
        lookup.push(fams.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect());
        families.push(fams);
        slots.push(ss);
    }
    let sets = families
        .iter()
        .zip(&slots)
        .map(|(fams, ss)| {
            fams.iter()
                .map(|v| {
                    let parts: Vec<&str> = v.iter().zip(ss).map(|(&e, &(g, _))| x.label(g, e)).collect();
                    format!("⟨{}⟩", parts.join(","))
                })
                .collect()
        })
        .collect();
    let mut restr = Vec::new();
    for rp in d.morphisms() {
        let (dp, gp) = (d.dom(rp), d.cod(rp));
        let mut table = Vec::new();
        let pos = |s: (Obj, Mor)| slots[gp].iter().position(|&t| t == s).expect("slot");
        for fam in &families[gp] {
            let moved: Vec<usize> = slots[dp]
                .iter()
                .map(|&(g, dl)| fam[pos((g, d.compose(rp, dl)))])
                .collect();
            table.push(lookup[dp][&moved]);
        }
        restr.push(table);
    }
    let psh = FinPsh::new(Arc::new(d.clone()), sets, restr)?;
    Ok(RightKan {
        psh: Arc::new(psh),
        slots,
        families,
        lookup,
    })
}

/// `|φ f|_{Γ'} x' = λ Γ δ'. |f|_Γ (x'[δ'])`, for `f : F^* X' → X`.
fn phi_right(rk: &RightKan, xp: &Arc<FinPsh>, f: &FinNat) -> FinNat {
    let d = xp.base();
    let comps = (0..d.num_objects())
        .map(|gp| {
            (0..xp.size(gp))
                .map(|e| {
                    let fam: Vec<usize> = rk.slots[gp]
                        .iter()
                        .map(|&(g, dl)| f.at(g, xp.restrict(dl, e)))
                        .collect();
                    rk.find(gp, &fam).unwrap_or(usize::MAX)
                })
                .collect()
        })
        .collect();
    FinNat::unchecked(xp.clone(), rk.psh.clone(), comps)
}

/// `|φ⁻¹ g|_Γ x' = |g|_{F Γ} x' Γ id`.
fn phi_right_inv(f: &FinFunctor, rk: &RightKan, pulled: &Arc<FinPsh>, x: &Arc<FinPsh>, g: &FinNat) -> FinNat {
    let c = f.dom();
    let comps = (0..c.num_objects())
        .map(|a| {
            let fa = f.on_obj(a);
            (0..pulled.size(a))
                .map(|e| rk.apply(fa, g.at(fa, e), a, f.cod().id(fa)))
                .collect()
        })
        .collect();
    FinNat::unchecked(pulled.clone(), x.clone(), comps)
}

/// Checks `F_! ⊣ F^*` (and `F^* ⊣ F_*` when small enough) on one pair
/// `X` over `C`, `X'` over `D`: naturality of the unit, both triangle
/// identities, and that `φ` and `φ⁻¹` are mutually inverse on every map.
pub fn check_adjunction(f: &FinFunctor, x: &FinPsh, xp: &FinPsh, limit: usize) -> Result<Report, KanError> {
    let mut r = Report::new("adjunction");
    let x = Arc::new(x.clone());
    let xp = Arc::new(xp.clone());
    let lk = left_kan(f, &x)?;
    let eta = lk.unit();
    r.check(eta.is_ok(), || {
        format!("η is not natural: {}", eta.clone().unwrap_err())
    });
    let eta = eta?;

    // ε_{F_! X} ∘ F_! η_X = id
    let lk2 = left_kan(f, eta.target())?;
    let f_eta = left_kan_nat(&lk, &lk2, &eta)?;
    let eps = counit(&lk2, lk.psh())?;
    r.check(eps.after(&f_eta) == FinNat::identity(lk.psh().clone()), || {
        "ε_{F_! X} ∘ F_! η_X is not the identity".into()
    });

    // F^* ε_{X'} ∘ η_{F^* X'} = id
    let pulled = Arc::new(precompose(f, &xp)?);
    let lk3 = left_kan(f, &pulled)?;
    let eps3 = counit(&lk3, &xp)?;
    let eta3 = lk3.unit()?;
    let f_eps = precompose_nat(f, &eps3)?;
    r.check(f_eps.after(&eta3) == FinNat::identity(pulled.clone()), || {
        "F^* ε_{X'} ∘ η_{F^* X'} is not the identity".into()
    });

    let left_maps = FinNat::enumerate(&x, &pulled, limit)?;
    let right_maps = FinNat::enumerate(lk.psh(), &xp, limit)?;
    r.check(left_maps.len() == right_maps.len(), || {
        format!(
            "{} maps X → F^* X' but {} maps F_! X → X'",
            left_maps.len(),
            right_maps.len()
        )
    });
    for g in &left_maps {
        match phi_inv(&lk, &xp, g) {
            Ok(h) => {
                r.check(h.validate().is_ok(), || "φ⁻¹ f is not natural".into());
                r.check(phi(&lk, &pulled, &h) == *g, || "φ (φ⁻¹ f) ≠ f".into());
            }
            Err(e) => r.fail(e.to_string()),
        }
    }
    for h in &right_maps {
        let g = phi(&lk, &pulled, h);
        r.check(g.validate().is_ok(), || "φ f' is not natural".into());
        match phi_inv(&lk, &xp, &g) {
            Ok(back) => r.check(back == *h, || "φ⁻¹ (φ f') ≠ f'".into()),
            Err(e) => r.fail(e.to_string()),
        }
    }
    r.note(format!("{} maps on each side of F_! ⊣ F^*", left_maps.len()));

    match right_kan(f, &x, DEFAULT_RIGHT_KAN_BOUND) {
        Ok(rk) => {
            let down = FinNat::enumerate(&pulled, &x, limit)?;
            let up = FinNat::enumerate(&xp, rk.psh(), limit)?;
            r.check(down.len() == up.len(), || {
                format!("{} maps F^* X' → X but {} maps X' → F_* X", down.len(), up.len())
            });
            for g in &down {
                let h = phi_right(&rk, &xp, g);
                r.check(h.validate().is_ok(), || "right φ f is not natural".into());
                r.check(phi_right_inv(f, &rk, &pulled, &x, &h) == *g, || {
                    "right φ⁻¹ (φ f) ≠ f".into()
                });
            }
            for h in &up {
                let g = phi_right_inv(f, &rk, &pulled, &x, h);
                r.check(g.validate().is_ok(), || "right φ⁻¹ f' is not natural".into());
                r.check(phi_right(&rk, &xp, &g) == *h, || "right φ (φ⁻¹ f') ≠ f'".into());
            }
            r.note(format!("{} maps on each side of F^* ⊣ F_*", down.len()));
        }
        Err(KanError::TooLarge { .. }) => r.note("F_* X skipped: too many candidate families".into()),
        Err(e) => return Err(e),
    }
    Ok(r)
}

/// Checks that `ψ` and `ψ⁻¹` are mutually inverse between sections of `A'`
/// over `F_! X` and sections of `F^* A'` over `X`.
pub fn check_dependent_adjunction(lk: &LeftKan, ap: &DepFinPsh, limit: usize) -> Result<Report, KanError> {
    let mut r = Report::new("dependent adjunction");
    let ap = Arc::new(ap.clone());
    let pulled = Arc::new(precompose_dep(lk, &ap)?);
    let over_d = DepSection::enumerate(&ap, limit)?;
    let over_c = DepSection::enumerate(&pulled, limit)?;
    r.check(over_d.len() == over_c.len(), || {
        format!("{} sections over F_! X but {} over X", over_d.len(), over_c.len())
    });
    for s in &over_c {
        match psi_inv(lk, &ap, s) {
            Ok(t) => {
                r.check(t.validate().is_ok(), || "ψ⁻¹ f is not a section".into());
                r.check(psi(lk, &pulled, &t) == *s, || "ψ (ψ⁻¹ f) ≠ f".into());
            }
            Err(e) => r.fail(e.to_string()),
        }
    }
    for t in &over_d {
        let s = psi(lk, &pulled, t);
        r.check(s.validate().is_ok(), || "ψ f' is not a section".into());
        match psi_inv(lk, &ap, &s) {
            Ok(back) => r.check(back == *t, || "ψ⁻¹ (ψ f') ≠ f'".into()),
            Err(e) => r.fail(e.to_string()),
        }
    }
    r.note(format!("{} sections on each side", over_d.len()));
    Ok(r)
}
