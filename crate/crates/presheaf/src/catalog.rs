//! Small named categories and presheaves that come up in tests and examples.

use std::sync::Arc;

use crate::cat::{CatBuilder, FinCat, FinFunctor, Obj};
use crate::psh::{DepFinPsh, FinPsh};

/// One object, one morphism.
pub fn terminal() -> FinCat {
    let mut b = CatBuilder::new();
    b.object("pt");
    b.build().expect("terminal category")
}

/// `0 --a--> 1`.
pub fn walking_arrow() -> FinCat {
    let mut b = CatBuilder::new();
    let x = b.object("0");
    let y = b.object("1");
    b.morphism("a", x, y);
    b.build().expect("walking arrow")
}

/// `p : 0 → 1` and `s : 1 → 0` with `p∘s = id` and `e = s∘p`.
pub fn split_idempotent() -> FinCat {
    let mut b = CatBuilder::new();
    let x = b.object("0");
    let y = b.object("1");
    let e = b.morphism("e", x, x);
    let p = b.morphism("p", x, y);
    let s = b.morphism("s", y, x);
    let table = [(p, s, b.id(y)), (s, p, e), (e, e, e), (p, e, p), (e, s, s)];
    for (g, f, h) in table {
        b.compose(g, f, h).expect("split idempotent table");
    }
    b.build().expect("split idempotent")
}

/// A one-object category from a multiplication table on `names[1..]`;
/// `names[0]` is the unit and `mul[i][j]` is the index of `names[i]·names[j]`
/// (apply `j` first).
pub fn monoid(names: &[&str], mul: &[&[usize]]) -> FinCat {
    let mut b = CatBuilder::new();
    let o = b.object_with_id("m", names[0]);
    let mut ix = vec![b.id(o)];
    for n in &names[1..] {
        ix.push(b.morphism(n, o, o));
    }
    for (i, row) in mul.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            b.compose(ix[i], ix[j], ix[k]).expect("monoid table");
        }
    }
    b.build().expect("monoid")
}

pub fn z2() -> FinCat {
    monoid(&["1", "t"], &[&[0, 1], &[1, 0]])
}

/// `{1, e}` with `e∘e = e`.
pub fn idempotent() -> FinCat {
    monoid(&["1", "e"], &[&[0, 1], &[1, 1]])
}

/// The constant functor at `b`.
pub fn constant(c: &FinCat, d: &FinCat, b: Obj) -> FinFunctor {
    let obj = vec![b; c.num_objects()];
    let mor = c.morphisms().map(|_| d.id(b)).collect();
    FinFunctor::new(c.clone(), d.clone(), obj, mor).expect("constant functor")
}

/// The presheaf with one element everywhere.
pub fn terminal_psh(c: &FinCat) -> FinPsh {
    let c = Arc::new(c.clone());
    let sets = (0..c.num_objects()).map(|_| vec!["*".to_string()]).collect();
    let restr = c.morphisms().map(|_| vec![0]).collect();
    FinPsh::new(c, sets, restr).expect("terminal presheaf")
}

/// `C(-, a)`. Elements are named after morphisms.
pub fn representable(c: &FinCat, a: Obj) -> FinPsh {
    let cat = Arc::new(c.clone());
    let sets = (0..c.num_objects())
        .map(|b| c.hom(b, a).iter().map(|&f| c.mor_name(f).to_string()).collect())
        .collect();
    let restr = c
        .morphisms()
        .map(|r| {
            let (dom, cod) = (c.dom(r), c.cod(r));
            c.hom(cod, a)
                .iter()
                .map(|&f| {
                    let h = c.compose(f, r);
                    c.hom(dom, a).iter().position(|&g| g == h).expect("hom lookup")
                })
                .collect()
        })
        .collect();
    FinPsh::new(cat, sets, restr).expect("representable presheaf")
}

/// The dependent presheaf with one element over every element of `x`.
pub fn terminal_dep(x: &FinPsh) -> DepFinPsh {
    let base = Arc::new(x.clone());
    let c = x.base();
    let fibers = (0..c.num_objects())
        .map(|a| (0..x.size(a)).map(|_| vec!["*".to_string()]).collect())
        .collect();
    let restr = c
        .morphisms()
        .map(|f| (0..x.size(c.cod(f))).map(|_| vec![0]).collect())
        .collect();
    DepFinPsh::new(base, fibers, restr).expect("terminal dependent presheaf")
}

/// Over `x`, the fiber at `(Γ, x)` is the set of `m : Γ → target` with
/// `x = x₀[m]`, where `x₀` lies over `target`. Restriction is precomposition.
pub fn sections_through(x: &FinPsh, target: Obj, x0: usize) -> DepFinPsh {
    let base = Arc::new(x.clone());
    let c = x.base().clone();
    let fiber = |g: Obj, e: usize| -> Vec<usize> {
        c.hom(g, target)
            .iter()
            .copied()
            .filter(|&m| x.restrict(m, x0) == e)
            .collect()
    };
    let fibers = (0..c.num_objects())
        .map(|g| {
            (0..x.size(g))
                .map(|e| fiber(g, e).into_iter().map(|m| c.mor_name(m).to_string()).collect())
                .collect()
        })
        .collect();
    let restr = c
        .morphisms()
        .map(|r| {
            let (dom, cod) = (c.dom(r), c.cod(r));
            (0..x.size(cod))
                .map(|e| {
                    let below = fiber(dom, x.restrict(r, e));
                    fiber(cod, e)
                        .into_iter()
                        .map(|m| {
                            let h = c.compose(m, r);
                            below.iter().position(|&k| k == h).expect("fiber lookup")
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    DepFinPsh::new(base, fibers, restr).expect("sections dependent presheaf")
}

/// `y` viewed as a dependent presheaf over `x` that ignores the base element.
pub fn constant_dep(x: &FinPsh, y: &FinPsh) -> DepFinPsh {
    let base = Arc::new(x.clone());
    let c = x.base();
    let fibers = (0..c.num_objects())
        .map(|a| (0..x.size(a)).map(|_| y.labels(a).to_vec()).collect())
        .collect();
    let restr = c
        .morphisms()
        .map(|f| (0..x.size(c.cod(f))).map(|_| y.restriction(f).to_vec()).collect())
        .collect();
    DepFinPsh::new(base, fibers, restr).expect("constant dependent presheaf")
}
