//! Small strict ω-categories and morphisms used by tests, benchmarks and the
//! example corpus.

use std::sync::Arc;

use crate::algebra::{StrictCat, StrictFunctor};
use crate::globset::{GlobMorphism, GlobSet};

/// Name of the identity 2-cell on a 1-cell in the one-object fixtures.
fn id2(name: &str) -> String {
    format!("id_{name}")
}

/// The one-object 2-category of a finite monoid: 1-cells are the elements,
/// composition is the monoid product (`table[g][f]` is `g ∘ f`), and the
/// only 2-cells are identities.
pub fn monoid_category(elements: &[&str], table: &[Vec<usize>]) -> StrictCat {
    let mut b = GlobSet::builder(2);
    b.add_cell("*", 0, None);
    for e in elements {
        b.add_cell(e, 1, Some(("*", "*")));
    }
    for e in elements {
        b.add_cell(&id2(e), 2, Some((e, e)));
    }
    let carrier = Arc::new(b.build().expect("one-object sets are globular"));
    let mut c = StrictCat::builder(carrier);
    c.ident("*", elements[0]);
    for (gi, g) in elements.iter().enumerate() {
        c.ident(g, &id2(g));
        c.comp(1, &id2(g), &id2(g), &id2(g));
        for (fi, f) in elements.iter().enumerate() {
            let h = elements[table[gi][fi]];
            c.comp(0, g, f, h);
            c.comp(0, &id2(g), &id2(f), &id2(h));
        }
    }
    c.build().expect("monoid tables are well formed")
}

fn cyclic_table(order: usize) -> Vec<Vec<usize>> {
    (0..order)
        .map(|g| (0..order).map(|f| (g + f) % order).collect())
        .collect()
}

/// The group Z/2 as a one-object 2-category: 1-cells `1` and `a`.
pub fn z2() -> StrictCat {
    monoid_category(&["1", "a"], &cyclic_table(2))
}

/// The group Z/4 as a one-object 2-category: 1-cells `0`, `1`, `2`, `3`.
pub fn z4() -> StrictCat {
    monoid_category(&["0", "1", "2", "3"], &cyclic_table(4))
}

/// The free monoid on one generator `a`, truncated so that every word of
/// length at least two is identified with `aa`. No element but `1` has an
/// inverse.
pub fn truncated_free_monoid() -> StrictCat {
    monoid_category(&["1", "a", "aa"], &[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]])
}

/// The one-object category with only identities.
pub fn trivial_category() -> StrictCat {
    monoid_category(&["1"], &[vec![0]])
}

/// The quotient functor Z/4 -> Z/2.
pub fn z4_to_z2() -> StrictFunctor {
    let (dom, cod) = (Arc::new(z4()), Arc::new(z2()));
    let pairs: Vec<(String, String)> = [
        ("*", "*"),
        ("0", "1"),
        ("1", "a"),
        ("2", "1"),
        ("3", "a"),
        ("id_0", "id_1"),
        ("id_1", "id_a"),
        ("id_2", "id_1"),
        ("id_3", "id_a"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    let map = GlobMorphism::from_names(dom.carrier().clone(), cod.carrier().clone(), &pairs).expect("quotient map");
    StrictFunctor::new(dom, cod, map).expect("quotient is a functor")
}

/// A strict 2-category with objects `x`, `y`, parallel 1-cells `f`, `g`
/// from `x` to `y`, an idempotent 2-cell `gamma: f => f` and a 2-cell
/// `alpha: f => g` with `alpha . gamma = alpha`, plus all identities.
pub fn two_object_2cat() -> StrictCat {
    let mut b = GlobSet::builder(2);
    b.add_cell("x", 0, None)
        .add_cell("y", 0, None)
        .add_cell("idx", 1, Some(("x", "x")))
        .add_cell("idy", 1, Some(("y", "y")))
        .add_cell("f", 1, Some(("x", "y")))
        .add_cell("g", 1, Some(("x", "y")))
        .add_cell("1idx", 2, Some(("idx", "idx")))
        .add_cell("1idy", 2, Some(("idy", "idy")))
        .add_cell("1f", 2, Some(("f", "f")))
        .add_cell("1g", 2, Some(("g", "g")))
        .add_cell("gamma", 2, Some(("f", "f")))
        .add_cell("alpha", 2, Some(("f", "g")));
    let carrier = Arc::new(b.build().expect("globular"));
    let mut c = StrictCat::builder(carrier);
    c.ident("x", "idx").ident("y", "idy");
    for one in ["idx", "idy", "f", "g"] {
        c.ident(one, &format!("1{one}"));
    }
    // horizontal composition: only whiskering by identities is possible
    c.comp(0, "idx", "idx", "idx").comp(0, "idy", "idy", "idy");
    c.comp(0, "1idx", "1idx", "1idx").comp(0, "1idy", "1idy", "1idy");
    for h in ["f", "g"] {
        c.comp(0, "idy", h, h).comp(0, h, "idx", h);
    }
    for t in ["1f", "1g", "gamma", "alpha"] {
        c.comp(0, "1idy", t, t).comp(0, t, "1idx", t);
    }
    // vertical composition
    c.comp(1, "1idx", "1idx", "1idx").comp(1, "1idy", "1idy", "1idy");
    for (gn, fn_, h) in [
        ("1f", "1f", "1f"),
        ("1g", "1g", "1g"),
        ("gamma", "1f", "gamma"),
        ("1f", "gamma", "gamma"),
        ("gamma", "gamma", "gamma"),
        ("alpha", "1f", "alpha"),
        ("alpha", "gamma", "alpha"),
        ("1g", "alpha", "alpha"),
    ] {
        c.comp(1, gn, fn_, h);
    }
    c.build().expect("tables are well formed")
}

/// A globular set with two parallel 1-cells `p` and `q` mapped onto the
/// single 1-cell of the 1-disc, so that a lifting problem has two solutions.
pub fn two_lift_map() -> GlobMorphism {
    let mut b = GlobSet::builder(1);
    b.add_cell("x", 0, None)
        .add_cell("y", 0, None)
        .add_cell("q", 1, Some(("x", "y")))
        .add_cell("p", 1, Some(("x", "y")));
    let dom = Arc::new(b.build().expect("globular"));
    let mut c = GlobSet::builder(1);
    c.add_cell("s0", 0, None)
        .add_cell("t0", 0, None)
        .add_cell("c", 1, Some(("s0", "t0")));
    let cod = Arc::new(c.build().expect("globular"));
    let pairs: Vec<(String, String)> = [("x", "s0"), ("y", "t0"), ("p", "c"), ("q", "c")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    GlobMorphism::from_names(dom, cod, &pairs).expect("commutes")
}

/// The codiscrete globular set on the given 0-cells: exactly one cell
/// between any parallel pair, up to `max_dim`. Its map to the terminal set
/// has every lift.
pub fn codiscrete(objects: &[&str], max_dim: usize) -> GlobSet {
    let mut b = GlobSet::builder(max_dim);
    let mut layer: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    for o in &layer {
        b.add_cell(o, 0, None);
    }
    let mut boundary: Vec<Option<(usize, usize)>> = vec![None; layer.len()];
    for d in 1..=max_dim {
        let mut next = Vec::new();
        let mut next_boundary = Vec::new();
        for (i, s) in layer.iter().enumerate() {
            for (j, t) in layer.iter().enumerate() {
                if d >= 2 && boundary[i] != boundary[j] {
                    continue;
                }
                let name = format!("[{s}>{t}]");
                b.add_cell(&name, d, Some((s, t)));
                next.push(name);
                next_boundary.push(Some((i, j)));
            }
        }
        layer = next;
        boundary = next_boundary;
    }
    b.build().expect("codiscrete sets are globular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_strict_cat;
    use crate::globset::{check_rlp, solve_contraction};
    use crate::Truncation;

    #[test]
    fn fixtures_are_valid() {
        for c in [
            z2(),
            z4(),
            truncated_free_monoid(),
            trivial_category(),
            two_object_2cat(),
        ] {
            let r = validate_strict_cat(&c);
            assert!(r.is_ok(), "{r}");
        }
        assert!(z4_to_z2().validate().is_ok());
        assert_eq!(two_object_2cat().carrier().count(2), 6);
    }

    #[test]
    fn codiscrete_has_all_lifts() {
        let g = Arc::new(codiscrete(&["u", "v"], 2));
        assert_eq!(g.counts(), vec![2, 4, 4]);
        let r = GlobMorphism::to_terminal(g, Truncation::new(2)).unwrap();
        assert!(check_rlp(&r, 2).is_ok());
        assert!(solve_contraction(&r).unwrap().verify().is_ok());
    }
}
