//! Identities and binary composites of an algebra, and finite certificates
//! of weak invertibility.
//!
//! Witness checking is truncated: a cell of the top dimension `N` is
//! invertible only when its composites with its inverse are identities on
//! the nose. Unit and counit cells that land in dimension `N` need no
//! witnesses of their own.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, HomAlgebra, StrictCat};
use crate::lterm::{binary_cell, identity_cell};
use crate::pasting::{globe, Diagrams, StrictCategory};
use crate::{Error, Report, Result};

/// The identity `k`-cell on a `(k-1)`-cell, via the identity term `i_k`.
pub fn id_cell(a: &dyn Algebra, k: usize, cell: usize) -> Result<usize> {
    let n = a.truncation();
    let t = identity_cell(n, k)?;
    let g = a.carrier();
    let d = Diagrams::<usize>::new().identity(k - 1, &globe(&**g, k - 1, &cell)?)?;
    a.eval(&t, &d)
}

/// `g ∘ f` for `k`-cells meeting along their `(k-1)`-boundary, via the
/// binary composition term.
pub fn bin_comp(a: &dyn Algebra, k: usize, g: usize, f: usize) -> Result<usize> {
    let n = a.truncation();
    let t = binary_cell(n, k)?;
    let c = a.carrier();
    if k == 0 || c.tgt(k, f) != c.src(k, g) {
        return Err(Error::NotComposable(format!(
            "{} does not end where {} starts",
            c.describe_cell(k, f),
            c.describe_cell(k, g)
        )));
    }
    let d = Diagrams::<usize>::new().compose(k - 1, k, &globe(&**c, k, &g)?, &globe(&**c, k, &f)?)?;
    a.eval(&t, &d)
}

/// Inverse data for one cell `f: a -> b`: `inverse: b -> a`, and below the
/// top dimension `eta: id_a -> inverse ∘ f` and `eps: f ∘ inverse -> id_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub inverse: usize,
    pub eta: Option<usize>,
    pub eps: Option<usize>,
}

/// A finite map from cells `(dim, index)` to their inverse data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessSet {
    pub entries: BTreeMap<(usize, usize), Witness>,
}

impl WitnessSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, dim: usize, cell: usize, w: Witness) {
        self.entries.insert((dim, cell), w);
    }

    pub fn get(&self, dim: usize, cell: usize) -> Option<&Witness> {
        self.entries.get(&(dim, cell))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Checks closure and the boundary equations of every entry.
pub fn check_witnesses(a: &dyn Algebra, w: &WitnessSet) -> Report {
    let g = a.carrier().clone();
    let top = g.max_dim();
    let mut report = Report::new();
    let name = |d: usize, c: usize| g.describe_cell(d, c);
    for (&(k, f), wit) in &w.entries {
        report.count_check();
        if k == 0 || k > top || f >= g.count(k) {
            report.push(
                "membership",
                format!("{} is not a cell of dimension 1..{top}", name(k, f)),
            );
            continue;
        }
        let inv = wit.inverse;
        if inv >= g.count(k) {
            report.push("membership", format!("the inverse of {} is not a {k}-cell", name(k, f)));
            continue;
        }
        let (src, tgt) = (g.src(k, f), g.tgt(k, f));
        if g.src(k, inv) != tgt || g.tgt(k, inv) != src {
            report.push(
                "boundary",
                format!("{} does not run backwards along {}", name(k, inv), name(k, f)),
            );
            continue;
        }
        if !w.entries.contains_key(&(k, inv)) {
            report.push("closure", format!("{} is not itself witnessed", name(k, inv)));
        }
        let composites = (
            id_cell(a, k, src),
            bin_comp(a, k, inv, f),
            bin_comp(a, k, f, inv),
            id_cell(a, k, tgt),
        );
        let (id_a, gf, fg, id_b) = match composites {
            (Ok(p), Ok(q), Ok(r), Ok(s)) => (p, q, r, s),
            (p, q, r, s) => {
                let e = [p.err(), q.err(), r.err(), s.err()].into_iter().flatten().next();
                report.push("evaluation", format!("{}: {}", name(k, f), e.expect("one failed")));
                continue;
            }
        };
        if k == top {
            if wit.eta.is_some() || wit.eps.is_some() {
                report.push(
                    "truncation",
                    format!("{} is top-dimensional and takes no eta or eps", name(k, f)),
                );
            }
            if gf != id_a || fg != id_b {
                report.push(
                    "strictness",
                    format!("{} and {} do not compose to identities", name(k, f), name(k, inv)),
                );
            }
            continue;
        }
        let (Some(eta), Some(eps)) = (wit.eta, wit.eps) else {
            report.push(
                "closure",
                format!("{} needs eta and eps below the top dimension", name(k, f)),
            );
            continue;
        };
        if eta >= g.count(k + 1) || eps >= g.count(k + 1) {
            report.push(
                "membership",
                format!("eta or eps of {} is not a {}-cell", name(k, f), k + 1),
            );
            continue;
        }
        if g.src(k + 1, eta) != id_a || g.tgt(k + 1, eta) != gf {
            report.push(
                "boundary",
                format!(
                    "eta {} of {} must run from {} to {}",
                    name(k + 1, eta),
                    name(k, f),
                    name(k, id_a),
                    name(k, gf)
                ),
            );
        }
        if g.src(k + 1, eps) != fg || g.tgt(k + 1, eps) != id_b {
            report.push(
                "boundary",
                format!(
                    "eps {} of {} must run from {} to {}",
                    name(k + 1, eps),
                    name(k, f),
                    name(k, fg),
                    name(k, id_b)
                ),
            );
        }
        if k + 1 < top {
            for (label, c) in [("eta", eta), ("eps", eps)] {
                if !w.entries.contains_key(&(k + 1, c)) {
                    report.push(
                        "closure",
                        format!("{label} {} of {} is not witnessed", name(k + 1, c), name(k, f)),
                    );
                }
            }
        }
    }
    report
}

/// Every positive-dimensional cell is witnessed, and the witnesses check.
pub fn check_groupoid(a: &dyn Algebra, w: &WitnessSet) -> Report {
    let g = a.carrier().clone();
    let mut report = Report::new();
    for k in 1..=g.max_dim() {
        for c in g.sorted_cells(k) {
            report.count_check();
            if w.get(k, c).is_none() {
                report.push("coverage", format!("{} has no witness", g.name(k, c)));
            }
        }
    }
    report.merge(check_witnesses(a, w));
    report
}

/// Witnesses from strict inverses, with identity cells as `eta` and `eps`.
pub fn strict_groupoid_witnesses(c: &StrictCat) -> Result<WitnessSet> {
    let g = c.carrier().clone();
    let top = g.max_dim();
    let mut w = WitnessSet::new();
    for k in 1..=top {
        for f in g.sorted_cells(k) {
            let (a, b) = (g.src(k, f), g.tgt(k, f));
            let (id_a, id_b) = (c.ident(k - 1, a), c.ident(k - 1, b));
            let inverse = g.sorted_cells(k).into_iter().find(|&h| {
                c.composable(k - 1, k, h, f)
                    && c.composable(k - 1, k, f, h)
                    && c.comp(k - 1, k, h, f) == id_a
                    && c.comp(k - 1, k, f, h) == id_b
                    && id_a.is_some()
            });
            let Some(inverse) = inverse else {
                return Err(Error::NoInverse(g.name(k, f).to_string()));
            };
            let (eta, eps) = if k < top {
                let (ia, ib) = (id_a.expect("checked"), id_b.expect("checked"));
                (c.ident(k, ia), c.ident(k, ib))
            } else {
                (None, None)
            };
            w.insert(k, f, Witness { inverse, eta, eps });
        }
    }
    Ok(w)
}

/// Checks that the hom algebra between `x` and `y` computes the same
/// identities and binary composites as the ambient algebra one dimension
/// up, and that the shifted restriction of `w` certifies it as a groupoid.
pub fn hom_groupoid_check(a: Arc<dyn Algebra + Send + Sync>, w: &WitnessSet, x: usize, y: usize) -> Result<Report> {
    let h = HomAlgebra::new(a.clone(), x, y)?;
    let hom = h.hom().clone();
    let hs = hom.set.clone();
    let mut report = Report::new();
    for k in 1..=hs.max_dim() {
        for c in 0..hs.count(k - 1) {
            report.count_check();
            let inner = id_cell(&h, k, c).map(|v| hom.lift(k, v));
            let outer = id_cell(&*a, k + 1, hom.lift(k - 1, c));
            if inner != outer {
                report.push_first(
                    "identity agreement",
                    format!("identity on {} differs", hs.name(k - 1, c)),
                );
            }
        }
        for f in 0..hs.count(k) {
            for g in 0..hs.count(k) {
                if hs.tgt(k, f) != hs.src(k, g) {
                    continue;
                }
                report.count_check();
                let inner = bin_comp(&h, k, g, f).map(|v| hom.lift(k, v));
                let outer = bin_comp(&*a, k + 1, hom.lift(k, g), hom.lift(k, f));
                if inner != outer {
                    report.push_first(
                        "composition agreement",
                        format!("composite of {} and {} differs", hs.name(k, g), hs.name(k, f)),
                    );
                }
            }
        }
    }
    let mut restricted = WitnessSet::new();
    for (&(k, c), wit) in &w.entries {
        if k < 2 {
            continue;
        }
        let Some(hc) = hom.lower(k - 1, c) else {
            continue;
        };
        let lower = |cell: usize, dim: usize| hom.lower(dim, cell);
        let inverse = lower(wit.inverse, k - 1);
        let eta = wit.eta.map(|e| lower(e, k));
        let eps = wit.eps.map(|e| lower(e, k));
        match (inverse, eta, eps) {
            (Some(inverse), eta, eps) if eta.is_none_or(|e| e.is_some()) && eps.is_none_or(|e| e.is_some()) => {
                restricted.insert(
                    k - 1,
                    hc,
                    Witness {
                        inverse,
                        eta: eta.flatten(),
                        eps: eps.flatten(),
                    },
                );
            }
            _ => report.push(
                "restriction",
                format!("witness data of {} leaves the hom", hs.name(k - 1, hc)),
            ),
        }
    }
    report.merge(check_groupoid(&h, &restricted));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CanonicalAction;
    use crate::fixtures::{trivial_category, truncated_free_monoid, two_object_2cat, z2};

    fn action(c: StrictCat) -> Arc<CanonicalAction> {
        Arc::new(CanonicalAction::new(Arc::new(c)))
    }

    #[test]
    fn identities_and_composites_in_z2() {
        let a = action(z2());
        let g = a.carrier().clone();
        let (star, one, ga) = (
            g.find(0, "*").unwrap(),
            g.find(1, "1").unwrap(),
            g.find(1, "a").unwrap(),
        );
        assert_eq!(id_cell(&*a, 1, star).unwrap(), one);
        assert_eq!(bin_comp(&*a, 1, ga, ga).unwrap(), one);
        assert_eq!(id_cell(&*a, 2, ga).unwrap(), g.find(2, "id_a").unwrap());
    }

    #[test]
    fn z2_is_a_groupoid() {
        let c = z2();
        let w = strict_groupoid_witnesses(&c).unwrap();
        let a = action(c);
        let r = check_groupoid(&*a, &w);
        assert!(r.is_ok(), "{r}");
        let r = hom_groupoid_check(a.clone(), &w, 0, 0).unwrap();
        assert!(r.is_ok(), "{r}");
        assert!(check_witnesses(&*a, &WitnessSet::new()).is_ok());
    }

    #[test]
    fn free_monoid_is_not() {
        let c = truncated_free_monoid();
        let g = c.carrier().clone();
        let ga = g.find(1, "a").unwrap();
        assert_eq!(strict_groupoid_witnesses(&c), Err(Error::NoInverse("a".into())));
        let a = action(c);
        let mut w = WitnessSet::new();
        w.insert(
            1,
            ga,
            Witness {
                inverse: ga,
                eta: Some(g.find(2, "id_1").unwrap()),
                eps: Some(g.find(2, "id_1").unwrap()),
            },
        );
        let r = check_witnesses(&*a, &w);
        assert!(r.has_family("boundary"), "{r}");
        assert!(r.to_string().contains('a'));
    }

    #[test]
    fn trivial_category_is_a_groupoid() {
        let c = trivial_category();
        let w = strict_groupoid_witnesses(&c).unwrap();
        assert!(check_groupoid(&*action(c), &w).is_ok());
    }

    #[test]
    fn two_category_is_not_a_groupoid() {
        assert!(matches!(
            strict_groupoid_witnesses(&two_object_2cat()),
            Err(Error::NoInverse(_))
        ));
    }
}
