//! One-object suspension: every cell moves up one dimension and a single new
//! 0-cell is added underneath.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::globset::{Contraction, GlobMorphism, GlobSet, LiftKey};
use crate::lterm::{compose, kappa, Generator, OperadTarget, Term};
use crate::pasting::{Diagram, Scheme};
use crate::{Error, Result, Truncation};

/// `[π]`, the one-column scheme over `π`.
pub fn suspend_scheme(n: Truncation, s: &Scheme) -> Result<Scheme> {
    n.check(s.dim() + 1)?;
    Ok(Scheme::list_unchecked(s.dim() + 1, vec![s.clone()]))
}

/// Inverse of [`suspend_scheme`] on one-column schemes.
pub fn lower_scheme(s: &Scheme) -> Result<Scheme> {
    match s.cols() {
        [only] if s.dim() >= 1 => Ok(only.clone()),
        _ => Err(Error::NotSuspended(s.to_string())),
    }
}

/// `<x | d | y>`: a diagram in the hom between `x` and `y`, one dimension up.
pub fn suspend_diagram<C>(n: Truncation, d: Diagram<C>, x: C, y: C) -> Result<Diagram<C>> {
    n.check(d.dim() + 1)?;
    Ok(crate::pasting::suspend_path(d, x, y))
}

fn suspend_generator(g: &Generator) -> Generator {
    let pair = match g.pair() {
        None => (Term::unit(0), Term::unit(0)),
        Some((p, q)) => (suspend_unchecked(p), suspend_unchecked(q)),
    };
    Generator {
        arity: Scheme::list_unchecked(g.dim() + 1, vec![g.arity().clone()]),
        pair: Some(pair),
    }
}

fn suspend_unchecked(t: &Term) -> Term {
    match (t.generator(), t.body()) {
        (Some(g), Some(b)) => {
            let body = crate::pasting::suspend_path(b.map(|_, l| suspend_unchecked(l)), Term::unit(0), Term::unit(0));
            Term::app_unchecked(suspend_generator(g), body)
        }
        _ => Term::unit(t.dim() + 1),
    }
}

/// The image of a term under the operad morphism from the suspension of the
/// term calculus back into itself.
pub fn suspend_term(n: Truncation, t: &Term) -> Result<Term> {
    n.check(t.dim() + 1)?;
    Ok(suspend_unchecked(t))
}

/// The term calculus, seen through suspension: units, contraction cells and
/// composites are built one dimension up with unit endpoints.
#[derive(Clone, Copy, Debug)]
pub struct SuspensionTarget(pub Truncation);

impl OperadTarget for SuspensionTarget {
    type Cell = Term;

    fn unit(&self, k: usize) -> Result<Term> {
        self.0.check(k + 1)?;
        Ok(Term::unit(k + 1))
    }

    fn contraction(&self, k: usize, pair: Option<(&Term, &Term)>, arity: &Scheme) -> Result<Term> {
        let pair = match pair {
            None => (Term::unit(0), Term::unit(0)),
            Some((p, q)) => (p.clone(), q.clone()),
        };
        kappa(self.0, k + 1, Some(pair), suspend_scheme(self.0, arity)?)
    }

    fn multiply(&self, head: &Term, body: &Diagram<Term>) -> Result<Term> {
        let b = suspend_diagram(self.0, body.clone(), Term::unit(0), Term::unit(0))?;
        compose(head, &b)
    }
}

fn fresh_point_name(g: &GlobSet) -> String {
    let mut name = String::from("*");
    while g.find_any(&name).is_some() {
        name.push('\'');
    }
    name
}

/// The one-object suspension of a globular set. Cell indices are kept: the
/// `k`-cell `i` becomes the `(k + 1)`-cell `i`, and the new 0-cell has index 0.
pub fn suspend_globset(n: Truncation, g: &GlobSet) -> Result<GlobSet> {
    n.check(g.max_dim() + 1)?;
    let point = fresh_point_name(g);
    let mut b = GlobSet::builder(g.max_dim() + 1);
    b.add_cell(&point, 0, None);
    for k in 0..=g.max_dim() {
        for c in 0..g.count(k) {
            if k == 0 {
                b.add_cell(g.name(0, c), 1, Some((&point, &point)));
            } else {
                b.add_cell(
                    g.name(k, c),
                    k + 1,
                    Some((g.name(k - 1, g.src(k, c)), g.name(k - 1, g.tgt(k, c)))),
                );
            }
        }
    }
    b.build().map_err(|r| Error::Invalid(r.to_string()))
}

/// The suspension of a morphism.
pub fn suspend_morphism(n: Truncation, map: &GlobMorphism) -> Result<GlobMorphism> {
    let dom = Arc::new(suspend_globset(n, &map.dom)?);
    let cod = Arc::new(suspend_globset(n, &map.cod)?);
    let mut maps = vec![vec![0; 1]];
    for k in 0..=map.dom.max_dim() {
        maps.push((0..map.dom.count(k)).map(|c| map.apply(k, c)).collect());
    }
    GlobMorphism::new(dom, cod, maps).map_err(|rep| Error::Invalid(rep.to_string()))
}

/// Transports a contraction on `r` to one on its suspension: the new point
/// lifts to the new point, and every other lift is the suspended lift.
pub fn suspend_contraction(n: Truncation, c: &Contraction) -> Result<Contraction> {
    let on = suspend_morphism(n, &c.on)?;
    let mut lifts = BTreeMap::new();
    lifts.insert(
        LiftKey {
            dim: 0,
            pair: None,
            target: 0,
        },
        0,
    );
    for (key, &w) in &c.lifts {
        let pair = key.pair.unwrap_or((0, 0));
        lifts.insert(
            LiftKey {
                dim: key.dim + 1,
                pair: Some(pair),
                target: key.target,
            },
            w,
        );
    }
    Ok(Contraction { on, lifts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::globset::solve_contraction;
    use crate::lterm::{binary_cell, identity_cell, interpret};
    use crate::pasting::{one, two, zero};

    fn n() -> Truncation {
        Truncation::DEFAULT
    }

    #[test]
    fn named_schemes_suspend() {
        for k in 1..3 {
            assert_eq!(
                suspend_scheme(n(), &zero(n(), k).unwrap()).unwrap(),
                zero(n(), k + 1).unwrap()
            );
            assert_eq!(
                suspend_scheme(n(), &two(n(), k).unwrap()).unwrap(),
                two(n(), k + 1).unwrap()
            );
        }
        assert_eq!(suspend_scheme(n(), &Scheme::point()).unwrap(), one(n(), 1).unwrap());
        assert!(suspend_scheme(n(), &one(n(), 3).unwrap()).is_err());
    }

    #[test]
    fn lower_rejects_multi_column() {
        assert_eq!(
            lower_scheme(&Scheme::list(2, vec![two(n(), 1).unwrap()]).unwrap()).unwrap(),
            two(n(), 1).unwrap()
        );
        assert!(matches!(
            lower_scheme(&two(n(), 1).unwrap()),
            Err(Error::NotSuspended(_))
        ));
        assert!(lower_scheme(&Scheme::list(1, vec![]).unwrap()).is_err());
    }

    #[test]
    fn identity_and_binary_cells_suspend() {
        for k in 1..3 {
            assert_eq!(
                suspend_term(n(), &identity_cell(n(), k).unwrap()).unwrap(),
                identity_cell(n(), k + 1).unwrap()
            );
            assert_eq!(
                suspend_term(n(), &binary_cell(n(), k).unwrap()).unwrap(),
                binary_cell(n(), k + 1).unwrap()
            );
        }
        assert_eq!(suspend_term(n(), &Term::unit(0)).unwrap(), Term::unit(1));
    }

    #[test]
    fn suspension_target_agrees_on_generators() {
        let m1 = binary_cell(n(), 1).unwrap();
        assert_eq!(
            interpret(&m1, &SuspensionTarget(n())).unwrap(),
            suspend_term(n(), &m1).unwrap()
        );
    }

    #[test]
    fn transported_contraction_verifies() {
        let d1 = Arc::new(GlobSet::disc(n(), 1).unwrap());
        let c = solve_contraction(&GlobMorphism::identity(d1)).unwrap();
        let s = suspend_contraction(n(), &c).unwrap();
        assert!(s.verify().is_ok(), "{}", s.verify());
        assert_eq!(s.lifts.len(), c.lifts.len() + 1);
    }
}
