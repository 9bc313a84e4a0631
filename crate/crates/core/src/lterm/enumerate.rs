//! Exhaustive enumeration of normal terms by dimension and size.

use std::collections::HashMap;

use super::{Generator, Term};
use crate::pasting::{Diagram, Scheme, Side};
use crate::Truncation;

/// A requirement on labels: the iterated source and target in dimension
/// `dim` must be the given terms.
#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub dim: usize,
    pub src: Option<Term>,
    pub tgt: Option<Term>,
}

pub(crate) fn satisfies(t: &Term, cs: &[Constraint]) -> bool {
    cs.iter().filter(|c| c.dim < t.dim()).all(|c| {
        c.src.as_ref().is_none_or(|s| &t.boundary_to(c.dim, Side::Source) == s)
            && c.tgt.as_ref().is_none_or(|s| &t.boundary_to(c.dim, Side::Target) == s)
    })
}

/// The `depth`-dimensional boundary of a column sitting at depth `depth + 1`.
pub(crate) fn column_boundary(col: &Diagram<Term>, depth: usize, side: Side) -> Term {
    let first = match col {
        Diagram::Cell(t) => t,
        Diagram::Path { points, .. } => &points[0],
    };
    first.boundary_to(depth, side)
}

/// All schemes `π` of dimension `beta.dim() + 1` with boundary `beta` and
/// at most `max_positions` maximal positions.
pub fn schemes_over(beta: &Scheme, max_positions: usize) -> Vec<Scheme> {
    let dim = beta.dim() + 1;
    if max_positions == 0 {
        return Vec::new();
    }
    if beta.is_point() {
        return (0..=max_positions)
            .map(|m| Scheme::list_unchecked(1, vec![Scheme::point(); m]))
            .collect();
    }
    if beta.cols().is_empty() {
        return vec![Scheme::list_unchecked(dim, Vec::new())];
    }
    if max_positions < beta.cols().len() {
        return Vec::new();
    }
    // choose one scheme per column, each using at least one maximal position
    let mut partial: Vec<(Vec<Scheme>, usize)> = vec![(Vec::new(), 0)];
    let cols = beta.cols();
    for (i, c) in cols.iter().enumerate() {
        let rest = cols.len() - i - 1;
        let mut next = Vec::new();
        for (chosen, used) in &partial {
            let room = max_positions - used - rest;
            for s in schemes_over(c, room) {
                let m = s.maximal_positions();
                let mut v = chosen.clone();
                v.push(s);
                next.push((v, used + m));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(v, _)| Scheme::list_unchecked(dim, v))
        .collect()
}

/// Memoizing enumerator of normal terms.
pub struct TermEnumerator {
    n: Truncation,
    exact: HashMap<(usize, usize), Vec<Term>>,
}

impl TermEnumerator {
    pub fn new(n: Truncation) -> Self {
        TermEnumerator {
            n,
            exact: HashMap::new(),
        }
    }

    pub fn truncation(&self) -> Truncation {
        self.n
    }

    /// All normal terms of dimension `k` with size at most `bound`, by
    /// increasing size.
    pub fn terms(&mut self, k: usize, bound: usize) -> Vec<Term> {
        (1..=bound).flat_map(|s| self.terms_exact(k, s)).collect()
    }

    /// All normal terms of dimension `k` and size exactly `size`.
    pub fn terms_exact(&mut self, k: usize, size: usize) -> Vec<Term> {
        if k > self.n.max_dim() || size == 0 {
            return Vec::new();
        }
        if let Some(v) = self.exact.get(&(k, size)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.push(Term::unit(k));
        }
        for g in 1..size {
            let budget = size - g;
            for gen in self.generators(k, g, budget) {
                for body in self.bodies(gen.arity(), budget) {
                    out.push(Term::app_unchecked(gen.clone(), body));
                }
            }
        }
        self.exact.insert((k, size), out.clone());
        out
    }

    /// Generators of dimension `k` and size `size` whose arity has at most
    /// `budget` maximal positions.
    pub fn generators(&mut self, k: usize, size: usize, budget: usize) -> Vec<Generator> {
        let mut out = Vec::new();
        if k == 0 {
            if size == 1 {
                out.push(Generator {
                    arity: Scheme::point(),
                    pair: None,
                });
            }
            return out;
        }
        for sp in 1..size.saturating_sub(1) {
            let ps = self.terms_exact(k - 1, sp);
            let qs = self.terms_exact(k - 1, size - 1 - sp);
            for p in &ps {
                for q in &qs {
                    if p.arity() != q.arity() {
                        continue;
                    }
                    if k >= 2 && (p.src().ok() != q.src().ok() || p.tgt().ok() != q.tgt().ok()) {
                        continue;
                    }
                    for arity in schemes_over(p.arity(), budget) {
                        out.push(Generator {
                            arity,
                            pair: Some((p.clone(), q.clone())),
                        });
                    }
                }
            }
        }
        out
    }

    /// All bodies of the given shape whose maximal labels have total size
    /// exactly `size`.
    pub fn bodies(&mut self, shape: &Scheme, size: usize) -> Vec<Diagram<Term>> {
        self.fill(shape, 0, &[], size)
    }

    fn fill(&mut self, shape: &Scheme, depth: usize, cs: &[Constraint], size: usize) -> Vec<Diagram<Term>> {
        if size < shape.maximal_positions() {
            return Vec::new();
        }
        if shape.is_point() || shape.cols().is_empty() {
            let pool: Vec<Term> = self
                .terms_exact(depth, size)
                .into_iter()
                .filter(|t| satisfies(t, cs))
                .collect();
            return pool
                .into_iter()
                .map(|t| {
                    if shape.is_point() {
                        Diagram::Cell(t)
                    } else {
                        Diagram::empty_path(shape.dim(), t)
                    }
                })
                .collect();
        }
        let cols = shape.cols();
        let mins: Vec<usize> = cols.iter().map(Scheme::maximal_positions).collect();
        // (points, columns, used size)
        let mut partial: Vec<(Vec<Term>, Vec<Diagram<Term>>, usize)> = vec![(Vec::new(), Vec::new(), 0)];
        for (i, col_shape) in cols.iter().enumerate() {
            let rest_min: usize = mins[i + 1..].iter().sum();
            let mut next = Vec::new();
            for (points, done, used) in &partial {
                let mut col_cs = cs.to_vec();
                col_cs.push(Constraint {
                    dim: depth,
                    src: points.last().cloned(),
                    tgt: None,
                });
                let top = size - used - rest_min;
                for s in mins[i]..=top {
                    if i + 1 == cols.len() && s != top {
                        continue;
                    }
                    for col in self.fill(col_shape, depth + 1, &col_cs, s) {
                        let mut p = points.clone();
                        if p.is_empty() {
                            p.push(column_boundary(&col, depth, Side::Source));
                        }
                        p.push(column_boundary(&col, depth, Side::Target));
                        let mut d = done.clone();
                        d.push(col);
                        next.push((p, d, used + s));
                    }
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|(points, cols, _)| Diagram::Path {
                dim: shape.dim(),
                points,
                cols,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lterm::{check_body, compose, kappa0, Terms};
    use crate::pasting::check_diagram;
    use std::collections::HashSet;

    #[test]
    fn dimension_zero_grammar() {
        let mut en = TermEnumerator::new(Truncation::DEFAULT);
        assert_eq!(en.terms(0, 1), vec![Term::unit(0)]);
        let two = en.terms(0, 2);
        assert_eq!(two, vec![Term::unit(0), kappa0()]);
        let k0 = kappa0();
        let kk = compose(&k0, &Diagram::Cell(k0.clone())).unwrap();
        assert!(en.terms(0, 3).contains(&kk));
        // words in K0: exactly one term per size
        for s in 1..=8 {
            assert_eq!(en.terms_exact(0, s).len(), 1);
        }
    }

    #[test]
    fn schemes_over_point() {
        let v = schemes_over(&Scheme::point(), 2);
        assert_eq!(v.len(), 3);
        for s in &v {
            assert_eq!(s.boundary().unwrap(), Scheme::point());
        }
    }

    #[test]
    #[allow(clippy::mutable_key_type)] // lazily filled caches inside a term do not affect its hash
    fn enumerated_terms_are_distinct_and_well_formed() {
        let mut en = TermEnumerator::new(Truncation::DEFAULT);
        for k in 0..=2 {
            let terms = en.terms(k, 7);
            let set: HashSet<&Term> = terms.iter().collect();
            assert_eq!(set.len(), terms.len(), "duplicates in dimension {k}");
            for t in &terms {
                assert_eq!(t.dim(), k);
                assert!(t.size() <= 7);
                if let Some(b) = t.body() {
                    check_body(b).unwrap();
                    check_diagram(&Terms, b).unwrap();
                }
            }
        }
    }
}
