//! Seeded random generation of normal terms, schemes and bodies.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::{column_boundary, satisfies, Constraint, TermEnumerator};
use super::{kappa, Generator, Term};
use crate::pasting::{Diagram, Scheme, Side};
use crate::Truncation;

/// Deterministic (per seed) sampler of well-formed normal terms.
pub struct TermSampler {
    rng: ChaCha8Rng,
    n: Truncation,
    pools: TermEnumerator,
    label_bound: usize,
}

impl TermSampler {
    pub fn new(n: Truncation, seed: u64) -> Self {
        TermSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
            pools: TermEnumerator::new(n),
            label_bound: 4,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A random term of dimension `k` and size at most `max_size`.
    pub fn term(&mut self, k: usize, max_size: usize) -> Term {
        for _ in 0..64 {
            let t = self.raw_term(k, max_size);
            if t.size() <= max_size {
                return t;
            }
        }
        Term::unit(k)
    }

    fn raw_term(&mut self, k: usize, budget: usize) -> Term {
        if budget <= 1 || self.rng.gen_bool(0.15) {
            return Term::unit(k);
        }
        if k == 0 {
            return Self::word(self.rng.gen_range(0..budget));
        }
        let p = self.raw_term(k - 1, (budget / 3).max(1));
        let q = match self.rng.gen_range(0..3) {
            0 => p.clone(),
            1 if k >= 2 => {
                let pair = Some((p.src().expect("dim >= 1"), p.tgt().expect("dim >= 1")));
                kappa(self.n, k - 1, pair, p.arity().clone()).expect("boundaries of a cell are parallel")
            }
            _ if k == 1 => Self::word(self.rng.gen_range(0..3)),
            _ => p.clone(),
        };
        let room = budget.saturating_sub(1 + p.size() + q.size()).max(1);
        let arity = self.scheme_over(p.arity(), room.min(4));
        let gen = Generator {
            arity,
            pair: Some((p, q)),
        };
        let body = if self.rng.gen_bool(0.5) {
            self.endo_body(&gen.arity, room, true)
        } else {
            self.body(&gen.arity)
        };
        Term::app_unchecked(gen, body)
    }

    /// `K₀` applied `m` times.
    fn word(m: usize) -> Term {
        let mut t = Term::unit(0);
        let gen = Generator {
            arity: Scheme::point(),
            pair: None,
        };
        for _ in 0..m {
            t = Term::app_unchecked(gen.clone(), Diagram::Cell(t));
        }
        t
    }

    /// A random term of dimension `j` whose source and target are both the
    /// unit one dimension down (any 0-term when `j = 0`).
    fn endo(&mut self, j: usize, budget: usize) -> Term {
        if budget <= 1 || self.rng.gen_bool(0.4) {
            return Term::unit(j);
        }
        if j == 0 {
            return Self::word(self.rng.gen_range(1..budget.min(4)));
        }
        let room = budget.saturating_sub(3).max(1);
        let arity = self.scheme_over(&Scheme::globe(j - 1), room.min(3));
        let gen = Generator {
            arity,
            pair: Some((Term::unit(j - 1), Term::unit(j - 1))),
        };
        let body = self.endo_body(&gen.arity, room, false);
        Term::app_unchecked(gen, body)
    }

    /// The unit body of `shape` with top labels (and, if `points` is set,
    /// points of empty paths) replaced by random endo-terms.
    fn endo_body(&mut self, shape: &Scheme, budget: usize, points: bool) -> Diagram<Term> {
        let k = shape.dim();
        let share = (budget / shape.maximal_positions().max(1)).max(1);
        let unit = shape.fill(&Term::unit);
        let mut out = unit.clone();
        self.replace_maximal(&mut out, 0, k, share, points);
        out
    }

    fn replace_maximal(&mut self, d: &mut Diagram<Term>, depth: usize, k: usize, share: usize, points: bool) {
        match d {
            Diagram::Cell(t) => {
                if depth == k {
                    *t = self.endo(depth, share);
                }
            }
            Diagram::Path { points: ps, cols, .. } => {
                if cols.is_empty() {
                    if points {
                        ps[0] = self.endo(depth, share);
                    }
                    return;
                }
                for c in cols {
                    self.replace_maximal(c, depth + 1, k, share, points);
                }
            }
        }
    }

    /// A random scheme of dimension `beta.dim() + 1` over `beta`.
    pub fn scheme_over(&mut self, beta: &Scheme, max_positions: usize) -> Scheme {
        let dim = beta.dim() + 1;
        if beta.is_point() {
            let m = self.rng.gen_range(0..=max_positions.clamp(1, 3));
            return Scheme::list_unchecked(1, vec![Scheme::point(); m]);
        }
        let cols = beta.cols().to_vec();
        let share = (max_positions / cols.len().max(1)).max(1);
        let cols = cols.iter().map(|c| self.scheme_over(c, share)).collect();
        Scheme::list_unchecked(dim, cols)
    }

    /// A random scheme of dimension `k`.
    pub fn scheme(&mut self, k: usize, max_positions: usize) -> Scheme {
        if k == 0 {
            return Scheme::point();
        }
        let below = self.scheme(k - 1, max_positions);
        self.scheme_over(&below, max_positions)
    }

    /// A random well-formed body of the given shape whose labels are small
    /// terms; falls back to the unit body if the search dead-ends.
    pub fn body(&mut self, shape: &Scheme) -> Diagram<Term> {
        for _ in 0..16 {
            if let Some(d) = self.fill(shape, 0, &[]) {
                return d;
            }
        }
        shape.fill(&Term::unit)
    }

    fn pick(&mut self, depth: usize, cs: &[Constraint]) -> Option<Term> {
        let pool: Vec<Term> = self
            .pools
            .terms(depth, self.label_bound)
            .into_iter()
            .filter(|t| satisfies(t, cs))
            .collect();
        pool.choose(&mut self.rng).cloned()
    }

    fn fill(&mut self, shape: &Scheme, depth: usize, cs: &[Constraint]) -> Option<Diagram<Term>> {
        if shape.is_point() {
            return self.pick(depth, cs).map(Diagram::Cell);
        }
        if shape.cols().is_empty() {
            return self.pick(depth, cs).map(|t| Diagram::empty_path(shape.dim(), t));
        }
        let mut points: Vec<Term> = Vec::new();
        let mut cols = Vec::new();
        for col_shape in shape.cols() {
            let mut col_cs = cs.to_vec();
            col_cs.push(Constraint {
                dim: depth,
                src: points.last().cloned(),
                tgt: None,
            });
            let col = self.fill(col_shape, depth + 1, &col_cs)?;
            if points.is_empty() {
                points.push(column_boundary(&col, depth, Side::Source));
            }
            points.push(column_boundary(&col, depth, Side::Target));
            cols.push(col);
        }
        Some(Diagram::Path {
            dim: shape.dim(),
            points,
            cols,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lterm::{check_body, Terms};
    use crate::pasting::check_diagram;

    #[test]
    fn samples_are_well_formed_and_bounded() {
        let mut s = TermSampler::new(Truncation::DEFAULT, 7);
        for i in 0..200 {
            let k = i % 4;
            let t = s.term(k, 12);
            assert_eq!(t.dim(), k);
            assert!(t.size() <= 12);
            if let Some(b) = t.body() {
                check_body(b).unwrap();
            }
            if k >= 1 {
                assert_eq!(t.src().unwrap().arity(), &t.arity().boundary().unwrap());
            }
        }
    }

    #[test]
    fn random_bodies_are_well_formed() {
        let mut s = TermSampler::new(Truncation::DEFAULT, 11);
        for _ in 0..50 {
            let shape = s.scheme(2, 4);
            let b = s.body(&shape);
            assert_eq!(b.shape(), shape);
            check_diagram(&Terms, &b).unwrap();
        }
    }

    #[test]
    fn same_seed_same_terms() {
        let mut a = TermSampler::new(Truncation::DEFAULT, 3);
        let mut b = TermSampler::new(Truncation::DEFAULT, 3);
        for _ in 0..20 {
            assert_eq!(a.term(2, 10), b.term(2, 10));
        }
    }
}
