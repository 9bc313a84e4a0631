//! The initial globular operad with contraction, as a term calculus.
//!
//! Every cell is in normal form by construction: either a unit `e@k`, or a
//! contraction generator applied to a body diagram of normal terms. The
//! generator `kappa(p, q, π)` on its own is the application to the body whose
//! labels are all units. Composition substitutes into bodies recursively, so
//! the unit and associativity laws of the operad hold on the nose and
//! equality of cells is structural equality.

mod enumerate;
mod random;

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::pasting::{check_diagram, evaluate, unflatten, CellProvider, Diagram, Scheme, Schemes, Side};
use crate::pasting::{two, zero};
use crate::{Error, Result, Truncation};

pub use enumerate::{schemes_over, TermEnumerator};
pub use random::TermSampler;

/// A contraction generator: a chosen filler of arity `arity` between a
/// parallel pair, which is absent in dimension 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator {
    pub(crate) arity: Scheme,
    pub(crate) pair: Option<(Term, Term)>,
}

impl Generator {
    pub fn dim(&self) -> usize {
        self.arity.dim()
    }

    pub fn arity(&self) -> &Scheme {
        &self.arity
    }

    pub fn pair(&self) -> Option<(&Term, &Term)> {
        self.pair.as_ref().map(|(p, q)| (p, q))
    }

    pub fn size(&self) -> usize {
        1 + self.pair.as_ref().map_or(0, |(p, q)| p.size() + q.size())
    }

    /// The body whose labels are all units.
    pub fn unit_body(&self) -> Diagram<Term> {
        self.arity.fill(&Term::unit)
    }
}

#[derive(Debug)]
enum Node {
    Unit {
        dim: usize,
        arity: Scheme,
    },
    App {
        gen: Generator,
        body: Diagram<Term>,
        arity: Scheme,
        size: usize,
        src: OnceLock<Term>,
        tgt: OnceLock<Term>,
    },
}

/// A cell of the initial operad with contraction, always in normal form.
#[derive(Clone, Debug)]
pub struct Term {
    node: Arc<Node>,
    hash: u64,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.node, &other.node) {
            return true;
        }
        if self.hash != other.hash {
            return false;
        }
        match (&*self.node, &*other.node) {
            (Node::Unit { dim: a, .. }, Node::Unit { dim: b, .. }) => a == b,
            (Node::App { gen: g1, body: b1, .. }, Node::App { gen: g2, body: b2, .. }) => g1 == g2 && b1 == b2,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.node, &other.node) {
            return Ordering::Equal;
        }
        match (&*self.node, &*other.node) {
            (Node::Unit { dim: a, .. }, Node::Unit { dim: b, .. }) => a.cmp(b),
            (Node::Unit { .. }, Node::App { .. }) => Ordering::Less,
            (Node::App { .. }, Node::Unit { .. }) => Ordering::Greater,
            (
                Node::App {
                    gen: g1,
                    body: b1,
                    size: s1,
                    ..
                },
                Node::App {
                    gen: g2,
                    body: b2,
                    size: s2,
                    ..
                },
            ) => s1.cmp(s2).then_with(|| g1.cmp(g2)).then_with(|| b1.cmp(b2)),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Term {
    /// The operad unit `e@k`.
    pub fn unit(dim: usize) -> Term {
        let mut h = DefaultHasher::new();
        (0u8, dim).hash(&mut h);
        Term {
            node: Arc::new(Node::Unit {
                dim,
                arity: Scheme::globe(dim),
            }),
            hash: h.finish(),
        }
    }

    /// Applies a generator to a body without checking it.
    pub(crate) fn app_unchecked(gen: Generator, body: Diagram<Term>) -> Term {
        let arity = evaluate(&Schemes, &body.map(|_, t| t.arity().clone())).expect("bodies of checked terms compose");
        let size = gen.size() + body.maximal_labels().iter().map(|(_, t)| t.size()).sum::<usize>();
        let mut h = DefaultHasher::new();
        1u8.hash(&mut h);
        gen.hash(&mut h);
        body.hash(&mut h);
        Term {
            node: Arc::new(Node::App {
                gen,
                body,
                arity,
                size,
                src: OnceLock::new(),
                tgt: OnceLock::new(),
            }),
            hash: h.finish(),
        }
    }

    /// Applies a generator to a body of matching shape and compatible labels.
    pub fn app(gen: Generator, body: Diagram<Term>) -> Result<Term> {
        if body.shape() != gen.arity {
            return Err(Error::ShapeMismatch {
                expected: gen.arity.to_string(),
                found: body.shape().to_string(),
            });
        }
        check_body(&body)?;
        Ok(Term::app_unchecked(gen, body))
    }

    pub fn dim(&self) -> usize {
        match &*self.node {
            Node::Unit { dim, .. } => *dim,
            Node::App { gen, .. } => gen.dim(),
        }
    }

    pub fn arity(&self) -> &Scheme {
        match &*self.node {
            Node::Unit { arity, .. } | Node::App { arity, .. } => arity,
        }
    }

    /// Number of constructors: units count one, an application counts one
    /// plus its pair plus the labels at maximal positions of its body.
    pub fn size(&self) -> usize {
        match &*self.node {
            Node::Unit { .. } => 1,
            Node::App { size, .. } => *size,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(&*self.node, Node::Unit { .. })
    }

    pub fn generator(&self) -> Option<&Generator> {
        match &*self.node {
            Node::Unit { .. } => None,
            Node::App { gen, .. } => Some(gen),
        }
    }

    pub fn body(&self) -> Option<&Diagram<Term>> {
        match &*self.node {
            Node::Unit { .. } => None,
            Node::App { body, .. } => Some(body),
        }
    }

    /// True for a generator applied to its unit body.
    pub fn is_generator(&self) -> bool {
        match &*self.node {
            Node::Unit { .. } => false,
            Node::App { gen, body, .. } => {
                body.labels().iter().all(|(d, t)| t.is_unit() && t.dim() == *d) && body.shape() == gen.arity
            }
        }
    }

    fn boundary_term(&self, side: Side) -> Result<Term> {
        match &*self.node {
            Node::Unit { dim: 0, .. } => Err(Error::NoBoundary("e@0".into())),
            Node::Unit { dim, .. } => Ok(Term::unit(dim - 1)),
            Node::App {
                gen, body, src, tgt, ..
            } => {
                let Some((p, q)) = &gen.pair else {
                    return Err(Error::NoBoundary(self.to_string()));
                };
                let (cache, head) = match side {
                    Side::Source => (src, p),
                    Side::Target => (tgt, q),
                };
                Ok(cache
                    .get_or_init(|| {
                        let b = body.boundary(side).expect("positive dimension");
                        compose_unchecked(head, &b)
                    })
                    .clone())
            }
        }
    }

    pub fn src(&self) -> Result<Term> {
        self.boundary_term(Side::Source)
    }

    pub fn tgt(&self) -> Result<Term> {
        self.boundary_term(Side::Target)
    }

    /// Iterated source or target down to dimension `to`.
    pub fn boundary_to(&self, to: usize, side: Side) -> Term {
        let mut t = self.clone();
        while t.dim() > to {
            t = t.boundary_term(side).expect("positive dimension");
        }
        t
    }

    /// The raw tree that normalizes back to this term.
    pub fn to_raw(&self) -> RawTerm {
        match &*self.node {
            Node::Unit { dim, .. } => RawTerm::Unit(*dim),
            Node::App { gen, body, .. } => {
                let head = RawTerm::Kappa {
                    pair: gen.pair.as_ref().map(|(p, q)| Box::new((p.to_raw(), q.to_raw()))),
                    arity: gen.arity.clone(),
                };
                if self.is_generator() {
                    head
                } else {
                    RawTerm::Comp {
                        head: Box::new(head),
                        body: Box::new(body.map(|_, t| t.to_raw())),
                    }
                }
            }
        }
    }
}

pub(crate) fn check_body(body: &Diagram<Term>) -> Result<()> {
    check_diagram(&Terms, body).map_err(|e| match e {
        Error::BoundaryMismatch(m) | Error::UnknownCell(m) => Error::BoundaryMismatch(m),
        other => other,
    })
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.node {
            Node::Unit { dim, .. } => write!(f, "e@{dim}"),
            Node::App { gen, body, .. } => {
                if self.is_generator() {
                    return write!(f, "{gen}");
                }
                write!(f, "comp({gen}, {body})")
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pair {
            None => write!(f, "kappa({})", self.arity),
            Some((p, q)) => write!(f, "kappa({p}, {q}, {})", self.arity),
        }
    }
}

/// The universe of all terms, as a globular cell provider.
#[derive(Clone, Copy, Debug, Default)]
pub struct Terms;

impl CellProvider for Terms {
    type Cell = Term;

    fn contains(&self, dim: usize, cell: &Term) -> bool {
        cell.dim() == dim
    }

    fn source(&self, _dim: usize, cell: &Term) -> Term {
        cell.src().expect("positive dimension")
    }

    fn target(&self, _dim: usize, cell: &Term) -> Term {
        cell.tgt().expect("positive dimension")
    }

    fn describe(&self, _dim: usize, cell: &Term) -> String {
        cell.to_string()
    }
}

/// The contraction cell of dimension `k` on a parallel pair with the given
/// arity. In dimension 0 there is no pair and the arity is `*`.
pub fn kappa(n: Truncation, k: usize, pair: Option<(Term, Term)>, arity: Scheme) -> Result<Term> {
    n.check(k)?;
    if arity.dim() != k {
        return Err(Error::ArityMismatch(format!("{arity} is not {k}-dimensional")));
    }
    match (k, &pair) {
        (0, None) => {}
        (0, Some(_)) => {
            return Err(Error::ArityMismatch(
                "0-dimensional contraction cells take no pair".into(),
            ))
        }
        (_, None) => {
            return Err(Error::ArityMismatch(format!(
                "a {k}-dimensional contraction cell needs a pair"
            )))
        }
        (_, Some((p, q))) => {
            if p.dim() + 1 != k || q.dim() + 1 != k {
                return Err(Error::NotParallel(format!(
                    "{p} and {q} must both be {}-dimensional",
                    k - 1
                )));
            }
            if k >= 2 && (p.src()? != q.src()? || p.tgt()? != q.tgt()?) {
                return Err(Error::NotParallel(format!("{p} and {q}")));
            }
            let b = arity.boundary()?;
            if p.arity() != &b || q.arity() != &b {
                return Err(Error::ArityMismatch(format!(
                    "{p} and {q} must both have arity {b}, the boundary of {arity}"
                )));
            }
        }
    }
    let gen = Generator { arity, pair };
    let body = gen.unit_body();
    Ok(Term::app_unchecked(gen, body))
}

/// `K₀`, the 0-dimensional contraction cell.
pub fn kappa0() -> Term {
    kappa(Truncation::new(0), 0, None, Scheme::point()).expect("always well formed")
}

/// The identity cell `i_k = kappa(e, e, 0_k)`.
pub fn identity_cell(n: Truncation, k: usize) -> Result<Term> {
    let z = zero(n, k)?;
    kappa(n, k, Some((Term::unit(k - 1), Term::unit(k - 1))), z)
}

/// The binary composition cell `kappa(e, e, 2_k)`.
pub fn binary_cell(n: Truncation, k: usize) -> Result<Term> {
    let t = two(n, k)?;
    kappa(n, k, Some((Term::unit(k - 1), Term::unit(k - 1))), t)
}

/// Operadic composition: plugs the labels of `body` into `head`.
pub fn compose(head: &Term, body: &Diagram<Term>) -> Result<Term> {
    body.check_structure()?;
    if head.dim() != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: head.dim(),
            found: body.dim(),
        });
    }
    if &body.shape() != head.arity() {
        return Err(Error::ShapeMismatch {
            expected: head.arity().to_string(),
            found: body.shape().to_string(),
        });
    }
    check_body(body)?;
    Ok(compose_unchecked(head, body))
}

fn compose_unchecked(head: &Term, body: &Diagram<Term>) -> Term {
    match &*head.node {
        Node::Unit { .. } => body.top_label().expect("unit bodies are globes").clone(),
        Node::App { gen, body: inner, .. } => {
            let arities = inner.map(|_, t| t.arity().clone());
            let pieces = unflatten(&arities, body).expect("shapes were checked");
            let new_body = inner
                .zip_with(&pieces, |_, t, piece| Ok(compose_unchecked(t, piece)))
                .expect("unflatten preserves shape");
            Term::app_unchecked(gen.clone(), new_body)
        }
    }
}

/// Decidable equality of cells.
pub fn equal_terms(a: &Term, b: &Term) -> bool {
    a == b
}

/// An unnormalized term tree, as written by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawTerm {
    Unit(usize),
    Kappa {
        pair: Option<Box<(RawTerm, RawTerm)>>,
        arity: Scheme,
    },
    Comp {
        head: Box<RawTerm>,
        body: Box<Diagram<RawTerm>>,
    },
    /// An already normal term, e.g. a named reference.
    Normal(Term),
}

/// Evaluates a raw tree into its normal form, checking every side condition.
pub fn normalize(n: Truncation, t: &RawTerm) -> Result<Term> {
    match t {
        RawTerm::Unit(k) => {
            n.check(*k)?;
            Ok(Term::unit(*k))
        }
        RawTerm::Kappa { pair, arity } => {
            let pair = match pair {
                None => None,
                Some(b) => Some((normalize(n, &b.0)?, normalize(n, &b.1)?)),
            };
            kappa(n, arity.dim(), pair, arity.clone())
        }
        RawTerm::Comp { head, body } => {
            let h = normalize(n, head)?;
            let b = body.try_map(|_, r| normalize(n, r))?;
            compose(&h, &b)
        }
        RawTerm::Normal(t) => {
            n.check(t.dim())?;
            Ok(t.clone())
        }
    }
}

/// An operad with contraction that terms can be interpreted in.
pub trait OperadTarget {
    type Cell: Clone;

    fn unit(&self, k: usize) -> Result<Self::Cell>;
    fn contraction(&self, k: usize, pair: Option<(&Self::Cell, &Self::Cell)>, arity: &Scheme) -> Result<Self::Cell>;
    fn multiply(&self, head: &Self::Cell, body: &Diagram<Self::Cell>) -> Result<Self::Cell>;
}

/// The image of `t` under the unique structure-preserving map into `target`.
pub fn interpret<T: OperadTarget>(t: &Term, target: &T) -> Result<T::Cell> {
    match &*t.node {
        Node::Unit { dim, .. } => target.unit(*dim),
        Node::App { gen, body, .. } => {
            let pair = match &gen.pair {
                None => None,
                Some((p, q)) => Some((interpret(p, target)?, interpret(q, target)?)),
            };
            let head = target.contraction(gen.dim(), pair.as_ref().map(|(a, b)| (a, b)), &gen.arity)?;
            let b = body.try_map(|_, l| interpret(l, target))?;
            target.multiply(&head, &b)
        }
    }
}

/// The terminal operad: every cell is its own arity.
#[derive(Clone, Copy, Debug, Default)]
pub struct TerminalOperad;

impl OperadTarget for TerminalOperad {
    type Cell = Scheme;

    fn unit(&self, k: usize) -> Result<Scheme> {
        Ok(Scheme::globe(k))
    }

    fn contraction(&self, _k: usize, _pair: Option<(&Scheme, &Scheme)>, arity: &Scheme) -> Result<Scheme> {
        Ok(arity.clone())
    }

    fn multiply(&self, head: &Scheme, body: &Diagram<Scheme>) -> Result<Scheme> {
        if &body.shape() != head {
            return Err(Error::ShapeMismatch {
                expected: head.to_string(),
                found: body.shape().to_string(),
            });
        }
        evaluate(&Schemes, body)
    }
}

/// The term calculus itself as a target; interpretation is the identity.
#[derive(Clone, Copy, Debug)]
pub struct FreeTarget(pub Truncation);

impl OperadTarget for FreeTarget {
    type Cell = Term;

    fn unit(&self, k: usize) -> Result<Term> {
        Ok(Term::unit(k))
    }

    fn contraction(&self, k: usize, pair: Option<(&Term, &Term)>, arity: &Scheme) -> Result<Term> {
        kappa(self.0, k, pair.map(|(p, q)| (p.clone(), q.clone())), arity.clone())
    }

    fn multiply(&self, head: &Term, body: &Diagram<Term>) -> Result<Term> {
        compose(head, body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pasting::{globe, one};

    fn n() -> Truncation {
        Truncation::DEFAULT
    }

    fn pt() -> Scheme {
        Scheme::point()
    }

    fn e(k: usize) -> Term {
        Term::unit(k)
    }

    #[test]
    fn unit_arity_is_globe() {
        assert_eq!(e(2).arity(), &one(n(), 2).unwrap());
        assert_eq!(e(3).src().unwrap(), e(2));
        assert!(e(0).src().is_err());
    }

    #[test]
    fn binary_cell_boundaries() {
        let m1 = binary_cell(n(), 1).unwrap();
        assert_eq!(m1.arity(), &Scheme::list(1, vec![pt(), pt()]).unwrap());
        assert_eq!(m1.src().unwrap(), e(0));
        assert_eq!(m1.tgt().unwrap(), e(0));
        assert_eq!(m1.size(), 5);
        assert_eq!(kappa0().size(), 2);
        assert_eq!(identity_cell(n(), 1).unwrap().size(), 4);
    }

    #[test]
    fn arity_of_composite_is_substitution() {
        let m1 = binary_cell(n(), 1).unwrap();
        let body = Diagram::path(
            1,
            vec![e(0), e(0), e(0)],
            vec![Diagram::Cell(m1.clone()), Diagram::Cell(e(1))],
        )
        .unwrap();
        let t = compose(&m1, &body).unwrap();
        assert_eq!(t.arity(), &Scheme::list(1, vec![pt(), pt(), pt()]).unwrap());
    }

    #[test]
    fn kappa_side_conditions() {
        let err = kappa(n(), 1, Some((e(0), e(0))), Scheme::globe(2)).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch(_)));
        let err = kappa(n(), 1, Some((e(0), e(1))), two(n(), 1).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotParallel(_)));
        let i1 = identity_cell(n(), 1).unwrap();
        let m1 = binary_cell(n(), 1).unwrap();
        let err = kappa(n(), 2, Some((i1, m1)), Scheme::list(2, vec![]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch(_)));
        assert!(matches!(
            kappa(Truncation::new(1), 2, Some((e(1), e(1))), Scheme::globe(2)),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    #[test]
    fn associator_flanks_are_parallel() {
        let m1 = binary_cell(n(), 1).unwrap();
        let left = Diagram::path(
            1,
            vec![e(0), e(0), e(0)],
            vec![Diagram::Cell(m1.clone()), Diagram::Cell(e(1))],
        )
        .unwrap();
        let right = Diagram::path(
            1,
            vec![e(0), e(0), e(0)],
            vec![Diagram::Cell(e(1)), Diagram::Cell(m1.clone())],
        )
        .unwrap();
        let a = compose(&m1, &left).unwrap();
        let b = compose(&m1, &right).unwrap();
        assert_ne!(a, b);
        let three = Scheme::list(1, vec![pt(), pt(), pt()]).unwrap();
        let assoc = kappa(
            n(),
            2,
            Some((a.clone(), b.clone())),
            Scheme::list(2, vec![three]).unwrap(),
        );
        assert!(assoc.is_err());
        let pi = Scheme::list(2, vec![Scheme::list(1, vec![pt()]).unwrap(); 3]).unwrap();
        let assoc = kappa(n(), 2, Some((a.clone(), b.clone())), pi).unwrap();
        assert_eq!(assoc.src().unwrap(), a);
        assert_eq!(assoc.tgt().unwrap(), b);
    }

    #[test]
    fn unit_laws() {
        let i1 = identity_cell(n(), 1).unwrap();
        assert_eq!(compose(&e(1), &globe(&Terms, 1, &i1).unwrap()).unwrap(), i1);
        let m1 = binary_cell(n(), 1).unwrap();
        let units = m1.arity().fill(&Term::unit);
        assert_eq!(compose(&m1, &units).unwrap(), m1);
    }

    #[test]
    fn normalize_round_trips() {
        let m1 = binary_cell(n(), 1).unwrap();
        let body = Diagram::path(
            1,
            vec![e(0), e(0), e(0)],
            vec![Diagram::Cell(m1.clone()), Diagram::Cell(e(1))],
        )
        .unwrap();
        let t = compose(&m1, &body).unwrap();
        assert_eq!(normalize(n(), &t.to_raw()).unwrap(), t);
        let raw = RawTerm::Comp {
            head: Box::new(RawTerm::Unit(1)),
            body: Box::new(
                globe(&Terms, 1, &identity_cell(n(), 1).unwrap())
                    .unwrap()
                    .map(|_, t| t.to_raw()),
            ),
        };
        assert_eq!(normalize(n(), &raw).unwrap(), identity_cell(n(), 1).unwrap());
    }

    #[test]
    fn dimension_zero_words() {
        let k0 = kappa0();
        let kk = compose(&k0, &Diagram::Cell(k0.clone())).unwrap();
        assert_ne!(kk, k0);
        assert_eq!(kk.size(), 3);
        assert_eq!(kk.to_string(), "comp(kappa(*), kappa(*))");
    }

    #[test]
    fn terminal_interpretation_is_arity() {
        let m1 = binary_cell(n(), 1).unwrap();
        let body = Diagram::path(
            1,
            vec![e(0), e(0), e(0)],
            vec![Diagram::Cell(m1.clone()), Diagram::Cell(e(1))],
        )
        .unwrap();
        let t = compose(&m1, &body).unwrap();
        assert_eq!(&interpret(&t, &TerminalOperad).unwrap(), t.arity());
        assert_eq!(interpret(&t, &FreeTarget(n())).unwrap(), t);
    }
}
