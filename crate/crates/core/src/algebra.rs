//! Algebras for the term calculus: strict ω-categories with their canonical
//! action, hom algebras, and strict functors acting on homs.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::globset::{GlobMorphism, GlobSet, Hom};
use crate::lterm::{Term, TermEnumerator};
use crate::pasting::{
    check_diagram, diagrams_of_shape, evaluate, globe, unflatten, Diagram, Scheme, Side, StrictCategory,
};
use crate::suspension::{suspend_diagram, suspend_term};
use crate::{Error, Report, Result, Truncation};

/// A globular set with an action of the term calculus.
pub trait Algebra {
    fn carrier(&self) -> &Arc<GlobSet>;

    /// The output cell of `t` on a diagram of shape `arity(t)`.
    fn eval(&self, t: &Term, d: &Diagram<usize>) -> Result<usize>;

    fn truncation(&self) -> Truncation {
        Truncation::new(self.carrier().max_dim())
    }
}

impl<A: Algebra + ?Sized> Algebra for Arc<A> {
    fn carrier(&self) -> &Arc<GlobSet> {
        (**self).carrier()
    }

    fn eval(&self, t: &Term, d: &Diagram<usize>) -> Result<usize> {
        (**self).eval(t, d)
    }
}

impl<A: Algebra + ?Sized> Algebra for &A {
    fn carrier(&self) -> &Arc<GlobSet> {
        (**self).carrier()
    }

    fn eval(&self, t: &Term, d: &Diagram<usize>) -> Result<usize> {
        (**self).eval(t, d)
    }
}

/// Key of a composition table entry: `g ∘_along f` for `dim`-cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompKey {
    pub along: usize,
    pub dim: usize,
    pub g: usize,
    pub f: usize,
}

/// A finitely presented strict ω-category: a carrier with composition and
/// identity tables.
#[derive(Clone, Debug)]
pub struct StrictCat {
    carrier: Arc<GlobSet>,
    comp: HashMap<CompKey, usize>,
    ident: HashMap<(usize, usize), usize>,
}

impl StrictCat {
    pub fn new(carrier: Arc<GlobSet>, comp: HashMap<CompKey, usize>, ident: HashMap<(usize, usize), usize>) -> Self {
        StrictCat { carrier, comp, ident }
    }

    pub fn builder(carrier: Arc<GlobSet>) -> StrictCatBuilder {
        StrictCatBuilder {
            carrier,
            comps: Vec::new(),
            idents: Vec::new(),
        }
    }

    pub fn carrier(&self) -> &Arc<GlobSet> {
        &self.carrier
    }

    pub fn comp(&self, along: usize, dim: usize, g: usize, f: usize) -> Option<usize> {
        self.comp.get(&CompKey { along, dim, g, f }).copied()
    }

    pub fn ident(&self, dim: usize, x: usize) -> Option<usize> {
        self.ident.get(&(dim, x)).copied()
    }

    /// Composition table entries in a deterministic order.
    pub fn comp_entries(&self) -> Vec<(CompKey, usize)> {
        let g = &self.carrier;
        let mut v: Vec<(CompKey, usize)> = self.comp.iter().map(|(k, v)| (*k, *v)).collect();
        v.sort_by(|(a, _), (b, _)| {
            (a.along, a.dim, g.name(a.dim, a.g), g.name(a.dim, a.f)).cmp(&(
                b.along,
                b.dim,
                g.name(b.dim, b.g),
                g.name(b.dim, b.f),
            ))
        });
        v
    }

    /// Identity table entries in a deterministic order.
    pub fn ident_entries(&self) -> Vec<((usize, usize), usize)> {
        let g = &self.carrier;
        let mut v: Vec<((usize, usize), usize)> = self.ident.iter().map(|(k, v)| (*k, *v)).collect();
        v.sort_by(|((d1, x1), _), ((d2, x2), _)| (d1, g.name(*d1, *x1)).cmp(&(d2, g.name(*d2, *x2))));
        v
    }

    /// Replaces one composition entry (for mutation tests and fixtures).
    pub fn set_comp(&mut self, key: CompKey, value: usize) {
        self.comp.insert(key, value);
    }

    pub fn set_ident(&mut self, dim: usize, x: usize, value: usize) {
        self.ident.insert((dim, x), value);
    }

    fn name(&self, dim: usize, c: usize) -> &str {
        self.carrier.name(dim, c)
    }

    /// Iterated identity of a `dim`-cell up to dimension `to`.
    pub fn ident_to(&self, dim: usize, x: usize, to: usize) -> Option<usize> {
        let mut c = x;
        for d in dim..to {
            c = self.ident(d, c)?;
        }
        Some(c)
    }

    /// True iff `t_along f = s_along g`.
    pub fn composable(&self, along: usize, dim: usize, g: usize, f: usize) -> bool {
        self.carrier.boundary_at(dim, f, along, false) == self.carrier.boundary_at(dim, g, along, true)
    }
}

/// Collects composition and identity entries by cell name.
#[derive(Clone, Debug)]
pub struct StrictCatBuilder {
    carrier: Arc<GlobSet>,
    comps: Vec<(usize, String, String, String)>,
    idents: Vec<(String, String)>,
}

impl StrictCatBuilder {
    pub fn comp(&mut self, along: usize, g: &str, f: &str, h: &str) -> &mut Self {
        self.comps.push((along, g.into(), f.into(), h.into()));
        self
    }

    pub fn ident(&mut self, x: &str, ix: &str) -> &mut Self {
        self.idents.push((x.into(), ix.into()));
        self
    }

    pub fn build(&self) -> std::result::Result<StrictCat, Report> {
        let g = &self.carrier;
        let mut report = Report::new();
        let mut comp = HashMap::new();
        let mut ident = HashMap::new();
        let find = |name: &str, report: &mut Report| {
            let r = g.find_any(name);
            if r.is_none() {
                report.push("unknown cell", format!("{name} is not a cell"));
            }
            r
        };
        for (along, gn, fn_, hn) in &self.comps {
            let (Some(a), Some(b), Some(c)) = (find(gn, &mut report), find(fn_, &mut report), find(hn, &mut report))
            else {
                continue;
            };
            if a.dim != b.dim || a.dim != c.dim || *along >= a.dim {
                report.push("table", format!("comp{along} ({gn}, {fn_}) = {hn} mixes dimensions"));
                continue;
            }
            let key = CompKey {
                along: *along,
                dim: a.dim,
                g: a.id,
                f: b.id,
            };
            if comp.insert(key, c.id).is_some() {
                report.push("table", format!("comp{along} ({gn}, {fn_}) given twice"));
            }
        }
        for (xn, ixn) in &self.idents {
            let (Some(x), Some(ix)) = (find(xn, &mut report), find(ixn, &mut report)) else {
                continue;
            };
            if x.dim + 1 != ix.dim {
                report.push("table", format!("id({xn}) = {ixn} must raise dimension by one"));
                continue;
            }
            if ident.insert((x.dim, x.id), ix.id).is_some() {
                report.push("table", format!("id({xn}) given twice"));
            }
        }
        if report.is_ok() {
            Ok(StrictCat::new(self.carrier.clone(), comp, ident))
        } else {
            Err(report)
        }
    }
}

/// Exhaustive audit of a finite strict ω-category presentation. Reports the
/// first failure of each family of laws.
pub fn validate_strict_cat(c: &StrictCat) -> Report {
    let g = c.carrier.clone();
    let top = g.max_dim();
    let mut report = g.validate();
    let cells = |d: usize| 0..g.count(d);

    // totality and boundaries of identities
    for d in 0..top {
        for x in cells(d) {
            report.count_check();
            match c.ident(d, x) {
                None => report.push_first("totality", format!("id({}) is missing", c.name(d, x))),
                Some(ix) => {
                    if g.src(d + 1, ix) != x || g.tgt(d + 1, ix) != x {
                        report.push_first(
                            "boundary",
                            format!("id({}) = {} has the wrong boundary", c.name(d, x), c.name(d + 1, ix)),
                        );
                    }
                }
            }
        }
    }
    // totality and boundaries of composites
    for k in 1..=top {
        for j in 0..k {
            for f in cells(k) {
                for gg in cells(k) {
                    if !c.composable(j, k, gg, f) {
                        if c.comp(j, k, gg, f).is_some() {
                            report.push_first(
                                "boundary",
                                format!(
                                    "comp{j} ({}, {}) is defined on a non-composable pair",
                                    c.name(k, gg),
                                    c.name(k, f)
                                ),
                            );
                        }
                        continue;
                    }
                    report.count_check();
                    let Some(h) = c.comp(j, k, gg, f) else {
                        report.push_first(
                            "totality",
                            format!("comp{j} ({}, {}) is missing", c.name(k, gg), c.name(k, f)),
                        );
                        continue;
                    };
                    let expected = if j + 1 == k {
                        Some((g.src(k, f), g.tgt(k, gg)))
                    } else {
                        c.comp(j, k - 1, g.src(k, gg), g.src(k, f))
                            .zip(c.comp(j, k - 1, g.tgt(k, gg), g.tgt(k, f)))
                    };
                    if expected != Some((g.src(k, h), g.tgt(k, h))) {
                        report.push_first(
                            "boundary",
                            format!(
                                "comp{j} ({}, {}) = {} has the wrong boundary",
                                c.name(k, gg),
                                c.name(k, f),
                                c.name(k, h)
                            ),
                        );
                    }
                }
            }
        }
    }
    if report.has_family("totality") || report.has_family("boundary") || report.has_family("globularity") {
        return report;
    }
    // unit laws and functoriality of identities
    for k in 1..=top {
        for j in 0..k {
            for f in cells(k) {
                report.count_check();
                let left = c
                    .ident_to(j, g.boundary_at(k, f, j, false), k)
                    .and_then(|e| c.comp(j, k, e, f));
                let right = c
                    .ident_to(j, g.boundary_at(k, f, j, true), k)
                    .and_then(|e| c.comp(j, k, f, e));
                if left != Some(f) || right != Some(f) {
                    report.push_first(
                        "unit",
                        format!("identities along {j} do not act trivially on {}", c.name(k, f)),
                    );
                }
                if k < top {
                    for gg in cells(k) {
                        if !c.composable(j, k, gg, f) {
                            continue;
                        }
                        let lhs = c.comp(j, k, gg, f).and_then(|h| c.ident(k, h));
                        let rhs = c
                            .ident(k, gg)
                            .zip(c.ident(k, f))
                            .and_then(|(a, b)| c.comp(j, k + 1, a, b));
                        if lhs != rhs {
                            report.push_first(
                                "unit",
                                format!("id does not preserve comp{j} ({}, {})", c.name(k, gg), c.name(k, f)),
                            );
                        }
                    }
                }
            }
        }
    }
    // associativity
    for k in 1..=top {
        for j in 0..k {
            for f in cells(k) {
                for gg in cells(k) {
                    if !c.composable(j, k, gg, f) {
                        continue;
                    }
                    for h in cells(k) {
                        if !c.composable(j, k, h, gg) {
                            continue;
                        }
                        report.count_check();
                        let lhs = c.comp(j, k, h, gg).and_then(|hg| c.comp(j, k, hg, f));
                        let rhs = c.comp(j, k, gg, f).and_then(|gf| c.comp(j, k, h, gf));
                        if lhs != rhs {
                            report.push_first(
                                "associativity",
                                format!(
                                    "comp{j} is not associative on ({}, {}, {})",
                                    c.name(k, h),
                                    c.name(k, gg),
                                    c.name(k, f)
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    // interchange: (δ ∘_i β) ∘_j (γ ∘_i α) = (δ ∘_j γ) ∘_i (β ∘_j α) for i > j
    for k in 2..=top {
        for j in 0..k {
            for i in j + 1..k {
                for alpha in cells(k) {
                    for beta in cells(k) {
                        if !c.composable(j, k, beta, alpha) {
                            continue;
                        }
                        for gamma in cells(k) {
                            if !c.composable(i, k, gamma, alpha) {
                                continue;
                            }
                            for delta in cells(k) {
                                if !c.composable(i, k, delta, beta) || !c.composable(j, k, delta, gamma) {
                                    continue;
                                }
                                report.count_check();
                                let lhs = c
                                    .comp(i, k, delta, beta)
                                    .zip(c.comp(i, k, gamma, alpha))
                                    .and_then(|(db, ga)| c.comp(j, k, db, ga));
                                let rhs = c
                                    .comp(j, k, delta, gamma)
                                    .zip(c.comp(j, k, beta, alpha))
                                    .and_then(|(dg, ba)| c.comp(i, k, dg, ba));
                                if lhs != rhs {
                                    report.push_first(
                                        "interchange",
                                        format!(
                                            "comp{i} and comp{j} do not interchange on ({}, {}, {}, {})",
                                            c.name(k, alpha),
                                            c.name(k, beta),
                                            c.name(k, gamma),
                                            c.name(k, delta)
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

impl StrictCategory for StrictCat {
    type Cell = usize;

    fn compose(&self, along: usize, dim: usize, g: &usize, f: &usize) -> Result<usize> {
        self.comp(along, dim, *g, *f).ok_or_else(|| {
            Error::MissingTableEntry(format!(
                "comp{along} ({}, {})",
                self.carrier.describe_cell(dim, *g),
                self.carrier.describe_cell(dim, *f)
            ))
        })
    }

    fn identity(&self, dim: usize, x: &usize) -> Result<usize> {
        self.ident(dim, *x)
            .ok_or_else(|| Error::MissingTableEntry(format!("id({})", self.carrier.describe_cell(dim, *x))))
    }
}

/// Evaluates a diagram by strict composition.
pub fn strict_eval(c: &StrictCat, d: &Diagram<usize>) -> Result<usize> {
    evaluate(c, d)
}

/// A strict ω-category acting through arities.
#[derive(Clone, Debug)]
pub struct CanonicalAction {
    pub cat: Arc<StrictCat>,
}

impl CanonicalAction {
    pub fn new(cat: Arc<StrictCat>) -> Self {
        CanonicalAction { cat }
    }
}

impl Algebra for CanonicalAction {
    fn carrier(&self) -> &Arc<GlobSet> {
        &self.cat.carrier
    }

    fn eval(&self, t: &Term, d: &Diagram<usize>) -> Result<usize> {
        if &d.shape() != t.arity() {
            return Err(Error::ShapeMismatch {
                expected: t.arity().to_string(),
                found: d.shape().to_string(),
            });
        }
        strict_eval(&self.cat, d)
    }
}

/// The strict hom category `C(x, y)`: composition along `j` is composition
/// along `j + 1` in `C`.
pub fn hom_strict_cat(c: &StrictCat, x: usize, y: usize) -> Result<(StrictCat, Hom)> {
    let hom = Hom::new(&c.carrier, x, y)?;
    let mut comp = HashMap::new();
    let mut ident = HashMap::new();
    let h = &hom.set;
    for k in 0..=h.max_dim() {
        for a in 0..h.count(k) {
            if k < h.max_dim() {
                if let Some(ia) = c.ident(k + 1, hom.lift(k, a)) {
                    if let Some(l) = hom.lower(k + 1, ia) {
                        ident.insert((k, a), l);
                    }
                }
            }
            for b in 0..h.count(k) {
                for j in 0..k {
                    if let Some(v) = c.comp(j + 1, k + 1, hom.lift(k, a), hom.lift(k, b)) {
                        if let Some(l) = hom.lower(k, v) {
                            comp.insert(
                                CompKey {
                                    along: j,
                                    dim: k,
                                    g: a,
                                    f: b,
                                },
                                l,
                            );
                        }
                    }
                }
            }
        }
    }
    Ok((StrictCat::new(h.clone(), comp, ident), hom))
}

/// The hom algebra `A(x, y)`: a term acts by its suspension on the suspended
/// diagram.
#[derive(Clone)]
pub struct HomAlgebra {
    base: Arc<dyn Algebra + Send + Sync>,
    hom: Hom,
}

impl HomAlgebra {
    pub fn new(base: Arc<dyn Algebra + Send + Sync>, x: usize, y: usize) -> Result<Self> {
        let hom = Hom::new(base.carrier(), x, y)?;
        Ok(HomAlgebra { base, hom })
    }

    pub fn hom(&self) -> &Hom {
        &self.hom
    }

    /// The ambient diagram `<x | d | y>` of a hom diagram.
    pub fn suspend(&self, d: &Diagram<usize>) -> Result<Diagram<usize>> {
        let lifted = d.map(|depth, &c| self.hom.lift(depth, c));
        suspend_diagram(self.base.truncation(), lifted, self.hom.x, self.hom.y)
    }
}

impl Algebra for HomAlgebra {
    fn carrier(&self) -> &Arc<GlobSet> {
        &self.hom.set
    }

    fn eval(&self, t: &Term, d: &Diagram<usize>) -> Result<usize> {
        let n = self.base.truncation();
        let st = suspend_term(n, t)?;
        let sd = self.suspend(d)?;
        let out = self.base.eval(&st, &sd)?;
        self.hom.lower(t.dim(), out).ok_or_else(|| {
            Error::BoundaryMismatch(format!(
                "{} does not lie in the hom",
                self.base.carrier().name(t.dim() + 1, out)
            ))
        })
    }
}

/// Every hom algebra of `a`, keyed by pairs of objects in index order.
pub fn hom_graph(a: Arc<dyn Algebra + Send + Sync>) -> Result<BTreeMap<(usize, usize), HomAlgebra>> {
    let objs = a.carrier().count(0);
    let mut out = BTreeMap::new();
    for x in 0..objs {
        for y in 0..objs {
            out.insert((x, y), HomAlgebra::new(a.clone(), x, y)?);
        }
    }
    Ok(out)
}

/// A morphism of carriers that preserves composition and identities.
#[derive(Clone, Debug)]
pub struct StrictFunctor {
    pub dom: Arc<StrictCat>,
    pub cod: Arc<StrictCat>,
    pub map: GlobMorphism,
}

impl StrictFunctor {
    pub fn new(dom: Arc<StrictCat>, cod: Arc<StrictCat>, map: GlobMorphism) -> std::result::Result<Self, Report> {
        let f = StrictFunctor { dom, cod, map };
        let report = f.validate();
        if report.is_ok() {
            Ok(f)
        } else {
            Err(report)
        }
    }

    pub fn validate(&self) -> Report {
        let mut report = self.map.validate();
        let (c, d, m) = (&self.dom, &self.cod, &self.map);
        for (key, h) in c.comp_entries() {
            report.count_check();
            let image = d.comp(key.along, key.dim, m.apply(key.dim, key.g), m.apply(key.dim, key.f));
            if image != Some(m.apply(key.dim, h)) {
                report.push_first(
                    "composition",
                    format!(
                        "comp{} ({}, {}) is not preserved",
                        key.along,
                        c.name(key.dim, key.g),
                        c.name(key.dim, key.f)
                    ),
                );
            }
        }
        for ((dim, x), ix) in c.ident_entries() {
            report.count_check();
            if d.ident(dim, m.apply(dim, x)) != Some(m.apply(dim + 1, ix)) {
                report.push_first("identity", format!("id({}) is not preserved", c.name(dim, x)));
            }
        }
        report
    }
}

/// The restriction of a strict functor to the hom between `x` and `y`.
pub fn strict_functor_hom(f: &StrictFunctor, x: usize, y: usize) -> Result<(Hom, Hom, GlobMorphism)> {
    let hd = Hom::new(f.dom.carrier(), x, y)?;
    let hc = Hom::new(f.cod.carrier(), f.map.apply(0, x), f.map.apply(0, y))?;
    let mut maps = Vec::new();
    for k in 0..=hd.set.max_dim() {
        let mut m = Vec::new();
        for c in 0..hd.set.count(k) {
            let image = f.map.apply(k + 1, hd.lift(k, c));
            m.push(
                hc.lower(k, image)
                    .ok_or_else(|| Error::Invalid("functor leaves the hom".into()))?,
            );
        }
        maps.push(m);
    }
    let g = GlobMorphism::new(hd.set.clone(), hc.set.clone(), maps).map_err(|r| Error::Invalid(r.to_string()))?;
    Ok((hd, hc, g))
}

/// Diagrams of every arity appearing among `terms`, within the length bound.
fn diagrams_by_arity(carrier: &GlobSet, terms: &[Term], max_len: usize) -> HashMap<Scheme, Vec<Diagram<usize>>> {
    let mut out: HashMap<Scheme, Vec<Diagram<usize>>> = HashMap::new();
    for t in terms {
        if t.arity().max_len() > max_len || out.contains_key(t.arity()) {
            continue;
        }
        out.insert(t.arity().clone(), diagrams_of_shape(carrier, t.arity()));
    }
    out
}

/// Checks the boundary, unit and multiplication laws of an algebra on every
/// term of size at most `term_bound` and every diagram whose paths have
/// length at most `diag_len`.
pub fn check_algebra_axioms(a: &dyn Algebra, term_bound: usize, diag_len: usize) -> Report {
    let g = a.carrier().clone();
    let n = a.truncation();
    let mut report = Report::new();
    let mut en = TermEnumerator::new(n);
    for k in 0..=g.max_dim() {
        for c in 0..g.count(k) {
            report.count_check();
            let d = globe(&*g, k, &c).expect("cell exists");
            match a.eval(&Term::unit(k), &d) {
                Ok(v) if v == c => {}
                Ok(v) => report.push_first("unit", format!("e@{k} sends {} to {}", g.name(k, c), g.name(k, v))),
                Err(e) => report.push_first("unit", format!("e@{k} on {}: {e}", g.name(k, c))),
            }
        }
        let terms = en.terms(k, term_bound);
        let diagrams = diagrams_by_arity(&g, &terms, diag_len);
        for t in &terms {
            let Some(ds) = diagrams.get(t.arity()) else {
                continue;
            };
            for d in ds {
                report.count_check();
                let out = match a.eval(t, d) {
                    Ok(v) => v,
                    Err(e) => {
                        report.push_first("totality", format!("{t} on {}: {e}", show(&g, d)));
                        continue;
                    }
                };
                if k >= 1 {
                    for side in [Side::Source, Side::Target] {
                        let (bt, bd) = match side {
                            Side::Source => (t.src(), d.boundary(Side::Source)),
                            Side::Target => (t.tgt(), d.boundary(Side::Target)),
                        };
                        let expected = a.eval(&bt.expect("dim >= 1"), &bd.expect("dim >= 1"));
                        let actual = match side {
                            Side::Source => g.src(k, out),
                            Side::Target => g.tgt(k, out),
                        };
                        if expected.as_ref().ok() != Some(&actual) {
                            report.push_first("boundary", format!("{t} on {}", show(&g, d)));
                        }
                    }
                }
                if let Some(violation) = multiplication_violation(a, t, d, out) {
                    report.push_first("multiplication", violation);
                }
            }
        }
    }
    report
}

/// Compares `eval(t, d)` with the evaluation of the generator of `t` on the
/// diagram of evaluated body pieces.
fn multiplication_violation(a: &dyn Algebra, t: &Term, d: &Diagram<usize>, out: usize) -> Option<String> {
    let (gen, body) = (t.generator()?, t.body()?);
    if t.is_generator() {
        return None;
    }
    let g = a.carrier();
    let head = Term::app_unchecked(gen.clone(), gen.unit_body());
    let arities = body.map(|_, l| l.arity().clone());
    let pieces = unflatten(&arities, d).ok()?;
    let inner = body.zip_with(&pieces, |_, l, piece| a.eval(l, piece));
    let expected = inner.and_then(|dd| {
        check_diagram(&**g, &dd)?;
        a.eval(&head, &dd)
    });
    match expected {
        Ok(v) if v == out => None,
        Ok(v) => Some(format!(
            "{t} on {} gives {} but the generator on the evaluated pieces gives {}",
            show(g, d),
            g.name(t.dim(), out),
            g.name(t.dim(), v)
        )),
        Err(e) => Some(format!("{t} on {}: {e}", show(g, d))),
    }
}

/// Renders a diagram with cell names.
pub fn show(g: &GlobSet, d: &Diagram<usize>) -> String {
    d.map(|depth, &c| g.describe_cell(depth, c)).to_string()
}

/// Compares the hom algebra of the canonical action of `c` with the
/// canonical action of the strict hom category, on every bounded pair.
pub fn compare_hom(c: Arc<StrictCat>, x: usize, y: usize, term_bound: usize, diag_len: usize) -> Result<Report> {
    let base: Arc<dyn Algebra + Send + Sync> = Arc::new(CanonicalAction::new(c.clone()));
    let via_terms = HomAlgebra::new(base, x, y)?;
    let (hc, _) = hom_strict_cat(&c, x, y)?;
    let direct = CanonicalAction::new(Arc::new(hc));
    Ok(compare_algebras(&via_terms, &direct, term_bound, diag_len))
}

/// Compares two algebras on the same carrier on every bounded pair.
pub fn compare_algebras(a: &dyn Algebra, b: &dyn Algebra, term_bound: usize, diag_len: usize) -> Report {
    let g = a.carrier().clone();
    let mut report = Report::new();
    if **a.carrier() != **b.carrier() {
        report.push("carrier", "the algebras have different carriers");
        return report;
    }
    let mut en = TermEnumerator::new(a.truncation());
    for k in 0..=g.max_dim() {
        let terms = en.terms(k, term_bound);
        let diagrams = diagrams_by_arity(&g, &terms, diag_len);
        for t in &terms {
            let Some(ds) = diagrams.get(t.arity()) else {
                continue;
            };
            for d in ds {
                report.count_check();
                let (l, r) = (a.eval(t, d), b.eval(t, d));
                if l != r {
                    report.push_first("agreement", format!("{t} on {}: {l:?} versus {r:?}", show(&g, d)));
                }
            }
        }
    }
    report
}

/// Checks that a strict functor restricted to a hom commutes with the hom
/// algebra evaluations.
pub fn check_functor_hom(f: &StrictFunctor, x: usize, y: usize, term_bound: usize, diag_len: usize) -> Result<Report> {
    let (hd, _, fm) = strict_functor_hom(f, x, y)?;
    let a = HomAlgebra::new(Arc::new(CanonicalAction::new(f.dom.clone())), x, y)?;
    let b = HomAlgebra::new(
        Arc::new(CanonicalAction::new(f.cod.clone())),
        f.map.apply(0, x),
        f.map.apply(0, y),
    )?;
    let g = hd.set.clone();
    let mut report = Report::new();
    let mut en = TermEnumerator::new(a.truncation());
    for k in 0..=g.max_dim() {
        let terms = en.terms(k, term_bound);
        let diagrams = diagrams_by_arity(&g, &terms, diag_len);
        for t in &terms {
            let Some(ds) = diagrams.get(t.arity()) else {
                continue;
            };
            for d in ds {
                report.count_check();
                let lhs = a.eval(t, d).map(|v| fm.apply(k, v));
                let rhs = b.eval(t, &d.map(|depth, &c| fm.apply(depth, c)));
                if lhs != rhs {
                    report.push_first("naturality", format!("{t} on {}", show(&g, d)));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{two_object_2cat, z2, z4, z4_to_z2};
    use crate::lterm::{binary_cell, identity_cell};

    fn n() -> Truncation {
        Truncation::DEFAULT
    }

    fn aa(g: &GlobSet) -> Diagram<usize> {
        let (star, a) = (g.find(0, "*").unwrap(), g.find(1, "a").unwrap());
        Diagram::path(1, vec![star, star, star], vec![Diagram::Cell(a), Diagram::Cell(a)]).unwrap()
    }

    #[test]
    fn z2_evaluates_a_twice_to_the_unit() {
        let c = z2();
        let g = c.carrier().clone();
        let d = aa(&g);
        assert_eq!(strict_eval(&c, &d).unwrap(), g.find(1, "1").unwrap());
        let act = CanonicalAction::new(Arc::new(c));
        assert_eq!(
            act.eval(&binary_cell(n(), 1).unwrap(), &d).unwrap(),
            g.find(1, "1").unwrap()
        );
        let err = act.eval(&identity_cell(n(), 1).unwrap(), &d).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }

    #[test]
    fn fixtures_satisfy_the_strict_laws() {
        for c in [z2(), z4(), two_object_2cat()] {
            let r = validate_strict_cat(&c);
            assert!(r.is_ok(), "{r}");
        }
        assert!(z4_to_z2().validate().is_ok());
    }

    #[test]
    fn corrupted_product_breaks_associativity() {
        let mut c = z4();
        let g = c.carrier().clone();
        let one = g.find(1, "1").unwrap();
        c.set_comp(
            CompKey {
                along: 0,
                dim: 1,
                g: one,
                f: one,
            },
            g.find(1, "3").unwrap(),
        );
        let id1 = g.find(2, "id_1").unwrap();
        c.set_comp(
            CompKey {
                along: 0,
                dim: 2,
                g: id1,
                f: id1,
            },
            g.find(2, "id_3").unwrap(),
        );
        let r = validate_strict_cat(&c);
        assert!(r.has_family("associativity"), "{r}");
    }

    #[test]
    fn mismatched_horizontal_and_vertical_products_break_interchange() {
        // One 1-cell whose 2-cells form a monoid under each composition:
        // idempotent horizontally, Z/2 vertically. Each table on its own is
        // lawful, but the two do not interchange.
        let mut b = GlobSet::builder(2);
        b.add_cell("*", 0, None)
            .add_cell("1", 1, Some(("*", "*")))
            .add_cell("u", 2, Some(("1", "1")))
            .add_cell("s", 2, Some(("1", "1")));
        let mut c = StrictCat::builder(Arc::new(b.build().unwrap()));
        c.comp(0, "1", "1", "1").ident("*", "1").ident("1", "u");
        for (g, f, h0, h1) in [
            ("u", "u", "u", "u"),
            ("u", "s", "s", "s"),
            ("s", "u", "s", "s"),
            ("s", "s", "s", "u"),
        ] {
            c.comp(0, g, f, h0).comp(1, g, f, h1);
        }
        let r = validate_strict_cat(&c.build().unwrap());
        assert!(r.has_family("interchange"), "{r}");
        assert!(!r.has_family("associativity") && !r.has_family("unit"), "{r}");
    }

    /// The canonical action with the binary composite of two `a`s moved.
    struct Tampered(CanonicalAction);

    impl Algebra for Tampered {
        fn carrier(&self) -> &Arc<GlobSet> {
            self.0.carrier()
        }

        fn eval(&self, t: &Term, d: &Diagram<usize>) -> Result<usize> {
            let g = self.carrier();
            if *t == binary_cell(Truncation::new(2), 1)? && *d == aa(g) {
                return Ok(g.find(1, "a").unwrap());
            }
            self.0.eval(t, d)
        }
    }

    #[test]
    fn axiom_check_accepts_z2_and_rejects_a_tampered_action() {
        let act = CanonicalAction::new(Arc::new(z2()));
        let r = check_algebra_axioms(&act, 12, 3);
        assert!(r.is_ok(), "{r}");
        assert!(r.checked() > 0, "{}", r.checked());
        let r = check_algebra_axioms(&Tampered(act), 12, 3);
        assert!(r.has_family("multiplication"), "{r}");
    }

    #[test]
    fn hom_algebras_agree_with_strict_homs() {
        let c = Arc::new(two_object_2cat());
        let g = c.carrier().clone();
        let (x, y) = (g.find(0, "x").unwrap(), g.find(0, "y").unwrap());
        let (hc, hom) = hom_strict_cat(&c, x, y).unwrap();
        assert_eq!(hom.set.counts(), vec![2, 4]);
        assert!(validate_strict_cat(&hc).is_ok());
        let r = compare_hom(c, x, y, 6, 2).unwrap();
        assert!(r.is_ok() && r.checked() > 0, "{r}");
    }

    #[test]
    fn functor_acts_on_homs() {
        let f = z4_to_z2();
        let (hd, hc, m) = strict_functor_hom(&f, 0, 0).unwrap();
        assert_eq!((hd.set.counts(), hc.set.counts()), (vec![4, 4], vec![2, 2]));
        assert!(m.validate().is_ok());
        assert!(check_functor_hom(&f, 0, 0, 6, 2).unwrap().is_ok());
    }
}
