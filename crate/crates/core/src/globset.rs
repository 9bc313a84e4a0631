//! Truncated globular sets, their morphisms, the disc/sphere boundary
//! inclusions, and lifting problems against them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::pasting::{CellProvider, FiniteProvider};
use crate::{Error, Report, Result, Truncation};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Layer {
    names: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
}

/// A finite globular set with cells in dimensions `0..=max_dim`.
///
/// Cells are addressed by `(dim, index)`; names are unique across all
/// dimensions.
#[derive(Clone, Debug)]
pub struct GlobSet {
    max_dim: usize,
    layers: Vec<Layer>,
    index: HashMap<String, (usize, usize)>,
}

impl PartialEq for GlobSet {
    fn eq(&self, other: &Self) -> bool {
        self.max_dim == other.max_dim && self.layers == other.layers
    }
}

impl Eq for GlobSet {}

/// A cell addressed by dimension and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub dim: usize,
    pub id: usize,
}

impl GlobSet {
    pub fn builder(max_dim: usize) -> GlobSetBuilder {
        GlobSetBuilder {
            max_dim,
            cells: Vec::new(),
        }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Number of cells in `dim`; zero above the top dimension.
    pub fn count(&self, dim: usize) -> usize {
        self.layers.get(dim).map_or(0, |l| l.names.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.max_dim).map(|d| self.count(d)).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.layers.iter().map(|l| l.names.len()).sum()
    }

    pub fn name(&self, dim: usize, id: usize) -> &str {
        &self.layers[dim].names[id]
    }

    /// The name of a cell, or a placeholder for an index out of range.
    pub fn describe_cell(&self, dim: usize, id: usize) -> String {
        if id < self.count(dim) {
            self.name(dim, id).to_string()
        } else {
            format!("#{id}@{dim}")
        }
    }

    pub fn find(&self, dim: usize, name: &str) -> Option<usize> {
        match self.index.get(name) {
            Some(&(d, i)) if d == dim => Some(i),
            _ => None,
        }
    }

    pub fn find_any(&self, name: &str) -> Option<CellRef> {
        self.index.get(name).map(|&(dim, id)| CellRef { dim, id })
    }

    pub fn src(&self, dim: usize, id: usize) -> usize {
        self.layers[dim].src[id]
    }

    pub fn tgt(&self, dim: usize, id: usize) -> usize {
        self.layers[dim].tgt[id]
    }

    /// Iterated source or target from `dim` down to `to`.
    pub fn boundary_at(&self, dim: usize, id: usize, to: usize, source: bool) -> usize {
        let mut c = id;
        for d in (to + 1..=dim).rev() {
            c = if source { self.src(d, c) } else { self.tgt(d, c) };
        }
        c
    }

    /// Cell indices of `dim` in name order.
    pub fn sorted_cells(&self, dim: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.count(dim)).collect();
        v.sort_by(|&a, &b| self.name(dim, a).cmp(self.name(dim, b)));
        v
    }

    /// Checks globularity of every cell of dimension at least 2.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        for d in 2..=self.max_dim {
            for c in 0..self.count(d) {
                report.count_check();
                let (s, t) = (self.src(d, c), self.tgt(d, c));
                if self.src(d - 1, s) != self.src(d - 1, t) {
                    report.push(
                        "globularity",
                        format!("{}: source of source differs from source of target", self.name(d, c)),
                    );
                }
                if self.tgt(d - 1, s) != self.tgt(d - 1, t) {
                    report.push(
                        "globularity",
                        format!("{}: target of source differs from target of target", self.name(d, c)),
                    );
                }
            }
        }
        report
    }

    /// True iff `a` and `b` (both of dimension `dim`) are parallel.
    pub fn parallel(&self, a: CellRef, b: CellRef) -> Result<bool> {
        if a.dim != b.dim {
            return Err(Error::DimensionMismatch {
                expected: a.dim,
                found: b.dim,
            });
        }
        if a.dim == 0 {
            return Ok(true);
        }
        Ok(self.src(a.dim, a.id) == self.src(b.dim, b.id) && self.tgt(a.dim, a.id) == self.tgt(b.dim, b.id))
    }

    /// The representable `k`-disc: cells `s{j}`, `t{j}` for `j < k` and a
    /// single top cell `c`.
    pub fn disc(n: Truncation, k: usize) -> Result<GlobSet> {
        n.check(k)?;
        let mut b = Self::sphere_builder(k);
        if k == 0 {
            b.add_cell("c", 0, None);
        } else {
            let (s, t) = (format!("s{}", k - 1), format!("t{}", k - 1));
            b.add_cell("c", k, Some((&s, &t)));
        }
        Ok(b.build().expect("discs are globular"))
    }

    /// The boundary of the `k`-disc: the disc with its top cell removed.
    pub fn sphere(n: Truncation, k: usize) -> Result<GlobSet> {
        n.check(k)?;
        Ok(Self::sphere_builder(k).build().expect("spheres are globular"))
    }

    fn sphere_builder(k: usize) -> GlobSetBuilder {
        let mut b = GlobSet::builder(k);
        for j in 0..k {
            for side in ["s", "t"] {
                let name = format!("{side}{j}");
                if j == 0 {
                    b.add_cell(&name, 0, None);
                } else {
                    let (s, t) = (format!("s{}", j - 1), format!("t{}", j - 1));
                    b.add_cell(&name, j, Some((&s, &t)));
                }
            }
        }
        b
    }

    /// The terminal globular set: one cell `*{d}` in every dimension.
    pub fn terminal(n: Truncation) -> GlobSet {
        let mut b = GlobSet::builder(n.max_dim());
        for d in 0..=n.max_dim() {
            let name = format!("*{d}");
            if d == 0 {
                b.add_cell(&name, 0, None);
            } else {
                let below = format!("*{}", d - 1);
                b.add_cell(&name, d, Some((&below, &below)));
            }
        }
        b.build().expect("terminal set is globular")
    }
}

impl CellProvider for GlobSet {
    type Cell = usize;

    fn contains(&self, dim: usize, cell: &usize) -> bool {
        *cell < self.count(dim)
    }

    fn source(&self, dim: usize, cell: &usize) -> usize {
        self.src(dim, *cell)
    }

    fn target(&self, dim: usize, cell: &usize) -> usize {
        self.tgt(dim, *cell)
    }

    fn describe(&self, dim: usize, cell: &usize) -> String {
        self.describe_cell(dim, *cell)
    }
}

impl FiniteProvider for GlobSet {
    fn cells(&self, dim: usize) -> Vec<usize> {
        (0..self.count(dim)).collect()
    }
}

impl CellProvider for Arc<GlobSet> {
    type Cell = usize;

    fn contains(&self, dim: usize, cell: &usize) -> bool {
        (**self).contains(dim, cell)
    }

    fn source(&self, dim: usize, cell: &usize) -> usize {
        (**self).source(dim, cell)
    }

    fn target(&self, dim: usize, cell: &usize) -> usize {
        (**self).target(dim, cell)
    }

    fn describe(&self, dim: usize, cell: &usize) -> String {
        (**self).describe(dim, cell)
    }
}

impl FiniteProvider for Arc<GlobSet> {
    fn cells(&self, dim: usize) -> Vec<usize> {
        (**self).cells(dim)
    }
}

impl fmt::Display for GlobSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in 0..=self.max_dim {
            for c in 0..self.count(d) {
                if d == 0 {
                    writeln!(f, "{} @0", self.name(0, c))?;
                } else {
                    writeln!(
                        f,
                        "{} : {} -> {} @{d}",
                        self.name(d, c),
                        self.name(d - 1, self.src(d, c)),
                        self.name(d - 1, self.tgt(d, c))
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Name, dimension and boundary names of a cell awaiting resolution.
type NamedCell = (String, usize, Option<(String, String)>);

/// Collects named cells and resolves their boundaries by name.
#[derive(Clone, Debug)]
pub struct GlobSetBuilder {
    max_dim: usize,
    cells: Vec<NamedCell>,
}

impl GlobSetBuilder {
    pub fn add_cell(&mut self, name: &str, dim: usize, boundary: Option<(&str, &str)>) -> &mut Self {
        self.cells.push((
            name.to_string(),
            dim,
            boundary.map(|(s, t)| (s.to_string(), t.to_string())),
        ));
        self
    }

    /// Resolves names without checking globularity.
    pub fn build_unchecked(&self) -> std::result::Result<GlobSet, Report> {
        let mut report = Report::new();
        let mut layers = vec![Layer::default(); self.max_dim + 1];
        let mut index = HashMap::new();
        for (name, dim, _) in &self.cells {
            if *dim > self.max_dim {
                report.push(
                    "dimension",
                    format!("{name} has dimension {dim} above {}", self.max_dim),
                );
                continue;
            }
            if index.contains_key(name) {
                report.push("duplicate", format!("cell {name} declared twice"));
                continue;
            }
            index.insert(name.clone(), (*dim, layers[*dim].names.len()));
            layers[*dim].names.push(name.clone());
        }
        for (name, dim, boundary) in &self.cells {
            if *dim > self.max_dim || index.get(name).map(|p| p.0) != Some(*dim) {
                continue;
            }
            match (dim, boundary) {
                (0, None) => {}
                (0, Some(_)) => report.push("boundary", format!("0-cell {name} cannot have a boundary")),
                (_, None) => report.push("boundary", format!("{dim}-cell {name} needs a source and target")),
                (d, Some((s, t))) => {
                    let mut resolve = |n: &str| match index.get(n) {
                        Some(&(bd, bi)) if bd + 1 == *d => Some(bi),
                        _ => {
                            report.push(
                                "dangling boundary",
                                format!("{name}: boundary {n} is not a declared {}-cell", d - 1),
                            );
                            None
                        }
                    };
                    let (si, ti) = (resolve(s), resolve(t));
                    let layer = &mut layers[*d];
                    layer.src.push(si.unwrap_or(usize::MAX));
                    layer.tgt.push(ti.unwrap_or(usize::MAX));
                }
            }
        }
        if !report.is_ok() {
            return Err(report);
        }
        for l in &mut layers {
            if l.src.is_empty() {
                // 0-cells: keep src/tgt aligned with names for uniform indexing
                l.src = vec![0; l.names.len()];
                l.tgt = vec![0; l.names.len()];
            }
        }
        Ok(GlobSet {
            max_dim: self.max_dim,
            layers,
            index,
        })
    }

    /// Resolves names and checks globularity.
    pub fn build(&self) -> std::result::Result<GlobSet, Report> {
        let g = self.build_unchecked()?;
        let report = g.validate();
        if report.is_ok() {
            Ok(g)
        } else {
            Err(report)
        }
    }
}

/// A morphism of finite globular sets, given by one index map per dimension
/// of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobMorphism {
    pub dom: Arc<GlobSet>,
    pub cod: Arc<GlobSet>,
    maps: Vec<Vec<usize>>,
}

impl GlobMorphism {
    pub fn new(dom: Arc<GlobSet>, cod: Arc<GlobSet>, maps: Vec<Vec<usize>>) -> std::result::Result<Self, Report> {
        let m = GlobMorphism { dom, cod, maps };
        let report = m.validate();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(report)
        }
    }

    /// Builds a morphism from a name table.
    pub fn from_names(
        dom: Arc<GlobSet>,
        cod: Arc<GlobSet>,
        pairs: &[(String, String)],
    ) -> std::result::Result<Self, Report> {
        let mut report = Report::new();
        let mut maps: Vec<Vec<Option<usize>>> = (0..=dom.max_dim()).map(|d| vec![None; dom.count(d)]).collect();
        for (a, b) in pairs {
            let Some(ca) = dom.find_any(a) else {
                report.push("unknown cell", format!("{a} is not a cell of the domain"));
                continue;
            };
            match cod.find(ca.dim, b) {
                Some(cb) => maps[ca.dim][ca.id] = Some(cb),
                None => report.push("unknown cell", format!("{b} is not a {}-cell of the codomain", ca.dim)),
            }
        }
        for (d, m) in maps.iter().enumerate() {
            for (i, v) in m.iter().enumerate() {
                if v.is_none() {
                    report.push("totality", format!("{} has no image", dom.name(d, i)));
                }
            }
        }
        if !report.is_ok() {
            return Err(report);
        }
        let maps = maps
            .into_iter()
            .map(|m| m.into_iter().map(|v| v.expect("checked")).collect())
            .collect();
        GlobMorphism::new(dom, cod, maps)
    }

    pub fn identity(g: Arc<GlobSet>) -> Self {
        let maps = (0..=g.max_dim()).map(|d| (0..g.count(d)).collect()).collect();
        GlobMorphism {
            dom: g.clone(),
            cod: g,
            maps,
        }
    }

    /// The unique morphism to the terminal globular set of the given bound.
    pub fn to_terminal(dom: Arc<GlobSet>, n: Truncation) -> Result<Self> {
        n.check(dom.max_dim())?;
        let cod = Arc::new(GlobSet::terminal(n));
        let maps = (0..=dom.max_dim()).map(|d| vec![0; dom.count(d)]).collect();
        Ok(GlobMorphism { dom, cod, maps })
    }

    pub fn apply(&self, dim: usize, id: usize) -> usize {
        self.maps[dim][id]
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        if self.maps.len() != self.dom.max_dim() + 1 {
            report.push("totality", "one map per domain dimension is required");
            return report;
        }
        for (d, m) in self.maps.iter().enumerate() {
            if m.len() != self.dom.count(d) {
                report.push("totality", format!("dimension {d} map has the wrong length"));
                return report;
            }
            for (i, &v) in m.iter().enumerate() {
                report.count_check();
                if v >= self.cod.count(d) {
                    report.push("totality", format!("{} maps outside the codomain", self.dom.name(d, i)));
                    continue;
                }
                if d > 0 {
                    let ok_s = self.cod.src(d, v) == m_at(&self.maps, d - 1, self.dom.src(d, i));
                    let ok_t = self.cod.tgt(d, v) == m_at(&self.maps, d - 1, self.dom.tgt(d, i));
                    if !ok_s || !ok_t {
                        report.push(
                            "commutation",
                            format!("{} does not commute with boundaries", self.dom.name(d, i)),
                        );
                    }
                }
            }
        }
        report
    }

    /// Injective at every dimension.
    pub fn is_injective(&self, dim: usize) -> bool {
        let Some(m) = self.maps.get(dim) else {
            return true;
        };
        let mut seen = vec![false; self.cod.count(dim)];
        m.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_bijective(&self, dim: usize) -> bool {
        self.is_injective(dim) && self.maps.get(dim).map_or(0, Vec::len) == self.cod.count(dim)
    }
}

fn m_at(maps: &[Vec<usize>], dim: usize, id: usize) -> usize {
    maps[dim][id]
}

/// The boundary inclusion of the `k`-sphere into the `k`-disc.
pub fn cofib(n: Truncation, k: usize) -> Result<GlobMorphism> {
    let dom = Arc::new(GlobSet::sphere(n, k)?);
    let cod = Arc::new(GlobSet::disc(n, k)?);
    let maps = (0..=k)
        .map(|d| {
            (0..dom.count(d))
                .map(|i| cod.find(d, dom.name(d, i)).expect("sphere cells are disc cells"))
                .collect()
        })
        .collect();
    Ok(GlobMorphism { dom, cod, maps })
}

/// Key of one lifting problem: a dimension, a parallel pair upstairs (none in
/// dimension 0), and a compatible cell downstairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftKey {
    pub dim: usize,
    pub pair: Option<(usize, usize)>,
    pub target: usize,
}

/// The first lifting problem without a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFailure {
    pub dim: usize,
    pub pair: Option<(String, String)>,
    pub target: String,
}

impl LiftFailure {
    pub fn into_error(self) -> Error {
        Error::NoLift {
            dim: self.dim,
            pair: match self.pair {
                None => "()".into(),
                Some((a, b)) => format!("({a}, {b})"),
            },
            target: self.target,
        }
    }
}

impl fmt::Display for LiftFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pair {
            None => write!(f, "no lift at dimension {} for () over {}", self.dim, self.target),
            Some((a, b)) => write!(
                f,
                "no lift at dimension {} for ({a}, {b}) over {}",
                self.dim, self.target
            ),
        }
    }
}

/// All lifting problems of `r` in dimension `k`, in name order, each with
/// its candidates in name order.
fn lifting_problems(map: &GlobMorphism, k: usize) -> Vec<(LiftKey, Vec<usize>)> {
    let (dom, cod) = (&map.dom, &map.cod);
    let mut out = Vec::new();
    if k == 0 {
        let ups = dom.sorted_cells(0);
        for d in cod.sorted_cells(0) {
            let cands = ups.iter().copied().filter(|&w| map.apply(0, w) == d).collect();
            out.push((
                LiftKey {
                    dim: 0,
                    pair: None,
                    target: d,
                },
                cands,
            ));
        }
        return out;
    }
    let lower = dom.sorted_cells(k - 1);
    let ups = dom.sorted_cells(k);
    let downs = cod.sorted_cells(k);
    for &c in &lower {
        for &c2 in &lower {
            let parallel =
                k == 1 || (dom.src(k - 1, c) == dom.src(k - 1, c2) && dom.tgt(k - 1, c) == dom.tgt(k - 1, c2));
            if !parallel {
                continue;
            }
            let (rc, rc2) = (map.apply(k - 1, c), map.apply(k - 1, c2));
            for &d in &downs {
                if cod.src(k, d) != rc || cod.tgt(k, d) != rc2 {
                    continue;
                }
                let cands = ups
                    .iter()
                    .copied()
                    .filter(|&w| dom.src(k, w) == c && dom.tgt(k, w) == c2 && map.apply(k, w) == d)
                    .collect();
                out.push((
                    LiftKey {
                        dim: k,
                        pair: Some((c, c2)),
                        target: d,
                    },
                    cands,
                ));
            }
        }
    }
    out
}

fn failure(map: &GlobMorphism, key: &LiftKey) -> LiftFailure {
    LiftFailure {
        dim: key.dim,
        pair: key.pair.map(|(a, b)| {
            (
                map.dom.name(key.dim - 1, a).to_string(),
                map.dom.name(key.dim - 1, b).to_string(),
            )
        }),
        target: map.cod.name(key.dim, key.target).to_string(),
    }
}

/// Checks the right lifting property of `r` against the boundary inclusions
/// in dimensions `0..=up_to`, reporting the first problem without a lift.
pub fn check_rlp(map: &GlobMorphism, up_to: usize) -> std::result::Result<(), LiftFailure> {
    for k in 0..=up_to {
        if k > map.cod.max_dim() {
            break;
        }
        for (key, cands) in lifting_problems(map, k) {
            if cands.is_empty() {
                return Err(failure(map, &key));
            }
        }
    }
    Ok(())
}

/// A chosen lift for every lifting problem of a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub on: GlobMorphism,
    pub lifts: BTreeMap<LiftKey, usize>,
}

impl Contraction {
    pub fn lift(&self, key: &LiftKey) -> Option<usize> {
        self.lifts.get(key).copied()
    }

    /// Checks every table entry against the lifting square, and that every
    /// problem has an entry.
    pub fn verify(&self) -> Report {
        let r = &self.on;
        let mut report = Report::new();
        for (key, &w) in &self.lifts {
            report.count_check();
            let k = key.dim;
            if w >= r.dom.count(k) {
                report.push("table", format!("lift at {key:?} is not a {k}-cell"));
                continue;
            }
            if r.apply(k, w) != key.target {
                report.push(
                    "lower triangle",
                    format!("lift {} does not map to its target", r.dom.name(k, w)),
                );
            }
            if let Some((c, c2)) = key.pair {
                if r.dom.src(k, w) != c || r.dom.tgt(k, w) != c2 {
                    report.push(
                        "upper triangle",
                        format!("lift {} has the wrong boundary", r.dom.name(k, w)),
                    );
                }
            }
        }
        for k in 0..=r.cod.max_dim() {
            for (key, _) in lifting_problems(r, k) {
                if !self.lifts.contains_key(&key) {
                    report.push("totality", format!("no entry for {}", failure(r, &key)));
                }
            }
        }
        report
    }
}

/// Chooses the least-named lift for every problem of `r` up to the top
/// dimension of its codomain.
pub fn solve_contraction(map: &GlobMorphism) -> Result<Contraction> {
    let mut lifts = BTreeMap::new();
    for k in 0..=map.cod.max_dim() {
        for (key, cands) in lifting_problems(map, k) {
            match cands.first() {
                Some(&w) => {
                    lifts.insert(key, w);
                }
                None => return Err(failure(map, &key).into_error()),
            }
        }
    }
    Ok(Contraction { on: map.clone(), lifts })
}

/// The hom globular set `G(x, y)` together with its embedding back into `G`.
#[derive(Clone, Debug)]
pub struct Hom {
    pub set: Arc<GlobSet>,
    pub x: usize,
    pub y: usize,
    up: Vec<Vec<usize>>,
    down: Vec<HashMap<usize, usize>>,
}

impl Hom {
    /// Cells of `g` of dimension `k + 1` with 0-source `x` and 0-target `y`
    /// become `k`-cells, keeping their names.
    pub fn new(g: &GlobSet, x: usize, y: usize) -> Result<Hom> {
        if g.max_dim() == 0 {
            return Err(Error::Invalid("a globular set of dimension 0 has no homs".into()));
        }
        if x >= g.count(0) || y >= g.count(0) {
            return Err(Error::UnknownCell("hom endpoints must be 0-cells".into()));
        }
        let top = g.max_dim() - 1;
        let mut b = GlobSet::builder(top);
        let mut up = Vec::with_capacity(top + 1);
        let mut down = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut ups = Vec::new();
            let mut downs = HashMap::new();
            for c in 0..g.count(k + 1) {
                if g.boundary_at(k + 1, c, 0, true) != x || g.boundary_at(k + 1, c, 0, false) != y {
                    continue;
                }
                downs.insert(c, ups.len());
                ups.push(c);
                if k == 0 {
                    b.add_cell(g.name(1, c), 0, None);
                } else {
                    b.add_cell(
                        g.name(k + 1, c),
                        k,
                        Some((g.name(k, g.src(k + 1, c)), g.name(k, g.tgt(k + 1, c)))),
                    );
                }
            }
            up.push(ups);
            down.push(downs);
        }
        let set = b.build().map_err(|r| Error::Invalid(r.to_string()))?;
        Ok(Hom {
            set: Arc::new(set),
            x,
            y,
            up,
            down,
        })
    }

    /// The ambient `(k + 1)`-cell of a hom `k`-cell.
    pub fn lift(&self, k: usize, id: usize) -> usize {
        self.up[k][id]
    }

    /// The hom cell of an ambient `(k + 1)`-cell, if it lies in this hom.
    pub fn lower(&self, k: usize, ambient: usize) -> Option<usize> {
        self.down.get(k).and_then(|m| m.get(&ambient).copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> Truncation {
        Truncation::DEFAULT
    }

    /// Counts morphisms `j -> k` of the globe category by closing words in the
    /// coface maps under the two relations and counting classes.
    fn globe_category_hom_count(j: usize, k: usize) -> usize {
        if j > k {
            return 0;
        }
        let len = k - j;
        let words: Vec<Vec<u8>> = (0..1usize << len)
            .map(|bits| (0..len).map(|i| ((bits >> i) & 1) as u8).collect())
            .collect();
        // union-find over words
        let mut parent: Vec<usize> = (0..words.len()).collect();
        fn root(p: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while p[i] != i {
                i = p[i];
            }
            i
        }
        let pos = |w: &Vec<u8>| words.iter().position(|v| v == w).unwrap();
        for w in &words {
            for i in 0..len.saturating_sub(1) {
                // relations: a coface followed by either coface at the next
                // level agree as long as the outer letter is fixed
                let mut v = w.clone();
                v[i] ^= 1;
                let (a, b) = (pos(w), pos(&v));
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra] = rb;
            }
        }
        (0..words.len()).filter(|&i| root(&mut parent, i) == i).count()
    }

    #[test]
    fn disc_and_sphere_counts_match_globe_category() {
        for k in 0..=3 {
            let disc = GlobSet::disc(n(), k).unwrap();
            let expected: Vec<usize> = (0..=k).map(|j| globe_category_hom_count(j, k)).collect();
            assert_eq!(disc.counts(), expected, "disc({k})");
            assert!(disc.validate().is_ok());
            let sphere = GlobSet::sphere(n(), k).unwrap();
            let mut sph = expected.clone();
            sph[k] = 0;
            assert_eq!(sphere.counts(), sph, "sphere({k})");
        }
        assert_eq!(GlobSet::disc(n(), 1).unwrap().counts(), vec![2, 1]);
        assert_eq!(GlobSet::sphere(n(), 2).unwrap().counts(), vec![2, 2, 0]);
        assert_eq!(GlobSet::sphere(n(), 0).unwrap().total_cells(), 0);
        assert!(GlobSet::disc(n(), 4).is_err());
    }

    #[test]
    fn cofib_is_injective_and_low_bijective() {
        for k in 0..=3 {
            let m = cofib(n(), k).unwrap();
            assert!(m.validate().is_ok());
            for d in 0..=k {
                assert!(m.is_injective(d));
                if d + 1 < k {
                    assert!(m.is_bijective(d));
                }
            }
        }
    }

    #[test]
    fn non_globular_cell_is_reported() {
        let mut b = GlobSet::builder(2);
        b.add_cell("x", 0, None)
            .add_cell("y", 0, None)
            .add_cell("f", 1, Some(("x", "y")))
            .add_cell("g", 1, Some(("y", "y")))
            .add_cell("alpha", 2, Some(("f", "g")));
        let report = b.build().unwrap_err();
        assert!(report.has_family("globularity"));
        assert!(report.to_string().contains("alpha"));
    }

    #[test]
    fn dangling_boundary_is_reported() {
        let mut b = GlobSet::builder(1);
        b.add_cell("x", 0, None).add_cell("f", 1, Some(("x", "z")));
        assert!(b.build().unwrap_err().has_family("dangling boundary"));
    }

    #[test]
    fn parallelism() {
        let mut b = GlobSet::builder(1);
        b.add_cell("a", 0, None)
            .add_cell("b", 0, None)
            .add_cell("c", 0, None)
            .add_cell("f", 1, Some(("a", "b")))
            .add_cell("g", 1, Some(("a", "b")))
            .add_cell("h", 1, Some(("a", "c")));
        let g = b.build().unwrap();
        let r = |name: &str| g.find_any(name).unwrap();
        assert!(g.parallel(r("a"), r("b")).unwrap());
        assert!(g.parallel(r("f"), r("g")).unwrap());
        assert!(!g.parallel(r("f"), r("h")).unwrap());
        assert!(g.parallel(r("a"), r("f")).is_err());
    }

    /// Exhaustive lift search independent of the lifting-problem listing.
    fn brute_rlp(map: &GlobMorphism, up_to: usize) -> bool {
        let (dom, cod) = (&map.dom, &map.cod);
        for k in 0..=up_to.min(cod.max_dim()) {
            for d in 0..cod.count(k) {
                if k == 0 {
                    if !(0..dom.count(0)).any(|w| map.apply(0, w) == d) {
                        return false;
                    }
                    continue;
                }
                for c in 0..dom.count(k - 1) {
                    for c2 in 0..dom.count(k - 1) {
                        let cr = CellRef { dim: k - 1, id: c };
                        let cr2 = CellRef { dim: k - 1, id: c2 };
                        if !dom.parallel(cr, cr2).unwrap() {
                            continue;
                        }
                        if cod.src(k, d) != map.apply(k - 1, c) || cod.tgt(k, d) != map.apply(k - 1, c2) {
                            continue;
                        }
                        let found = (0..dom.count(k))
                            .any(|w| dom.src(k, w) == c && dom.tgt(k, w) == c2 && map.apply(k, w) == d);
                        if !found {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn rlp_examples() {
        let disc1 = Arc::new(GlobSet::disc(n(), 1).unwrap());
        assert!(check_rlp(&GlobMorphism::identity(disc1.clone()), 3).is_ok());
        let c = solve_contraction(&GlobMorphism::identity(disc1.clone())).unwrap();
        assert!(c.verify().is_ok());

        let disc0 = Arc::new(GlobSet::disc(n(), 0).unwrap());
        let r0 = GlobMorphism::to_terminal(disc0, n()).unwrap();
        let fail = check_rlp(&r0, 3).unwrap_err();
        assert_eq!(fail.dim, 1);
        assert!(matches!(solve_contraction(&r0), Err(Error::NoLift { dim: 1, .. })));

        let r1 = GlobMorphism::to_terminal(disc1, n()).unwrap();
        let fail = check_rlp(&r1, 3).unwrap_err();
        assert_eq!(fail.dim, 1);
        assert_eq!(fail.pair, Some(("s0".into(), "s0".into())));
        assert!(!brute_rlp(&r1, 3));
    }

    #[test]
    fn least_lift_is_chosen() {
        let mut b = GlobSet::builder(1);
        b.add_cell("x", 0, None)
            .add_cell("y", 0, None)
            .add_cell("q", 1, Some(("x", "y")))
            .add_cell("p", 1, Some(("x", "y")));
        let dom = Arc::new(b.build().unwrap());
        let cod = Arc::new(GlobSet::disc(n(), 1).unwrap());
        let pairs: Vec<(String, String)> = [("x", "s0"), ("y", "t0"), ("p", "c"), ("q", "c")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let r = GlobMorphism::from_names(dom.clone(), cod, &pairs).unwrap();
        let c = solve_contraction(&r).unwrap();
        let key = LiftKey {
            dim: 1,
            pair: Some((0, 1)),
            target: 0,
        };
        assert_eq!(dom.name(1, c.lift(&key).unwrap()), "p");
        assert!(c.verify().is_ok());
    }

    #[test]
    fn hom_of_disc() {
        let d2 = GlobSet::disc(n(), 2).unwrap();
        let (x, y) = (d2.find(0, "s0").unwrap(), d2.find(0, "t0").unwrap());
        let h = Hom::new(&d2, x, y).unwrap();
        assert_eq!(h.set.counts(), vec![2, 1]);
        assert_eq!(Hom::new(&d2, y, x).unwrap().set.total_cells(), 0);
        let c = h.set.find(1, "c").unwrap();
        assert_eq!(h.lift(1, c), d2.find(2, "c").unwrap());
    }
}
