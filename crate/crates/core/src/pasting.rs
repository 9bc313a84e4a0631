//! Globular pasting schemes and labelled pasting diagrams.
//!
//! A [`Scheme`] of dimension `k` is the atom `*` when `k = 0` and otherwise a
//! finite list of schemes of dimension `k - 1`. These are exactly the cells of
//! the free strict ω-category on the terminal globular set, and every scheme
//! has a single source and target, both equal to [`Scheme::boundary`].
//!
//! A [`Diagram`] is a scheme whose positions carry cells of some globular
//! provider. It is stored as nested paths: a `k`-diagram is a sequence of
//! 0-cells `x0, .., xm` separated by `(k-1)`-diagrams in the homs between
//! consecutive points. Labels at nesting depth `j` are `j`-cells.

use std::fmt;
use std::marker::PhantomData;

use crate::{Error, Result, Truncation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Scheme {
    dim: usize,
    cols: Vec<Scheme>,
}

impl Scheme {
    /// The atom `*`.
    pub fn point() -> Scheme {
        Scheme {
            dim: 0,
            cols: Vec::new(),
        }
    }

    pub fn list(dim: usize, cols: Vec<Scheme>) -> Result<Scheme> {
        if dim == 0 {
            return Err(Error::Invalid("a 0-dimensional scheme is the atom *".into()));
        }
        if let Some(bad) = cols.iter().find(|c| c.dim + 1 != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim - 1,
                found: bad.dim,
            });
        }
        Ok(Scheme { dim, cols })
    }

    pub(crate) fn list_unchecked(dim: usize, cols: Vec<Scheme>) -> Scheme {
        debug_assert!(dim > 0 && cols.iter().all(|c| c.dim + 1 == dim));
        Scheme { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cols(&self) -> &[Scheme] {
        &self.cols
    }

    pub fn is_point(&self) -> bool {
        self.dim == 0
    }

    /// `1_k`: the single globe.
    pub fn globe(k: usize) -> Scheme {
        let mut s = Scheme::point();
        for d in 1..=k {
            s = Scheme::list_unchecked(d, vec![s]);
        }
        s
    }

    /// Wraps `inner` in `levels` single-column lists.
    fn wrap(mut inner: Scheme, levels: usize) -> Scheme {
        for _ in 0..levels {
            inner = Scheme::list_unchecked(inner.dim + 1, vec![inner]);
        }
        inner
    }

    /// Source (equivalently target) of a scheme of positive dimension.
    pub fn boundary(&self) -> Result<Scheme> {
        match self.dim {
            0 => Err(Error::NoBoundary(self.to_string())),
            1 => Ok(Scheme::point()),
            d => Ok(Scheme::list_unchecked(
                d - 1,
                self.cols
                    .iter()
                    .map(|c| c.boundary().expect("inner dimension is positive"))
                    .collect(),
            )),
        }
    }

    /// Number of top-dimensional positions.
    pub fn leaves(&self) -> usize {
        if self.dim == 0 {
            1
        } else {
            self.cols.iter().map(Scheme::leaves).sum()
        }
    }

    /// Positions that are not the boundary of any other position: the
    /// top-dimensional cells plus the lone point of every empty list.
    pub fn maximal_positions(&self) -> usize {
        if self.dim == 0 || self.cols.is_empty() {
            1
        } else {
            self.cols.iter().map(Scheme::maximal_positions).sum()
        }
    }

    /// Longest list anywhere in the scheme.
    pub fn max_len(&self) -> usize {
        self.cols
            .iter()
            .map(Scheme::max_len)
            .max()
            .unwrap_or(0)
            .max(self.cols.len())
    }

    /// The diagram of this shape whose every label at depth `j` is `label(j)`.
    pub fn fill<C>(&self, label: &impl Fn(usize) -> C) -> Diagram<C> {
        self.fill_at(0, label)
    }

    fn fill_at<C>(&self, depth: usize, label: &impl Fn(usize) -> C) -> Diagram<C> {
        if self.dim == 0 {
            return Diagram::Cell(label(depth));
        }
        Diagram::Path {
            dim: self.dim,
            points: (0..=self.cols.len()).map(|_| label(depth)).collect(),
            cols: self.cols.iter().map(|c| c.fill_at(depth + 1, label)).collect(),
        }
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 0 {
            return f.write_str("*");
        }
        f.write_str("[")?;
        for (i, c) in self.cols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            c.fmt_inner(f)?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_inner(f)?;
        if self.dim > 0 {
            write!(f, "@{}", self.dim)?;
        }
        Ok(())
    }
}

/// `1_k`, the globe scheme.
pub fn one(n: Truncation, k: usize) -> Result<Scheme> {
    n.check(k)?;
    Ok(Scheme::globe(k))
}

/// `0_k`, the arity of identities: `0_1 = []`, `0_{k+1} = [0_k]`.
pub fn zero(n: Truncation, k: usize) -> Result<Scheme> {
    n.check(k)?;
    if k == 0 {
        return Err(Error::Invalid("0_k needs k >= 1".into()));
    }
    Ok(Scheme::wrap(Scheme::list_unchecked(1, Vec::new()), k - 1))
}

/// `2_k`, the arity of binary composition: `2_1 = [*,*]`, `2_{k+1} = [2_k]`.
pub fn two(n: Truncation, k: usize) -> Result<Scheme> {
    n.check(k)?;
    if k == 0 {
        return Err(Error::Invalid("2_k needs k >= 1".into()));
    }
    Ok(Scheme::wrap(
        Scheme::list_unchecked(1, vec![Scheme::point(), Scheme::point()]),
        k - 1,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

/// A labelled pasting diagram.
///
/// `Path` nodes satisfy `points.len() == cols.len() + 1`, `dim >= 1`, and
/// every column has dimension `dim - 1` (a `Cell` exactly when `dim == 1`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Diagram<C> {
    Cell(C),
    Path {
        dim: usize,
        points: Vec<C>,
        cols: Vec<Diagram<C>>,
    },
}

impl<C> Diagram<C> {
    pub fn path(dim: usize, points: Vec<C>, cols: Vec<Diagram<C>>) -> Result<Self> {
        let d = Diagram::Path { dim, points, cols };
        d.check_structure()?;
        Ok(d)
    }

    /// The length-0 path at `x`.
    pub fn empty_path(dim: usize, x: C) -> Self {
        assert!(dim >= 1, "empty paths have positive dimension");
        Diagram::Path {
            dim,
            points: vec![x],
            cols: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Diagram::Cell(_) => 0,
            Diagram::Path { dim, .. } => *dim,
        }
    }

    pub fn check_structure(&self) -> Result<()> {
        match self {
            Diagram::Cell(_) => Ok(()),
            Diagram::Path { dim, points, cols } => {
                if *dim == 0 {
                    return Err(Error::MalformedDiagram("path of dimension 0".into()));
                }
                if points.len() != cols.len() + 1 {
                    return Err(Error::MalformedDiagram(format!(
                        "{} points for {} columns",
                        points.len(),
                        cols.len()
                    )));
                }
                for c in cols {
                    if c.dim() + 1 != *dim {
                        return Err(Error::MalformedDiagram(format!(
                            "column of dimension {} inside a path of dimension {}",
                            c.dim(),
                            dim
                        )));
                    }
                    c.check_structure()?;
                }
                Ok(())
            }
        }
    }

    /// Erases the labels.
    pub fn shape(&self) -> Scheme {
        match self {
            Diagram::Cell(_) => Scheme::point(),
            Diagram::Path { dim, cols, .. } => Scheme::list_unchecked(*dim, cols.iter().map(Diagram::shape).collect()),
        }
    }

    /// Applies `f(depth, label)` to every label.
    pub fn map<D>(&self, mut f: impl FnMut(usize, &C) -> D) -> Diagram<D> {
        self.map_at(0, &mut f)
    }

    fn map_at<D>(&self, depth: usize, f: &mut impl FnMut(usize, &C) -> D) -> Diagram<D> {
        match self {
            Diagram::Cell(c) => Diagram::Cell(f(depth, c)),
            Diagram::Path { dim, points, cols } => {
                let mut new_points = Vec::with_capacity(points.len());
                let mut new_cols = Vec::with_capacity(cols.len());
                new_points.push(f(depth, &points[0]));
                for (col, p) in cols.iter().zip(&points[1..]) {
                    new_cols.push(col.map_at(depth + 1, f));
                    new_points.push(f(depth, p));
                }
                Diagram::Path {
                    dim: *dim,
                    points: new_points,
                    cols: new_cols,
                }
            }
        }
    }

    pub fn try_map<D, E>(&self, mut f: impl FnMut(usize, &C) -> Result<D, E>) -> Result<Diagram<D>, E> {
        self.try_map_at(0, &mut f)
    }

    fn try_map_at<D, E>(&self, depth: usize, f: &mut impl FnMut(usize, &C) -> Result<D, E>) -> Result<Diagram<D>, E> {
        match self {
            Diagram::Cell(c) => Ok(Diagram::Cell(f(depth, c)?)),
            Diagram::Path { dim, points, cols } => {
                let mut new_points = Vec::with_capacity(points.len());
                let mut new_cols = Vec::with_capacity(cols.len());
                new_points.push(f(depth, &points[0])?);
                for (col, p) in cols.iter().zip(&points[1..]) {
                    new_cols.push(col.try_map_at(depth + 1, f)?);
                    new_points.push(f(depth, p)?);
                }
                Ok(Diagram::Path {
                    dim: *dim,
                    points: new_points,
                    cols: new_cols,
                })
            }
        }
    }

    /// Pairs the labels of two diagrams of the same shape.
    pub fn zip_with<D, E>(
        &self,
        other: &Diagram<D>,
        mut f: impl FnMut(usize, &C, &D) -> Result<E>,
    ) -> Result<Diagram<E>> {
        self.zip_at(other, 0, &mut f)
    }

    fn zip_at<D, E>(
        &self,
        other: &Diagram<D>,
        depth: usize,
        f: &mut impl FnMut(usize, &C, &D) -> Result<E>,
    ) -> Result<Diagram<E>> {
        match (self, other) {
            (Diagram::Cell(a), Diagram::Cell(b)) => Ok(Diagram::Cell(f(depth, a, b)?)),
            (
                Diagram::Path {
                    dim,
                    points: pa,
                    cols: ca,
                },
                Diagram::Path {
                    dim: db,
                    points: pb,
                    cols: cb,
                },
            ) if dim == db && ca.len() == cb.len() => {
                let mut points = Vec::with_capacity(pa.len());
                let mut cols = Vec::with_capacity(ca.len());
                points.push(f(depth, &pa[0], &pb[0])?);
                for i in 0..ca.len() {
                    cols.push(ca[i].zip_at(&cb[i], depth + 1, f)?);
                    points.push(f(depth, &pa[i + 1], &pb[i + 1])?);
                }
                Ok(Diagram::Path {
                    dim: *dim,
                    points,
                    cols,
                })
            }
            _ => Err(Error::ShapeMismatch {
                expected: self.shape().to_string(),
                found: other.shape().to_string(),
            }),
        }
    }

    /// All labels with their depth, in left-to-right order.
    pub fn labels(&self) -> Vec<(usize, &C)> {
        let mut out = Vec::new();
        self.collect_labels(0, &mut out, false);
        out
    }

    /// Labels at maximal positions: top cells and points of empty paths.
    pub fn maximal_labels(&self) -> Vec<(usize, &C)> {
        let mut out = Vec::new();
        self.collect_labels(0, &mut out, true);
        out
    }

    fn collect_labels<'a>(&'a self, depth: usize, out: &mut Vec<(usize, &'a C)>, maximal: bool) {
        match self {
            Diagram::Cell(c) => out.push((depth, c)),
            Diagram::Path { points, cols, .. } => {
                if !maximal || cols.is_empty() {
                    out.push((depth, &points[0]));
                }
                for (col, p) in cols.iter().zip(&points[1..]) {
                    col.collect_labels(depth + 1, out, maximal);
                    if !maximal {
                        out.push((depth, p));
                    }
                }
            }
        }
    }

    /// The unique label of a globe-shaped diagram at its top position.
    pub fn top_label(&self) -> Option<&C> {
        match self {
            Diagram::Cell(c) => Some(c),
            Diagram::Path { cols, .. } if cols.len() == 1 => cols[0].top_label(),
            Diagram::Path { .. } => None,
        }
    }
}

impl<C: Clone> Diagram<C> {
    /// Source or target diagram, one dimension down.
    pub fn boundary(&self, side: Side) -> Result<Diagram<C>> {
        match self {
            Diagram::Cell(_) => Err(Error::NoBoundary("a 0-diagram".into())),
            Diagram::Path { dim: 1, points, .. } => Ok(Diagram::Cell(match side {
                Side::Source => points[0].clone(),
                Side::Target => points[points.len() - 1].clone(),
            })),
            Diagram::Path { dim, points, cols } => Ok(Diagram::Path {
                dim: dim - 1,
                points: points.clone(),
                cols: cols.iter().map(|c| c.boundary(side)).collect::<Result<_>>()?,
            }),
        }
    }

    /// Iterated boundary down to dimension `dim`.
    pub fn boundary_to(&self, dim: usize, side: Side) -> Result<Diagram<C>> {
        let mut d = self.clone();
        while d.dim() > dim {
            d = d.boundary(side)?;
        }
        Ok(d)
    }
}

impl<C: fmt::Display> Diagram<C> {
    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Cell(c) => write!(f, "{c}"),
            Diagram::Path { points, cols, .. } => {
                write!(f, "<{}", points[0])?;
                for (col, p) in cols.iter().zip(&points[1..]) {
                    f.write_str(" | ")?;
                    col.fmt_inner(f)?;
                    write!(f, " | {p}")?;
                }
                f.write_str(">")
            }
        }
    }
}

impl<C: fmt::Display> fmt::Display for Diagram<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_inner(f)?;
        if let Diagram::Path { dim, .. } = self {
            write!(f, "@{dim}")?;
        }
        Ok(())
    }
}

/// A globular set of cells that diagrams can be labelled in.
pub trait CellProvider {
    type Cell: Clone + PartialEq + fmt::Debug;

    fn contains(&self, dim: usize, cell: &Self::Cell) -> bool;
    /// Only called with `dim >= 1` on cells the provider contains.
    fn source(&self, dim: usize, cell: &Self::Cell) -> Self::Cell;
    fn target(&self, dim: usize, cell: &Self::Cell) -> Self::Cell;

    fn describe(&self, _dim: usize, cell: &Self::Cell) -> String {
        format!("{cell:?}")
    }

    fn iterated_boundary(&self, dim: usize, cell: &Self::Cell, to: usize, side: Side) -> Self::Cell {
        let mut c = cell.clone();
        for d in (to + 1..=dim).rev() {
            c = match side {
                Side::Source => self.source(d, &c),
                Side::Target => self.target(d, &c),
            };
        }
        c
    }
}

/// A provider whose cells can be listed.
pub trait FiniteProvider: CellProvider {
    fn cells(&self, dim: usize) -> Vec<Self::Cell>;

    fn cells_between(&self, dim: usize, a: &Self::Cell, b: &Self::Cell) -> Vec<Self::Cell> {
        self.cells(dim)
            .into_iter()
            .filter(|c| &self.source(dim, c) == a && &self.target(dim, c) == b)
            .collect()
    }
}

/// Checks structure and endpoint compatibility of every label.
pub fn check_diagram<P: CellProvider>(p: &P, d: &Diagram<P::Cell>) -> Result<()> {
    d.check_structure()?;
    check_node(p, d, 0, None)
}

fn check_label<P: CellProvider>(p: &P, depth: usize, c: &P::Cell, flank: Option<(&P::Cell, &P::Cell)>) -> Result<()> {
    if !p.contains(depth, c) {
        return Err(Error::UnknownCell(format!(
            "{} is not a {depth}-cell",
            p.describe(depth, c)
        )));
    }
    if let Some((a, b)) = flank {
        if &p.source(depth, c) != a || &p.target(depth, c) != b {
            return Err(Error::BoundaryMismatch(format!(
                "{} does not run from {} to {}",
                p.describe(depth, c),
                p.describe(depth - 1, a),
                p.describe(depth - 1, b)
            )));
        }
    }
    Ok(())
}

fn check_node<P: CellProvider>(
    p: &P,
    node: &Diagram<P::Cell>,
    depth: usize,
    flank: Option<(&P::Cell, &P::Cell)>,
) -> Result<()> {
    match node {
        Diagram::Cell(c) => check_label(p, depth, c, flank),
        Diagram::Path { points, cols, .. } => {
            for x in points {
                check_label(p, depth, x, flank)?;
            }
            for (i, col) in cols.iter().enumerate() {
                check_node(p, col, depth + 1, Some((&points[i], &points[i + 1])))?;
            }
            Ok(())
        }
    }
}

/// The one-cell diagram of a `dim`-cell, with its iterated boundaries as
/// lower labels (the unit of the free strict ω-category monad).
pub fn globe<P: CellProvider>(p: &P, dim: usize, c: &P::Cell) -> Result<Diagram<P::Cell>> {
    if !p.contains(dim, c) {
        return Err(Error::UnknownCell(p.describe(dim, c)));
    }
    Ok(globe_node(p, dim, c, 0))
}

fn globe_node<P: CellProvider>(p: &P, dim: usize, c: &P::Cell, depth: usize) -> Diagram<P::Cell> {
    if depth == dim {
        return Diagram::Cell(c.clone());
    }
    Diagram::Path {
        dim: dim - depth,
        points: vec![
            p.iterated_boundary(dim, c, depth, Side::Source),
            p.iterated_boundary(dim, c, depth, Side::Target),
        ],
        cols: vec![globe_node(p, dim, c, depth + 1)],
    }
}

/// Composition and identities of a strict ω-category, enough to evaluate
/// pasting diagrams.
pub trait StrictCategory {
    type Cell: Clone;

    /// `g ∘_along f` for two `dim`-cells with `t_along f = s_along g`.
    fn compose(&self, along: usize, dim: usize, g: &Self::Cell, f: &Self::Cell) -> Result<Self::Cell>;

    /// The identity `(dim + 1)`-cell on a `dim`-cell.
    fn identity(&self, dim: usize, cell: &Self::Cell) -> Result<Self::Cell>;
}

/// Evaluates a diagram by composing its columns left to right along the
/// dimension of their separating points, recursively.
pub fn evaluate<S: StrictCategory>(cat: &S, d: &Diagram<S::Cell>) -> Result<S::Cell> {
    eval_node(cat, d, 0)
}

fn eval_node<S: StrictCategory>(cat: &S, node: &Diagram<S::Cell>, depth: usize) -> Result<S::Cell> {
    match node {
        Diagram::Cell(c) => Ok(c.clone()),
        Diagram::Path { dim, points, cols } => {
            let top = depth + dim;
            if cols.is_empty() {
                let mut c = points[0].clone();
                for j in depth..top {
                    c = cat.identity(j, &c)?;
                }
                return Ok(c);
            }
            let mut acc = eval_node(cat, &cols[0], depth + 1)?;
            for col in &cols[1..] {
                let next = eval_node(cat, col, depth + 1)?;
                acc = cat.compose(depth, top, &next, &acc)?;
            }
            Ok(acc)
        }
    }
}

/// Pasting schemes as a strict ω-category: composition along 0 concatenates lists,
/// higher composition works column by column.
#[derive(Clone, Copy, Debug, Default)]
pub struct Schemes;

impl StrictCategory for Schemes {
    type Cell = Scheme;

    fn compose(&self, along: usize, dim: usize, g: &Scheme, f: &Scheme) -> Result<Scheme> {
        if g.dim != dim || f.dim != dim || along >= dim {
            return Err(Error::BoundaryMismatch(format!(
                "cannot compose {g} and {f} along {along}"
            )));
        }
        if along == 0 {
            let mut cols = f.cols.clone();
            cols.extend(g.cols.iter().cloned());
            return Ok(Scheme::list_unchecked(dim, cols));
        }
        if g.cols.len() != f.cols.len() {
            return Err(Error::BoundaryMismatch(format!(
                "{f} and {g} do not meet along dimension {along}"
            )));
        }
        let cols = g
            .cols
            .iter()
            .zip(&f.cols)
            .map(|(gc, fc)| self.compose(along - 1, dim - 1, gc, fc))
            .collect::<Result<_>>()?;
        Ok(Scheme::list_unchecked(dim, cols))
    }

    fn identity(&self, dim: usize, s: &Scheme) -> Result<Scheme> {
        debug_assert_eq!(s.dim, dim);
        let cols = if s.dim == 0 {
            Vec::new()
        } else {
            s.cols
                .iter()
                .map(|c| self.identity(dim - 1, c))
                .collect::<Result<_>>()?
        };
        Ok(Scheme::list_unchecked(dim + 1, cols))
    }
}

impl CellProvider for Schemes {
    type Cell = Scheme;

    fn contains(&self, dim: usize, cell: &Scheme) -> bool {
        cell.dim == dim
    }

    fn source(&self, _dim: usize, cell: &Scheme) -> Scheme {
        cell.boundary().expect("positive dimension")
    }

    fn target(&self, dim: usize, cell: &Scheme) -> Scheme {
        self.source(dim, cell)
    }

    fn describe(&self, _dim: usize, cell: &Scheme) -> String {
        cell.to_string()
    }
}

/// The free strict ω-category on whatever the labels live in: its cells
/// are diagrams, composition concatenates paths.
pub struct Diagrams<C>(PhantomData<C>);

impl<C> Diagrams<C> {
    pub fn new() -> Self {
        Diagrams(PhantomData)
    }
}

impl<C> Default for Diagrams<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Clone + PartialEq + fmt::Debug> StrictCategory for Diagrams<C> {
    type Cell = Diagram<C>;

    fn compose(&self, along: usize, dim: usize, g: &Diagram<C>, f: &Diagram<C>) -> Result<Diagram<C>> {
        match (g, f) {
            (
                Diagram::Path {
                    dim: gd,
                    points: gp,
                    cols: gc,
                },
                Diagram::Path {
                    dim: fd,
                    points: fp,
                    cols: fc,
                },
            ) if *gd == dim && *fd == dim && along < dim => {
                if along == 0 {
                    if fp.last() != gp.first() {
                        return Err(Error::BoundaryMismatch(format!(
                            "endpoint {:?} does not meet start point {:?}",
                            fp.last(),
                            gp.first()
                        )));
                    }
                    let mut points = fp.clone();
                    points.extend(gp[1..].iter().cloned());
                    let mut cols = fc.clone();
                    cols.extend(gc.iter().cloned());
                    return Ok(Diagram::Path { dim, points, cols });
                }
                if gp != fp || gc.len() != fc.len() {
                    return Err(Error::BoundaryMismatch(format!(
                        "diagrams do not meet along dimension {along}"
                    )));
                }
                let cols = gc
                    .iter()
                    .zip(fc)
                    .map(|(a, b)| self.compose(along - 1, dim - 1, a, b))
                    .collect::<Result<_>>()?;
                Ok(Diagram::Path {
                    dim,
                    points: gp.clone(),
                    cols,
                })
            }
            _ => Err(Error::BoundaryMismatch(format!(
                "cannot compose diagrams of dimensions {} and {} along {along}",
                g.dim(),
                f.dim()
            ))),
        }
    }

    fn identity(&self, dim: usize, d: &Diagram<C>) -> Result<Diagram<C>> {
        match d {
            Diagram::Cell(x) => Ok(Diagram::empty_path(1, x.clone())),
            Diagram::Path { dim: dd, points, cols } => Ok(Diagram::Path {
                dim: dd + 1,
                points: points.clone(),
                cols: cols
                    .iter()
                    .map(|c| self.identity(dim.saturating_sub(1), c))
                    .collect::<Result<_>>()?,
            }),
        }
    }
}

impl<C: Clone + PartialEq + fmt::Debug> CellProvider for Diagrams<C> {
    type Cell = Diagram<C>;

    fn contains(&self, dim: usize, cell: &Diagram<C>) -> bool {
        cell.dim() == dim && cell.check_structure().is_ok()
    }

    fn source(&self, _dim: usize, cell: &Diagram<C>) -> Diagram<C> {
        cell.boundary(Side::Source).expect("positive dimension")
    }

    fn target(&self, _dim: usize, cell: &Diagram<C>) -> Diagram<C> {
        cell.boundary(Side::Target).expect("positive dimension")
    }
}

/// Monad multiplication: composes a diagram of diagrams into one diagram.
pub fn flatten<C: Clone + PartialEq + fmt::Debug>(d: &Diagram<Diagram<C>>) -> Result<Diagram<C>> {
    let provider = Diagrams::<C>::new();
    check_diagram(&provider, d)?;
    evaluate(&provider, d)
}

/// Splits `b` into consecutive pieces whose `along`-composite is `b`, guided
/// by the shapes of the pieces.
fn split<X: Clone>(along: usize, b: &Diagram<X>, shapes: &[Scheme]) -> Result<Vec<Diagram<X>>> {
    let Diagram::Path { dim, points, cols } = b else {
        return Err(Error::ShapeMismatch {
            expected: "a path".into(),
            found: "a cell".into(),
        });
    };
    if along == 0 {
        let total: usize = shapes.iter().map(|s| s.cols.len()).sum();
        if total != cols.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{total} columns"),
                found: format!("{} columns", cols.len()),
            });
        }
        let mut out = Vec::with_capacity(shapes.len());
        let mut off = 0;
        for s in shapes {
            let n = s.cols.len();
            out.push(Diagram::Path {
                dim: *dim,
                points: points[off..=off + n].to_vec(),
                cols: cols[off..off + n].to_vec(),
            });
            off += n;
        }
        return Ok(out);
    }
    if shapes.iter().any(|s| s.cols.len() != cols.len()) {
        return Err(Error::ShapeMismatch {
            expected: format!("pieces with {} columns", cols.len()),
            found: "a different column count".into(),
        });
    }
    let mut per_piece: Vec<Vec<Diagram<X>>> = vec![Vec::with_capacity(cols.len()); shapes.len()];
    for (i, col) in cols.iter().enumerate() {
        let col_shapes: Vec<Scheme> = shapes.iter().map(|s| s.cols[i].clone()).collect();
        for (j, piece) in split(along - 1, col, &col_shapes)?.into_iter().enumerate() {
            per_piece[j].push(piece);
        }
    }
    Ok(per_piece
        .into_iter()
        .map(|pcols| Diagram::Path {
            dim: *dim,
            points: points.clone(),
            cols: pcols,
        })
        .collect())
}

/// Inverse of [`flatten`] along a known arity diagram: given a diagram `arities`
/// of schemes and a diagram `b` whose shape is the flattening of `arities`,
/// returns, for every position of `arities`, the sub-diagram of `b` it
/// contributes.
pub fn unflatten<X: Clone>(arities: &Diagram<Scheme>, b: &Diagram<X>) -> Result<Diagram<Diagram<X>>> {
    unflatten_node(arities, 0, b)
}

fn unflatten_node<X: Clone>(node: &Diagram<Scheme>, depth: usize, b: &Diagram<X>) -> Result<Diagram<Diagram<X>>> {
    match node {
        Diagram::Cell(s) => {
            if s.dim != b.dim() {
                return Err(Error::ShapeMismatch {
                    expected: s.to_string(),
                    found: b.shape().to_string(),
                });
            }
            Ok(Diagram::Cell(b.clone()))
        }
        Diagram::Path { dim, cols, .. } => {
            if cols.is_empty() {
                let p = b.boundary_to(depth, Side::Source)?;
                return Ok(Diagram::Path {
                    dim: *dim,
                    points: vec![p],
                    cols: Vec::new(),
                });
            }
            let shapes = cols
                .iter()
                .map(|c| eval_node(&Schemes, c, depth + 1))
                .collect::<Result<Vec<_>>>()?;
            let pieces = split(depth, b, &shapes)?;
            let mut points = Vec::with_capacity(cols.len() + 1);
            let mut new_cols = Vec::with_capacity(cols.len());
            points.push(pieces[0].boundary_to(depth, Side::Source)?);
            for (col, piece) in cols.iter().zip(&pieces) {
                new_cols.push(unflatten_node(col, depth + 1, piece)?);
                points.push(piece.boundary_to(depth, Side::Target)?);
            }
            Ok(Diagram::Path {
                dim: *dim,
                points,
                cols: new_cols,
            })
        }
    }
}

/// Wraps a diagram living in the hom between `x` and `y` into the one-column
/// path `<x | d | y>`, one dimension up.
pub fn suspend_path<C>(d: Diagram<C>, x: C, y: C) -> Diagram<C> {
    Diagram::Path {
        dim: d.dim() + 1,
        points: vec![x, y],
        cols: vec![d],
    }
}

/// Points and columns of a path under construction.
type PartialPath<C> = (Vec<C>, Vec<Diagram<C>>);

/// All diagrams of dimension `k` in `p` whose paths have length at most
/// `max_len` at every level, in a deterministic order.
pub fn enumerate_diagrams<P: FiniteProvider>(p: &P, k: usize, max_len: usize) -> Vec<Diagram<P::Cell>> {
    enum_node(p, 0, k, max_len, None)
}

fn enum_node<P: FiniteProvider>(
    p: &P,
    depth: usize,
    rel: usize,
    max_len: usize,
    flank: Option<(&P::Cell, &P::Cell)>,
) -> Vec<Diagram<P::Cell>> {
    let candidates = match flank {
        None => p.cells(depth),
        Some((a, b)) => p.cells_between(depth, a, b),
    };
    if rel == 0 {
        return candidates.into_iter().map(Diagram::Cell).collect();
    }
    let mut out = Vec::new();
    // (points, cols) partial paths, extended one column at a time.
    let mut frontier: Vec<PartialPath<P::Cell>> = candidates.iter().map(|c| (vec![c.clone()], Vec::new())).collect();
    for len in 0..=max_len {
        for (points, cols) in &frontier {
            if cols.len() == len {
                out.push(Diagram::Path {
                    dim: rel,
                    points: points.clone(),
                    cols: cols.clone(),
                });
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (points, cols) in &frontier {
            let last = points.last().expect("paths have a point");
            for q in &candidates {
                for col in enum_node(p, depth + 1, rel - 1, max_len, Some((last, q))) {
                    let mut np = points.clone();
                    np.push(q.clone());
                    let mut nc = cols.clone();
                    nc.push(col);
                    next.push((np, nc));
                }
            }
        }
        frontier = next;
    }
    out
}

/// All diagrams of the given shape in `p`.
pub fn diagrams_of_shape<P: FiniteProvider>(p: &P, shape: &Scheme) -> Vec<Diagram<P::Cell>> {
    shape_node(p, shape, 0, None)
}

fn shape_node<P: FiniteProvider>(
    p: &P,
    shape: &Scheme,
    depth: usize,
    flank: Option<(&P::Cell, &P::Cell)>,
) -> Vec<Diagram<P::Cell>> {
    let candidates = match flank {
        None => p.cells(depth),
        Some((a, b)) => p.cells_between(depth, a, b),
    };
    if shape.dim == 0 {
        return candidates.into_iter().map(Diagram::Cell).collect();
    }
    let mut frontier: Vec<PartialPath<P::Cell>> = candidates.iter().map(|c| (vec![c.clone()], Vec::new())).collect();
    for col_shape in &shape.cols {
        let mut next = Vec::new();
        for (points, cols) in &frontier {
            let last = points.last().expect("paths have a point");
            for q in &candidates {
                for col in shape_node(p, col_shape, depth + 1, Some((last, q))) {
                    let mut np = points.clone();
                    np.push(q.clone());
                    let mut nc = cols.clone();
                    nc.push(col);
                    next.push((np, nc));
                }
            }
        }
        frontier = next;
    }
    frontier
        .into_iter()
        .map(|(points, cols)| Diagram::Path {
            dim: shape.dim,
            points,
            cols,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt() -> Scheme {
        Scheme::point()
    }

    fn l(dim: usize, cols: Vec<Scheme>) -> Scheme {
        Scheme::list(dim, cols).unwrap()
    }

    fn figure_scheme() -> Scheme {
        l(2, vec![l(1, vec![pt()]), l(1, vec![]), l(1, vec![pt(), pt()])])
    }

    #[test]
    fn boundary_of_figure_scheme_is_three_arrow_path() {
        assert_eq!(figure_scheme().boundary().unwrap(), l(1, vec![pt(), pt(), pt()]));
        assert_eq!(figure_scheme().to_string(), "[[*],[],[*,*]]@2");
    }

    #[test]
    fn named_schemes() {
        let n = Truncation::new(3);
        assert_eq!(two(n, 1).unwrap(), l(1, vec![pt(), pt()]));
        assert_eq!(zero(n, 2).unwrap(), l(2, vec![l(1, vec![])]));
        assert_eq!(one(n, 2).unwrap(), l(2, vec![l(1, vec![pt()])]));
        for k in 1..=3 {
            let below = one(n, k - 1).unwrap();
            assert_eq!(one(n, k).unwrap().boundary().unwrap(), below);
            assert_eq!(zero(n, k).unwrap().boundary().unwrap(), below);
            assert_eq!(two(n, k).unwrap().boundary().unwrap(), below);
        }
        assert!(matches!(one(n, 4), Err(Error::DimensionOverflow { .. })));
        assert!(zero(n, 0).is_err());
        assert!(pt().boundary().is_err());
    }

    #[test]
    fn shape_of_paths() {
        let d: Diagram<&str> =
            Diagram::path(1, vec!["x", "y", "z"], vec![Diagram::Cell("f"), Diagram::Cell("g")]).unwrap();
        assert_eq!(d.shape(), l(1, vec![pt(), pt()]));
        let e: Diagram<&str> = Diagram::empty_path(2, "x");
        assert_eq!(e.shape(), l(2, vec![]));
        assert_ne!(e.shape(), zero(Truncation::DEFAULT, 2).unwrap());
    }

    #[test]
    fn diagram_boundaries() {
        let d: Diagram<&str> = Diagram::path(1, vec!["x", "y"], vec![Diagram::Cell("f")]).unwrap();
        assert_eq!(d.boundary(Side::Source).unwrap(), Diagram::Cell("x"));
        let two_cell: Diagram<&str> = Diagram::path(
            2,
            vec!["x", "y"],
            vec![Diagram::path(1, vec!["f", "g"], vec![Diagram::Cell("alpha")]).unwrap()],
        )
        .unwrap();
        assert_eq!(
            two_cell.boundary(Side::Target).unwrap(),
            d.map(|_, c| if *c == "f" { "g" } else { *c })
        );
    }

    #[test]
    fn flatten_concatenates() {
        let inner1: Diagram<&str> =
            Diagram::path(1, vec!["a", "b", "c"], vec![Diagram::Cell("f"), Diagram::Cell("g")]).unwrap();
        let inner2: Diagram<&str> = Diagram::path(1, vec!["c", "d"], vec![Diagram::Cell("h")]).unwrap();
        let outer = Diagram::path(
            1,
            vec![Diagram::Cell("a"), Diagram::Cell("c"), Diagram::Cell("d")],
            vec![Diagram::Cell(inner1), Diagram::Cell(inner2)],
        )
        .unwrap();
        let flat = flatten(&outer).unwrap();
        assert_eq!(flat.shape(), l(1, vec![pt(), pt(), pt()]));
        let bad = Diagram::path(
            1,
            vec![Diagram::Cell("a"), Diagram::Cell("x"), Diagram::Cell("d")],
            outer_cols(&outer),
        )
        .unwrap();
        assert!(flatten(&bad).is_err());
    }

    fn outer_cols<C: Clone>(d: &Diagram<C>) -> Vec<Diagram<C>> {
        match d {
            Diagram::Path { cols, .. } => cols.clone(),
            Diagram::Cell(_) => vec![],
        }
    }

    #[test]
    fn scheme_substitution_by_evaluation() {
        let d = Diagram::path(
            1,
            vec![pt(), pt(), pt()],
            vec![Diagram::Cell(l(1, vec![pt(), pt()])), Diagram::Cell(l(1, vec![pt()]))],
        )
        .unwrap();
        assert_eq!(evaluate(&Schemes, &d).unwrap(), l(1, vec![pt(), pt(), pt()]));
    }

    #[test]
    fn unflatten_recovers_pieces() {
        let arities = Diagram::path(
            1,
            vec![pt(), pt(), pt()],
            vec![Diagram::Cell(l(1, vec![pt(), pt()])), Diagram::Cell(l(1, vec![]))],
        )
        .unwrap();
        let b: Diagram<&str> =
            Diagram::path(1, vec!["x", "y", "z"], vec![Diagram::Cell("f"), Diagram::Cell("g")]).unwrap();
        let pieces = unflatten(&arities, &b).unwrap();
        let flat = flatten(&pieces).unwrap();
        assert_eq!(flat, b);
        match pieces {
            Diagram::Path { points, cols, .. } => {
                assert_eq!(points[2], Diagram::Cell("z"));
                assert_eq!(cols[1], Diagram::Cell(Diagram::empty_path(1, "z")));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn maximal_positions_count() {
        assert_eq!(figure_scheme().maximal_positions(), 4);
        assert_eq!(zero(Truncation::DEFAULT, 3).unwrap().maximal_positions(), 1);
        assert_eq!(figure_scheme().leaves(), 3);
    }
}
