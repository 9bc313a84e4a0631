//! Loading definition files into named, validated values.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use omegahom_core::algebra::{validate_strict_cat, StrictCat, StrictFunctor};
use omegahom_core::globset::{GlobMorphism, GlobSet};
use omegahom_core::groupoid::{Witness, WitnessSet};
use omegahom_core::lterm::{binary_cell, identity_cell, normalize, RawTerm, Term};
use omegahom_core::pasting::{check_diagram, Diagram, Scheme};
use omegahom_core::{Error, Report, Truncation};

use crate::syntax::{
    parse, CellDecl, DiagramLit, DiagramSyntax, Located, ParseError, SchemeLit, SchemeSyntax, Statement, TermSyntax,
};

/// Failures that stop a file from loading at all.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{file}: {source}")]
    Parse { file: String, source: ParseError },
    #[error("{file}: cannot read: {message}")]
    Io { file: String, message: String },
    #[error("{file}, line {line}: {kind} {name} is already defined")]
    Duplicate {
        file: String,
        line: usize,
        kind: Kind,
        name: String,
    },
    #[error("{file}: include cycle through {target}")]
    IncludeCycle { file: String, target: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Globular sets and strict categories share one namespace.
    Carrier,
    Map,
    Witness,
    Scheme,
    Term,
    Diagram,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Carrier => "carrier",
            Kind::Map => "map",
            Kind::Witness => "witness set",
            Kind::Scheme => "scheme",
            Kind::Term => "term",
            Kind::Diagram => "diagram",
        })
    }
}

/// A strict category with its audit.
#[derive(Clone, Debug)]
pub struct CatDef {
    pub cat: Arc<StrictCat>,
    pub report: Report,
}

#[derive(Clone, Debug)]
pub struct MapDef {
    pub morphism: GlobMorphism,
    /// Present when both ends are strict categories.
    pub functor: Option<(StrictFunctor, Report)>,
}

#[derive(Clone, Debug)]
pub struct WitnessDef {
    pub algebra: String,
    pub set: WitnessSet,
}

#[derive(Clone, Debug)]
pub struct DiagramDef {
    pub carrier: String,
    pub diagram: Diagram<usize>,
}

#[derive(Clone, Debug)]
pub enum Value {
    GlobSet(Arc<GlobSet>),
    StrictCat(CatDef),
    Map(MapDef),
    Witness(WitnessDef),
    Scheme(Scheme),
    Term(Term),
    Diagram(DiagramDef),
}

impl Value {
    pub fn carrier(&self) -> Option<&Arc<GlobSet>> {
        match self {
            Value::GlobSet(g) => Some(g),
            Value::StrictCat(c) => Some(c.cat.carrier()),
            _ => None,
        }
    }
}

/// One loaded statement: its syntax, where it came from, and either its
/// validated value or the reason it failed validation.
#[derive(Clone, Debug)]
pub struct Item {
    pub name: String,
    pub kind: Kind,
    pub stmt: Statement,
    pub file: String,
    pub line: usize,
    pub value: Result<Value, String>,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub truncation: Truncation,
    pub items: Vec<Item>,
    index: HashMap<(Kind, String), usize>,
}

fn statement_name(stmt: &Statement) -> Option<(Kind, &str)> {
    Some(match stmt {
        Statement::Include(_) => return None,
        Statement::GlobSet { name, .. } | Statement::StrictCat { name, .. } => (Kind::Carrier, name),
        Statement::Map { name, .. } => (Kind::Map, name),
        Statement::Witness { name, .. } => (Kind::Witness, name),
        Statement::Scheme { name, .. } => (Kind::Scheme, name),
        Statement::Term { name, .. } => (Kind::Term, name),
        Statement::Diagram { name, .. } => (Kind::Diagram, name),
    })
}

impl Workspace {
    pub fn new(truncation: Truncation) -> Self {
        Workspace {
            truncation,
            items: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Loads a file and everything it includes.
    pub fn load(path: &Path, truncation: Truncation) -> Result<Self, LoadError> {
        let mut ws = Workspace::new(truncation);
        let mut stack = BTreeSet::new();
        ws.load_file(path, &mut stack)?;
        Ok(ws)
    }

    /// Loads source text; includes resolve against `base`.
    pub fn from_source(src: &str, base: &Path, truncation: Truncation) -> Result<Self, LoadError> {
        let mut ws = Workspace::new(truncation);
        let mut stack = BTreeSet::new();
        ws.load_text(src, "<input>", base, &mut stack)?;
        Ok(ws)
    }

    fn load_file(&mut self, path: &Path, stack: &mut BTreeSet<PathBuf>) -> Result<(), LoadError> {
        let shown = path.display().to_string();
        let canonical = path.canonicalize().map_err(|e| LoadError::Io {
            file: shown.clone(),
            message: e.to_string(),
        })?;
        if !stack.insert(canonical.clone()) {
            return Err(LoadError::IncludeCycle {
                file: shown.clone(),
                target: shown,
            });
        }
        let src = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
            file: shown.clone(),
            message: e.to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
        self.load_text(&src, &shown, &base, stack)?;
        stack.remove(&canonical);
        Ok(())
    }

    fn load_text(
        &mut self,
        src: &str,
        file: &str,
        base: &Path,
        stack: &mut BTreeSet<PathBuf>,
    ) -> Result<(), LoadError> {
        let stmts = parse(src).map_err(|source| LoadError::Parse {
            file: file.to_string(),
            source,
        })?;
        for Located { stmt, line, .. } in stmts {
            if let Statement::Include(rel) = &stmt {
                self.load_file(&base.join(rel), stack)?;
                continue;
            }
            let (kind, name) = statement_name(&stmt).expect("includes handled above");
            let name = name.to_string();
            if self.index.contains_key(&(kind, name.clone())) {
                return Err(LoadError::Duplicate {
                    file: file.to_string(),
                    line,
                    kind,
                    name,
                });
            }
            let value = self.evaluate(&stmt);
            self.index.insert((kind, name.clone()), self.items.len());
            self.items.push(Item {
                name,
                kind,
                stmt,
                file: file.to_string(),
                line,
                value,
            });
        }
        Ok(())
    }

    pub fn item(&self, kind: Kind, name: &str) -> Option<&Item> {
        self.index.get(&(kind, name.to_string())).map(|&i| &self.items[i])
    }

    /// Every item with the given name, in definition order.
    pub fn items_named(&self, name: &str) -> Vec<&Item> {
        self.items.iter().filter(|i| i.name == name).collect()
    }

    fn valid(&self, kind: Kind, name: &str) -> Result<&Value, String> {
        match self.item(kind, name) {
            None => Err(format!("no {kind} named {name}")),
            Some(Item { value: Err(e), .. }) => Err(format!("{kind} {name} is invalid: {e}")),
            Some(Item { value: Ok(v), .. }) => Ok(v),
        }
    }

    fn carrier(&self, name: &str) -> Result<Arc<GlobSet>, String> {
        Ok(self
            .valid(Kind::Carrier, name)?
            .carrier()
            .expect("carriers have carriers")
            .clone())
    }

    fn evaluate(&self, stmt: &Statement) -> Result<Value, String> {
        let n = self.truncation;
        match stmt {
            Statement::Include(_) => unreachable!("includes are expanded"),
            Statement::GlobSet { dim, cells, .. } => Ok(Value::GlobSet(Arc::new(self.build_carrier(*dim, cells)?))),
            Statement::StrictCat {
                dim,
                cells,
                comps,
                idents,
                ..
            } => {
                let carrier = Arc::new(self.build_carrier(*dim, cells)?);
                let mut b = StrictCat::builder(carrier);
                for (j, g, f, h) in comps {
                    b.comp(*j, g, f, h);
                }
                for (x, ix) in idents {
                    b.ident(x, ix);
                }
                let cat = b.build().map_err(|r| r.to_string())?;
                let report = validate_strict_cat(&cat);
                Ok(Value::StrictCat(CatDef {
                    cat: Arc::new(cat),
                    report,
                }))
            }
            Statement::Map { dom, cod, pairs, .. } => {
                let (dg, cg) = (self.carrier(dom)?, self.carrier(cod)?);
                let morphism = GlobMorphism::from_names(dg, cg, pairs).map_err(|r| r.to_string())?;
                let functor = match (self.valid(Kind::Carrier, dom)?, self.valid(Kind::Carrier, cod)?) {
                    (Value::StrictCat(a), Value::StrictCat(b)) => {
                        let f = StrictFunctor {
                            dom: a.cat.clone(),
                            cod: b.cat.clone(),
                            map: morphism.clone(),
                        };
                        let report = f.validate();
                        Some((f, report))
                    }
                    _ => None,
                };
                Ok(Value::Map(MapDef { morphism, functor }))
            }
            Statement::Witness { algebra, entries, .. } => {
                let Value::StrictCat(c) = self.valid(Kind::Carrier, algebra)? else {
                    return Err(format!("{algebra} is a globular set, not an algebra"));
                };
                let g = c.cat.carrier();
                let mut set = WitnessSet::new();
                for e in entries {
                    let cell = g
                        .find_any(&e.cell)
                        .ok_or_else(|| Error::UnknownCell(e.cell.clone()).to_string())?;
                    let at = |name: &str, dim: usize| {
                        g.find(dim, name)
                            .ok_or_else(|| format!("{name} is not a {dim}-cell of {algebra}"))
                    };
                    let inverse = at(&e.inverse, cell.dim)?;
                    let (eta, eps) = match &e.eta {
                        None => (None, None),
                        Some((a, b)) => (Some(at(a, cell.dim + 1)?), Some(at(b, cell.dim + 1)?)),
                    };
                    if set.get(cell.dim, cell.id).is_some() {
                        return Err(format!("{} is witnessed twice", e.cell));
                    }
                    set.insert(cell.dim, cell.id, Witness { inverse, eta, eps });
                }
                Ok(Value::Witness(WitnessDef {
                    algebra: algebra.clone(),
                    set,
                }))
            }
            Statement::Scheme { scheme, .. } => Ok(Value::Scheme(self.scheme(scheme)?)),
            Statement::Term { term, .. } => {
                let raw = self.raw_term(term)?;
                normalize(n, &raw).map(Value::Term).map_err(|e| e.to_string())
            }
            Statement::Diagram { carrier, diagram, .. } => {
                let g = self.carrier(carrier)?;
                let d = self.diagram(diagram, &mut |depth, name: &String| {
                    g.find(depth, name)
                        .ok_or_else(|| format!("{name} is not a {depth}-cell of {carrier}"))
                })?;
                check_diagram(&*g, &d).map_err(|e| e.to_string())?;
                Ok(Value::Diagram(DiagramDef {
                    carrier: carrier.clone(),
                    diagram: d,
                }))
            }
        }
    }

    fn build_carrier(&self, dim: usize, cells: &[CellDecl]) -> Result<GlobSet, String> {
        self.truncation.check(dim).map_err(|e| e.to_string())?;
        let mut b = GlobSet::builder(dim);
        for c in cells {
            b.add_cell(
                &c.name,
                c.dim,
                c.boundary.as_ref().map(|(s, t)| (s.as_str(), t.as_str())),
            );
        }
        b.build().map_err(|r| r.to_string())
    }

    /// Resolves a scheme literal, checking the truncation.
    pub fn scheme(&self, lit: &SchemeLit) -> Result<Scheme, String> {
        let s = match (&lit.body, lit.dim) {
            (SchemeSyntax::Ref(name), _) => match self.valid(Kind::Scheme, name)? {
                Value::Scheme(s) => s.clone(),
                _ => unreachable!("scheme kind"),
            },
            (SchemeSyntax::Point, _) => Scheme::point(),
            (body, Some(dim)) => scheme_at(body, dim)?,
            (_, None) => return Err("a list scheme needs a dimension annotation".into()),
        };
        self.truncation.check(s.dim()).map_err(|e| e.to_string())?;
        Ok(s)
    }

    fn raw_term(&self, t: &TermSyntax) -> Result<RawTerm, String> {
        let n = self.truncation;
        Ok(match t {
            TermSyntax::Unit(k) => RawTerm::Unit(*k),
            TermSyntax::Identity(k) => RawTerm::Normal(identity_cell(n, *k).map_err(|e| e.to_string())?),
            TermSyntax::Binary(k) => RawTerm::Normal(binary_cell(n, *k).map_err(|e| e.to_string())?),
            TermSyntax::Ref(name) => match self.valid(Kind::Term, name)? {
                Value::Term(t) => RawTerm::Normal(t.clone()),
                _ => unreachable!("term kind"),
            },
            TermSyntax::Kappa0 => RawTerm::Kappa {
                pair: None,
                arity: Scheme::point(),
            },
            TermSyntax::Kappa(p, q, s) => RawTerm::Kappa {
                pair: Some(Box::new((self.raw_term(p)?, self.raw_term(q)?))),
                arity: self.scheme(s)?,
            },
            TermSyntax::Comp(h, body) => RawTerm::Comp {
                head: Box::new(self.raw_term(h)?),
                body: Box::new(self.diagram(body, &mut |_, l| self.raw_term(l))?),
            },
        })
    }

    /// Resolves a diagram literal; `label` receives each label with its
    /// dimension.
    pub fn diagram<L, C>(
        &self,
        lit: &DiagramLit<L>,
        label: &mut dyn FnMut(usize, &L) -> Result<C, String>,
    ) -> Result<Diagram<C>, String> {
        match (&lit.body, lit.dim) {
            (DiagramSyntax::Label(l), None) => Ok(Diagram::Cell(label(0, l)?)),
            (body, Some(dim)) => {
                self.truncation.check(dim).map_err(|e| e.to_string())?;
                diagram_at(body, dim, 0, label)
            }
            (DiagramSyntax::Path { .. }, None) => Err("a path needs a dimension annotation".into()),
        }
    }
}

fn scheme_at(s: &SchemeSyntax, dim: usize) -> Result<Scheme, String> {
    match s {
        SchemeSyntax::Point if dim == 0 => Ok(Scheme::point()),
        SchemeSyntax::Point => Err(format!("`*` appears where a scheme of dimension {dim} is needed")),
        SchemeSyntax::List(_) if dim == 0 => Err("a list appears where `*` is needed".into()),
        SchemeSyntax::List(items) => {
            let cols = items.iter().map(|i| scheme_at(i, dim - 1)).collect::<Result<_, _>>()?;
            Scheme::list(dim, cols).map_err(|e| e.to_string())
        }
        SchemeSyntax::Ref(name) => Err(format!("scheme reference {name} cannot be nested")),
    }
}

/// `depth` is the dimension of the endpoints of the path being built.
fn diagram_at<L, C>(
    d: &DiagramSyntax<L>,
    dim: usize,
    depth: usize,
    label: &mut dyn FnMut(usize, &L) -> Result<C, String>,
) -> Result<Diagram<C>, String> {
    match d {
        DiagramSyntax::Label(l) if dim == 0 => Ok(Diagram::Cell(label(depth, l)?)),
        DiagramSyntax::Label(_) => Err(format!(
            "a bare label appears where a path of dimension {dim} is needed"
        )),
        DiagramSyntax::Path { .. } if dim == 0 => Err("a path appears where a label is needed".into()),
        DiagramSyntax::Path { points, cols } => {
            let points = points.iter().map(|p| label(depth, p)).collect::<Result<Vec<_>, _>>()?;
            let cols = cols
                .iter()
                .map(|c| diagram_at(c, dim - 1, depth + 1, label))
                .collect::<Result<Vec<_>, _>>()?;
            Diagram::path(dim, points, cols).map_err(|e| e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(src: &str) -> Workspace {
        Workspace::from_source(src, Path::new("."), Truncation::DEFAULT).unwrap()
    }

    #[test]
    fn invalid_terms_are_kept_with_their_error() {
        let ws = load("term bad = kappa(e@0, e@1, [*,*]@1);\nterm good = comp2@1;");
        let bad = ws.item(Kind::Term, "bad").unwrap();
        assert!(bad.value.is_err());
        assert!(ws.item(Kind::Term, "good").unwrap().value.is_ok());
    }

    #[test]
    fn duplicates_are_fatal() {
        let e =
            Workspace::from_source("scheme s = *;\nscheme s = *;", Path::new("."), Truncation::DEFAULT).unwrap_err();
        assert!(matches!(e, LoadError::Duplicate { line: 2, .. }));
    }

    #[test]
    fn diagrams_resolve_by_dimension() {
        let ws = load(
            "globset G { dim 1; cell x @0; cell y @0; cell f : x -> y @1; }\n\
             diagram d in G = <x | f | y>@1;\ndiagram e in G = <y | f | x>@1;",
        );
        assert!(ws.item(Kind::Diagram, "d").unwrap().value.is_ok());
        assert!(ws.item(Kind::Diagram, "e").unwrap().value.is_err());
    }
}
