//! The subcommands. Each produces keyed output records and an exit code:
//! 0 when the check holds, 1 when it fails or the library reports an
//! error, 2 for usage errors.

use std::sync::Arc;

use clap::ValueEnum;
use omegahom_core::algebra::{
    check_algebra_axioms, check_functor_hom, compare_hom, show, Algebra, CanonicalAction, HomAlgebra,
};
use omegahom_core::globset::{check_rlp, solve_contraction, GlobMorphism, GlobSet};
use omegahom_core::groupoid::{
    check_groupoid, check_witnesses, hom_groupoid_check, strict_groupoid_witnesses, WitnessSet,
};
use omegahom_core::lterm::{equal_terms, Term, TermEnumerator};
use omegahom_core::pasting::{enumerate_diagrams, Diagram, Scheme, Side};
use omegahom_core::suspension::{suspend_scheme, suspend_term};
use omegahom_core::Report;

use crate::workspace::{CatDef, Item, Kind, MapDef, Value, WitnessDef, Workspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Boundary,
    Arity,
    Normalize,
    Equal,
    SuspendScheme,
    SuspendTerm,
    Eval,
    Hom,
    HomCompare,
    Invertible,
    Groupoid,
    HomGroupoid,
    Rlp,
    Enumerate,
}

impl Command {
    pub fn usage(self) -> &'static str {
        match self {
            Command::Validate => "validate [NAME...]",
            Command::Boundary => "boundary SCHEME|TERM|DIAGRAM",
            Command::Arity => "arity TERM",
            Command::Normalize => "normalize TERM",
            Command::Equal => "equal TERM TERM",
            Command::SuspendScheme => "suspend-scheme SCHEME",
            Command::SuspendTerm => "suspend-term TERM",
            Command::Eval => "eval STRICTCAT TERM DIAGRAM",
            Command::Hom => "hom STRICTCAT X Y",
            Command::HomCompare => "hom-compare STRICTCAT|FUNCTOR [X Y]",
            Command::Invertible => "invertible STRICTCAT WITNESS CELL",
            Command::Groupoid => "groupoid STRICTCAT [WITNESS]",
            Command::HomGroupoid => "hom-groupoid STRICTCAT [WITNESS] [X Y]",
            Command::Rlp => "rlp MAP",
            Command::Enumerate => "enumerate terms DIM | enumerate diagrams CARRIER DIM",
        }
    }
}

/// Search bounds for the exhaustive checks.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub term_size: usize,
    pub diag_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            term_size: 10,
            diag_len: 4,
        }
    }
}

/// Result of one command: output records, diagnostics and an exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub records: Vec<(String, String)>,
    pub diagnostics: Vec<String>,
}

enum Fail {
    Usage(String),
    Failed(String),
}

type Run = Result<Outcome, Fail>;

const TRUNCATION_NOTE: &str =
    "the top dimension has no cells above it to hold eta and eps, so top-dimensional cells need strict inverses";

struct Out {
    records: Vec<(String, String)>,
    diagnostics: Vec<String>,
}

impl Out {
    fn new() -> Self {
        Out {
            records: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn push(&mut self, key: &str, value: impl ToString) {
        self.records.push((key.to_string(), value.to_string()));
    }

    fn report(&mut self, r: &Report) {
        self.push("status", if r.is_ok() { "ok" } else { "violation" });
        self.push("checks", r.checked());
        for v in r.violations() {
            self.push("violation", format!("[{}] {}", v.family, v.message));
        }
    }

    fn finish(self, ok: bool) -> Run {
        Ok(Outcome {
            code: if ok { 0 } else { 1 },
            records: self.records,
            diagnostics: self.diagnostics,
        })
    }
}

fn summary(r: &Report) -> String {
    if r.is_ok() {
        return r.to_string();
    }
    r.violations()
        .iter()
        .map(|v| format!("[{}] {}", v.family, v.message))
        .collect::<Vec<_>>()
        .join("; ")
}

fn failed(e: impl ToString) -> Fail {
    Fail::Failed(e.to_string())
}

struct Ctx<'a> {
    ws: &'a Workspace,
    bounds: Bounds,
}

impl<'a> Ctx<'a> {
    fn value(&self, kind: Kind, name: &str) -> Result<&'a Value, Fail> {
        match self.ws.item(kind, name) {
            None => Err(Fail::Usage(format!("no {kind} named {name}"))),
            Some(Item { value: Err(e), .. }) => Err(failed(format!("{kind} {name} is invalid: {e}"))),
            Some(Item { value: Ok(v), .. }) => Ok(v),
        }
    }

    fn term(&self, name: &str) -> Result<&'a Term, Fail> {
        match self.value(Kind::Term, name)? {
            Value::Term(t) => Ok(t),
            _ => unreachable!("term kind"),
        }
    }

    fn scheme(&self, name: &str) -> Result<&'a Scheme, Fail> {
        match self.value(Kind::Scheme, name)? {
            Value::Scheme(s) => Ok(s),
            _ => unreachable!("scheme kind"),
        }
    }

    fn cat(&self, name: &str) -> Result<&'a CatDef, Fail> {
        match self.value(Kind::Carrier, name)? {
            Value::StrictCat(c) if c.report.is_ok() => Ok(c),
            Value::StrictCat(c) => Err(failed(format!("{name} fails validation: {}", summary(&c.report)))),
            _ => Err(Fail::Usage(format!("{name} is a globular set, not a strict category"))),
        }
    }

    fn witness(&self, name: &str, algebra: &str) -> Result<&'a WitnessSet, Fail> {
        match self.value(Kind::Witness, name)? {
            Value::Witness(WitnessDef { algebra: a, set }) if a == algebra => Ok(set),
            Value::Witness(WitnessDef { algebra: a, .. }) => {
                Err(Fail::Usage(format!("{name} witnesses cells of {a}, not {algebra}")))
            }
            _ => unreachable!("witness kind"),
        }
    }

    fn map(&self, name: &str) -> Result<&'a MapDef, Fail> {
        match self.value(Kind::Map, name)? {
            Value::Map(m) => Ok(m),
            _ => unreachable!("map kind"),
        }
    }
}

fn action(c: &CatDef) -> Arc<CanonicalAction> {
    Arc::new(CanonicalAction::new(c.cat.clone()))
}

fn object(g: &GlobSet, name: &str) -> Result<usize, Fail> {
    g.find(0, name)
        .ok_or_else(|| failed(format!("{name} is not an object")))
}

/// Both given objects, or every ordered pair of objects.
fn pairs(g: &GlobSet, names: &[String]) -> Result<Vec<(usize, usize)>, Fail> {
    match names {
        [] => {
            let objs = g.sorted_cells(0);
            Ok(objs.iter().flat_map(|&x| objs.iter().map(move |&y| (x, y))).collect())
        }
        [x, y] => Ok(vec![(object(g, x)?, object(g, y)?)]),
        _ => Err(Fail::Usage("expected two objects or none".into())),
    }
}

fn arity_check(cmd: Command, names: &[String], allowed: &[usize]) -> Result<(), Fail> {
    if allowed.contains(&names.len()) {
        Ok(())
    } else {
        Err(Fail::Usage(format!("usage: omegahom {}", cmd.usage())))
    }
}

/// Runs one command against a loaded workspace.
pub fn run(cmd: Command, names: &[String], ws: &Workspace, bounds: Bounds) -> Outcome {
    let ctx = Ctx { ws, bounds };
    let result = match cmd {
        Command::Validate => validate(&ctx, names),
        Command::Boundary => arity_check(cmd, names, &[1]).and_then(|_| boundary(&ctx, &names[0])),
        Command::Arity => arity_check(cmd, names, &[1]).and_then(|_| {
            let mut out = Out::new();
            out.push("result", ctx.term(&names[0])?.arity());
            out.finish(true)
        }),
        Command::Normalize => arity_check(cmd, names, &[1]).and_then(|_| {
            let mut out = Out::new();
            out.push("result", ctx.term(&names[0])?);
            out.finish(true)
        }),
        Command::Equal => arity_check(cmd, names, &[2]).and_then(|_| {
            let same = equal_terms(ctx.term(&names[0])?, ctx.term(&names[1])?);
            let mut out = Out::new();
            out.push("result", same);
            out.finish(same)
        }),
        Command::SuspendScheme => arity_check(cmd, names, &[1]).and_then(|_| {
            let s = suspend_scheme(ws.truncation, ctx.scheme(&names[0])?).map_err(failed)?;
            let mut out = Out::new();
            out.push("result", s);
            out.finish(true)
        }),
        Command::SuspendTerm => arity_check(cmd, names, &[1]).and_then(|_| {
            let t = suspend_term(ws.truncation, ctx.term(&names[0])?).map_err(failed)?;
            let mut out = Out::new();
            out.push("result", t);
            out.finish(true)
        }),
        Command::Eval => arity_check(cmd, names, &[3]).and_then(|_| eval(&ctx, &names[0], &names[1], &names[2])),
        Command::Hom => arity_check(cmd, names, &[3]).and_then(|_| hom(&ctx, &names[0], &names[1], &names[2])),
        Command::HomCompare => arity_check(cmd, names, &[1, 3]).and_then(|_| hom_compare(&ctx, &names[0], &names[1..])),
        Command::Invertible => {
            arity_check(cmd, names, &[3]).and_then(|_| invertible(&ctx, &names[0], &names[1], &names[2]))
        }
        Command::Groupoid => arity_check(cmd, names, &[1, 2]).and_then(|_| groupoid(&ctx, &names[0], names.get(1))),
        Command::HomGroupoid => arity_check(cmd, names, &[1, 2, 3, 4]).and_then(|_| hom_groupoid(&ctx, names)),
        Command::Rlp => arity_check(cmd, names, &[1]).and_then(|_| rlp(ctx.map(&names[0])?)),
        Command::Enumerate => arity_check(cmd, names, &[2, 3]).and_then(|_| enumerate(&ctx, cmd, names)),
    };
    match result {
        Ok(o) => o,
        Err(Fail::Usage(m)) => Outcome {
            code: 2,
            records: Vec::new(),
            diagnostics: vec![m],
        },
        Err(Fail::Failed(m)) => Outcome {
            code: 1,
            records: Vec::new(),
            diagnostics: vec![m],
        },
    }
}

fn item_status(ctx: &Ctx, item: &Item) -> Result<(), String> {
    let value = item.value.as_ref().map_err(|e| e.clone())?;
    let check = |r: &Report| if r.is_ok() { Ok(()) } else { Err(summary(r)) };
    match value {
        Value::StrictCat(c) => check(&c.report),
        Value::Map(MapDef {
            functor: Some((_, report)),
            ..
        }) => check(report),
        Value::Witness(w) => {
            let c = ctx.cat(&w.algebra).map_err(|f| match f {
                Fail::Usage(m) | Fail::Failed(m) => m,
            })?;
            check(&check_witnesses(&*action(c), &w.set))
        }
        _ => Ok(()),
    }
}

fn validate(ctx: &Ctx, names: &[String]) -> Run {
    let items: Vec<&Item> = if names.is_empty() {
        ctx.ws.items.iter().collect()
    } else {
        let mut v = Vec::new();
        for n in names {
            let found = ctx.ws.items_named(n);
            if found.is_empty() {
                return Err(Fail::Usage(format!("nothing named {n}")));
            }
            v.extend(found);
        }
        v
    };
    let mut out = Out::new();
    let mut ok = true;
    for item in items {
        let key = format!("{} {}", item.kind, item.name);
        match item_status(ctx, item) {
            Ok(()) => out.push(&key, "ok"),
            Err(e) => {
                ok = false;
                out.push(&key, format!("invalid: {e}"));
            }
        }
    }
    out.finish(ok)
}

fn boundary(ctx: &Ctx, name: &str) -> Run {
    let mut out = Out::new();
    if ctx.ws.item(Kind::Scheme, name).is_some() {
        out.push("result", ctx.scheme(name)?.boundary().map_err(failed)?);
    } else if ctx.ws.item(Kind::Term, name).is_some() {
        let t = ctx.term(name)?;
        out.push("source", t.src().map_err(failed)?);
        out.push("target", t.tgt().map_err(failed)?);
    } else if ctx.ws.item(Kind::Diagram, name).is_some() {
        let Value::Diagram(d) = ctx.value(Kind::Diagram, name)? else {
            unreachable!("diagram kind")
        };
        let g = ctx
            .value(Kind::Carrier, &d.carrier)?
            .carrier()
            .expect("carrier")
            .clone();
        let s = d.diagram.boundary(Side::Source).map_err(failed)?;
        let t = d.diagram.boundary(Side::Target).map_err(failed)?;
        out.push("source", show(&g, &s));
        out.push("target", show(&g, &t));
    } else {
        return Err(Fail::Usage(format!("no scheme, term or diagram named {name}")));
    }
    out.finish(true)
}

fn eval(ctx: &Ctx, c: &str, t: &str, d: &str) -> Run {
    let cat = ctx.cat(c)?;
    let term = ctx.term(t)?;
    let Value::Diagram(dd) = ctx.value(Kind::Diagram, d)? else {
        unreachable!("diagram kind")
    };
    if dd.carrier != c {
        return Err(Fail::Usage(format!("{d} is a diagram in {}, not in {c}", dd.carrier)));
    }
    let v = action(cat).eval(term, &dd.diagram).map_err(failed)?;
    let mut out = Out::new();
    out.push("result", cat.cat.carrier().name(term.dim(), v));
    out.finish(true)
}

fn hom(ctx: &Ctx, c: &str, x: &str, y: &str) -> Run {
    let cat = ctx.cat(c)?;
    let g = cat.cat.carrier();
    let (xi, yi) = (object(g, x)?, object(g, y)?);
    let h = HomAlgebra::new(action(cat), xi, yi).map_err(failed)?;
    let hs = h.carrier().clone();
    let mut out = Out::new();
    out.push(
        "counts",
        hs.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
    );
    for k in 0..=hs.max_dim() {
        for cell in hs.sorted_cells(k) {
            out.push("cell", hs.describe_cell(k, cell));
        }
    }
    let r = check_algebra_axioms(&h, ctx.bounds.term_size, ctx.bounds.diag_len);
    out.report(&r);
    out.finish(r.is_ok())
}

fn hom_compare(ctx: &Ctx, name: &str, objs: &[String]) -> Run {
    let Bounds { term_size, diag_len } = ctx.bounds;
    let mut out = Out::new();
    let mut ok = true;
    if ctx.ws.item(Kind::Map, name).is_some() {
        let m = ctx.map(name)?;
        let Some((f, report)) = &m.functor else {
            return Err(Fail::Usage(format!("{name} is not a map of strict categories")));
        };
        if !report.is_ok() {
            return Err(failed(format!("{name} is not a functor: {}", summary(report))));
        }
        let g = f.dom.carrier();
        for (x, y) in pairs(g, objs)? {
            let r = check_functor_hom(f, x, y, term_size, diag_len).map_err(failed)?;
            ok &= r.is_ok();
            out.push(&format!("hom {} {}", g.name(0, x), g.name(0, y)), summary(&r));
        }
        return out.finish(ok);
    }
    let cat = ctx.cat(name)?;
    let g = cat.cat.carrier();
    for (x, y) in pairs(g, objs)? {
        let r = compare_hom(cat.cat.clone(), x, y, term_size, diag_len).map_err(failed)?;
        ok &= r.is_ok();
        out.push(&format!("hom {} {}", g.name(0, x), g.name(0, y)), summary(&r));
    }
    out.finish(ok)
}

fn invertible(ctx: &Ctx, c: &str, w: &str, cell: &str) -> Run {
    let cat = ctx.cat(c)?;
    let set = ctx.witness(w, c)?;
    let g = cat.cat.carrier();
    let Some(r) = g.find_any(cell) else {
        return Err(failed(format!("{cell} is not a cell of {c}")));
    };
    let mut out = Out::new();
    let report = check_witnesses(&*action(cat), set);
    let keyed = set.get(r.dim, r.id).is_some();
    if !keyed {
        out.diagnostics.push(format!("{cell} has no entry in {w}"));
    }
    let ok = keyed && report.is_ok();
    out.push("result", ok);
    out.report(&report);
    out.push("note", TRUNCATION_NOTE);
    out.finish(ok)
}

fn groupoid(ctx: &Ctx, c: &str, w: Option<&String>) -> Run {
    let cat = ctx.cat(c)?;
    let strict;
    let set = match w {
        Some(w) => ctx.witness(w, c)?,
        None => {
            strict = strict_groupoid_witnesses(&cat.cat).map_err(failed)?;
            &strict
        }
    };
    let r = check_groupoid(&*action(cat), set);
    let mut out = Out::new();
    out.report(&r);
    out.push("note", TRUNCATION_NOTE);
    out.finish(r.is_ok())
}

fn hom_groupoid(ctx: &Ctx, names: &[String]) -> Run {
    let c = &names[0];
    let cat = ctx.cat(c)?;
    // a witness set is named when the count of remaining names is odd
    let (w, objs) = if names.len().is_multiple_of(2) {
        (Some(&names[1]), &names[2..])
    } else {
        (None, &names[1..])
    };
    let strict;
    let set = match w {
        Some(w) => ctx.witness(w, c)?,
        None => {
            strict = strict_groupoid_witnesses(&cat.cat).map_err(failed)?;
            &strict
        }
    };
    let g = cat.cat.carrier();
    let mut out = Out::new();
    let mut ok = true;
    for (x, y) in pairs(g, objs)? {
        let r = hom_groupoid_check(action(cat), set, x, y).map_err(failed)?;
        ok &= r.is_ok();
        out.push(&format!("hom {} {}", g.name(0, x), g.name(0, y)), summary(&r));
    }
    out.push("note", TRUNCATION_NOTE);
    out.finish(ok)
}

fn rlp(m: &MapDef) -> Run {
    let map: &GlobMorphism = &m.morphism;
    let mut out = Out::new();
    if let Err(f) = check_rlp(map, map.cod.max_dim()) {
        out.push("result", false);
        out.push("failure", f);
        return out.finish(false);
    }
    let c = solve_contraction(map).map_err(failed)?;
    out.push("result", true);
    for (key, &w) in &c.lifts {
        let pair = match key.pair {
            None => "()".to_string(),
            Some((a, b)) => format!("({}, {})", map.dom.name(key.dim - 1, a), map.dom.name(key.dim - 1, b)),
        };
        out.push(
            "lift",
            format!(
                "kappa({}, {pair}, {}) = {}",
                key.dim,
                map.cod.name(key.dim, key.target),
                map.dom.name(key.dim, w)
            ),
        );
    }
    out.finish(true)
}

fn parse_dim(s: &str) -> Result<usize, Fail> {
    s.parse().map_err(|_| Fail::Usage(format!("{s} is not a dimension")))
}

fn enumerate(ctx: &Ctx, cmd: Command, names: &[String]) -> Run {
    let n = ctx.ws.truncation;
    let mut out = Out::new();
    match (names[0].as_str(), names.len()) {
        ("terms", 2) => {
            let k = parse_dim(&names[1])?;
            n.check(k).map_err(failed)?;
            let terms = TermEnumerator::new(n).terms(k, ctx.bounds.term_size);
            for t in &terms {
                out.push("term", t);
            }
            out.push("count", terms.len());
        }
        ("diagrams", 3) => {
            let g = ctx.value(Kind::Carrier, &names[1])?.carrier().expect("carrier").clone();
            let k = parse_dim(&names[2])?;
            n.check(k).map_err(failed)?;
            if k > g.max_dim() {
                return Err(failed(format!(
                    "{} has no cells above dimension {}",
                    names[1],
                    g.max_dim()
                )));
            }
            let ds: Vec<Diagram<usize>> = enumerate_diagrams(&*g, k, ctx.bounds.diag_len);
            for d in &ds {
                out.push("diagram", show(&g, d));
            }
            out.push("count", ds.len());
        }
        _ => return Err(Fail::Usage(format!("usage: omegahom {}", cmd.usage()))),
    }
    out.finish(true)
}
