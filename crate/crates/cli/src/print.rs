//! Canonical text for loaded definitions. Includes are expanded, terms are
//! printed in normal form and scheme references are resolved, so printing
//! the reparsed output reproduces it byte for byte.

use std::fmt::Write;

use crate::syntax::{CellDecl, DiagramLit, DiagramSyntax, SchemeLit, SchemeSyntax, Statement, TermSyntax};
use crate::workspace::{Item, Value, Workspace};

pub fn print_workspace(ws: &Workspace) -> String {
    let mut out = String::new();
    for item in &ws.items {
        out.push_str(&print_item(item));
    }
    out
}

pub fn print_item(item: &Item) -> String {
    let mut out = String::new();
    match (&item.stmt, &item.value) {
        (Statement::Include(path), _) => {
            let _ = writeln!(out, "include \"{path}\";");
        }
        (Statement::GlobSet { name, dim, cells }, _) => {
            let _ = writeln!(out, "globset {name} {{");
            let _ = writeln!(out, "  dim {dim};");
            cell_lines(&mut out, cells);
            out.push_str("}\n");
        }
        (
            Statement::StrictCat {
                name,
                dim,
                cells,
                comps,
                idents,
            },
            _,
        ) => {
            let _ = writeln!(out, "strictcat {name} {{");
            let _ = writeln!(out, "  dim {dim};");
            cell_lines(&mut out, cells);
            for (j, g, f, h) in comps {
                let _ = writeln!(out, "  comp{j} ({g}, {f}) = {h};");
            }
            for (x, ix) in idents {
                let _ = writeln!(out, "  id({x}) = {ix};");
            }
            out.push_str("}\n");
        }
        (Statement::Map { name, dom, cod, pairs }, _) => {
            let _ = writeln!(out, "map {name} : {dom} -> {cod} {{");
            for (a, b) in pairs {
                let _ = writeln!(out, "  {a} |-> {b};");
            }
            out.push_str("}\n");
        }
        (Statement::Witness { name, algebra, entries }, _) => {
            let _ = writeln!(out, "witness {name} for {algebra} {{");
            for e in entries {
                match &e.eta {
                    None => {
                        let _ = writeln!(out, "  {} ~ ({});", e.cell, e.inverse);
                    }
                    Some((eta, eps)) => {
                        let _ = writeln!(out, "  {} ~ ({}, {eta}, {eps});", e.cell, e.inverse);
                    }
                }
            }
            out.push_str("}\n");
        }
        (Statement::Scheme { name, scheme }, value) => {
            let text = match value {
                Ok(Value::Scheme(s)) => s.to_string(),
                _ => scheme_text(scheme),
            };
            let _ = writeln!(out, "scheme {name} = {text};");
        }
        (Statement::Term { name, term }, value) => {
            let text = match value {
                Ok(Value::Term(t)) => t.to_string(),
                _ => term_text(term),
            };
            let _ = writeln!(out, "term {name} = {text};");
        }
        (Statement::Diagram { name, carrier, diagram }, _) => {
            let _ = writeln!(
                out,
                "diagram {name} in {carrier} = {};",
                diagram_text(diagram, &|l: &String| l.clone())
            );
        }
    }
    out
}

fn cell_lines(out: &mut String, cells: &[CellDecl]) {
    for c in cells {
        match &c.boundary {
            None => {
                let _ = writeln!(out, "  cell {} @{};", c.name, c.dim);
            }
            Some((s, t)) => {
                let _ = writeln!(out, "  cell {} : {s} -> {t} @{};", c.name, c.dim);
            }
        }
    }
}

fn scheme_body(s: &SchemeSyntax, out: &mut String) {
    match s {
        SchemeSyntax::Point => out.push('*'),
        SchemeSyntax::Ref(name) => out.push_str(name),
        SchemeSyntax::List(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                scheme_body(item, out);
            }
            out.push(']');
        }
    }
}

fn scheme_text(s: &SchemeLit) -> String {
    let mut out = String::new();
    scheme_body(&s.body, &mut out);
    if let Some(d) = s.dim {
        let _ = write!(out, "@{d}");
    }
    out
}

fn term_text(t: &TermSyntax) -> String {
    match t {
        TermSyntax::Unit(k) => format!("e@{k}"),
        TermSyntax::Identity(k) => format!("i@{k}"),
        TermSyntax::Binary(k) => format!("comp2@{k}"),
        TermSyntax::Ref(name) => name.clone(),
        TermSyntax::Kappa0 => "kappa(*)".into(),
        TermSyntax::Kappa(p, q, s) => format!("kappa({}, {}, {})", term_text(p), term_text(q), scheme_text(s)),
        TermSyntax::Comp(h, body) => format!("comp({}, {})", term_text(h), diagram_text(body, &term_text)),
    }
}

fn diagram_body<L>(d: &DiagramSyntax<L>, label: &dyn Fn(&L) -> String, out: &mut String) {
    match d {
        DiagramSyntax::Label(l) => out.push_str(&label(l)),
        DiagramSyntax::Path { points, cols } => {
            out.push('<');
            out.push_str(&label(&points[0]));
            for (c, p) in cols.iter().zip(&points[1..]) {
                out.push_str(" | ");
                diagram_body(c, label, out);
                out.push_str(" | ");
                out.push_str(&label(p));
            }
            out.push('>');
        }
    }
}

fn diagram_text<L>(d: &DiagramLit<L>, label: &dyn Fn(&L) -> String) -> String {
    let mut out = String::new();
    diagram_body(&d.body, label, &mut out);
    if let Some(k) = d.dim {
        let _ = write!(out, "@{k}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use omegahom_core::Truncation;
    use std::path::Path;

    fn round_trip(src: &str) -> String {
        let ws = Workspace::from_source(src, Path::new("."), Truncation::DEFAULT).unwrap();
        let once = print_workspace(&ws);
        let again = print_workspace(&Workspace::from_source(&once, Path::new("."), Truncation::DEFAULT).unwrap());
        assert_eq!(once, again);
        once
    }

    #[test]
    fn two_one_prints_canonically() {
        assert_eq!(round_trip("scheme s = [ * , * ] @ 1 ;"), "scheme s = [*,*]@1;\n");
    }

    #[test]
    fn normal_forms_do_not_depend_on_spelling() {
        let a = round_trip("term t = comp(e@1, <e@0 | comp2@1 | e@0>@1);");
        let b = round_trip("term t = kappa(e@0, e@0, [*,*]@1);");
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_definitions_print_as_written() {
        let out = round_trip("term bad = kappa(e@0,e@1,[*,*]@1);");
        assert_eq!(out, "term bad = kappa(e@0, e@1, [*,*]@1);\n");
    }
}
