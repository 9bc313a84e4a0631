//! Lexer and recursive-descent parser for the definition language.

use std::fmt;

/// A grammar error with its 1-based position and the set of tokens that
/// would have been accepted there.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected ", self.line, self.col)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Str(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 17] = [
    "|->", "->", "{", "}", "(", ")", "[", "]", "<", ">", "|", ",", ";", "@", "=", "~", ":",
];

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '*' | '.')
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut rest = src;
    while let Some(c) = rest.chars().next() {
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            rest = &rest[1..];
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            rest = &rest[c.len_utf8()..];
            continue;
        }
        if c == '#' {
            let end = rest.find('\n').unwrap_or(rest.len());
            col += rest[..end].chars().count();
            rest = &rest[end..];
            continue;
        }
        if c == '"' {
            let Some(end) = rest[1..].find(['"', '\n']).filter(|&e| rest[1 + e..].starts_with('"')) else {
                return Err(ParseError {
                    line,
                    col,
                    expected: vec!["closing `\"`".into()],
                    found: "end of line".into(),
                });
            };
            let s = &rest[1..1 + end];
            out.push(Token {
                tok: Tok::Str(s.to_string()),
                line,
                col,
            });
            col += s.chars().count() + 2;
            rest = &rest[end + 2..];
            continue;
        }
        if is_ident_char(c) {
            let end = rest.find(|ch: char| !is_ident_char(ch)).unwrap_or(rest.len());
            out.push(Token {
                tok: Tok::Ident(rest[..end].to_string()),
                line,
                col,
            });
            col += rest[..end].chars().count();
            rest = &rest[end..];
            continue;
        }
        let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
            return Err(ParseError {
                line,
                col,
                expected: vec!["a name, a number or punctuation".into()],
                found: format!("`{c}`"),
            });
        };
        out.push(Token {
            tok: Tok::Sym(sym),
            line: start_line,
            col: start_col,
        });
        col += sym.len();
        rest = &rest[sym.len()..];
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// A scheme as written: the point, a list, or a named scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeSyntax {
    Point,
    List(Vec<SchemeSyntax>),
    Ref(String),
}

/// A scheme literal with its top-level dimension annotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeLit {
    pub body: SchemeSyntax,
    pub dim: Option<usize>,
}

/// A diagram as written; path dimensions below the top are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramSyntax<L> {
    Label(L),
    Path {
        points: Vec<L>,
        cols: Vec<DiagramSyntax<L>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramLit<L> {
    pub body: DiagramSyntax<L>,
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermSyntax {
    Unit(usize),
    Identity(usize),
    Binary(usize),
    Ref(String),
    /// `kappa(*)`, the contraction cell of dimension 0.
    Kappa0,
    Kappa(Box<TermSyntax>, Box<TermSyntax>, SchemeLit),
    Comp(Box<TermSyntax>, Box<DiagramLit<TermSyntax>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecl {
    pub name: String,
    pub boundary: Option<(String, String)>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDecl {
    pub cell: String,
    pub inverse: String,
    pub eta: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Include(String),
    GlobSet {
        name: String,
        dim: usize,
        cells: Vec<CellDecl>,
    },
    StrictCat {
        name: String,
        dim: usize,
        cells: Vec<CellDecl>,
        comps: Vec<(usize, String, String, String)>,
        idents: Vec<(String, String)>,
    },
    Map {
        name: String,
        dom: String,
        cod: String,
        pairs: Vec<(String, String)>,
    },
    Witness {
        name: String,
        algebra: String,
        entries: Vec<WitnessDecl>,
    },
    Scheme {
        name: String,
        scheme: SchemeLit,
    },
    Term {
        name: String,
        term: TermSyntax,
    },
    Diagram {
        name: String,
        carrier: String,
        diagram: DiagramLit<String>,
    },
}

/// A statement with the position of its first token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub stmt: Statement,
    pub line: usize,
    pub col: usize,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.toks[(self.pos + offset).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        Err(ParseError {
            line: t.line,
            col: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        })
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == w)
    }

    fn sym(&mut self, s: &'static str) -> PResult<()> {
        if self.at_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("`{s}`")])
        }
    }

    fn word(&mut self, w: &str) -> PResult<()> {
        if self.at_word(w) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("`{w}`")])
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.error(&["a name"]),
        }
    }

    fn number(&mut self) -> PResult<usize> {
        match &self.peek().tok {
            Tok::Ident(s) if s.chars().all(|c| c.is_ascii_digit()) => match s.parse() {
                Ok(n) => {
                    self.bump();
                    Ok(n)
                }
                Err(_) => self.error(&["a small number"]),
            },
            _ => self.error(&["a number"]),
        }
    }

    fn dim_annotation(&mut self) -> PResult<usize> {
        self.sym("@")?;
        self.number()
    }

    fn block_end(&mut self) -> PResult<()> {
        self.sym("}")?;
        if self.at_sym(";") {
            self.bump();
        }
        Ok(())
    }

    fn file(&mut self) -> PResult<Vec<Located>> {
        let mut out = Vec::new();
        while self.peek().tok != Tok::Eof {
            let (line, col) = (self.peek().line, self.peek().col);
            let stmt = self.statement()?;
            out.push(Located { stmt, line, col });
        }
        Ok(out)
    }

    fn statement(&mut self) -> PResult<Statement> {
        const STARTS: [&str; 8] = [
            "`include`",
            "`globset`",
            "`strictcat`",
            "`map`",
            "`witness`",
            "`scheme`",
            "`term`",
            "`diagram`",
        ];
        let Tok::Ident(kw) = self.peek().tok.clone() else {
            return self.error(&STARTS);
        };
        match kw.as_str() {
            "include" => {
                self.bump();
                let Tok::Str(path) = self.peek().tok.clone() else {
                    return self.error(&["a quoted file name"]);
                };
                self.bump();
                self.sym(";")?;
                Ok(Statement::Include(path))
            }
            "globset" => {
                self.bump();
                let name = self.ident()?;
                self.sym("{")?;
                let dim = self.dim_line()?;
                let mut cells = Vec::new();
                while !self.at_sym("}") {
                    if !self.at_word("cell") {
                        return self.error(&["`cell`", "`}`"]);
                    }
                    cells.push(self.cell_decl()?);
                }
                self.block_end()?;
                Ok(Statement::GlobSet { name, dim, cells })
            }
            "strictcat" => {
                self.bump();
                let name = self.ident()?;
                self.sym("{")?;
                let dim = self.dim_line()?;
                let (mut cells, mut comps, mut idents) = (Vec::new(), Vec::new(), Vec::new());
                loop {
                    match &self.peek().tok {
                        Tok::Sym("}") => break,
                        Tok::Ident(w) if w == "cell" => cells.push(self.cell_decl()?),
                        Tok::Ident(w) if w == "id" => {
                            self.bump();
                            self.sym("(")?;
                            let x = self.ident()?;
                            self.sym(")")?;
                            self.sym("=")?;
                            let ix = self.ident()?;
                            self.sym(";")?;
                            idents.push((x, ix));
                        }
                        Tok::Ident(w)
                            if w.len() > 4 && w.starts_with("comp") && w[4..].chars().all(|c| c.is_ascii_digit()) =>
                        {
                            let along: usize = match w[4..].parse() {
                                Ok(j) => j,
                                Err(_) => return self.error(&["`comp<j>` with a small j"]),
                            };
                            self.bump();
                            self.sym("(")?;
                            let g = self.ident()?;
                            self.sym(",")?;
                            let f = self.ident()?;
                            self.sym(")")?;
                            self.sym("=")?;
                            let h = self.ident()?;
                            self.sym(";")?;
                            comps.push((along, g, f, h));
                        }
                        _ => return self.error(&["`cell`", "`comp<j>`", "`id`", "`}`"]),
                    }
                }
                self.block_end()?;
                Ok(Statement::StrictCat {
                    name,
                    dim,
                    cells,
                    comps,
                    idents,
                })
            }
            "map" => {
                self.bump();
                let name = self.ident()?;
                self.sym(":")?;
                let dom = self.ident()?;
                self.sym("->")?;
                let cod = self.ident()?;
                self.sym("{")?;
                let mut pairs = Vec::new();
                while !self.at_sym("}") {
                    let a = match self.ident() {
                        Ok(a) => a,
                        Err(_) => return self.error(&["a name", "`}`"]),
                    };
                    self.sym("|->")?;
                    let b = self.ident()?;
                    self.sym(";")?;
                    pairs.push((a, b));
                }
                self.block_end()?;
                Ok(Statement::Map { name, dom, cod, pairs })
            }
            "witness" => {
                self.bump();
                let name = self.ident()?;
                self.word("for")?;
                let algebra = self.ident()?;
                self.sym("{")?;
                let mut entries = Vec::new();
                while !self.at_sym("}") {
                    let cell = match self.ident() {
                        Ok(a) => a,
                        Err(_) => return self.error(&["a name", "`}`"]),
                    };
                    self.sym("~")?;
                    self.sym("(")?;
                    let inverse = self.ident()?;
                    let eta = if self.at_sym(",") {
                        self.bump();
                        let eta = self.ident()?;
                        self.sym(",")?;
                        let eps = self.ident()?;
                        Some((eta, eps))
                    } else if self.at_sym(")") {
                        None
                    } else {
                        return self.error(&["`,`", "`)`"]);
                    };
                    self.sym(")")?;
                    self.sym(";")?;
                    entries.push(WitnessDecl { cell, inverse, eta });
                }
                self.block_end()?;
                Ok(Statement::Witness { name, algebra, entries })
            }
            "scheme" => {
                self.bump();
                let name = self.ident()?;
                self.sym("=")?;
                let scheme = self.scheme()?;
                self.sym(";")?;
                Ok(Statement::Scheme { name, scheme })
            }
            "term" => {
                self.bump();
                let name = self.ident()?;
                self.sym("=")?;
                let term = self.term()?;
                self.sym(";")?;
                Ok(Statement::Term { name, term })
            }
            "diagram" => {
                self.bump();
                let name = self.ident()?;
                self.word("in")?;
                let carrier = self.ident()?;
                self.sym("=")?;
                let diagram = self.diagram(&mut |p| p.ident())?;
                self.sym(";")?;
                Ok(Statement::Diagram { name, carrier, diagram })
            }
            _ => self.error(&STARTS),
        }
    }

    fn dim_line(&mut self) -> PResult<usize> {
        self.word("dim")?;
        let n = self.number()?;
        self.sym(";")?;
        Ok(n)
    }

    fn cell_decl(&mut self) -> PResult<CellDecl> {
        self.word("cell")?;
        let name = self.ident()?;
        let boundary = if self.at_sym(":") {
            self.bump();
            let s = self.ident()?;
            self.sym("->")?;
            let t = self.ident()?;
            Some((s, t))
        } else if self.at_sym("@") {
            None
        } else {
            return self.error(&["`:`", "`@`"]);
        };
        let dim = self.dim_annotation()?;
        self.sym(";")?;
        Ok(CellDecl { name, boundary, dim })
    }

    fn scheme(&mut self) -> PResult<SchemeLit> {
        if self.at_sym("[") {
            let body = self.scheme_inner()?;
            let dim = self.dim_annotation()?;
            return Ok(SchemeLit { body, dim: Some(dim) });
        }
        match &self.peek().tok {
            Tok::Ident(s) if s == "*" => {
                self.bump();
                Ok(SchemeLit {
                    body: SchemeSyntax::Point,
                    dim: None,
                })
            }
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(SchemeLit {
                    body: SchemeSyntax::Ref(s),
                    dim: None,
                })
            }
            _ => self.error(&["`*`", "`[`", "a scheme name"]),
        }
    }

    fn scheme_inner(&mut self) -> PResult<SchemeSyntax> {
        if self.at_word("*") {
            self.bump();
            return Ok(SchemeSyntax::Point);
        }
        if !self.at_sym("[") {
            return self.error(&["`*`", "`[`"]);
        }
        self.bump();
        let mut items = Vec::new();
        if self.at_sym("]") {
            self.bump();
            return Ok(SchemeSyntax::List(items));
        }
        loop {
            items.push(self.scheme_inner()?);
            if self.at_sym(",") {
                self.bump();
            } else if self.at_sym("]") {
                self.bump();
                return Ok(SchemeSyntax::List(items));
            } else {
                return self.error(&["`,`", "`]`"]);
            }
        }
    }

    fn term(&mut self) -> PResult<TermSyntax> {
        let Tok::Ident(w) = self.peek().tok.clone() else {
            return self.error(&["`e@k`", "`i@k`", "`comp2@k`", "`kappa(`", "`comp(`", "a term name"]);
        };
        let next = self.peek_at(1).clone();
        match (w.as_str(), next) {
            ("e" | "i" | "comp2", Tok::Sym("@")) => {
                self.bump();
                let k = self.dim_annotation()?;
                Ok(match w.as_str() {
                    "e" => TermSyntax::Unit(k),
                    "i" => TermSyntax::Identity(k),
                    _ => TermSyntax::Binary(k),
                })
            }
            ("kappa", Tok::Sym("(")) => {
                self.bump();
                self.bump();
                if self.at_word("*") && self.peek_at(1) == &Tok::Sym(")") {
                    self.bump();
                    self.bump();
                    return Ok(TermSyntax::Kappa0);
                }
                let p = self.term()?;
                self.sym(",")?;
                let q = self.term()?;
                self.sym(",")?;
                let s = self.scheme()?;
                self.sym(")")?;
                Ok(TermSyntax::Kappa(Box::new(p), Box::new(q), s))
            }
            ("comp", Tok::Sym("(")) => {
                self.bump();
                self.bump();
                let h = self.term()?;
                self.sym(",")?;
                let body = self.diagram(&mut |p| p.term())?;
                self.sym(")")?;
                Ok(TermSyntax::Comp(Box::new(h), Box::new(body)))
            }
            _ => {
                self.bump();
                Ok(TermSyntax::Ref(w))
            }
        }
    }

    fn diagram<L>(&mut self, label: &mut dyn FnMut(&mut Self) -> PResult<L>) -> PResult<DiagramLit<L>> {
        if self.at_sym("<") {
            let body = self.path(label)?;
            let dim = self.dim_annotation()?;
            return Ok(DiagramLit { body, dim: Some(dim) });
        }
        Ok(DiagramLit {
            body: DiagramSyntax::Label(label(self)?),
            dim: None,
        })
    }

    fn path<L>(&mut self, label: &mut dyn FnMut(&mut Self) -> PResult<L>) -> PResult<DiagramSyntax<L>> {
        self.sym("<")?;
        let mut points = vec![label(self)?];
        let mut cols = Vec::new();
        loop {
            if self.at_sym(">") {
                self.bump();
                return Ok(DiagramSyntax::Path { points, cols });
            }
            if !self.at_sym("|") {
                return self.error(&["`|`", "`>`"]);
            }
            self.bump();
            let col = if self.at_sym("<") {
                self.path(label)?
            } else {
                DiagramSyntax::Label(label(self)?)
            };
            cols.push(col);
            self.sym("|")?;
            points.push(label(self)?);
        }
    }
}

/// Parses a whole source text into located statements.
pub fn parse(src: &str) -> Result<Vec<Located>, ParseError> {
    let toks = lex(src)?;
    Parser { toks, pos: 0 }.file()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scheme_statement() {
        let s = parse("scheme s = [[*],[],[*,*]]@2;").unwrap();
        let Statement::Scheme { scheme, .. } = &s[0].stmt else {
            panic!("not a scheme")
        };
        assert_eq!(scheme.dim, Some(2));
        let SchemeSyntax::List(cols) = &scheme.body else {
            panic!()
        };
        assert_eq!(cols.len(), 3);
    }

    #[test]
    fn parses_terms() {
        let s = parse("term t = comp(kappa(e@0, e@0, [*,*]@1), <e@0 | i@1 | e@0 | e@1 | e@0>@1);\nterm k = kappa(*);")
            .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].line, 2);
        assert!(matches!(
            s[1].stmt,
            Statement::Term {
                term: TermSyntax::Kappa0,
                ..
            }
        ));
    }

    #[test]
    fn reports_position_and_expectation() {
        let e = parse("scheme s = [*,*@1;").unwrap_err();
        assert_eq!((e.line, e.col), (1, 16));
        assert_eq!(e.expected, vec!["`,`", "`]`"]);
        let e = parse("globset G {\n  dim 1;\n  cell x = 0;\n}").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.to_string().contains("expected one of `:`, `@`"), "{e}");
    }

    #[test]
    fn comments_and_blocks() {
        let src = "# a comment\nstrictcat C { dim 1; cell x @0; cell u : x -> x @1; comp0 (u, u) = u; id(x) = u; }\n\
                   witness W for C { u ~ (u); }\nmap F : C -> C { x |-> x; u |-> u; };";
        let s = parse(src).unwrap();
        assert_eq!(s.len(), 3);
        let Statement::StrictCat { comps, .. } = &s[0].stmt else {
            panic!()
        };
        assert_eq!(comps[0].0, 0);
    }
}
