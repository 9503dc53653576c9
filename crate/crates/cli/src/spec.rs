//! The algebra description format.
//!
//! ```text
//! algebra "3dN1" { standard { dimension = 3; supersymmetry = "N=1"; } }
//! algebra "x" { odd_dim = 2; even_dim = 3; gamma { (1,1) -> [2,0,0]; (1,2) -> [0,1,0]; } }
//! ```
//!
//! Gamma indices are 1-based. Missing entries are zero and (b,a) defaults to
//! (a,b). `#` starts a comment that runs to the end of the line.

use std::collections::BTreeMap;
use std::fmt;

use superspace_core::exact::Rational;
use superspace_core::susy::{build_standard, SupertranslationAlgebra, SusyKey};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraBody {
    Standard { dimension: u32, susy: SusyKey },
    Explicit { odd_dim: usize, even_dim: usize, gamma: BTreeMap<(usize, usize), Vec<Rational>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub body: AlgebraBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SpecError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Num(String),
    Sym(char),
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Str(s) => write!(f, "string \"{s}\""),
            Tok::Num(s) => write!(f, "number {s}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Arrow => write!(f, "'->'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> SpecError {
        SpecError { line, column, message: message.into() }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, SpecError> {
        let mut out = Vec::new();
        loop {
            while let Some(&c) = self.chars.peek() {
                if c.is_whitespace() {
                    self.bump();
                } else if c == '#' {
                    while self.chars.peek().is_some_and(|&c| c != '\n') {
                        self.bump();
                    }
                } else {
                    break;
                }
            }
            let (line, column) = (self.line, self.column);
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::Eof, line, column));
                return Ok(out);
            };
            let tok = if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                    s.push(c);
                    self.bump();
                }
                Tok::Ident(s)
            } else if c.is_ascii_digit() || c == '-' {
                self.bump();
                if c == '-' && self.chars.peek() == Some(&'>') {
                    self.bump();
                    Tok::Arrow
                } else {
                    let mut s = c.to_string();
                    while let Some(&c) = self.chars.peek().filter(|c| c.is_ascii_digit() || **c == '/') {
                        s.push(c);
                        self.bump();
                    }
                    if s == "-" {
                        return Err(self.err(line, column, "expected a number after '-'"));
                    }
                    Tok::Num(s)
                }
            } else if c == '"' {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None | Some('\n') => return Err(self.err(line, column, "unterminated string")),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => return Err(self.err(self.line, self.column - 1, "unknown escape in string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
                Tok::Str(s)
            } else if "{}()[];,=".contains(c) {
                self.bump();
                Tok::Sym(c)
            } else {
                return Err(self.err(line, column, format!("unexpected character '{c}'")));
            };
            out.push((tok, line, column));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

/// (a, b) 0-based, the entries, and the (line, column) they were given at.
type GammaRow = ((usize, usize), Vec<Rational>, (usize, usize));

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].1, self.toks[self.pos].2)
    }

    fn err_here(&self, message: impl Into<String>) -> SpecError {
        let (line, column) = self.here();
        SpecError { line, column, message: message.into() }
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), SpecError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.err_here(format!("expected '{c}', found {}", self.peek())))
        }
    }

    fn expect_ident(&mut self) -> Result<String, SpecError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => Err(self.err_here(format!("expected a keyword, found {t}"))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), SpecError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            t => Err(self.err_here(format!("expected '{kw}', found {t}"))),
        }
    }

    fn expect_str(&mut self) -> Result<String, SpecError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.next();
                Ok(s)
            }
            t => Err(self.err_here(format!("expected a string, found {t}"))),
        }
    }

    fn expect_uint(&mut self) -> Result<usize, SpecError> {
        match self.peek().clone() {
            Tok::Num(s) => {
                let v = s.parse().map_err(|_| self.err_here(format!("expected a nonnegative integer, found {s}")))?;
                self.next();
                Ok(v)
            }
            t => Err(self.err_here(format!("expected an integer, found {t}"))),
        }
    }

    fn expect_rational(&mut self) -> Result<Rational, SpecError> {
        match self.peek().clone() {
            Tok::Num(s) => {
                let v = s.parse::<Rational>().map_err(|_| self.err_here(format!("'{s}' is not a rational number")))?;
                self.next();
                Ok(v)
            }
            t => Err(self.err_here(format!("expected a rational number, found {t}"))),
        }
    }

    /// `key = value;` where the value is parsed by `f`.
    fn assignment<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T, SpecError>) -> Result<T, SpecError> {
        self.expect_sym('=')?;
        let v = f(self)?;
        self.expect_sym(';')?;
        Ok(v)
    }

    fn spec(&mut self) -> Result<AlgebraSpec, SpecError> {
        self.expect_keyword("algebra")?;
        let name = self.expect_str()?;
        self.expect_sym('{')?;
        let body = if matches!(self.peek(), Tok::Ident(s) if s == "standard") {
            self.next();
            self.standard()?
        } else {
            self.explicit()?
        };
        self.expect_sym('}')?;
        if *self.peek() != Tok::Eof {
            return Err(self.err_here(format!("unexpected {} after the algebra", self.peek())));
        }
        Ok(AlgebraSpec { name, body })
    }

    fn standard(&mut self) -> Result<AlgebraBody, SpecError> {
        let start = self.here();
        self.expect_sym('{')?;
        let (mut dimension, mut susy) = (None, None);
        while *self.peek() != Tok::Sym('}') {
            let at = self.here();
            match self.expect_ident()?.as_str() {
                "dimension" if dimension.is_none() => dimension = Some(self.assignment(Parser::expect_uint)?),
                "supersymmetry" if susy.is_none() => {
                    let s = self.assignment(Parser::expect_str)?;
                    let key = s.parse::<SusyKey>().map_err(|e| SpecError { line: at.0, column: at.1, message: e.to_string() })?;
                    susy = Some(key);
                }
                k @ ("dimension" | "supersymmetry") => {
                    return Err(SpecError { line: at.0, column: at.1, message: format!("'{k}' given twice") })
                }
                k => return Err(SpecError { line: at.0, column: at.1, message: format!("unknown field '{k}' in standard block") }),
            }
        }
        self.expect_sym('}')?;
        let missing = |f: &str| SpecError { line: start.0, column: start.1, message: format!("standard block lacks '{f}'") };
        let dimension = dimension.ok_or_else(|| missing("dimension"))?;
        let susy = susy.ok_or_else(|| missing("supersymmetry"))?;
        let dimension = u32::try_from(dimension).map_err(|_| missing("a small dimension"))?;
        Ok(AlgebraBody::Standard { dimension, susy })
    }

    fn explicit(&mut self) -> Result<AlgebraBody, SpecError> {
        let start = self.here();
        let (mut odd, mut even) = (None, None);
        let mut given: Vec<GammaRow> = Vec::new();
        let mut seen_gamma = false;
        while *self.peek() != Tok::Sym('}') {
            let at = self.here();
            let err = |m: String| SpecError { line: at.0, column: at.1, message: m };
            match self.expect_ident()?.as_str() {
                "odd_dim" if odd.is_none() => odd = Some(self.assignment(Parser::expect_uint)?),
                "even_dim" if even.is_none() => even = Some(self.assignment(Parser::expect_uint)?),
                "gamma" if !seen_gamma => {
                    seen_gamma = true;
                    self.expect_sym('{')?;
                    while *self.peek() != Tok::Sym('}') {
                        let pos = self.here();
                        self.expect_sym('(')?;
                        let a = self.expect_uint()?;
                        self.expect_sym(',')?;
                        let b = self.expect_uint()?;
                        self.expect_sym(')')?;
                        if *self.peek() != Tok::Arrow {
                            return Err(self.err_here(format!("expected '->', found {}", self.peek())));
                        }
                        self.next();
                        self.expect_sym('[')?;
                        let mut v = Vec::new();
                        while *self.peek() != Tok::Sym(']') {
                            v.push(self.expect_rational()?);
                            if *self.peek() == Tok::Sym(',') {
                                self.next();
                            } else if *self.peek() != Tok::Sym(']') {
                                return Err(self.err_here(format!("expected ',' or ']', found {}", self.peek())));
                            }
                        }
                        self.expect_sym(']')?;
                        self.expect_sym(';')?;
                        if a == 0 || b == 0 {
                            return Err(SpecError { line: pos.0, column: pos.1, message: "gamma indices start at 1".into() });
                        }
                        given.push(((a - 1, b - 1), v, pos));
                    }
                    self.expect_sym('}')?;
                }
                k @ ("odd_dim" | "even_dim" | "gamma") => return Err(err(format!("'{k}' given twice"))),
                k => return Err(err(format!("unknown field '{k}'"))),
            }
        }
        let missing = |f: &str| SpecError { line: start.0, column: start.1, message: format!("algebra lacks '{f}'") };
        let odd_dim = odd.ok_or_else(|| missing("odd_dim"))?;
        let even_dim = even.ok_or_else(|| missing("even_dim"))?;
        let mut gamma: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
        let mut origin: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for ((a, b), v, pos) in given {
            let err = |m: String| SpecError { line: pos.0, column: pos.1, message: m };
            if a >= odd_dim || b >= odd_dim {
                return Err(err(format!("index ({},{}) exceeds odd_dim {odd_dim}", a + 1, b + 1)));
            }
            if v.len() != even_dim {
                return Err(err(format!("gamma row ({},{}) has {} entries but even_dim is {even_dim}", a + 1, b + 1, v.len())));
            }
            if let Some(first) = origin.get(&(a, b)) {
                return Err(err(format!("({},{}) already given at {}:{}", a + 1, b + 1, first.0, first.1)));
            }
            if let Some(first) = origin.get(&(b, a)) {
                if gamma[&(a.min(b), a.max(b))] != v {
                    return Err(err(format!(
                        "symmetry violation: ({},{}) disagrees with ({},{}) at {}:{}",
                        a + 1,
                        b + 1,
                        b + 1,
                        a + 1,
                        first.0,
                        first.1
                    )));
                }
            }
            origin.insert((a, b), pos);
            gamma.insert((a.min(b), a.max(b)), v);
        }
        gamma.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        Ok(AlgebraBody::Explicit { odd_dim, even_dim, gamma })
    }
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec, SpecError> {
    let toks = Lexer { chars: text.chars().peekable(), line: 1, column: 1 }.tokens()?;
    Parser { toks, pos: 0 }.spec()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl AlgebraSpec {
    pub fn render(&self) -> String {
        let mut out = format!("algebra {} {{\n", quote(&self.name));
        match &self.body {
            AlgebraBody::Standard { dimension, susy } => {
                out.push_str("  standard {\n");
                out.push_str(&format!("    dimension = {dimension};\n"));
                out.push_str(&format!("    supersymmetry = {};\n", quote(&susy.to_string())));
                out.push_str("  }\n");
            }
            AlgebraBody::Explicit { odd_dim, even_dim, gamma } => {
                out.push_str(&format!("  odd_dim = {odd_dim};\n  even_dim = {even_dim};\n  gamma {{\n"));
                for ((a, b), v) in gamma {
                    let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    out.push_str(&format!("    ({},{}) -> [{}];\n", a + 1, b + 1, row.join(", ")));
                }
                out.push_str("  }\n");
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn build(&self) -> superspace_core::Result<SupertranslationAlgebra> {
        match &self.body {
            AlgebraBody::Standard { dimension, susy } => Ok(build_standard(*dimension, *susy)?.with_name(self.name.clone())),
            AlgebraBody::Explicit { odd_dim, even_dim, gamma } => {
                let mut g = vec![vec![vec![Rational::ZERO; *even_dim]; *odd_dim]; *odd_dim];
                for (&(a, b), v) in gamma {
                    g[a][b] = v.clone();
                    g[b][a] = v.clone();
                }
                SupertranslationAlgebra::new(self.name.clone(), *odd_dim, *even_dim, g)
            }
        }
    }

    /// The explicit form of an algebra, keeping entries with a ≤ b.
    pub fn explicit(alg: &SupertranslationAlgebra) -> AlgebraSpec {
        let mut gamma = BTreeMap::new();
        for a in 0..alg.k {
            for b in a..alg.k {
                let v = alg.bracket_basis(a, b).to_vec();
                if v.iter().any(|x| !x.is_zero()) {
                    gamma.insert((a, b), v);
                }
            }
        }
        AlgebraSpec { name: alg.name.clone(), body: AlgebraBody::Explicit { odd_dim: alg.k, even_dim: alg.d, gamma } }
    }
}

/// Short catalog names such as `3dN1`, `4dN=2` or `6d(2,0)`.
pub fn catalog_shorthand(s: &str) -> Option<AlgebraSpec> {
    let (dim, rest) = s.split_once('d')?;
    let dimension: u32 = dim.parse().ok()?;
    let rest = rest.strip_prefix('N').map(|r| r.strip_prefix('=').unwrap_or(r)).unwrap_or(rest);
    let susy: SusyKey = rest.parse().ok()?;
    Some(AlgebraSpec { name: s.to_string(), body: AlgebraBody::Standard { dimension, susy } })
}
