//! Problem files: a field, named rings and named ideals.
//!
//! ```text
//! # comment
//! field F 32003            # or: field Q
//! ring R vars x1:(1,0) x2:(1,0) y1:(0,1)   # or v:d for degree (d,0)
//! ideal I in R = x1*y1 ; x2^2*y1 - 3*x1*x2*y1
//! ideal K in R = intersect I J            # intersection of earlier ideals
//! ```

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{Bidegree, Ring, RingRef, Variable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealBody {
    Generators(Vec<Polynomial>),
    Intersect(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecl {
    pub name: String,
    pub ring: String,
    pub body: IdealBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: Field,
    /// Whether the file declared its field explicitly.
    pub explicit_field: bool,
    pub rings: Vec<RingRef>,
    pub ideals: Vec<IdealDecl>,
}

impl ProblemFile {
    pub fn ring(&self, name: &str) -> Result<&RingRef> {
        self.rings
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn ideal_decl(&self, name: &str) -> Result<&IdealDecl> {
        self.ideals
            .iter()
            .find(|i| i.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Builds the named ideal, evaluating intersections.
    pub fn ideal(&self, name: &str) -> Result<Ideal> {
        let decl = self.ideal_decl(name)?;
        let ring = self.ring(&decl.ring)?;
        match &decl.body {
            IdealBody::Generators(g) => Ideal::new(ring, g.clone()),
            IdealBody::Intersect(names) => {
                let mut acc = Ideal::unit(ring);
                for n in names {
                    acc = acc.intersection(&self.ideal(n)?)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn ideal_names(&self) -> Vec<&str> {
        self.ideals.iter().map(|i| i.name.as_str()).collect()
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for r in &self.rings {
            writeln!(f, "{r}")?;
        }
        for i in &self.ideals {
            write!(f, "ideal {} in {} =", i.name, i.ring)?;
            match &i.body {
                IdealBody::Generators(g) => {
                    for (k, p) in g.iter().enumerate() {
                        write!(f, "{}{p}", if k == 0 { " " } else { " ; " })?;
                    }
                }
                IdealBody::Intersect(names) => {
                    write!(f, " intersect {}", names.join(" "))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Splits a line into whitespace-separated words with 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a problem file; `default_field` applies when no `field` line is present.
pub fn parse_problem(text: &str, default_field: &Field) -> Result<ProblemFile> {
    let mut field: Option<Field> = None;
    let mut rings: Vec<RingRef> = Vec::new();
    let mut ideals: Vec<IdealDecl> = Vec::new();
    let mut names: BTreeSet<String> = BTreeSet::new();

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let w = words(line);
        let Some(&(col, kw)) = w.first() else {
            continue;
        };
        match kw {
            "field" => {
                if field.is_some() || !rings.is_empty() {
                    return Err(perr(
                        ln,
                        col,
                        "field must be declared once, before any ring",
                    ));
                }
                field = Some(match w.get(1) {
                    Some((_, "Q")) if w.len() == 2 => Field::Rationals,
                    Some((_, "F")) if w.len() == 3 => {
                        let (c, p) = w[2];
                        let p: u64 = p
                            .parse()
                            .map_err(|_| perr(ln, c, format!("bad characteristic `{p}`")))?;
                        Field::prime(p).map_err(|e| perr(ln, c, e.to_string()))?
                    }
                    _ => return Err(perr(ln, col, "expected `field Q` or `field F <prime>`")),
                });
            }
            "ring" => {
                let fld = field.clone().unwrap_or_else(|| default_field.clone());
                let (nc, name) = *w.get(1).ok_or_else(|| perr(ln, col, "missing ring name"))?;
                if !is_ident(name) {
                    return Err(perr(ln, nc, format!("bad name `{name}`")));
                }
                match w.get(2) {
                    Some((_, "vars")) => {}
                    Some(&(c, _)) => return Err(perr(ln, c, "expected `vars`")),
                    None => return Err(perr(ln, col, "expected `vars`")),
                }
                let mut vars = Vec::new();
                for &(c, spec) in &w[3..] {
                    vars.push(parse_var(spec).map_err(|m| perr(ln, c, m))?);
                }
                if names.contains(name) {
                    return Err(perr(ln, nc, format!("duplicate name `{name}`")));
                }
                let ring = Ring::new(name, vars, fld).map_err(|e| perr(ln, nc, e.to_string()))?;
                names.insert(name.to_string());
                rings.push(ring);
            }
            "ideal" => {
                let (nc, name) = *w
                    .get(1)
                    .ok_or_else(|| perr(ln, col, "missing ideal name"))?;
                if !is_ident(name) {
                    return Err(perr(ln, nc, format!("bad name `{name}`")));
                }
                if names.contains(name) {
                    return Err(perr(ln, nc, format!("duplicate name `{name}`")));
                }
                match (w.get(2), w.get(3), w.get(4)) {
                    (Some((_, "in")), Some(_), Some((_, "="))) => {}
                    _ => return Err(perr(ln, col, "expected `ideal <name> in <ring> = ...`")),
                }
                let (rc, rname) = w[3];
                let ring = rings
                    .iter()
                    .find(|r| r.name == rname)
                    .ok_or_else(|| perr(ln, rc, format!("unknown ring `{rname}`")))?
                    .clone();
                // the body starts right after `=`, whose 1-based column is also
                // the byte offset of the body
                let body_start = w[4].0;
                let body = &line[body_start..];
                let body_words = words(body);
                let body = if body_words.first().map(|x| x.1) == Some("intersect") {
                    let mut parts = Vec::new();
                    for &(c, n) in &body_words[1..] {
                        let col = body_start + c;
                        let decl = ideals
                            .iter()
                            .find(|d| d.name == n)
                            .ok_or_else(|| perr(ln, col, format!("unknown ideal `{n}`")))?;
                        if decl.ring != rname {
                            return Err(perr(
                                ln,
                                col,
                                format!("ideal `{n}` lives in ring `{}`", decl.ring),
                            ));
                        }
                        parts.push(n.to_string());
                    }
                    if parts.is_empty() {
                        return Err(perr(
                            ln,
                            body_start + 1,
                            "intersect needs at least one ideal",
                        ));
                    }
                    IdealBody::Intersect(parts)
                } else {
                    let mut gens = Vec::new();
                    let mut offset = body_start;
                    for piece in body.split(';') {
                        if piece.trim().is_empty() {
                            if body.trim().is_empty() {
                                break;
                            }
                            return Err(perr(ln, offset + 1, "empty generator"));
                        }
                        gens.push(parse_poly_at(piece, &ring, ln, offset)?);
                        offset += piece.len() + 1;
                    }
                    IdealBody::Generators(gens)
                };
                names.insert(name.to_string());
                ideals.push(IdealDecl {
                    name: name.to_string(),
                    ring: rname.to_string(),
                    body,
                });
            }
            other => return Err(perr(ln, col, format!("unknown declaration `{other}`"))),
        }
    }
    Ok(ProblemFile {
        explicit_field: field.is_some(),
        field: field.unwrap_or_else(|| default_field.clone()),
        rings,
        ideals,
    })
}

fn parse_var(spec: &str) -> std::result::Result<Variable, String> {
    let (name, deg) = spec
        .split_once(':')
        .ok_or_else(|| format!("expected `name:degree`, got `{spec}`"))?;
    if !is_ident(name) {
        return Err(format!("bad variable name `{name}`"));
    }
    let num = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad degree `{deg}`"))
    };
    let degree = if let Some(inner) = deg.strip_prefix('(').and_then(|d| d.strip_suffix(')')) {
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| format!("bad degree `{deg}`"))?;
        Bidegree::new(num(a)?, num(b)?)
    } else {
        Bidegree::new(num(deg)?, 0)
    };
    Ok(Variable {
        name: name.to_string(),
        degree,
    })
}

/// Parses a polynomial over `ring` from infix text.
pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Polynomial> {
    parse_poly_at(text, ring, 1, 0)
}

fn parse_poly_at(text: &str, ring: &RingRef, line: usize, offset: usize) -> Result<Polynomial> {
    let toks = tokenize(text).map_err(|(c, m)| perr(line, offset + c, m))?;
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        line,
        offset,
        end: text.len() + 1,
    };
    let f = p.expr()?;
    if let Some(t) = p.toks.get(p.pos) {
        return Err(perr(line, offset + t.col, "unexpected token"));
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn tokenize(s: &str) -> std::result::Result<Vec<Token>, (usize, String)> {
    let bytes: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(digits.parse().expect("digits")),
                col,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(bytes[start..i].iter().collect()),
                col,
            });
        } else if "+-*^()".contains(c) {
            out.push(Token {
                tok: Tok::Op(c),
                col,
            });
            i += 1;
        } else {
            return Err((col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: &'a RingRef,
    line: usize,
    offset: usize,
    end: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        let col = self.toks.get(self.pos).map_or(self.end, |t| t.col);
        perr(self.line, self.offset + col, msg)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Token {
                tok: Tok::Op(c), ..
            }) => Some(*c),
            _ => None,
        }
    }

    // expr := ['-'|'+'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = '+';
        if let Some(c @ ('+' | '-')) = self.peek_op() {
            sign = c;
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign == '+' {
                acc.add(&t)?
            } else {
                acc.sub(&t)?
            };
            match self.peek_op() {
                Some(c @ ('+' | '-')) => {
                    sign = c;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek_op() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    // factor := atom ('^' integer)?
    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Token {
                    tok: Tok::Num(n), ..
                }) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return base.pow(e);
                }
                _ => return Err(self.err("expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err("unexpected end of input"))?;
        match tok.tok {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(Polynomial::constant(
                    self.ring,
                    self.ring.field.from_bigint(&n),
                ))
            }
            Tok::Ident(name) => {
                let i = self.ring.var_index(&name).ok_or_else(|| {
                    perr(
                        self.line,
                        self.offset + tok.col,
                        format!("unknown variable `{name}`"),
                    )
                })?;
                self.pos += 1;
                let n = self.ring.nvars();
                Ok(Polynomial::monomial(
                    self.ring,
                    Monomial::var(n, i),
                    self.ring.field.one(),
                ))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Tok::Op(_) => Err(self.err("unexpected operator")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Homogeneity;

    #[test]
    fn basic_file() {
        let text = "field F 32003\nring R vars x:(1,0) y:(0,1)\nideal I in R = x*y\n";
        let p = parse_problem(text, &Field::Rationals).unwrap();
        let i = p.ideal("I").unwrap();
        assert_eq!(
            i.generators()[0].bidegree().unwrap(),
            Homogeneity::Bihomogeneous(Bidegree::new(1, 1))
        );
        let again = parse_problem(&p.to_string(), &Field::Rationals).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn diagnostics_point_at_the_problem() {
        let text = "field Q\nring R vars x:1 y:1\nideal I in R = x + z\n";
        match parse_problem(text, &Field::Rationals) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (3, 20)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_problem("field F 12\n", &Field::Rationals),
            Err(Error::Parse {
                line: 1,
                col: 9,
                ..
            })
        ));
        assert!(matches!(
            parse_problem("ring R vars x:1\nring R vars y:1\n", &Field::Rationals),
            Err(Error::Parse {
                line: 2,
                col: 6,
                ..
            })
        ));
    }

    #[test]
    fn intersections_and_default_field() {
        let text = "ring R vars x:1 y:1\nideal A in R = x\nideal B in R = y\nideal C in R = intersect A B\n";
        let p = parse_problem(text, &Field::prime(7).unwrap()).unwrap();
        assert!(!p.explicit_field);
        let c = p.ideal("C").unwrap();
        assert_eq!(c.groebner_basis().len(), 1);
        assert_eq!(c.groebner_basis()[0].to_string(), "x*y");
    }

    #[test]
    fn expressions() {
        let r = Ring::graded("R", &["x", "y"], Field::Rationals).unwrap();
        let f = parse_poly("(x+y)*(x-y) - -y^2", &r).unwrap();
        assert_eq!(f.to_string(), "x^2");
        let g = parse_poly("-3*x^2*y + 2*(x*y)^1 - 0", &r).unwrap();
        assert_eq!(g.to_string(), "-3*x^2*y + 2*x*y");
    }
}
