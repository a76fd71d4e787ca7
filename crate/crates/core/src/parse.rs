//! Ring-description files and polynomial expressions.
//!
//! ```text
//! # comments run to the end of the line
//! ring { char = 5 ; vars = [x, y, z, w] ; order = grevlex ; relations = [x*y - z*w] }
//! ideal M = [x, y, z, w]
//! ```
//!
//! An optional `local = [..]` entry names the variables generating the
//! maximal ideal; without it every variable does and relations must have
//! zero constant term.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{MonomialOrder, Poly, PolyRing};
use crate::ring::{Ideal, Ring, RingPresentation};
use crate::groebner::DEFAULT_STEP_LIMIT;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Int(s),
                line: l0,
                col: c0,
            });
            continue;
        }
        let sym = match c {
            '\u{2212}' | '\u{2013}' => '-',
            '\u{00b7}' => '*',
            '{' | '}' | '[' | ']' | '(' | ')' | '=' | ';' | ',' | '+' | '-' | '*' | '^' => c,
            _ => {
                return Err(Error::Syntax {
                    line: l0,
                    column: c0,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        chars.next();
        col += 1;
        out.push(Token {
            tok: Tok::Sym(sym),
            line: l0,
            col: c0,
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Token], src: &str) -> Self {
        let end_line = src.lines().count().max(1);
        let end_col = src.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
        Parser {
            toks,
            pos: 0,
            end_line,
            end_col,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => (self.end_line, self.end_col),
        };
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let t = format!("{t:?}");
                self.err(format!("expected `{c}`, found {t}"))
            }
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn int(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected integer"),
        }
    }

    /// Skips a bracketed list of expressions, returning token ranges.
    fn expr_list_ranges(&mut self) -> Result<Vec<(usize, usize)>> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if self.eat_sym(']') {
            return Ok(out);
        }
        loop {
            let start = self.pos;
            let mut depth = 0i32;
            loop {
                match self.peek() {
                    None => return self.err("unterminated list"),
                    Some(Tok::Sym('(')) => depth += 1,
                    Some(Tok::Sym(')')) => depth -= 1,
                    Some(Tok::Sym(',')) | Some(Tok::Sym(']')) if depth == 0 => break,
                    _ => {}
                }
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("empty list entry");
            }
            out.push((start, self.pos));
            if self.eat_sym(']') {
                break;
            }
            self.expect_sym(',')?;
        }
        Ok(out)
    }

    fn ident_list(&mut self) -> Result<Vec<String>> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if self.eat_sym(']') {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            if self.eat_sym(']') {
                break;
            }
            self.expect_sym(',')?;
        }
        Ok(out)
    }
}

struct ExprParser<'a, 'r> {
    p: Parser<'a>,
    ring: &'r PolyRing,
    end: usize,
}

fn reduce_decimal(digits: &str, p: u32) -> u32 {
    digits
        .bytes()
        .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p as u64) as u32
}

impl<'a, 'r> ExprParser<'a, 'r> {
    fn at_end(&self) -> bool {
        self.p.pos >= self.end
    }

    fn peek(&self) -> Option<&Tok> {
        if self.at_end() {
            None
        } else {
            self.p.peek()
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.p.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(Tok::Sym('-')) => {
                    self.p.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.p.pos += 1;
            let f = self.unary()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.p.pos += 1;
                let f = self.unary()?;
                Ok(self.ring.neg(&f))
            }
            Some(Tok::Sym('+')) => {
                self.p.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.p.pos += 1;
            if self.at_end() {
                return self.p.err("expected exponent");
            }
            let digits = self.p.int()?;
            let e: u32 = digits
                .parse()
                .map_err(|_| Error::Syntax {
                    line: self.p.toks[self.p.pos - 1].line,
                    column: self.p.toks[self.p.pos - 1].col,
                    message: format!("exponent {digits} too large"),
                })?;
            // monomials raise exactly; anything else by repeated squaring
            if base.is_monomial() {
                let (m, c) = base.lead().unwrap().clone();
                let mm = m.pow(e as u64)?;
                let cc = self.ring.field().pow(c, e as u64);
                return Ok(self.ring.monomial(mm, cc));
            }
            return Ok(self.ring.pow(&base, e as u64));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        if self.at_end() {
            return self.p.err("unexpected end of expression");
        }
        match self.p.peek().cloned() {
            Some(Tok::Int(d)) => {
                self.p.pos += 1;
                Ok(self
                    .ring
                    .constant(reduce_decimal(&d, self.ring.field().characteristic())))
            }
            Some(Tok::Ident(name)) => {
                let tok = &self.p.toks[self.p.pos];
                match self.ring.var_index(&name) {
                    Some(i) => {
                        self.p.pos += 1;
                        Ok(self.ring.var(i))
                    }
                    None => Err(Error::UnknownVariable(format!(
                        "{name} (line {}, column {})",
                        tok.line, tok.col
                    ))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.p.pos += 1;
                let e = self.expr()?;
                if self.at_end() {
                    return self.p.err("expected `)`");
                }
                self.p.expect_sym(')')?;
                Ok(e)
            }
            Some(t) => self.p.err(format!("unexpected token {t:?}")),
            None => self.p.err("unexpected end of expression"),
        }
    }
}

fn parse_range(toks: &[Token], src: &str, ring: &PolyRing, start: usize, end: usize) -> Result<Poly> {
    let mut p = Parser::new(toks, src);
    p.pos = start;
    let mut ep = ExprParser { p, ring, end };
    let f = ep.expr()?;
    if !ep.at_end() {
        return ep.p.err("trailing tokens in expression");
    }
    Ok(f)
}

/// Parses a single polynomial expression over `ring`.
pub fn parse_polynomial(ring: &PolyRing, src: &str) -> Result<Poly> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "empty expression".into(),
        });
    }
    parse_range(&toks, src, ring, 0, toks.len())
}

/// Parses `a, b, c` or `[a, b, c]` into a list of polynomials.
pub fn parse_polynomial_list(ring: &PolyRing, src: &str) -> Result<Vec<Poly>> {
    let trimmed = src.trim();
    let wrapped = if trimmed.starts_with('[') {
        trimmed.to_string()
    } else {
        format!("[{trimmed}]")
    };
    let toks = tokenize(&wrapped)?;
    let mut p = Parser::new(&toks, &wrapped);
    let ranges = p.expr_list_ranges()?;
    if p.pos != toks.len() {
        return p.err("trailing tokens after list");
    }
    ranges
        .into_iter()
        .map(|(s, e)| parse_range(&toks, &wrapped, ring, s, e))
        .collect()
}

/// A parsed ring file: the presentation and its named ideals, in file order.
#[derive(Clone, Debug)]
pub struct RingFile {
    pub ring: Ring,
    pub ideals: Vec<(String, Ideal)>,
}

impl RingFile {
    pub fn ideal(&self, name: &str) -> Result<&Ideal> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| Error::UnknownIdeal(name.to_string()))
    }
}

pub fn parse_ring_file(src: &str) -> Result<RingFile> {
    parse_ring_file_with_limit(src, DEFAULT_STEP_LIMIT)
}

pub fn parse_ring_file_with_limit(src: &str, step_limit: u64) -> Result<RingFile> {
    let toks = tokenize(src)?;
    let mut p = Parser::new(&toks, src);

    match p.peek() {
        Some(Tok::Ident(s)) if s == "ring" => p.pos += 1,
        _ => return p.err("expected `ring` block"),
    }
    p.expect_sym('{')?;
    let mut characteristic: Option<(u64, usize, usize)> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order = MonomialOrder::Grevlex;
    let mut relations: Vec<(usize, usize)> = Vec::new();
    let mut local: Option<Vec<String>> = None;
    loop {
        if p.eat_sym('}') {
            break;
        }
        let key_pos = p.pos;
        let key = p.ident()?;
        p.expect_sym('=')?;
        match key.as_str() {
            "char" | "characteristic" => {
                let tok = &toks[p.pos];
                let (line, col) = (tok.line, tok.col);
                let d = p.int()?;
                let v: u64 = d.parse().map_err(|_| Error::NotPrime(u64::MAX))?;
                characteristic = Some((v, line, col));
            }
            "vars" => {
                let v = p.ident_list()?;
                if v.is_empty() {
                    return p.err("a ring needs at least one variable");
                }
                for (i, name) in v.iter().enumerate() {
                    if v[..i].contains(name) {
                        return p.err(format!("duplicate variable `{name}`"));
                    }
                }
                vars = Some(v);
            }
            "order" => {
                let o = p.ident()?;
                order = match o.as_str() {
                    "grevlex" => MonomialOrder::Grevlex,
                    "lex" => MonomialOrder::Lex,
                    "glex" | "deglex" => MonomialOrder::GradedLex,
                    _ => {
                        p.pos -= 1;
                        return p.err(format!("unknown monomial order `{o}`"));
                    }
                };
            }
            "relations" => relations = p.expr_list_ranges()?,
            "local" => local = Some(p.ident_list()?),
            _ => {
                p.pos = key_pos;
                return p.err(format!("unknown ring field `{key}`"));
            }
        }
        if !p.eat_sym(';') {
            p.expect_sym('}')?;
            break;
        }
    }
    let (ch, _, _) = characteristic.ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "ring block lacks `char`".into(),
    })?;
    let field = PrimeField::new(ch)?;
    let vars = vars.ok_or_else(|| Error::Syntax {
        line: 1,
        column: 1,
        message: "ring block lacks `vars`".into(),
    })?;
    let base = PolyRing::new(field, vars.clone(), order);
    let rels = relations
        .iter()
        .map(|&(s, e)| parse_range(&toks, src, &base, s, e))
        .collect::<Result<Vec<_>>>()?;
    let local_idx = match local {
        None => None,
        Some(names) => Some(
            names
                .iter()
                .map(|n| {
                    base.var_index(n)
                        .ok_or_else(|| Error::UnknownVariable(n.clone()))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let ring = RingPresentation::with_limit(field, vars, order, rels, local_idx, step_limit)?;

    let mut ideals: Vec<(String, Ideal)> = Vec::new();
    while p.peek().is_some() {
        match p.peek() {
            Some(Tok::Ident(s)) if s == "ideal" => p.pos += 1,
            _ => return p.err("expected `ideal` declaration"),
        }
        let name = p.ident()?;
        if ideals.iter().any(|(n, _)| *n == name) {
            p.pos -= 1;
            return p.err(format!("ideal `{name}` declared twice"));
        }
        p.expect_sym('=')?;
        let ranges = p.expr_list_ranges()?;
        let gens = ranges
            .iter()
            .map(|&(s, e)| parse_range(&toks, src, ring.base(), s, e))
            .collect::<Result<Vec<_>>>()?;
        ideals.push((name, Ideal::new(ring.clone(), gens)));
        p.eat_sym(';');
    }
    Ok(RingFile { ring, ideals })
}

/// Renders the ring block back into the file format.
pub fn render_ring(ring: &RingPresentation) -> String {
    let b = ring.base();
    let rels: Vec<String> = ring.relations().iter().map(|r| b.format(r)).collect();
    let mut s = format!(
        "ring {{ char = {} ; vars = [{}] ; order = {} ; relations = [{}]",
        ring.characteristic(),
        b.names().join(", "),
        b.order().name(),
        rels.join(", ")
    );
    if ring.local_vars().len() != ring.nvars() {
        let names: Vec<&str> = ring.local_vars().iter().map(|&i| b.names()[i].as_str()).collect();
        s.push_str(&format!(" ; local = [{}]", names.join(", ")));
    }
    s.push_str(" }\n");
    s
}

/// Renders an ideal declaration line.
pub fn render_ideal(name: &str, ideal: &Ideal) -> String {
    format!("ideal {} = [{}]\n", name, ideal.gens_strings().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HS: &str = "ring { char = 5 ; vars = [x, y, z, w] ; order = grevlex ; relations = [x*y - z*w] }\nideal M = [x, y, z, w]\n";

    #[test]
    fn hypersurface_presentation() {
        let rf = parse_ring_file(HS).unwrap();
        assert_eq!(rf.ring.characteristic(), 5);
        assert_eq!(rf.ring.relations().len(), 1);
        assert_eq!(rf.ideal("M").unwrap().gens().len(), 4);
    }

    #[test]
    fn polynomial_ring_without_relations() {
        let rf = parse_ring_file("ring { char = 3 ; vars = [x, y] ; relations = [] }").unwrap();
        assert!(rf.ring.is_relation_free());
        assert!(rf.ideals.is_empty());
    }

    #[test]
    fn composite_characteristic_rejected() {
        let err = parse_ring_file("ring { char = 4 ; vars = [x] }").unwrap_err();
        assert_eq!(err, Error::NotPrime(4));
        assert_eq!(err.to_string(), "characteristic not prime: 4");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_ring_file("ring { char = 5 ;\n vars = [x, y] ;\n relations = [x*y +] }").unwrap_err();
        match err {
            Error::Syntax { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 20);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn unknown_variable_rejected() {
        let err = parse_ring_file("ring { char = 5 ; vars = [x] ; relations = [x*q] }").unwrap_err();
        assert!(matches!(err, Error::UnknownVariable(ref s) if s.starts_with('q')));
    }

    #[test]
    fn constant_relation_needs_local_declaration() {
        let err = parse_ring_file("ring { char = 2 ; vars = [u, t, x] ; relations = [u*t - 1] }").unwrap_err();
        assert!(matches!(err, Error::NonzeroConstantRelation(_)));
        let ok = parse_ring_file("ring { char = 2 ; vars = [u, t, x] ; relations = [u*t - 1] ; local = [x] }");
        assert!(ok.is_ok());
        let bad = parse_ring_file("ring { char = 2 ; vars = [u, t, x] ; relations = [u*t - 1] ; local = [u] }").unwrap_err();
        assert_eq!(bad, Error::ImproperMaximalIdeal);
    }

    #[test]
    fn unicode_minus_and_powers() {
        let ring = PolyRing::new(PrimeField::new(7).unwrap(), vec!["x".into(), "y".into()], MonomialOrder::Grevlex);
        let f = parse_polynomial(&ring, "(x+y)^2 \u{2212} 2*x*y").unwrap();
        assert_eq!(ring.format(&f), "x^2 + y^2");
        let g = parse_polynomial(&ring, "-8*x^3").unwrap();
        assert_eq!(ring.format(&g), "-x^3");
    }

    #[test]
    fn list_parsing() {
        let ring = PolyRing::new(PrimeField::new(3).unwrap(), vec!["x".into(), "y".into()], MonomialOrder::Grevlex);
        let v = parse_polynomial_list(&ring, "x+y, (x-y)*x, y^2").unwrap();
        assert_eq!(v.len(), 3);
        assert!(parse_polynomial_list(&ring, "x, , y").is_err());
    }
}
