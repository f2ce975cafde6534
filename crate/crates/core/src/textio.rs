//! Text syntax for polynomials and vector fields.
//!
//! Polynomials use `+ - * ^` with integer or rational (`p/q`)
//! coefficients and explicit `*` between factors.  Variables are
//! `x1..xn`; for up to three variables the aliases `x`, `y`, `z` are
//! also accepted.  A field is a sum of terms `coeff*d/dx<k>`, e.g.
//! `x2*d/dx1 + x1*d/dx2` or `-d/dx`.  Parse errors carry the byte span
//! of the offending token.
//!
//! Printing is canonical: terms in decreasing graded-lex order,
//! coefficients `1` left implicit, `d/dx<k>` parts in increasing
//! variable order, so equal values always print identically and every
//! printed form parses back to the same value.

use crate::deriv::Derivation;
use crate::poly::{Monomial, MultiPoly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Byte range of a token in the input, end exclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

/// A parse failure with its location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError { span, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at bytes {}..{}: {}", self.span.start, self.span.end, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum TokKind {
    Int,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Tok {
    kind: TokKind,
    text: String,
    span: SourceSpan,
}

fn lex(input: &str) -> Result<Vec<Tok>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                let kind = match b {
                    b'+' => TokKind::Plus,
                    b'-' => TokKind::Minus,
                    b'*' => TokKind::Star,
                    b'/' => TokKind::Slash,
                    b'^' => TokKind::Caret,
                    b'(' => TokKind::LParen,
                    _ => TokKind::RParen,
                };
                i += 1;
                toks.push(Tok {
                    kind,
                    text: input[start..i].to_string(),
                    span: SourceSpan { start, end: i },
                });
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push(Tok {
                    kind: TokKind::Int,
                    text: input[start..i].to_string(),
                    span: SourceSpan { start, end: i },
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push(Tok {
                    kind: TokKind::Ident,
                    text: input[start..i].to_string(),
                    span: SourceSpan { start, end: i },
                });
            }
            _ => {
                let ch = input[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    SourceSpan { start, end: start + ch.len_utf8() },
                    format!("unexpected character '{ch}'"),
                ));
            }
        }
    }
    Ok(toks)
}

/// Canonical variable names: `x` alone, otherwise `x1..xn`.
fn var_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["x".to_string()]
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    n: usize,
    input_len: usize,
}

impl Parser {
    fn new(input: &str, n: usize) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(input)?, pos: 0, n, input_len: input.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&TokKind> {
        self.peek().map(|t| &t.kind)
    }

    fn bump(&mut self) -> &Tok {
        let t = &self.toks[self.pos];
        self.pos += 1;
        t
    }

    fn here(&self) -> SourceSpan {
        match self.peek() {
            Some(t) => t.span,
            None => SourceSpan { start: self.input_len, end: self.input_len },
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.here(), message)
    }

    fn expect(&mut self, kind: TokKind, what: &str) -> Result<&Tok, ParseError> {
        match self.peek() {
            Some(t) if t.kind == kind => Ok(self.bump()),
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("expected '+', '-', '*', '^', or end of input"))
        }
    }

    /// Resolves a variable name against the ambient count.
    fn var_index(&self, name: &str, span: SourceSpan) -> Result<usize, ParseError> {
        let alias = match name {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            _ => None,
        };
        if let Some(i) = alias {
            if self.n <= 3 && i < self.n {
                return Ok(i);
            }
            if self.n <= 3 {
                return Err(ParseError::new(
                    span,
                    format!("variable {name} out of range for {} variables", self.n),
                ));
            }
            // Fall through to the x<k> message for large n.
        }
        if let Some(rest) = name.strip_prefix('x') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                if let Ok(k) = rest.parse::<usize>() {
                    if (1..=self.n).contains(&k) {
                        return Ok(k - 1);
                    }
                }
                return Err(ParseError::new(
                    span,
                    format!("variable {name} out of range for {} variables", self.n),
                ));
            }
        }
        Err(ParseError::new(span, format!("unknown variable '{name}'")))
    }

    // expr := ('+' | '-')? term (('+' | '-') term)*
    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut negate = false;
        if let Some(TokKind::Plus | TokKind::Minus) = self.peek_kind() {
            negate = self.bump().kind == TokKind::Minus;
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek_kind() {
                Some(TokKind::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(TokKind::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek_kind() == Some(&TokKind::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    // factor := atom ('^' nat)?
    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek_kind() == Some(&TokKind::Caret) {
            self.bump();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let t = self.expect(TokKind::Int, "an exponent after '^'")?;
        t.text
            .parse::<u32>()
            .map_err(|_| ParseError::new(t.span, format!("exponent {} is too large", t.text)))
    }

    // atom := rational | var | '(' expr ')'
    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek_kind() {
            Some(TokKind::Int) => {
                let numer: BigInt = {
                    let t = self.bump();
                    t.text.parse().expect("digits parse as an integer")
                };
                let mut denom = BigInt::one();
                if self.peek_kind() == Some(&TokKind::Slash) {
                    self.bump();
                    let t = self.expect(TokKind::Int, "a denominator after '/'")?;
                    let span = t.span;
                    denom = t.text.parse().expect("digits parse as an integer");
                    if denom.is_zero() {
                        return Err(ParseError::new(span, "denominator is zero".to_string()));
                    }
                }
                Ok(MultiPoly::constant(self.n, Rational::new(numer, denom)))
            }
            Some(TokKind::Ident) => {
                let (name, span) = {
                    let t = self.bump();
                    (t.text.clone(), t.span)
                };
                let i = self.var_index(&name, span)?;
                Ok(MultiPoly::variable(self.n, i).expect("index checked"))
            }
            Some(TokKind::LParen) => {
                self.bump();
                let inner = self.expr()?;
                self.expect(TokKind::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.err("expected a polynomial term")),
        }
    }

    /// True when the tokens at `at` start a `d/d<var>` marker.
    fn d_marker_at(&self, at: usize) -> bool {
        matches!(self.toks.get(at), Some(t) if t.kind == TokKind::Ident && t.text == "d")
    }

    // d_marker := 'd' '/' 'd<var>'  |  'd' '/' 'd' <var>
    fn d_marker(&mut self) -> Result<usize, ParseError> {
        let t = self.expect(TokKind::Ident, "d/d<var>")?;
        if t.text != "d" {
            let span = t.span;
            return Err(ParseError::new(span, "expected d/d<var>".to_string()));
        }
        self.expect(TokKind::Slash, "'/' in d/d<var>")?;
        let (text, span) = {
            let t = self.expect(TokKind::Ident, "d<var> after d/")?;
            (t.text.clone(), t.span)
        };
        if text == "d" {
            // Spaced form: d/d x1.
            let (name, span) = {
                let t = self.expect(TokKind::Ident, "a variable after d/d")?;
                (t.text.clone(), t.span)
            };
            return self.var_index(&name, span);
        }
        match text.strip_prefix('d') {
            Some(rest) if !rest.is_empty() => self.var_index(rest, span),
            _ => Err(ParseError::new(span, "expected d<var> after d/".to_string())),
        }
    }

    // dterm := d_marker | factor ('*' factor)* '*' d_marker
    fn dterm(&mut self) -> Result<(MultiPoly, usize), ParseError> {
        if self.d_marker_at(self.pos) {
            let var = self.d_marker()?;
            return Ok((MultiPoly::one(self.n), var));
        }
        let mut acc = self.factor()?;
        loop {
            if self.peek_kind() == Some(&TokKind::Star) {
                if self.d_marker_at(self.pos + 1) {
                    self.bump();
                    let var = self.d_marker()?;
                    return Ok((acc, var));
                }
                self.bump();
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Err(self.err("expected '*' and then d/d<var> to finish the term"));
            }
        }
    }

    // derivation := ('+' | '-')? dterm (('+' | '-') dterm)*
    fn derivation(&mut self) -> Result<Derivation, ParseError> {
        let mut coeffs = vec![MultiPoly::zero(self.n); self.n];
        let mut negate = false;
        if let Some(TokKind::Plus | TokKind::Minus) = self.peek_kind() {
            negate = self.bump().kind == TokKind::Minus;
        }
        let (c, var) = self.dterm()?;
        coeffs[var] = if negate { -&c } else { c };
        loop {
            match self.peek_kind() {
                Some(TokKind::Plus) | Some(TokKind::Minus) => {
                    let neg = self.bump().kind == TokKind::Minus;
                    let (c, var) = self.dterm()?;
                    let c = if neg { -&c } else { c };
                    coeffs[var] = &coeffs[var] + &c;
                }
                _ => break,
            }
        }
        Ok(Derivation::new(coeffs).expect("coefficients built over n variables"))
    }
}

/// Parses a polynomial over `n` variables.
pub fn parse_poly(input: &str, n: usize) -> Result<MultiPoly, ParseError> {
    let mut p = Parser::new(input, n)?;
    let out = p.expr()?;
    p.finish()?;
    Ok(out)
}

/// Parses a vector field over `n` variables.
pub fn parse_derivation(input: &str, n: usize) -> Result<Derivation, ParseError> {
    let mut p = Parser::new(input, n)?;
    // The zero field prints as "0", so accept that form back.
    if p.toks.len() == 1 && p.toks[0].kind == TokKind::Int && p.toks[0].text == "0" {
        return Ok(Derivation::zero(n));
    }
    let out = p.derivation()?;
    p.finish()?;
    Ok(out)
}

fn rational_string(r: &Rational) -> String {
    r.to_string()
}

/// One printed term: magnitude, monomial factors, optional d/d part.
fn term_string(mag: &Rational, m: &Monomial, names: &[String], d_part: Option<&str>) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !mag.is_one() || (m.is_unit() && d_part.is_none()) {
        factors.push(rational_string(mag));
    }
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            factors.push(names[i].clone());
        } else if e >= 2 {
            factors.push(format!("{}^{}", names[i], e));
        }
    }
    if let Some(d) = d_part {
        factors.push(d.to_string());
    }
    factors.join("*")
}

/// Canonical polynomial form: terms in decreasing graded-lex order.
pub fn print_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = var_names(p.vars());
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term_string(&c.abs(), m, &names, None));
    }
    out
}

/// Canonical field form: `d/dx<k>` parts in increasing variable order,
/// multi-term coefficients parenthesised.
pub fn print_derivation(d: &Derivation) -> String {
    if d.is_zero() {
        return "0".to_string();
    }
    let n = d.vars();
    let names = var_names(n);
    let mut out = String::new();
    let mut first = true;
    for i in 0..n {
        let c = d.coeff(i);
        if c.is_zero() {
            continue;
        }
        let d_part = format!("d/d{}", names[i]);
        if c.term_count() == 1 {
            let (m, coeff) = c.leading().expect("nonzero coefficient");
            let neg = coeff.is_negative();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term_string(&coeff.abs(), m, &names, Some(&d_part)));
        } else {
            if !first {
                out.push_str(" + ");
            }
            out.push_str(&format!("({})*{}", print_poly(c), d_part));
        }
        first = false;
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_poly(self))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_derivation(self))
    }
}
