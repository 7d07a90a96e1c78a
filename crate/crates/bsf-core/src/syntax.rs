//! Tokenizer and polynomial expression parser shared with the CLI.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    /// Punctuation; `->` is the only two-character symbol.
    Sym(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub start: usize,
    pub end: usize,
}

const SYMBOLS: &[&str] = &["->", "+", "-", "*", "/", "^", "(", ")", "[", "]", ",", ";", "=", ":", "{", "}"];

/// Split text into tokens. `#` starts a comment running to end of line.
pub fn lex(text: &str) -> std::result::Result<Vec<Token>, (usize, String)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let s = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(text[s..i].to_string()), start: s, end: i });
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[s..i].parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), start: s, end: i });
            continue;
        }
        match SYMBOLS.iter().find(|s| text[i..].starts_with(**s)) {
            Some(s) => {
                out.push(Token { tok: Tok::Sym(s), start: i, end: i + s.len() });
                i += s.len();
            }
            None => {
                let ch = text[i..].chars().next().unwrap();
                return Err((i, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyErrorKind {
    Syntax,
    UnknownVariable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyError {
    pub kind: PolyErrorKind,
    pub pos: usize,
    pub msg: String,
}

/// Recursive-descent parser over a token slice. `pos` indexes into `toks`.
pub struct PolyParser<'a> {
    pub toks: &'a [Token],
    pub pos: usize,
    pub ring: &'a Ring,
    /// Byte offset reported when the input ends unexpectedly.
    pub eof: usize,
}

impl<'a> PolyParser<'a> {
    pub fn new(toks: &'a [Token], ring: &'a Ring, eof: usize) -> Self {
        PolyParser { toks, pos: 0, ring, eof }
    }

    fn peek_sym(&self) -> Option<&'static str> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Sym(s), .. }) => Some(s),
            _ => None,
        }
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.start).unwrap_or(self.eof)
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError { kind: PolyErrorKind::Syntax, pos: self.here(), msg: msg.into() }
    }

    pub fn expr(&mut self) -> std::result::Result<Poly, PolyError> {
        let mut acc = match self.peek_sym() {
            Some("-") => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some("+") => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(s @ ("+" | "-")) = self.peek_sym() {
            self.pos += 1;
            let t = self.term()?;
            acc = if s == "+" { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> std::result::Result<Poly, PolyError> {
        let mut acc = self.power()?;
        while let Some(s @ ("*" | "/")) = self.peek_sym() {
            self.pos += 1;
            let at = self.here();
            let f = self.power()?;
            if s == "*" {
                acc = acc.mul(&f);
            } else {
                match f.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => {
                        return Err(PolyError {
                            kind: PolyErrorKind::Syntax,
                            pos: at,
                            msg: "division only by a nonzero constant".into(),
                        })
                    }
                }
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> std::result::Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek_sym() == Some("^") {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Token { tok: Tok::Int(n), start, .. }) => {
                    let e = n.to_u32().filter(|&e| e <= 10_000).ok_or(PolyError {
                        kind: PolyErrorKind::Syntax,
                        pos: *start,
                        msg: "exponent out of range".into(),
                    })?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Poly, PolyError> {
        let tok = match self.toks.get(self.pos) {
            Some(t) => t.clone(),
            None => return Err(self.err("unexpected end of expression")),
        };
        match tok.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(self.ring.constant(Rational::from_integer(n)))
            }
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(self.ring.var(i))
                }
                None => Err(PolyError {
                    kind: PolyErrorKind::UnknownVariable,
                    pos: tok.start,
                    msg: format!("undeclared variable `{name}`"),
                }),
            },
            Tok::Sym("(") => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_sym() != Some(")") {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Sym(s) => Err(self.err(format!("unexpected `{s}`"))),
        }
    }
}

pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    let toks = lex(text).map_err(|(pos, msg)| Error::Parse { pos, msg })?;
    let mut p = PolyParser::new(&toks, ring, text.len());
    let poly = p.expr().map_err(|e| Error::Parse { pos: e.pos, msg: e.msg })?;
    if p.pos != toks.len() {
        return Err(Error::Parse { pos: toks[p.pos].start, msg: "trailing input".into() });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn parses_rational_coefficients() {
        let r = Ring::grevlex(&["x", "y", "z"]);
        let p = parse_poly(&r, "3/2*x^2*y - z + 1").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.lc().unwrap(), &ratio(3, 2));
        assert_eq!(parse_poly(&r, "(x+y)^2").unwrap(), parse_poly(&r, "x^2 + 2*x*y + y^2").unwrap());
    }

    #[test]
    fn rejects_implicit_multiplication_and_unknowns() {
        let r = Ring::grevlex(&["x", "y"]);
        assert!(matches!(parse_poly(&r, "2x"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_poly(&r, "x*w"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_poly(&r, "x/y").is_err());
        assert!(parse_poly(&r, "x^").is_err());
    }
}
