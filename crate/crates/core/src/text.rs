//! Tokenizer and recursive-descent grammar shared by the free-algebra and
//! commutative-polynomial parsers.
//!
//! ```text
//! expr    := term (("+" | "-") term)* ;
//! term    := signed (("*")? signed)* ;
//! signed  := ("-")? factor ;
//! factor  := atom ("^" NAT)? ;
//! atom    := IDENT | RATIONAL | "(" expr ")" ;
//! RATIONAL := NAT ("/" NAT)? ;
//! ```
//!
//! A leading `-` is only accepted at the start of a factor after `*`, at
//! the start of an expression or parenthesis, or right after `+`/`-`;
//! juxtaposition never starts with `-`, so `x1 -x2` is a difference.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Nat(String),
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Nat(text[start..i].to_string())));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            // Matrix-entry variables: X<l>[i,j]
            if i < bytes.len() && bytes[i] == b'[' {
                match text[i..].find(']') {
                    Some(close) => i += close + 1,
                    None => return Err(Error::syntax(i, "unterminated '['")),
                }
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        return Err(Error::syntax(start, format!("unexpected character {c:?}")));
    }
    Ok(out)
}

/// What the grammar builds. Implemented once per target algebra.
pub(crate) trait ExprBuilder {
    type Value: Clone;
    fn field(&self) -> Field;
    fn ident(&self, name: &str, position: usize) -> Result<Self::Value>;
    fn scalar(&self, c: Scalar) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    /// Product in written order.
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
}

struct Parser<'a, B: ExprBuilder> {
    builder: &'a B,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

pub(crate) fn parse_with<B: ExprBuilder>(builder: &B, text: &str) -> Result<B::Value> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        builder,
        toks,
        pos: 0,
        len: text.len(),
    };
    if p.toks.is_empty() {
        return Err(Error::syntax(0, "empty expression"));
    }
    let v = p.expr()?;
    if let Some((at, t)) = p.toks.get(p.pos) {
        return Err(Error::syntax(*at, format!("unexpected token {t:?}")));
    }
    Ok(v)
}

impl<B: ExprBuilder> Parser<'_, B> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn expr(&mut self) -> Result<B::Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.builder.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.builder.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<B::Value> {
        let mut acc = self.signed()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let s = self.signed()?;
                    acc = self.builder.mul(&acc, &s);
                }
                Some(Tok::Ident(_) | Tok::Nat(_) | Tok::LParen) => {
                    let s = self.factor()?;
                    acc = self.builder.mul(&acc, &s);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed(&mut self) -> Result<B::Value> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let f = self.factor()?;
            return Ok(self.builder.neg(&f));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<B::Value> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        let exp = match self.peek() {
            Some(Tok::Nat(n)) => n
                .parse::<u32>()
                .map_err(|_| Error::syntax(at, "exponent too large"))?,
            _ => return Err(Error::syntax(at, "expected a natural exponent after '^'")),
        };
        self.pos += 1;
        let mut acc = self.builder.scalar(self.builder.field().one());
        for _ in 0..exp {
            acc = self.builder.mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<B::Value> {
        let at = self.here();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.builder.ident(&name, at)
            }
            Some(Tok::Nat(n)) => {
                self.pos += 1;
                let num: BigInt = n.parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dat = self.here();
                    match self.peek() {
                        Some(Tok::Nat(d)) => {
                            den = d.parse().expect("digits");
                            self.pos += 1;
                        }
                        _ => return Err(Error::syntax(dat, "expected a denominator after '/'")),
                    }
                }
                let c = self
                    .builder
                    .field()
                    .from_ratio(&num, &den)
                    .map_err(|_| Error::syntax(at, "zero denominator"))?;
                Ok(self.builder.scalar(c))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::syntax(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(t) => Err(Error::syntax(at, format!("unexpected token {t:?}"))),
            None => Err(Error::syntax(at, "unexpected end of input")),
        }
    }
}
