//! Recursive-descent parser for the polynomial text format:
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ('^' uint)?
//! atom   := uint | name | '(' expr ')'
//! ```
//!
//! `t` denotes the uniformizer; other names must belong to the namespace.
//! Division is only allowed by nonzero constants. Juxtaposition is an error.

use num_bigint::BigInt;

use super::{MultiPoly, Namespace};
use crate::coefficients::{CoeffConfig, DvrElement, FractionField};
use crate::error::{Error, Result};

type Poly = MultiPoly<FractionField>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            other => return Err(Error::Syntax { offset: start, message: format!("unexpected character `{other}`") }),
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ns: &'a Namespace,
    field: FractionField,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.offset(), message: message.into() })
    }

    fn constant(&self, c: DvrElement) -> Poly {
        Poly::constant(self.field, self.ns.clone(), c)
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.power()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let d = self.power()?;
                    let c = match d.constant_value() {
                        Some(c) => c,
                        None => return Err(Error::Syntax { offset: at, message: "division by a non-constant".into() }),
                    };
                    let inv = c.inv().map_err(|_| Error::Syntax { offset: at, message: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                Tok::Num(_) | Tok::Name(_) | Tok::LParen => {
                    return self.err("expected an operator (implicit multiplication is not allowed)")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Num(n) => {
                let e: u32 = match u32::try_from(&n) {
                    Ok(e) if e <= 100_000 => e,
                    _ => return self.err("exponent too large"),
                };
                self.bump();
                Ok(base.pow(e))
            }
            _ => self.err("expected an unsigned integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(self.constant(DvrElement::from_bigint(self.field.config(), &n))),
            Tok::Name(name) => {
                if let Some(v) = self.ns.index_of(&name) {
                    Ok(Poly::var(self.field, self.ns.clone(), v))
                } else if name == "t" {
                    Ok(self.constant(self.field.uniformizer()))
                } else {
                    Err(Error::UnknownVariable { name, offset: at })
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax { offset: at, message: "unexpected end of input".into() }),
            other => Err(Error::Syntax { offset: at, message: format!("unexpected token {other:?}") }),
        }
    }
}

/// Parses a polynomial over K in the variables of `ns`.
pub fn parse_poly(text: &str, ns: &Namespace, config: CoeffConfig) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, ns, field: FractionField::new(config) };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a constant of K, e.g. `1/2`, `t^3` or `(1+t)/(1-t)`.
pub fn parse_coeff(text: &str, config: CoeffConfig) -> Result<DvrElement> {
    let p = parse_poly(text, &Namespace::new(Vec::<String>::new()), config)?;
    Ok(p.constant_value().expect("empty namespace yields constants"))
}
