//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (tightest binding first): `^`, then `*`, then `+`/`-`.  A `/`
//! between two digit runs with no intervening space is a rational literal;
//! anywhere else it separates the numerator and denominator of a ratio.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::mpoly::{AffineRatio, MPoly};
use crate::numfield::{FieldElement, FieldRef, NumberField, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Number(Rational),
    Ident(String),
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = input[start..i].parse().expect("digit run");
                // A slash glued between digits is a rational literal.
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let denom: BigInt = input[dstart..i].parse().expect("digit run");
                    if denom.is_zero() {
                        return err(dstart, "zero denominator in rational literal");
                    }
                    toks.push((start, Tok::Number(Rational::new(numer, denom))));
                } else {
                    toks.push((start, Tok::Number(Rational::from(numer))));
                }
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character `{}`", &input[i..i + 1])),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [&'a str],
    field: &'a FieldRef,
    allow_t: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn lift(&self, pos: usize, r: Result<MPoly, Error>) -> Result<MPoly, ParseError> {
        r.map_err(|e| ParseError {
            pos,
            msg: e.to_string(),
        })
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some((pos, tok)) = self.peek().cloned() {
            match tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.lift(pos, acc.add(&rhs))?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.lift(pos, acc.sub(&rhs))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        while let Some((pos, Tok::Star)) = self.peek().cloned() {
            self.bump();
            let rhs = self.factor()?;
            acc = self.lift(pos, acc.mul(&rhs))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        if let Some((_, Tok::Minus)) = self.peek() {
            self.bump();
            let inner = self.factor()?;
            return Ok(inner.neg());
        }
        let base = self.atom()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            self.bump();
            let (pos, tok) = match self.bump() {
                Some(t) => t,
                None => return err(self.end, "expected an exponent after `^`"),
            };
            let Tok::Number(n) = tok else {
                return err(pos, "expected an exponent after `^`");
            };
            if !n.is_integer() {
                return err(pos, "exponent must be a nonnegative integer");
            }
            let e: u64 = match n.to_integer().try_into() {
                Ok(e) => e,
                Err(_) => return err(pos, "exponent must be a nonnegative integer"),
            };
            return self.lift(pos, base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let (pos, tok) = match self.bump() {
            Some(t) => t,
            None => return err(self.end, "expected an expression"),
        };
        match tok {
            Tok::Number(n) => Ok(MPoly::constant(
                self.field,
                self.vars.len(),
                FieldElement::from_rational(self.field, n),
            )),
            Tok::Ident(name) => {
                if let Some(v) = self.vars.iter().position(|&x| x == name) {
                    Ok(MPoly::variable(self.field, self.vars.len(), v)
                        .expect("index from position"))
                } else if name == "t" {
                    if self.allow_t {
                        Ok(MPoly::constant(
                            self.field,
                            self.vars.len(),
                            FieldElement::generator(self.field),
                        ))
                    } else {
                        err(pos, "`t` used without an extension field declaration")
                    }
                } else {
                    err(pos, format!("unknown variable `{}`", name))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((p, _)) => err(p, "expected `)`"),
                    None => err(self.end, "expected `)`"),
                }
            }
            Tok::Slash => err(pos, "unexpected `/`; a ratio is written `num / den` at top level"),
            other => err(pos, format!("unexpected token `{:?}`", other)),
        }
    }
}

/// Parse a polynomial in the named variables.  `allow_t` admits the
/// extension generator `t` as a coefficient atom.
pub fn parse_poly(
    input: &str,
    vars: &[&str],
    field: &FieldRef,
    allow_t: bool,
) -> Result<MPoly, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
        vars,
        field,
        allow_t,
    };
    let poly = p.expr()?;
    match p.peek() {
        None => Ok(poly),
        Some((pos, Tok::Slash)) => err(
            *pos,
            "unexpected `/`; rational coefficients need digits on both sides",
        ),
        Some((pos, t)) => err(*pos, format!("unexpected trailing token `{:?}`", t)),
    }
}

/// Parse `num` or `num / den` in the affine variables `x, y`.
pub fn parse_ratio(
    input: &str,
    field: &FieldRef,
    allow_t: bool,
) -> Result<AffineRatio, ParseError> {
    let vars = ["x", "y"];
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
        vars: &vars,
        field,
        allow_t,
    };
    let num = p.expr()?;
    let den = match p.peek().cloned() {
        None => MPoly::one(field, 2),
        Some((pos, Tok::Slash)) => {
            p.bump();
            let den = p.expr()?;
            if let Some((p2, t)) = p.peek() {
                return err(*p2, format!("unexpected trailing token `{:?}`", t));
            }
            if den.is_zero() {
                return err(pos, "denominator is identically zero");
            }
            den
        }
        Some((pos, t)) => return err(pos, format!("unexpected trailing token `{:?}`", t)),
    };
    AffineRatio::new(num, den).map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })
}

/// Parse a univariate polynomial in `t` with rational coefficients and
/// return its dense ascending coefficient list.
pub fn parse_univar_rational(input: &str) -> Result<Vec<Rational>, ParseError> {
    let q = NumberField::rational();
    let poly = parse_poly(input, &["t"], &q, false)?;
    let deg = poly.deg_in(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in poly.terms() {
        coeffs[e[0] as usize] = c.to_rational().expect("rational coefficient");
    }
    Ok(coeffs)
}
