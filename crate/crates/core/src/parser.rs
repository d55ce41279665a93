//! Text syntax for problems.
//!
//! ```text
//! problem := expr ('>' | '<') expr ['on' interval]
//! interval := '(' const ',' const ')'
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := ('+' | '-') factor | base ['^' uint]
//! base    := number | 'pi' | 'x' | 'sin(x)' | 'cos(x)' | '(' expr ')'
//! ```
//!
//! Numbers are exact: `0.1` is `1/10`. Division is only by nonzero rational
//! constants, so every parsed expression stays a mixed trigonometric
//! polynomial with coefficients in ℚ[π].

use num_traits::Zero;
use thiserror::Error;

use crate::pipoly::PiPoly;
use crate::problem::{MixedTrigPoly, ProblemSpec};
use crate::rational::{self, Rational};
use crate::unipoly::UniPoly;

/// Exponents above this are rejected to keep expansion sizes sane.
pub const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer;

impl Lexer {
    fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() || c == '.' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].to_string())));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_ascii_lowercase())));
            } else if "+-*/^()<>,[]".contains(c) {
                out.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                let ch = text[i..].chars().next().unwrap();
                return err(i, format!("unexpected character '{ch}'"));
            }
        }
        out.push((text.len(), Tok::End));
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Self {
            toks: Lexer::tokenize(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos(), format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<MixedTrigPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MixedTrigPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.bump();
                let d = self.factor()?;
                let c = match d.as_constant() {
                    Some(c) => c,
                    None => return err(pos, "division is only allowed by constants; clear denominators first"),
                };
                let r = match c.as_rational() {
                    Some(r) => r,
                    None => return err(pos, "division by an expression in pi is not supported; multiply it out"),
                };
                if r.is_zero() {
                    return err(pos, "division by zero");
                }
                acc = acc.scale_pi(&PiPoly::constant(r.recip()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MixedTrigPoly, ParseError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.base()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let pos = self.pos();
            let e = match self.bump() {
                Tok::Num(s) if !s.contains('.') => s.parse::<u32>().ok(),
                Tok::Num(_) => return err(pos, "exponents must be nonnegative integers"),
                Tok::Sym('-') => return err(pos, "negative exponents are not supported"),
                _ => return err(pos, "expected an integer exponent"),
            };
            match e {
                Some(e) if e <= MAX_EXPONENT => return Ok(base.pow(e)),
                _ => return err(pos, format!("exponent larger than {MAX_EXPONENT}")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<MixedTrigPoly, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(s) => {
                let r = rational::parse_rational(&s).filter(|_| s.matches('.').count() <= 1);
                match r {
                    Some(r) => Ok(MixedTrigPoly::from_poly(UniPoly::constant(PiPoly::constant(r)))),
                    None => err(pos, format!("malformed number '{s}'")),
                }
            }
            Tok::Ident(name) => self.ident(pos, &name),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => err(pos, "unexpected end of input"),
            Tok::Sym(c) => err(pos, format!("unexpected '{c}'")),
        }
    }

    fn ident(&mut self, pos: usize, name: &str) -> Result<MixedTrigPoly, ParseError> {
        match name {
            "x" => Ok(MixedTrigPoly::from_poly(UniPoly::x())),
            "pi" => Ok(MixedTrigPoly::from_poly(UniPoly::constant(PiPoly::pi()))),
            "sin" | "cos" => {
                self.expect('(')?;
                let arg_pos = self.pos();
                let arg = self.expr()?;
                self.expect(')')?;
                if arg != MixedTrigPoly::from_poly(UniPoly::x()) {
                    return err(arg_pos, format!("only {name}(x) is supported; multiple angles are derived internally"));
                }
                Ok(if name == "sin" {
                    MixedTrigPoly::term(UniPoly::one(), 0, 1)
                } else {
                    MixedTrigPoly::term(UniPoly::one(), 1, 0)
                })
            }
            "tan" | "sec" | "cot" | "csc" => err(
                pos,
                format!("'{name}' is not a polynomial in sin(x) and cos(x); multiply through by a positive power of cos(x) or sin(x) to clear denominators"),
            ),
            _ => err(pos, format!("unknown name '{name}'")),
        }
    }

    fn constant(&mut self) -> Result<PiPoly, ParseError> {
        let pos = self.pos();
        let e = self.expr()?;
        e.as_constant()
            .ok_or(ParseError {
                pos,
                message: "interval endpoints must be constants built from numbers and pi".into(),
            })
    }

    fn interval(&mut self) -> Result<(PiPoly, PiPoly), ParseError> {
        if !self.eat('(') {
            return err(self.pos(), "expected '(' to open the interval");
        }
        let lo = self.constant()?;
        self.expect(',')?;
        let hi = self.constant()?;
        self.expect(')')?;
        Ok((lo, hi))
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => err(self.pos(), "unexpected trailing input"),
        }
    }
}

/// Parses an expression in `x`.
pub fn parse_expr(text: &str) -> Result<MixedTrigPoly, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.end()?;
    Ok(e)
}

/// Parses a constant such as `pi/2` or `142/125`.
pub fn parse_constant(text: &str) -> Result<PiPoly, ParseError> {
    let mut p = Parser::new(text)?;
    let c = p.constant()?;
    p.end()?;
    Ok(c)
}

/// Parses `(lo, hi)`.
pub fn parse_interval(text: &str) -> Result<(PiPoly, PiPoly), ParseError> {
    let mut p = Parser::new(text)?;
    let iv = p.interval()?;
    p.end()?;
    Ok(iv)
}

/// Parses `lhs > rhs on (lo, hi)`, normalizing to `lhs − rhs > 0`.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, ParseError> {
    parse_problem_with(text, None)
}

/// Like [`parse_problem`], with the interval optionally supplied separately.
pub fn parse_problem_with(text: &str, interval: Option<&str>) -> Result<ProblemSpec, ParseError> {
    let mut p = Parser::new(text)?;
    let lhs = p.expr()?;
    let rel_pos = p.pos();
    let f = match p.bump() {
        Tok::Sym('>') => lhs.sub(&p.expr()?),
        Tok::Sym('<') => p.expr()?.sub(&lhs),
        Tok::End if interval.is_some() => lhs,
        _ => return err(rel_pos, "expected '>' or '<'"),
    };
    let inline = if *p.peek() == Tok::Ident("on".into()) {
        p.bump();
        Some(p.interval()?)
    } else {
        None
    };
    p.end()?;
    let (lo, hi) = match (inline, interval) {
        (Some(_), Some(_)) => return err(rel_pos, "interval given both inline and separately"),
        (Some(iv), None) => iv,
        (None, Some(s)) => parse_interval(s)?,
        (None, None) => return err(text.len(), "missing interval; add 'on (lo, hi)'"),
    };
    ProblemSpec::new(f, lo, hi).map_err(|m| ParseError { pos: 0, message: m })
}

/// Decimal or fractional literal as an exact rational.
pub fn parse_number(s: &str) -> Option<Rational> {
    rational::parse_rational(s)
}
