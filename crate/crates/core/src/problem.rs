//! Mixed trigonometric polynomials and the problems stated over them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::interval::RatInterval;
use crate::pipoly::PiPoly;
use crate::rational::Rational;
use crate::taylor::{cos_enclosure, sin_enclosure};
use crate::unipoly::{unipoly_eval_interval, UniPoly};

/// `factor(x) · cos(x)^cos_pow · sin(x)^sin_pow`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedTrigTerm {
    pub factor: UniPoly,
    pub cos_pow: u32,
    pub sin_pow: u32,
}

/// Sum of [`MixedTrigTerm`]s, one per `(cos_pow, sin_pow)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedTrigPoly {
    terms: BTreeMap<(u32, u32), UniPoly>,
}

impl MixedTrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::term(p, 0, 0)
    }

    pub fn term(factor: UniPoly, cos_pow: u32, sin_pow: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(factor, cos_pow, sin_pow);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = MixedTrigTerm>) -> Self {
        let mut out = Self::zero();
        for t in terms {
            out.add_term(t.factor, t.cos_pow, t.sin_pow);
        }
        out
    }

    pub fn add_term(&mut self, factor: UniPoly, cos_pow: u32, sin_pow: u32) {
        let key = (cos_pow, sin_pow);
        let merged = match self.terms.remove(&key) {
            Some(prev) => &prev + &factor,
            None => factor,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(cos_pow, sin_pow)` order.
    pub fn terms(&self) -> Vec<MixedTrigTerm> {
        self.terms
            .iter()
            .map(|(&(cos_pow, sin_pow), f)| MixedTrigTerm {
                factor: f.clone(),
                cos_pow,
                sin_pow,
            })
            .collect()
    }

    pub fn factor(&self, cos_pow: u32, sin_pow: u32) -> Option<&UniPoly> {
        self.terms.get(&(cos_pow, sin_pow))
    }

    /// `Some(c)` when the function is the constant `c` (no `x`, no trig).
    pub fn as_constant(&self) -> Option<PiPoly> {
        match self.terms.len() {
            0 => Some(PiPoly::zero()),
            1 => {
                let (&key, f) = self.terms.iter().next()?;
                (key == (0, 0) && f.degree() == Some(0)).then(|| f.coeff(0))
            }
            _ => None,
        }
    }

    pub fn scale_pi(&self, c: &PiPoly) -> MixedTrigPoly {
        let mut out = MixedTrigPoly::zero();
        for (&(q, r), f) in &self.terms {
            out.add_term(f.scale_pi(c), q, r);
        }
        out
    }

    pub fn neg(&self) -> MixedTrigPoly {
        self.scale_pi(&PiPoly::from_int(-1))
    }

    pub fn add(&self, other: &MixedTrigPoly) -> MixedTrigPoly {
        let mut out = self.clone();
        for (&(q, r), f) in &other.terms {
            out.add_term(f.clone(), q, r);
        }
        out
    }

    pub fn sub(&self, other: &MixedTrigPoly) -> MixedTrigPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MixedTrigPoly) -> MixedTrigPoly {
        let mut out = MixedTrigPoly::zero();
        for (&(q1, r1), f1) in &self.terms {
            for (&(q2, r2), f2) in &other.terms {
                out.add_term(f1 * f2, q1 + q2, r1 + r2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> MixedTrigPoly {
        let mut acc = MixedTrigPoly::from_poly(UniPoly::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rigorous enclosure of `f(x)` at a rational point.
    pub fn enclose_at(&self, x: &Rational, precision_bits: u32) -> RatInterval {
        let point = RatInterval::point(x.clone());
        let s = sin_enclosure(x, precision_bits);
        let c = cos_enclosure(x, precision_bits);
        let grid = precision_bits + 16;
        let mut acc = RatInterval::zero();
        for (&(q, r), f) in &self.terms {
            let h = unipoly_eval_interval(f, &point, precision_bits);
            let t = &(&h * &c.pow(q)) * &s.pow(r);
            acc = (&acc + &t).round_out(grid);
        }
        acc
    }

    /// Certified sign of `f(x)`, refining precision up to `cap_bits`.
    pub fn sign_at(&self, x: &Rational, start_bits: u32, cap_bits: u32) -> Option<i32> {
        let mut bits = start_bits.max(16);
        loop {
            let e = self.enclose_at(x, bits);
            if e.is_positive() {
                return Some(1);
            }
            if e.is_negative() {
                return Some(-1);
            }
            if bits >= cap_bits {
                return None;
            }
            bits = (bits * 2).min(cap_bits);
        }
    }

    /// Floating-point value, for diagnostics and test sampling only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let pi = std::f64::consts::PI;
        self.terms
            .iter()
            .map(|(&(q, r), f)| {
                let h: f64 = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let cv: f64 = c
                            .coeffs()
                            .iter()
                            .enumerate()
                            .map(|(i, a)| crate::rational::to_f64(a) * pi.powi(i as i32))
                            .sum();
                        cv * x.powi(k as i32)
                    })
                    .sum();
                h * x.cos().powi(q as i32) * x.sin().powi(r as i32)
            })
            .sum()
    }

    /// Flat text form: a sum of monomials `c*pi^i*x^k*cos(x)^q*sin(x)^r`.
    pub fn to_expr(&self) -> String {
        let mut out = String::new();
        for (&(q, r), f) in &self.terms {
            for (k, c) in f.coeffs().iter().enumerate() {
                for (i, a) in c.coeffs().iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let mut factors: Vec<String> = Vec::new();
                    let mag = a.abs();
                    if !mag.is_one() || (i == 0 && k == 0 && q == 0 && r == 0) {
                        factors.push(if mag.is_integer() {
                            mag.numer().to_string()
                        } else {
                            format!("({}/{})", mag.numer(), mag.denom())
                        });
                    }
                    push_power(&mut factors, "pi", i as u32);
                    push_power(&mut factors, "x", k as u32);
                    push_power(&mut factors, "cos(x)", q);
                    push_power(&mut factors, "sin(x)", r);
                    let body = factors.join("*");
                    if out.is_empty() {
                        if a.is_negative() {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if a.is_negative() { " - " } else { " + " });
                    }
                    out.push_str(&body);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn push_power(factors: &mut Vec<String>, base: &str, e: u32) {
    match e {
        0 => {}
        1 => factors.push(base.to_string()),
        _ => factors.push(format!("{base}^{e}")),
    }
}

impl fmt::Display for MixedTrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

/// The claim `f(x) > 0` for every `x` in the open interval `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub f: MixedTrigPoly,
    pub lo: PiPoly,
    pub hi: PiPoly,
}

impl ProblemSpec {
    /// Checks `lo < hi`, deciding the sign of `hi − lo` rigorously.
    pub fn new(f: MixedTrigPoly, lo: PiPoly, hi: PiPoly) -> Result<Self, String> {
        let diff = &hi - &lo;
        match diff.sign(32, 4096) {
            Some(1) => Ok(Self { f, lo, hi }),
            Some(_) => Err(format!("empty interval ({}, {})", lo.to_expr(), hi.to_expr())),
            None => Err("could not order the interval endpoints".into()),
        }
    }

    /// Canonical text, accepted back by the parser.
    pub fn print(&self) -> String {
        format!("{} > 0 on ({}, {})", self.f.to_expr(), self.lo.to_expr(), self.hi.to_expr())
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.print())
    }
}

/// Printing entry point matching the parser.
pub fn print_problem(p: &ProblemSpec) -> String {
    p.print()
}
