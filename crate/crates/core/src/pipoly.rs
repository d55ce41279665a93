//! Exact polynomials in π with rational coefficients.
//!
//! π is transcendental, so a `PiPoly` is zero as a real number exactly when
//! all of its coefficients vanish. Sign questions about nonzero values are
//! settled by interval evaluation with a refining π enclosure.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::interval::RatInterval;
use crate::pi::pi_enclosure;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PiPoly {
    coeffs: Vec<Rational>,
}

impl PiPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(rational::int(v))
    }

    /// `c·π^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn pi() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in π; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `Some(c)` when the value is the rational `c`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> PiPoly {
        PiPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> PiPoly {
        let mut acc = PiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Interval containing the real value, by Horner with an enclosure of π.
    pub fn enclose(&self, precision_bits: u32) -> RatInterval {
        let Some(top) = self.coeffs.last() else {
            return RatInterval::zero();
        };
        if self.coeffs.len() == 1 {
            return RatInterval::point(top.clone());
        }
        let pi = pi_enclosure(precision_bits);
        let grid = precision_bits + 16;
        let mut acc = RatInterval::point(top.clone());
        for c in self.coeffs.iter().rev().skip(1) {
            acc = (&(&acc * &pi) + &RatInterval::point(c.clone())).round_out(grid);
        }
        acc
    }

    /// Certified sign of the real value, refining π until it is decided.
    ///
    /// Returns `None` only when the enclosure still contains zero at
    /// `cap_bits`, which for a nonzero `PiPoly` means the cap is too low.
    pub fn sign(&self, start_bits: u32, cap_bits: u32) -> Option<i32> {
        if self.is_zero() {
            return Some(0);
        }
        let mut bits = start_bits.max(8);
        loop {
            if let Some(s) = self.enclose(bits).sign() {
                return Some(s);
            }
            if bits >= cap_bits {
                return None;
            }
            bits = (bits * 2).min(cap_bits);
        }
    }

    /// Greatest common divisor of the rational coefficients, taken positive.
    pub fn content(&self) -> Rational {
        rational_content(&self.coeffs)
    }

    /// Text form with `pi` as the constant, e.g. `-12*pi^4 + 120*pi^2 - 80`.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let pi_part = match k {
                0 => String::new(),
                1 => "pi".to_string(),
                _ => format!("pi^{k}"),
            };
            match (mag.is_one(), pi_part.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&pi_part),
                (false, true) => out.push_str(&fmt_coeff(&mag)),
                (false, false) => {
                    out.push_str(&fmt_coeff(&mag));
                    out.push('*');
                    out.push_str(&pi_part);
                }
            }
        }
        out
    }
}

/// Positive gcd of a list of rationals (zero for an all-zero list).
pub fn rational_content(values: &[Rational]) -> Rational {
    use num_integer::Integer;
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for v in values.iter().filter(|v| !v.is_zero()) {
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    if num.is_zero() {
        Rational::zero()
    } else {
        Rational::new(num, den)
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl From<Rational> for PiPoly {
    fn from(c: Rational) -> Self {
        PiPoly::constant(c)
    }
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        if self.is_zero() || rhs.is_zero() {
            return PiPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PiPoly::new(out)
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: PiPoly) -> PiPoly {
        &self + &rhs
    }
}

impl Sub for PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: PiPoly) -> PiPoly {
        &self - &rhs
    }
}

impl Mul for PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: PiPoly) -> PiPoly {
        &self * &rhs
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        -&self
    }
}

impl AddAssign<&PiPoly> for PiPoly {
    fn add_assign(&mut self, rhs: &PiPoly) {
        *self = &*self + rhs;
    }
}

/// Interval containing `p(π)`.
pub fn pipoly_enclose(p: &PiPoly, precision_bits: u32) -> RatInterval {
    p.enclose(precision_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn pp(cs: &[i64]) -> PiPoly {
        PiPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn zero_encloses_to_zero() {
        assert_eq!(pipoly_enclose(&PiPoly::zero(), 30), RatInterval::zero());
    }

    #[test]
    fn pi_squared_minus_nine_is_positive() {
        let p = pp(&[-9, 0, 1]);
        let e = pipoly_enclose(&p, 30);
        assert!(e.is_positive());
        // high-precision oracle: π² − 9 = 0.869604401...
        assert!(e.contains(&ratio(8696044, 10000000)) || e.lo() > &ratio(8696043, 10000000));
        assert!(e.hi() < &ratio(8696045, 10000000));
    }

    #[test]
    fn coefficient_from_p13_is_negative() {
        // −12π⁴ + 120π² − 80 = −64.55656...
        let p = pp(&[-80, 0, 120, 0, -12]);
        let e = pipoly_enclose(&p, 30);
        assert!(e.is_negative());
        assert!(e.lo() > &ratio(-645566, 10000) && e.hi() < &ratio(-645565, 10000));
        assert_eq!(p.sign(32, 512), Some(-1));
    }

    #[test]
    fn enclosure_refines_with_precision() {
        let p = pp(&[1, -3, 0, 2, 5]);
        let coarse = p.enclose(32);
        let fine = p.enclose(128);
        assert!(fine.is_subset_of(&coarse));
    }

    #[test]
    fn text_form() {
        assert_eq!(pp(&[-80, 0, 120, 0, -12]).to_expr(), "-12*pi^4 + 120*pi^2 - 80");
        assert_eq!(PiPoly::new(vec![ratio(1, 2), int(-1)]).to_expr(), "-pi + (1/2)");
        assert_eq!(PiPoly::zero().to_expr(), "0");
    }

    fn arb_pipoly() -> impl Strategy<Value = PiPoly> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..9)
            .prop_map(|cs| PiPoly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_pipoly(), q in arb_pipoly(), r in arb_pipoly()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn enclosure_contains_float_value(p in arb_pipoly()) {
            let e = p.enclose(64);
            let v: f64 = p.coeffs().iter().enumerate()
                .map(|(k, c)| rational::to_f64(c) * std::f64::consts::PI.powi(k as i32)).sum();
            let slack = 1e-9 * (1.0 + v.abs());
            prop_assert!(rational::to_f64(e.lo()) <= v + slack);
            prop_assert!(rational::to_f64(e.hi()) >= v - slack);
        }
    }
}
