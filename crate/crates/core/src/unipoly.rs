//! Univariate polynomials in `x` whose coefficients lie in ℚ[π].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::interval::RatInterval;
use crate::pipoly::{rational_content, PiPoly};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<PiPoly>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<PiPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        Self::new(coeffs.into_iter().map(PiPoly::constant).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_rationals(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(PiPoly::one())
    }

    pub fn constant(c: PiPoly) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: PiPoly, k: usize) -> Self {
        let mut coeffs = vec![PiPoly::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(PiPoly::one(), 1)
    }

    pub fn coeffs(&self) -> &[PiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PiPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> PiPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// True when every coefficient is a plain rational.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(PiPoly::is_rational)
    }

    /// Rational coefficient list, or `None` if some coefficient involves π.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(PiPoly::as_rational).collect()
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn scale_pi(&self, c: &PiPoly) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Number of leading zero coefficients, i.e. the largest `j` with `x^j | P`.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `P / x^j`; the caller guarantees the division is exact.
    pub fn shift_down(&self, j: usize) -> UniPoly {
        debug_assert!(self.coeffs.iter().take(j).all(PiPoly::is_zero));
        UniPoly::new(self.coeffs.iter().skip(j).cloned().collect())
    }

    /// `P · x^j`.
    pub fn shift_up(&self, j: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![PiPoly::zero(); j];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly::new(coeffs)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&rational::int(k as i64)))
                .collect(),
        )
    }

    /// Exact value at a ℚ[π] point.
    pub fn eval(&self, x: &PiPoly) -> PiPoly {
        let mut acc = PiPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> PiPoly {
        self.eval(&PiPoly::constant(x.clone()))
    }

    /// `P(c − x)`, expanded exactly.
    pub fn reflect(&self, c: &PiPoly) -> UniPoly {
        let lin = UniPoly::new(vec![c.clone(), PiPoly::from_int(-1)]);
        self.compose(&lin)
    }

    /// `P(Q(x))` by Horner.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// `P(m·x)`.
    pub fn scale_arg(&self, m: &Rational) -> UniPoly {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.scale(&pow));
            pow *= m;
        }
        UniPoly::new(out)
    }

    /// `R` with `R(x²) = P(x)` when `P` has only even powers.
    pub fn deflate_even(&self) -> Option<UniPoly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(UniPoly::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// Division by `x − r`: returns quotient and remainder `P(r)`.
    pub fn div_linear(&self, r: &PiPoly) -> (UniPoly, PiPoly) {
        if self.is_zero() {
            return (UniPoly::zero(), PiPoly::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![PiPoly::zero(); n - 1];
        let mut carry = PiPoly::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &(&carry * r);
            if k == 0 {
                return (UniPoly::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Positive gcd of all rational coefficients of all π-powers.
    pub fn content(&self) -> Rational {
        let all: Vec<Rational> = self.coeffs.iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
        rational_content(&all)
    }

    /// Splits `P = c · Q` where `Q` has content 1 and, when its leading
    /// coefficient is rational, a positive one.
    pub fn primitive(&self) -> (Rational, UniPoly) {
        if self.is_zero() {
            return (Rational::zero(), UniPoly::zero());
        }
        let mut c = self.content();
        let lead = self.leading();
        let top = lead.coeffs().last().cloned().unwrap_or_else(Rational::one);
        if top.is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    /// Multiplies through by the lcm of denominators, giving integer
    /// coefficients; returns the positive multiplier used.
    pub fn clear_denominators(&self) -> (Rational, UniPoly) {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        for c in &self.coeffs {
            for a in c.coeffs() {
                l = l.lcm(a.denom());
            }
        }
        let m = Rational::from_integer(l);
        (m.clone(), self.scale(&m))
    }

    /// Text form in `x` with π-polynomial coefficients in parentheses.
    pub fn to_expr(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xs = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            let cs = match c.as_rational() {
                Some(r) if r.is_one() && !xs.is_empty() => String::new(),
                Some(r) if (-r.clone()).is_one() && !xs.is_empty() => "-".into(),
                Some(r) if r.is_integer() => r.numer().to_string(),
                Some(r) if r.is_negative() => format!("-({}/{})", -r.numer(), r.denom()),
                Some(r) => format!("({}/{})", r.numer(), r.denom()),
                None => format!("({})", c.to_expr()),
            };
            let term = match (cs.as_str(), xs.is_empty()) {
                (_, true) => cs,
                ("", false) => xs,
                ("-", false) => format!("-{xs}"),
                (_, false) => format!("{cs}*{xs}"),
            };
            parts.push(term);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

/// Enclosure of `{P(t) : t ∈ x}` by Horner's scheme over intervals.
///
/// Coefficients are enclosed at `precision_bits`; intermediate results are
/// rounded outward to a dyadic grid so that endpoint sizes stay bounded.
pub fn unipoly_eval_interval(p: &UniPoly, x: &RatInterval, precision_bits: u32) -> RatInterval {
    let coeffs: Vec<RatInterval> = p.coeffs().iter().map(|c| c.enclose(precision_bits)).collect();
    horner_interval(&coeffs, x, precision_bits + 16)
}

/// Interval Horner with precomputed coefficient enclosures.
pub fn horner_interval(coeffs: &[RatInterval], x: &RatInterval, grid_bits: u32) -> RatInterval {
    let Some(top) = coeffs.last() else {
        return RatInterval::zero();
    };
    let mut acc = top.clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = (&(&acc * x) + c).round_out(grid_bits);
    }
    acc
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl From<PiPoly> for UniPoly {
    fn from(c: PiPoly) -> Self {
        UniPoly::constant(c)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![PiPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}
