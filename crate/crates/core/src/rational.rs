//! Exact rational helpers on top of [`BigRational`].
//!
//! `BigRational` already keeps values reduced with a positive denominator, so
//! this module only adds the conversions the rest of the crate needs: the
//! canonical `"p/q"` text form, decimal literals, dyadic rounding and a few
//! constructors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Canonical text form: always `"p/q"`, reduced, `q > 0`.
pub fn to_canonical(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"`, `"p"` or a decimal literal such as `"-1.136"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if s.contains('.') {
        return parse_decimal(s);
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Accepts only the exact output of [`to_canonical`].
pub fn parse_canonical(s: &str) -> Option<Rational> {
    let r = parse_rational(s)?;
    (to_canonical(&r) == s).then_some(r)
}

/// Exact value of a decimal literal: `"1.136"` is `1136/1000`.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rational::new(n, d);
    Some(if neg { -r } else { r })
}

/// Largest multiple of `2^-bits` that is `<= r`.
pub fn floor_dyadic(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = r.numer() * &scale;
    let q = scaled.div_floor(r.denom());
    Rational::new(q, scale)
}

/// Smallest multiple of `2^-bits` that is `>= r`.
pub fn ceil_dyadic(r: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = r.numer() * &scale;
    let q = scaled.div_ceil(r.denom());
    Rational::new(q, scale)
}

/// Largest multiple of `1/den` that is `<= r`.
pub fn floor_to_denominator(r: &Rational, den: u32) -> Rational {
    let d = BigInt::from(den);
    let q = (r.numer() * &d).div_floor(r.denom());
    Rational::new(q, d)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: scale through bit lengths.
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = n.max(d) - 60;
        let nn = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let dd = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        nn / dd
    })
}

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Sign as -1, 0 or 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Approximate decimal rendering used in diagnostics only.
pub fn approx(r: &Rational, digits: usize) -> String {
    format!("{:.*}", digits, to_f64(r))
}
