//! Maclaurin series of mixed trigonometric polynomials and the sign of `f`
//! just to the right of zero.

use num_traits::{One, Zero};

use crate::multiangle::{expand_poly, TrigFunc};
use crate::pipoly::PiPoly;
use crate::problem::MixedTrigPoly;
use crate::rational::{self, factorial, Rational};
use crate::unipoly::UniPoly;

/// Precision cap for sign decisions of series coefficients.
pub const SIGN_PRECISION_CAP: u32 = 8192;
pub const DEFAULT_MAX_ORDER: u32 = 64;

/// First nonvanishing Maclaurin coefficient and its certified sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSign {
    pub order: u32,
    pub sign: i32,
    pub leading_coeff: PiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalSignOutcome {
    Sign(LocalSign),
    /// All coefficients through `max_order` vanish.
    IdenticallyZero { max_order: u32 },
    /// The coefficient at `order` is a nonzero element of ℚ[π] whose sign
    /// was not decided at the precision cap.
    Undecidable { order: u32, coeff: PiPoly },
}

/// Maclaurin coefficients of `func(m·x)` through `x^order`.
fn trig_series(func: TrigFunc, m: u32, order: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order as usize + 1];
    let m = rational::int(m as i64);
    let start = match func {
        TrigFunc::Sin => 1,
        TrigFunc::Cos => 0,
    };
    let mut k = start;
    let mut sign = 1i64;
    while k <= order {
        let c = num_traits::pow(m.clone(), k as usize) / Rational::from_integer(factorial(k));
        out[k as usize] = if sign > 0 { c } else { -c };
        sign = -sign;
        k += 2;
    }
    out
}

/// Truncated product of a polynomial with a rational series.
fn mul_truncated(p: &[PiPoly], s: &[Rational], order: u32) -> Vec<PiPoly> {
    let n = order as usize + 1;
    let mut out = vec![PiPoly::zero(); n];
    for (i, a) in p.iter().enumerate().take(n) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in s.iter().enumerate().take(n - i) {
            if !b.is_zero() {
                out[i + j] += &a.scale(b);
            }
        }
    }
    out
}

fn add_into(acc: &mut [PiPoly], p: &[PiPoly]) {
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b;
    }
}

/// Coefficients of `x^0 … x^order`, computed through the multiple-angle form.
pub fn series_coeffs(f: &MixedTrigPoly, order: u32) -> Vec<PiPoly> {
    let s = expand_poly(f);
    let mut acc = vec![PiPoly::zero(); order as usize + 1];
    add_into(&mut acc, s.constant_part.coeffs());
    for sa in &s.sub_addends {
        let t = trig_series(sa.func, sa.multiple, order);
        add_into(&mut acc, &mul_truncated(sa.effective_factor().coeffs(), &t, order));
    }
    acc
}

/// Same coefficients by powering the `sin` and `cos` series directly.
pub fn series_coeffs_direct(f: &MixedTrigPoly, order: u32) -> Vec<PiPoly> {
    let n = order as usize + 1;
    let sin = trig_series(TrigFunc::Sin, 1, order);
    let cos = trig_series(TrigFunc::Cos, 1, order);
    let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut acc = vec![PiPoly::zero(); n];
    for t in f.terms() {
        let mut s = vec![Rational::zero(); n];
        s[0] = Rational::one();
        for _ in 0..t.cos_pow {
            s = mul(&s, &cos);
        }
        for _ in 0..t.sin_pow {
            s = mul(&s, &sin);
        }
        add_into(&mut acc, &mul_truncated(t.factor.coeffs(), &s, order));
    }
    acc
}

/// Order and certified sign of the first nonzero Maclaurin coefficient.
///
/// A positive sign is equivalent to `f > 0` on some interval `(0, ε)`.
pub fn local_sign(f: &MixedTrigPoly, max_order: u32) -> LocalSignOutcome {
    let coeffs = series_coeffs(f, max_order);
    for (k, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        return match c.sign(64, SIGN_PRECISION_CAP) {
            Some(s) => LocalSignOutcome::Sign(LocalSign {
                order: k as u32,
                sign: s,
                leading_coeff: c,
            }),
            None => LocalSignOutcome::Undecidable {
                order: k as u32,
                coeff: c,
            },
        };
    }
    LocalSignOutcome::IdenticallyZero { max_order }
}

/// The series truncated to a polynomial, for callers that want one object.
pub fn series_poly(f: &MixedTrigPoly, order: u32) -> UniPoly {
    UniPoly::new(series_coeffs(f, order))
}
