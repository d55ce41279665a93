//! Maclaurin polynomials of `sin` and `cos` as one-sided bounds, and their
//! substitution into a [`MultiAngleSum`] to obtain a polynomial lying below
//! the original function.
//!
//! On `t ≥ 0` the degree-`n` Maclaurin polynomial of `sin` is an upper bound
//! for `n ≡ 1 (mod 4)` and a lower bound for `n ≡ 3 (mod 4)`; for `cos` it is
//! an upper bound for `n ≡ 0` and a lower bound for `n ≡ 2`. Each claim holds
//! for `t² ≤ (n + 3)(n + 4)`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::interval::RatInterval;
use crate::multiangle::{MultiAngleSum, TrigFunc};
use crate::pipoly::PiPoly;
use crate::rational::{self, factorial, Rational};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Upper,
    Lower,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        }
    }

    pub fn from_name(s: &str) -> Option<Direction> {
        match s {
            "upper" => Some(Direction::Upper),
            "lower" => Some(Direction::Lower),
            _ => None,
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Upper => Direction::Lower,
            Direction::Lower => Direction::Upper,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaylorError {
    #[error("{func} Maclaurin polynomials have {} degree, got {n}", if *func == TrigFunc::Sin { "odd" } else { "even" })]
    ParityMismatch { func: TrigFunc, n: u32 },
    #[error("sub-addend {index}: degree {degree} is valid only for (m*delta)^2 <= {radius_sq}; smallest valid degree is {minimal_degree}")]
    ValidityRadius {
        index: usize,
        degree: u32,
        radius_sq: u64,
        minimal_degree: u32,
    },
    #[error("sub-addend {index}: factor has no certified constant sign on the interval")]
    NonConstantSign { index: usize },
    #[error("sub-addend {index}: could not decide the validity radius at the precision cap")]
    Undecidable { index: usize },
    #[error("degree table has {got} entries for {expected} sub-addends")]
    TableLength { expected: usize, got: usize },
}

/// A Maclaurin polynomial together with the side it bounds on `t ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaylorBound {
    pub func: TrigFunc,
    pub degree: u32,
    pub direction: Direction,
    /// `(degree + 3)(degree + 4)`: the bound holds for `t² ≤ radius_sq`.
    pub radius_sq: u64,
}

fn check_parity(func: TrigFunc, n: u32) -> Result<(), TaylorError> {
    let ok = match func {
        TrigFunc::Sin => n % 2 == 1,
        TrigFunc::Cos => n % 2 == 0,
    };
    if ok {
        Ok(())
    } else {
        Err(TaylorError::ParityMismatch { func, n })
    }
}

/// Degree-`n` Maclaurin polynomial of `func`, exact.
pub fn maclaurin(func: TrigFunc, n: u32) -> Result<UniPoly, TaylorError> {
    check_parity(func, n)?;
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    let start = match func {
        TrigFunc::Sin => 1,
        TrigFunc::Cos => 0,
    };
    let mut k = start;
    let mut sign = 1i64;
    while k <= n {
        coeffs[k as usize] = Rational::new(sign.into(), factorial(k));
        sign = -sign;
        k += 2;
    }
    Ok(UniPoly::from_rationals(coeffs))
}

pub fn classify(func: TrigFunc, n: u32) -> Result<TaylorBound, TaylorError> {
    check_parity(func, n)?;
    let direction = match (func, n % 4) {
        (TrigFunc::Sin, 1) | (TrigFunc::Cos, 0) => Direction::Upper,
        _ => Direction::Lower,
    };
    let n64 = n as u64;
    Ok(TaylorBound {
        func,
        degree: n,
        direction,
        radius_sq: (n64 + 3) * (n64 + 4),
    })
}

/// Degree of the bound with index `l` on the requested side.
pub fn template_degree(func: TrigFunc, direction: Direction, l: u32) -> u32 {
    let u = match (func, direction) {
        (TrigFunc::Sin, Direction::Lower) => 3,
        (TrigFunc::Sin, Direction::Upper) => 1,
        (TrigFunc::Cos, Direction::Lower) => 2,
        (TrigFunc::Cos, Direction::Upper) => 0,
    };
    4 * l + u
}

/// Decides `(m·hi)² ≤ radius_sq`, refining π as needed.
pub fn validity_holds(multiple: u32, hi: &PiPoly, radius_sq: u64, precision_bits: u32, cap_bits: u32) -> Option<bool> {
    let m = rational::int(multiple as i64);
    let r = rational::int(radius_sq as i64);
    let mut bits = precision_bits.max(16);
    loop {
        let arg = hi.enclose(bits).scale(&m).abs().pow(2);
        if arg.hi() <= &r {
            return Some(true);
        }
        if arg.lo() > &r {
            return Some(false);
        }
        if bits >= cap_bits {
            return None;
        }
        bits = (bits * 2).min(cap_bits);
    }
}

/// Smallest index whose template bound on `direction` is valid up to `m·hi`.
pub fn minimal_index(func: TrigFunc, direction: Direction, multiple: u32, hi: &PiPoly, precision_bits: u32) -> Option<u32> {
    let mut l = 0;
    loop {
        let b = classify(func, template_degree(func, direction, l)).ok()?;
        match validity_holds(multiple, hi, b.radius_sq, precision_bits, precision_bits.max(64) * 8)? {
            true => return Some(l),
            false => l += 1,
        }
    }
}

/// Per-sub-addend index floors and a uniform escalation level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeAssignment {
    pub floors: Vec<u32>,
    pub k: u32,
}

impl DegreeAssignment {
    pub fn index(&self, i: usize) -> u32 {
        self.floors[i].max(self.k)
    }
}

/// The bound substituted into one sub-addend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundChoice {
    pub func: TrigFunc,
    pub multiple: u32,
    pub degree: u32,
    pub direction: Direction,
    pub radius_sq: u64,
}

/// Picks, for each sub-addend with certified factor sign `signs[i]`, the
/// template bound of index `d.index(i)` on the side that keeps the product
/// below the true value, and checks its validity radius.
pub fn choose_bounds(
    s: &MultiAngleSum,
    signs: &[i32],
    d: &DegreeAssignment,
    interval_hi: &PiPoly,
    precision_bits: u32,
) -> Result<Vec<BoundChoice>, TaylorError> {
    if signs.len() != s.sub_addends.len() || d.floors.len() != s.sub_addends.len() {
        return Err(TaylorError::TableLength {
            expected: s.sub_addends.len(),
            got: signs.len().min(d.floors.len()),
        });
    }
    let cap = precision_bits.max(64) * 8;
    let mut out = Vec::with_capacity(signs.len());
    for (i, (sa, &sign)) in s.sub_addends.iter().zip(signs).enumerate() {
        let direction = match sign {
            1 => Direction::Lower,
            -1 => Direction::Upper,
            _ => return Err(TaylorError::NonConstantSign { index: i }),
        };
        let degree = template_degree(sa.func, direction, d.index(i));
        let b = classify(sa.func, degree)?;
        match validity_holds(sa.multiple, interval_hi, b.radius_sq, precision_bits, cap) {
            Some(true) => {}
            Some(false) => {
                let l = minimal_index(sa.func, direction, sa.multiple, interval_hi, precision_bits)
                    .ok_or(TaylorError::Undecidable { index: i })?;
                return Err(TaylorError::ValidityRadius {
                    index: i,
                    degree,
                    radius_sq: b.radius_sq,
                    minimal_degree: template_degree(sa.func, direction, l),
                });
            }
            None => return Err(TaylorError::Undecidable { index: i }),
        }
        out.push(BoundChoice {
            func: sa.func,
            multiple: sa.multiple,
            degree,
            direction,
            radius_sq: b.radius_sq,
        });
    }
    Ok(out)
}

/// `constant_part + Σ coeff·factor(x)·T(m·x)` for the given bound choices.
pub fn assemble(s: &MultiAngleSum, choices: &[BoundChoice]) -> Result<UniPoly, TaylorError> {
    let mut p = s.constant_part.clone();
    for (sa, c) in s.sub_addends.iter().zip(choices) {
        let t = maclaurin(sa.func, c.degree)?.scale_arg(&rational::int(sa.multiple as i64));
        p = &p + &(&sa.effective_factor() * &t);
    }
    Ok(p)
}

/// Replaces each sub-addend by its sign-appropriate Maclaurin bound.
///
/// Factor signs are certified on `(interval_lo, interval_hi)` by the
/// positivity backend; a factor without constant sign is an error, and the
/// caller is expected to split it into monomials first.
pub fn substitute_bounds(
    s: &MultiAngleSum,
    d: &DegreeAssignment,
    interval_lo: &PiPoly,
    interval_hi: &PiPoly,
    precision_bits: u32,
) -> Result<UniPoly, TaylorError> {
    let mut signs = Vec::with_capacity(s.sub_addends.len());
    for (i, sa) in s.sub_addends.iter().enumerate() {
        let ev = crate::positivity::factor_sign(&sa.effective_factor(), interval_lo, interval_hi, precision_bits)
            .map_err(|_| TaylorError::NonConstantSign { index: i })?;
        signs.push(ev.sign);
    }
    let choices = choose_bounds(s, &signs, d, interval_hi, precision_bits)?;
    assemble(s, &choices)
}

/// Certifies a constant sign for every sub-addend factor on `(lo, hi)`.
///
/// A factor whose sign cannot be certified is split into its monomials
/// `c·x^k`, each of which has the sign of `c` there since `lo ≥ 0`.
pub fn sign_split(
    s: &MultiAngleSum,
    lo: &PiPoly,
    hi: &PiPoly,
    precision_bits: u32,
) -> Result<(MultiAngleSum, Vec<crate::positivity::SignEvidence>), TaylorError> {
    use crate::multiangle::SubAddend;
    use crate::positivity::factor_sign;
    let mut subs = Vec::new();
    let mut signs = Vec::new();
    for (i, sa) in s.sub_addends.iter().enumerate() {
        let eff = sa.effective_factor();
        if let Ok(ev) = factor_sign(&eff, lo, hi, precision_bits) {
            subs.push(sa.clone());
            signs.push(ev);
            continue;
        }
        for (k, c) in eff.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = UniPoly::monomial(c.clone(), k);
            let ev = factor_sign(&mono, lo, hi, precision_bits).map_err(|_| TaylorError::NonConstantSign { index: i })?;
            subs.extend(SubAddend::from_effective(&mono, sa.func, sa.multiple));
            signs.push(ev);
        }
    }
    Ok((
        MultiAngleSum {
            sub_addends: subs,
            constant_part: s.constant_part.clone(),
        },
        signs,
    ))
}

/// Partial sums of the alternating Maclaurin series of `sin` (`start = 1`)
/// or `cos` (`start = 0`) at `a > 0`, stopped at the first upper/lower
/// template pair that is valid at `a` and closer than `2^-bits`.
fn alternating_enclosure(a: &Rational, start: u32, precision_bits: u32) -> RatInterval {
    let tol = rational::pow2(-(precision_bits as i64));
    let a2 = a * a;
    let mut n = start;
    let mut term = if start == 1 { a.clone() } else { Rational::one() };
    let mut sum = term.clone();
    loop {
        let prev = sum.clone();
        term = &term * &a2 / rational::int(((n + 1) * (n + 2)) as i64);
        n += 2;
        if (n / 2) % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        // `n − 2` is an upper template when `n` is a lower one.
        let prev_deg = n - 2;
        let upper_prev = prev_deg % 4 == start;
        if upper_prev && a2 <= rational::int(((prev_deg + 3) * (prev_deg + 4)) as i64) && term < tol {
            return RatInterval::new(sum, prev).round_out(precision_bits + 8);
        }
    }
}

/// Enclosure of `sin(x)` at a rational point from a pair of Maclaurin bounds.
pub fn sin_enclosure(x: &Rational, precision_bits: u32) -> RatInterval {
    if x.is_zero() {
        return RatInterval::zero();
    }
    if x.is_negative() {
        return -alternating_enclosure(&-x.clone(), 1, precision_bits);
    }
    alternating_enclosure(x, 1, precision_bits)
}

/// Enclosure of `cos(x)` at a rational point from a pair of Maclaurin bounds.
pub fn cos_enclosure(x: &Rational, precision_bits: u32) -> RatInterval {
    if x.is_zero() {
        return RatInterval::point(Rational::one());
    }
    alternating_enclosure(&x.abs(), 0, precision_bits)
}
