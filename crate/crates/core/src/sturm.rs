//! Sturm sequences for polynomials with rational coefficients.
//!
//! The sequence is built from the square-free part, so sign-variation
//! differences count distinct real roots. Zero entries are skipped when
//! counting variations, which makes `count(a, b)` the number of roots in the
//! half-open interval `(a, b]` even when `a` or `b` is itself a root.

use num_traits::{One, Signed, Zero};

use crate::pipoly::rational_content;
use crate::rational::Rational;

/// Dense rational polynomial, ascending powers, no trailing zeros.
pub type RatPoly = Vec<Rational>;

pub fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(p: &[Rational]) -> RatPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
            .collect(),
    )
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
pub fn div_rem(a: &[Rational], b: &[Rational]) -> (RatPoly, RatPoly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r: RatPoly = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), trim(r))
}

/// Scales by a positive constant so the integer content is one.
fn normalize_positive(p: RatPoly) -> RatPoly {
    let c = rational_content(&p);
    if c.is_zero() {
        return p;
    }
    p.into_iter().map(|a| a / &c).collect()
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> RatPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = normalize_positive(r);
    }
    x
}

/// `p / gcd(p, p')`: same distinct roots, all simple.
pub fn square_free(p: &[Rational]) -> RatPoly {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return p;
    }
    let g = gcd(&p, &derivative(&p));
    if g.len() <= 1 {
        return p;
    }
    let (q, r) = div_rem(&p, &g);
    debug_assert!(r.is_empty());
    q
}

fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<RatPoly>,
}

impl SturmSequence {
    /// Sequence for the square-free part of `p`; `p` must be nonzero.
    pub fn new(p: &[Rational]) -> Self {
        let p0 = square_free(p);
        assert!(!p0.is_empty(), "Sturm sequence of the zero polynomial");
        let mut seq = vec![p0.clone()];
        let p1 = derivative(&p0);
        if !p1.is_empty() {
            seq.push(normalize_positive(p1));
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(normalize_positive(r.into_iter().map(|c| -c).collect()));
        }
        Self { seq }
    }

    pub fn square_free_part(&self) -> &[Rational] {
        &self.seq[0]
    }

    pub fn variations(&self, x: &Rational) -> usize {
        let mut last = 0;
        let mut v = 0;
        for p in &self.seq {
            let s = sign(&eval(p, x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Variation count at `+∞` (leading-coefficient signs).
    pub fn variations_at_infinity(&self) -> usize {
        let signs: Vec<i32> = self.seq.iter().map(|p| sign(p.last().unwrap())).collect();
        count_changes(&signs)
    }
}

fn count_changes(signs: &[i32]) -> usize {
    let nz: Vec<i32> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Cauchy bound: every real root has absolute value below the result.
pub fn cauchy_bound(p: &[Rational]) -> Rational {
    let p = trim(p.to_vec());
    let lead = p.last().expect("nonzero polynomial").abs();
    let m = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn rp(cs: &[i64]) -> RatPoly {
        trim(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn examples() {
        let s = SturmSequence::new(&rp(&[-2, 0, 1]));
        assert_eq!(s.count(&int(0), &int(2)), 1);
        let s = SturmSequence::new(&rp(&[1, -2, 1]));
        assert_eq!(s.count(&int(0), &int(2)), 1);
    }

    #[test]
    fn endpoint_roots_are_half_open() {
        // roots 1, 2, 3
        let p = rp(&[-6, 11, -6, 1]);
        let s = SturmSequence::new(&p);
        assert_eq!(s.count(&int(1), &int(3)), 2);
        assert_eq!(s.count(&int(0), &int(1)), 1);
        assert_eq!(s.count(&int(1), &int(2)), 1);
        assert_eq!(s.count(&ratio(1, 2), &ratio(7, 2)), 3);
    }

    #[test]
    fn division_and_square_free() {
        let p = rp(&[1, -3, 3, -1]); // (1 - x)^3
        assert_eq!(square_free(&p).len(), 2);
        let (q, r) = div_rem(&rp(&[-1, 0, 1]), &rp(&[-1, 1]));
        assert_eq!(q, rp(&[1, 1]));
        assert!(r.is_empty());
        assert!(cauchy_bound(&rp(&[-6, 11, -6, 1])) > int(3));
    }
}
