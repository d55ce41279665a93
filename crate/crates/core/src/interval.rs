//! Closed intervals with exact rational endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified sign: `Some(1)`/`Some(-1)` when the interval excludes zero,
    /// `Some(0)` for the point zero, `None` otherwise.
    pub fn sign(&self) -> Option<i32> {
        if self.is_positive() {
            Some(1)
        } else if self.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn hull(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(RatInterval { lo, hi })
    }

    pub fn scale(&self, c: &Rational) -> RatInterval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    pub fn abs(&self) -> RatInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            RatInterval {
                lo: Rational::zero(),
                hi: self.hi.clone().max(-self.lo.clone()),
            }
        }
    }

    /// Integer power; even powers of intervals straddling zero start at zero.
    pub fn pow(&self, n: u32) -> RatInterval {
        if n == 0 {
            return RatInterval::point(rational::int(1));
        }
        let base = if n % 2 == 0 { self.abs() } else { self.clone() };
        let lo = num_traits::pow(base.lo.clone(), n as usize);
        let hi = num_traits::pow(base.hi.clone(), n as usize);
        RatInterval { lo, hi }
    }

    /// Outward rounding of both endpoints onto the `2^-bits` grid.
    ///
    /// Grids nest as `bits` grows, so rounding is inclusion-monotone in both
    /// the argument and the precision.
    pub fn round_out(&self, bits: u32) -> RatInterval {
        RatInterval {
            lo: rational::floor_dyadic(&self.lo, bits),
            hi: rational::ceil_dyadic(&self.hi, bits),
        }
    }

    pub fn split(&self) -> (RatInterval, RatInterval) {
        let m = self.midpoint();
        (
            RatInterval::new(self.lo.clone(), m.clone()),
            RatInterval::new(m, self.hi.clone()),
        )
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: &RatInterval) -> RatInterval {
        // Sign-case shortcuts for the common nonnegative situation.
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return RatInterval {
                lo: &self.lo * &rhs.lo,
                hi: &self.hi * &rhs.hi,
            };
        }
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands.iter().min().cloned().unwrap();
        let hi = cands.iter().max().cloned().unwrap();
        RatInterval { lo, hi }
    }
}

impl Add for RatInterval {
    type Output = RatInterval;
    fn add(self, rhs: RatInterval) -> RatInterval {
        &self + &rhs
    }
}

impl Sub for RatInterval {
    type Output = RatInterval;
    fn sub(self, rhs: RatInterval) -> RatInterval {
        &self - &rhs
    }
}

impl Mul for RatInterval {
    type Output = RatInterval;
    fn mul(self, rhs: RatInterval) -> RatInterval {
        &self * &rhs
    }
}

impl Neg for RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn iv(a: i64, b: i64) -> RatInterval {
        RatInterval::new(int(a), int(b))
    }

    #[test]
    fn arithmetic_basics() {
        assert_eq!(&iv(1, 2) + &iv(3, 4), iv(4, 6));
        assert_eq!(&iv(1, 2) - &iv(3, 4), iv(-3, -1));
        assert_eq!(&iv(-1, 2) * &iv(3, 4), iv(-4, 8));
        assert_eq!(iv(-1, 2).pow(2), iv(0, 4));
        assert_eq!(iv(-3, 2).pow(3), iv(-27, 8));
        assert_eq!(iv(-3, -2).pow(2), iv(4, 9));
    }

    #[test]
    fn sign_and_rounding() {
        assert_eq!(iv(1, 2).sign(), Some(1));
        assert_eq!(iv(-1, 2).sign(), None);
        assert_eq!(RatInterval::zero().sign(), Some(0));
        let x = RatInterval::new(ratio(1, 3), ratio(2, 3));
        let r = x.round_out(8);
        assert!(x.is_subset_of(&r));
        assert!(r.is_subset_of(&x.round_out(4)));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..9).prop_map(|(n, d)| ratio(n, d))
    }

    fn interval() -> impl Strategy<Value = RatInterval> {
        (small(), small()).prop_map(|(a, b)| if a <= b { RatInterval::new(a, b) } else { RatInterval::new(b, a) })
    }

    /// A sub-interval picked by two fractions of the way across.
    fn shrink(x: &RatInterval, s: u8, t: u8) -> RatInterval {
        let (s, t) = (s.min(t), s.max(t));
        let w = x.width();
        RatInterval::new(
            x.lo() + &w * ratio(s as i64, 255),
            x.lo() + &w * ratio(t as i64, 255),
        )
    }

    proptest! {
        #[test]
        fn ops_are_inclusion_monotone(x in interval(), y in interval(), a: u8, b: u8, c: u8, d: u8, n in 0u32..5) {
            let xs = shrink(&x, a, b);
            let ys = shrink(&y, c, d);
            prop_assert!((&xs + &ys).is_subset_of(&(&x + &y)));
            prop_assert!((&xs - &ys).is_subset_of(&(&x - &y)));
            prop_assert!((&xs * &ys).is_subset_of(&(&x * &y)));
            prop_assert!((-&xs).is_subset_of(&(-&x)));
            prop_assert!(xs.pow(n).is_subset_of(&x.pow(n)));
        }

        #[test]
        fn products_contain_pointwise_values(x in interval(), y in interval(), a: u8, c: u8) {
            let p = shrink(&x, a, a);
            let q = shrink(&y, c, c);
            let prod = &x * &y;
            prop_assert!(prod.contains(&(p.lo() * q.lo())));
        }
    }
}
