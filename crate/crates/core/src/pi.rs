//! Rigorous enclosures of π from Machin's formula.
//!
//! `π = 16·arctan(1/5) − 4·arctan(1/239)`. Both arctangent series alternate
//! with decreasing terms, so consecutive partial sums bracket the limit.
//! The returned interval is the cell of the `2^-q` dyadic grid that contains
//! π, with `q = max(precision_bits, MIN_GRID_BITS)`; grid cells nest, which
//! makes enclosures at higher precision subsets of those at lower precision.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::interval::RatInterval;
use crate::rational::{self, Rational};

/// Enclosures never use a grid coarser than this.
pub const MIN_GRID_BITS: u32 = 20;

fn cache() -> &'static Mutex<BTreeMap<u32, RatInterval>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, RatInterval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// Interval containing π with width at most `2^-precision_bits`.
pub fn pi_enclosure(precision_bits: u32) -> RatInterval {
    let q = precision_bits.max(MIN_GRID_BITS);
    if let Some(hit) = cache().lock().unwrap().get(&q) {
        return hit.clone();
    }
    let mut guard = q + 16;
    let enc = loop {
        let raw = machin(guard);
        let lo = rational::floor_dyadic(raw.lo(), q);
        let hi_of_lo = rational::floor_dyadic(raw.hi(), q);
        // π is irrational, so once the raw bracket sits inside one grid cell
        // that cell is the answer.
        if lo == hi_of_lo {
            let hi = &lo + rational::pow2(-(q as i64));
            break RatInterval::new(lo, hi);
        }
        guard += 32;
    };
    cache().lock().unwrap().insert(q, enc.clone());
    enc
}

/// Bracket of π with width below `2^-bits`, unrounded.
fn machin(bits: u32) -> RatInterval {
    let a = arctan_inv(5, bits + 6);
    let b = arctan_inv(239, bits + 4);
    let sixteen = Rational::from_integer(BigInt::from(16));
    let four = Rational::from_integer(BigInt::from(4));
    &a.scale(&sixteen) - &b.scale(&four)
}

/// Bracket of `arctan(1/k)` from two consecutive partial sums.
fn arctan_inv(k: u64, bits: u32) -> RatInterval {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let tol = rational::pow2(-(bits as i64));
    let mut sum = Rational::from_integer(BigInt::from(0));
    let mut power = k.clone();
    let mut i: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * i + 1) * &power);
        let next = if i % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < tol {
            return if next < sum {
                RatInterval::new(next, sum)
            } else {
                RatInterval::new(sum, next)
            };
        }
        sum = next;
        power *= &k2;
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

    fn pi_bracket_50() -> RatInterval {
        let lo = parse_rational(PI_50).unwrap();
        let hi = &lo + parse_rational("0.00000000000000000000000000000000000000000000000001").unwrap();
        RatInterval::new(lo, hi)
    }

    #[test]
    fn eight_bits_is_tight_enough_for_five_decimals() {
        let e = pi_enclosure(8);
        let outer = RatInterval::new(parse_rational("3.14159").unwrap(), parse_rational("3.14160").unwrap());
        assert!(e.is_subset_of(&outer));
        assert!(e.width() <= rational::pow2(-8));
    }

    #[test]
    fn thirty_bits_contains_ten_digits() {
        let e = pi_enclosure(30);
        assert!(e.width() <= rational::pow2(-30));
        assert!(e.contains(&parse_rational("3.1415926535").unwrap()));
        assert!(e.intersect(&pi_bracket_50()).is_some());
    }

    #[test]
    fn enclosures_nest_and_agree_with_published_digits() {
        let reference = pi_bracket_50();
        let mut prev: Option<RatInterval> = None;
        for bits in [8u32, 16, 32, 64, 100, 128, 160] {
            let e = pi_enclosure(bits);
            assert!(e.width() <= rational::pow2(-(bits as i64)));
            // π lies in the 50-digit bracket; the enclosure must meet it.
            assert!(e.intersect(&reference).is_some(), "bits={bits}");
            if let Some(p) = &prev {
                assert!(e.is_subset_of(p), "bits={bits}");
                assert!(e.width() <= p.width());
            }
            prev = Some(e);
        }
        // Beyond the 50-digit resolution the enclosure must sit inside the
        // reference bracket widened by its own width.
        let e = pi_enclosure(200);
        let widened = RatInterval::new(reference.lo() - e.width(), reference.hi() + e.width());
        assert!(e.is_subset_of(&widened));
    }

    #[test]
    fn sixteen_contains_thirty_two() {
        assert!(pi_enclosure(32).is_subset_of(&pi_enclosure(16)));
    }
}
