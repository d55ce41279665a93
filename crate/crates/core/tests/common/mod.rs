#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use trigbound::multiangle::{expand_poly, MultiAngleSum, TrigFunc};
use trigbound::parser::{parse_expr, parse_problem};
use trigbound::positivity::SignEvidence;
use trigbound::rational::{self, ratio, Rational};
use trigbound::taylor::{self, template_degree, BoundChoice, Direction};
use trigbound::{MixedTrigPoly, PiPoly, ProblemSpec, UniPoly};

pub const CUBIC: &str = "2*cos(x)*sin(x)^2 + (2/45)*x^3*sin(x)^3 - x*cos(x)^2*sin(x) - x^2*cos(x)";
pub const WEIGHTED: &str =
    "x*(pi^2 - 4*x^2)^2 - (pi^2 - 4*x^2)^2*cos(x)*sin(x) - ((2*pi^4/3)*x^3 + (8*pi^4/15 - 16*pi^2/3)*x^5)*cos(x)^2";
/// Companion of `WEIGHTED` multiplied through by π², which clears a `1/π²`
/// coefficient without changing the sign.
pub const WEIGHTED_SCALED: &str =
    "-pi^2*x*(pi^2 - 4*x^2)^2 + pi^2*(pi^2 - 4*x^2)^2*cos(x)*sin(x) + ((2*pi^6/3)*x^3 + (256 - 8*pi^4/3)*x^5)*cos(x)^2";

pub fn problem(expr: &str) -> ProblemSpec {
    parse_problem(&format!("{expr} > 0 on (0, pi/2)")).unwrap()
}

pub fn f(expr: &str) -> MixedTrigPoly {
    parse_expr(expr).unwrap()
}

pub fn half_pi() -> PiPoly {
    PiPoly::monomial(ratio(1, 2), 1)
}

pub fn pp(coeffs: &[i64]) -> PiPoly {
    PiPoly::new(coeffs.iter().map(|&c| rational::int(c)).collect())
}

/// Sign-certified expansion of `g` on `(lo, hi)`.
pub fn split_expansion(g: &MixedTrigPoly, lo: &PiPoly, hi: &PiPoly) -> (MultiAngleSum, Vec<SignEvidence>) {
    taylor::sign_split(&expand_poly(g), lo, hi, 128).unwrap()
}

/// Polynomial obtained with explicit per-sub-addend degrees, chosen by
/// `pick(func, multiple, factor sign)`.
pub fn with_degrees(
    g: &MixedTrigPoly,
    lo: &PiPoly,
    hi: &PiPoly,
    pick: impl Fn(TrigFunc, u32, i32) -> u32,
) -> (Vec<BoundChoice>, UniPoly) {
    let (sum, signs) = split_expansion(g, lo, hi);
    let bounds: Vec<BoundChoice> = sum
        .sub_addends
        .iter()
        .zip(&signs)
        .map(|(sa, ev)| {
            let degree = pick(sa.func, sa.multiple, ev.sign);
            let b = taylor::classify(sa.func, degree).unwrap();
            let wanted = if ev.sign > 0 { Direction::Lower } else { Direction::Upper };
            assert_eq!(b.direction, wanted, "degree {degree} is on the wrong side");
            BoundChoice {
                func: sa.func,
                multiple: sa.multiple,
                degree,
                direction: b.direction,
                radius_sq: b.radius_sq,
            }
        })
        .collect();
    let p = taylor::assemble(&sum, &bounds).unwrap();
    (bounds, p)
}

/// Degree of the template with index `l` on the side dictated by `sign`.
pub fn template(func: TrigFunc, sign: i32, l: u32) -> u32 {
    let d = if sign > 0 { Direction::Lower } else { Direction::Upper };
    template_degree(func, d, l)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(-9i64..=9);
    let d = [1i64, 1, 1, 2, 3, 4, 5][rng.gen_range(0..7)];
    ratio(n, d)
}

pub fn random_pipoly(rng: &mut ChaCha8Rng, with_pi: bool) -> PiPoly {
    let deg = if with_pi && rng.gen_bool(0.3) { rng.gen_range(1..=2) } else { 0 };
    PiPoly::new((0..=deg).map(|_| small_rational(rng)).collect())
}

pub fn random_unipoly(rng: &mut ChaCha8Rng, max_deg: usize, with_pi: bool) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    UniPoly::new((0..=deg).map(|_| random_pipoly(rng, with_pi)).collect())
}

pub fn random_mixed(rng: &mut ChaCha8Rng, max_terms: usize, max_pow: u32, with_pi: bool) -> MixedTrigPoly {
    let mut out = MixedTrigPoly::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let h = random_unipoly(rng, 3, with_pi);
        out.add_term(h, rng.gen_range(0..=max_pow), rng.gen_range(0..=max_pow));
    }
    out
}

/// A random interval `(lo, hi)` with endpoints among simple rationals and
/// rational multiples of π.
pub fn random_interval(rng: &mut ChaCha8Rng) -> (PiPoly, PiPoly) {
    loop {
        let pick = |rng: &mut ChaCha8Rng| -> PiPoly {
            if rng.gen_bool(0.4) {
                PiPoly::monomial(ratio(rng.gen_range(-4..=4), rng.gen_range(1..=4)), 1)
            } else {
                PiPoly::constant(ratio(rng.gen_range(-20..=20), rng.gen_range(1..=8)))
            }
        };
        let a = pick(rng);
        let b = pick(rng);
        if (&b - &a).sign(64, 1024) == Some(1) {
            return (a, b);
        }
    }
}
