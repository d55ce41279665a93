//! Substitutions `x ↦ c ± x` with `c` a multiple of π/2, which keep the
//! class of mixed trigonometric polynomials closed.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::pipoly::PiPoly;
use crate::problem::MixedTrigPoly;
use crate::rational;
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectError {
    #[error("reflection point {0} is not an integer multiple of pi/2")]
    UnsupportedReflection(String),
}

/// The substitution `x ↦ center + sign·x`, with `sign = ±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepTransform {
    pub center: PiPoly,
    pub sign: i32,
}

impl StepTransform {
    pub fn identity() -> Self {
        Self {
            center: PiPoly::zero(),
            sign: 1,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.center.is_zero() && self.sign == 1
    }

    /// Point of the original line that local coordinate `t` stands for.
    pub fn map(&self, t: &PiPoly) -> PiPoly {
        &self.center + &t.scale(&rational::int(self.sign as i64))
    }

    /// The transform of `t ↦ g(b − t)` where `g` is this transform's function.
    pub fn then_reflect(&self, b: &PiPoly) -> StepTransform {
        StepTransform {
            center: self.map(b),
            sign: -self.sign,
        }
    }
}

impl fmt::Display for StepTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "+" };
        write!(f, "x -> {} {s} x", self.center.to_expr())
    }
}

/// `k` with `c = k·π/2`, if any.
pub fn quarter_turns(c: &PiPoly) -> Option<i64> {
    match c.coeffs() {
        [] => Some(0),
        [z, r] if z.is_zero() => {
            let k = r * rational::int(2);
            k.is_integer().then(|| k.to_integer().try_into().ok()).flatten()
        }
        _ => None,
    }
}

/// `g(x) = f(center + sign·x)`; the center must be a multiple of π/2.
pub fn transform(f: &MixedTrigPoly, t: &StepTransform) -> Result<MixedTrigPoly, ReflectError> {
    let k = quarter_turns(&t.center).ok_or_else(|| ReflectError::UnsupportedReflection(t.center.to_expr()))?;
    let k = k.rem_euclid(4);
    let s = t.sign as i64;
    let lin = UniPoly::new(vec![t.center.clone(), PiPoly::from_int(s)]);
    // cos(c + y) and sin(c + y) as (sign, is_sin) in terms of cos y, sin y.
    let (cos_img, sin_img) = match k {
        0 => ((1, false), (1, true)),
        1 => ((-1, true), (1, false)),
        2 => ((-1, false), (-1, true)),
        _ => ((1, true), (-1, false)),
    };
    // y = s·x: cos y = cos x, sin y = s·sin x.
    let adjust = |(sg, is_sin): (i64, bool)| if is_sin { (sg * s, true) } else { (sg, false) };
    let (cos_img, sin_img) = (adjust(cos_img), adjust(sin_img));
    let mut out = MixedTrigPoly::zero();
    for term in f.terms() {
        let mut sign = 1i64;
        let (mut q, mut r) = (0u32, 0u32);
        for (img, pow) in [(cos_img, term.cos_pow), (sin_img, term.sin_pow)] {
            if img.0 < 0 && pow % 2 == 1 {
                sign = -sign;
            }
            if img.1 {
                r += pow;
            } else {
                q += pow;
            }
        }
        let h = term.factor.compose(&lin).scale(&rational::int(sign));
        out.add_term(h, q, r);
    }
    Ok(out)
}

/// `f(c − x)` for `c` an integer multiple of π/2.
pub fn reflect_at(f: &MixedTrigPoly, c: &PiPoly) -> Result<MixedTrigPoly, ReflectError> {
    transform(f, &StepTransform { center: c.clone(), sign: -1 })
}
