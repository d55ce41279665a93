//! Linearization of `cos^q(x)·sin^r(x)` into sines and cosines of multiple
//! angles, and of whole mixed trigonometric polynomials into sums of
//! `h(x)·sin(m·x)`, `h(x)·cos(m·x)` and a plain polynomial part.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::problem::MixedTrigPoly;
use crate::rational::{self, binomial, Rational};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrigFunc {
    Cos,
    Sin,
}

impl TrigFunc {
    pub fn name(self) -> &'static str {
        match self {
            TrigFunc::Sin => "sin",
            TrigFunc::Cos => "cos",
        }
    }

    pub fn from_name(s: &str) -> Option<TrigFunc> {
        match s {
            "sin" => Some(TrigFunc::Sin),
            "cos" => Some(TrigFunc::Cos),
            _ => None,
        }
    }
}

impl fmt::Display for TrigFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    SinCombination,
    CosCombination,
}

impl FormKind {
    pub fn func(self) -> TrigFunc {
        match self {
            FormKind::SinCombination => TrigFunc::Sin,
            FormKind::CosCombination => TrigFunc::Cos,
        }
    }
}

/// `constant + Σ coeff · func(multiple · x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiAngleForm {
    pub kind: FormKind,
    pub constant: Rational,
    /// Strictly decreasing multiples, nonzero coefficients.
    pub entries: Vec<(u32, Rational)>,
}

impl MultiAngleForm {
    pub fn eval_f64(&self, x: f64) -> f64 {
        let f = match self.kind {
            FormKind::SinCombination => f64::sin,
            FormKind::CosCombination => f64::cos,
        };
        rational::to_f64(&self.constant)
            + self
                .entries
                .iter()
                .map(|(m, c)| rational::to_f64(c) * f(*m as f64 * x))
                .sum::<f64>()
    }

    /// Human-readable form, constant first and multiples ascending,
    /// e.g. `(1/4)sin(x) + (1/4)sin(3x)`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.constant.is_zero() {
            parts.push((self.constant.is_negative(), fmt_mag(&self.constant)));
        }
        for (m, c) in self.entries.iter().rev() {
            let arg = if *m == 1 { "x".to_string() } else { format!("{m}x") };
            let mag = c.abs();
            let body = if mag == Rational::from_integer(1.into()) {
                format!("{}({arg})", self.kind.func())
            } else {
                format!("{}{}({arg})", fmt_mag(c), self.kind.func())
            };
            parts.push((c.is_negative(), body));
        }
        join_signed(parts)
    }
}

fn fmt_mag(c: &Rational) -> String {
    let m = c.abs();
    if m.is_integer() {
        m.numer().to_string()
    } else {
        format!("({}/{})", m.numer(), m.denom())
    }
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// `sin^n(x)` as a multiple-angle form.
pub fn sin_power(n: u32) -> MultiAngleForm {
    assert!(n >= 1, "sin_power needs n >= 1");
    product_expand(0, n)
}

/// `cos^n(x)` as a multiple-angle form.
pub fn cos_power(n: u32) -> MultiAngleForm {
    assert!(n >= 1, "cos_power needs n >= 1");
    product_expand(n, 0)
}

/// `cos^q(x)·sin^r(x)` as a multiple-angle form.
///
/// With `N = q + r` the frequency `N − 2k` carries
/// `(−1)^⌊r/2⌋ / 2^(N−1) · Σ_b (−1)^b C(r, b) C(q, k − b)` on `sin` when `r` is
/// odd and on `cos` when `r` is even; for even `N` and even `r` the middle
/// index `k = N/2` contributes half that amount as the constant.
pub fn product_expand(q: u32, r: u32) -> MultiAngleForm {
    let n_total = q + r;
    if n_total == 0 {
        return MultiAngleForm {
            kind: FormKind::CosCombination,
            constant: Rational::from_integer(1.into()),
            entries: Vec::new(),
        };
    }
    let kind = if r % 2 == 1 {
        FormKind::SinCombination
    } else {
        FormKind::CosCombination
    };
    let sign = if (r / 2) % 2 == 0 { 1 } else { -1 };
    let denom = rational::pow2(-((n_total - 1) as i64));
    let mut entries = Vec::new();
    let mut constant = Rational::zero();
    for k in 0..=n_total / 2 {
        let a = inner_sum(q, r, k);
        if a.is_zero() {
            continue;
        }
        let c = Rational::from_integer(a * BigInt::from(sign)) * &denom;
        if 2 * k == n_total {
            // Only reachable for even r; odd r makes the middle sum vanish.
            debug_assert!(r % 2 == 0);
            constant = c / rational::int(2);
        } else {
            entries.push((n_total - 2 * k, c));
        }
    }
    MultiAngleForm {
        kind,
        constant,
        entries,
    }
}

fn inner_sum(q: u32, r: u32, k: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for b in 0..=k.min(r) {
        if k - b > q {
            continue;
        }
        let t = binomial(r, b) * binomial(q, k - b);
        if b % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// `coeff · factor(x) · func(multiple · x)` with `factor` primitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubAddend {
    pub factor: UniPoly,
    pub func: TrigFunc,
    pub multiple: u32,
    pub coeff: Rational,
}

impl SubAddend {
    /// Builds a sub-addend from an unnormalized factor; `None` if it is zero.
    pub fn from_effective(effective: &UniPoly, func: TrigFunc, multiple: u32) -> Option<SubAddend> {
        if effective.is_zero() {
            return None;
        }
        let (coeff, factor) = effective.primitive();
        Some(SubAddend {
            factor,
            func,
            multiple,
            coeff,
        })
    }

    /// `coeff · factor`.
    pub fn effective_factor(&self) -> UniPoly {
        self.factor.scale(&self.coeff)
    }
}

/// `Σ sub-addends + constant_part(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiAngleSum {
    pub sub_addends: Vec<SubAddend>,
    pub constant_part: UniPoly,
}

impl MultiAngleSum {
    pub fn is_empty(&self) -> bool {
        self.sub_addends.is_empty() && self.constant_part.is_zero()
    }

    /// Effective factors regrouped by `(func, multiple)`.
    pub fn grouped(&self) -> BTreeMap<(TrigFunc, u32), UniPoly> {
        let mut out: BTreeMap<(TrigFunc, u32), UniPoly> = BTreeMap::new();
        for s in &self.sub_addends {
            let e = out.entry((s.func, s.multiple)).or_default();
            *e = &*e + &s.effective_factor();
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Human-readable form with merged factors, e.g. `(1/4)sin(x) + (1/4)sin(3x)`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.constant_part.is_zero() {
            match self.constant_part.degree() {
                Some(0) if self.constant_part.is_rational() => {
                    let c = self.constant_part.rational_coeffs().expect("rational")[0].clone();
                    parts.push((c.is_negative(), fmt_mag(&c)));
                }
                _ => parts.push((false, self.constant_part.to_expr())),
            }
        }
        for ((func, m), h) in self.grouped() {
            let arg = if m == 1 { "x".to_string() } else { format!("{m}x") };
            let single = h.degree() == Some(0) && h.is_rational();
            if single {
                let c = h.rational_coeffs().expect("rational")[0].clone();
                let body = if c.abs().is_one() {
                    format!("{func}({arg})")
                } else {
                    format!("{}{func}({arg})", fmt_mag(&c))
                };
                parts.push((c.is_negative(), body));
            } else {
                parts.push((false, format!("({})*{func}({arg})", h.to_expr())));
            }
        }
        join_signed(parts)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let poly = |p: &UniPoly| MixedTrigPoly::from_poly(p.clone()).eval_f64(x);
        let mut acc = poly(&self.constant_part);
        for s in &self.sub_addends {
            let arg = s.multiple as f64 * x;
            let t = match s.func {
                TrigFunc::Sin => arg.sin(),
                TrigFunc::Cos => arg.cos(),
            };
            acc += poly(&s.effective_factor()) * t;
        }
        acc
    }
}

/// Expands every term and merges sub-addends sharing `(func, multiple)`.
///
/// Sub-addends come out grouped by function (`cos` before `sin`) with
/// multiples ascending; pure polynomial terms go to `constant_part`.
pub fn expand_poly(f: &MixedTrigPoly) -> MultiAngleSum {
    let mut groups: BTreeMap<(TrigFunc, u32), UniPoly> = BTreeMap::new();
    let mut constant_part = UniPoly::zero();
    for t in f.terms() {
        if t.cos_pow == 0 && t.sin_pow == 0 {
            constant_part = &constant_part + &t.factor;
            continue;
        }
        let form = product_expand(t.cos_pow, t.sin_pow);
        if !form.constant.is_zero() {
            constant_part = &constant_part + &t.factor.scale(&form.constant);
        }
        for (m, c) in &form.entries {
            let e = groups.entry((form.kind.func(), *m)).or_default();
            *e = &*e + &t.factor.scale(c);
        }
    }
    let sub_addends = groups
        .into_iter()
        .filter_map(|((func, m), eff)| SubAddend::from_effective(&eff, func, m))
        .collect();
    MultiAngleSum {
        sub_addends,
        constant_part,
    }
}
