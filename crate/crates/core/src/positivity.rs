//! Certified positivity of univariate polynomials on intervals and isolation
//! of their least positive root.
//!
//! Polynomials with rational coefficients go through Sturm sequences.
//! Polynomials with π in their coefficients go through adaptive bisection
//! with interval evaluation; each accepted leaf records the exact rational
//! lower bound of its enclosure so that a checker can recompute it.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::interval::RatInterval;
use crate::pipoly::PiPoly;
use crate::rational::{self, Rational};
use crate::sturm::{self, SturmSequence};
use crate::unipoly::{horner_interval, UniPoly};

/// Enclosures coarser than this are never used for π-dependent decisions.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;
/// Bisection stops at this many leaves.
pub const DEFAULT_MAX_LEAVES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_leaves: usize,
    pub precision_cap: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_leaves: DEFAULT_MAX_LEAVES,
            precision_cap: DEFAULT_PRECISION_CAP,
        }
    }
}

/// A rational interval holding exactly one simple root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Rational,
    pub hi: Rational,
    /// Sign just left of the root.
    pub sign_left: i32,
    /// Sign just right of the root.
    pub sign_right: i32,
}

impl RootEnclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }
}

impl fmt::Display for RootEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rational::to_canonical(&self.lo), rational::to_canonical(&self.hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootSearch {
    Root(RootEnclosure),
    /// No root in `(0, bound]`, and `bound` exceeds every real root.
    NoneBelow(Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofMode {
    Sturm,
    Bisection,
}

impl ProofMode {
    pub fn name(self) -> &'static str {
        match self {
            ProofMode::Sturm => "sturm",
            ProofMode::Bisection => "bisection",
        }
    }
}

/// One accepted bisection cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub lo: Rational,
    pub hi: Rational,
    pub precision: u32,
    pub lower_bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// Positive value at `cover_lo` and no root in `(cover_lo, cover_hi]`.
    Sturm,
    Bisection { leaves: Vec<Leaf> },
}

/// `P = x^j · Q` with `Q > 0` on the closed `[cover_lo, cover_hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityProof {
    pub j: usize,
    pub cover_lo: Rational,
    pub cover_hi: Rational,
    pub evidence: Evidence,
}

impl PositivityProof {
    pub fn mode(&self) -> ProofMode {
        match self.evidence {
            Evidence::Sturm => ProofMode::Sturm,
            Evidence::Bisection { .. } => ProofMode::Bisection,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match &self.evidence {
            Evidence::Sturm => 0,
            Evidence::Bisection { leaves } => leaves.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositivityError {
    #[error("the zero polynomial has no sign")]
    ZeroPolynomial,
    #[error("certified negative value at x = {}", rational::to_canonical(.witness))]
    Disproof { witness: Rational },
    #[error("not positive: {reason}")]
    NotPositive { reason: String, root: Option<RootEnclosure> },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("undecidable at the precision cap: {0}")]
    Undecidable(String),
    #[error("Sturm sequences need rational coefficients")]
    NotRational,
}

/// Certified sign of an exact ℚ[π] value, as an error when undecided.
fn pisign(v: &PiPoly, bits: u32, cap: u32) -> Result<i32, PositivityError> {
    v.sign(bits, cap)
        .ok_or_else(|| PositivityError::Undecidable(format!("sign of {}", v.to_expr())))
}

/// Distinct real roots in `(a, b]` of a polynomial with rational coefficients.
pub fn sturm_count(p: &UniPoly, a: &Rational, b: &Rational) -> Result<usize, PositivityError> {
    if p.is_zero() {
        return Err(PositivityError::ZeroPolynomial);
    }
    let coeffs = p.rational_coeffs().ok_or(PositivityError::NotRational)?;
    Ok(SturmSequence::new(&coeffs).count(a, b))
}

/// Coefficient enclosures of a polynomial and its derivative at one precision.
struct Enclosed {
    grid: u32,
    p: Vec<RatInterval>,
    dp: Vec<RatInterval>,
}

impl Enclosed {
    fn new(q: &UniPoly, bits: u32) -> Self {
        Self {
            grid: bits + 16,
            p: q.coeffs().iter().map(|c| c.enclose(bits)).collect(),
            dp: q.derivative().coeffs().iter().map(|c| c.enclose(bits)).collect(),
        }
    }

    /// Horner enclosure intersected with the mean-value form about the midpoint.
    fn range(&self, x: &RatInterval) -> RatInterval {
        let horner = horner_interval(&self.p, x, self.grid);
        if x.width().is_zero() {
            return horner;
        }
        let m = x.midpoint();
        let at_mid = horner_interval(&self.p, &RatInterval::point(m.clone()), self.grid);
        let slope = horner_interval(&self.dp, x, self.grid);
        let offset = x - &RatInterval::point(m);
        let mv = (&at_mid + &(&slope * &offset)).round_out(self.grid);
        horner.intersect(&mv).unwrap_or(horner)
    }

    fn slope(&self, x: &RatInterval) -> RatInterval {
        horner_interval(&self.dp, x, self.grid)
    }
}

/// The enclosure of `{Q(t) : t ∈ x}` used for bisection leaves.
///
/// Deterministic in its arguments; the certificate checker recomputes it and
/// compares the lower endpoint exactly.
pub fn leaf_enclosure(q: &UniPoly, x: &RatInterval, precision_bits: u32) -> RatInterval {
    Enclosed::new(q, precision_bits).range(x)
}

/// Rational `≤ v`, exact when `v` is rational.
fn rational_below(v: &PiPoly, bits: u32) -> Rational {
    match v.as_rational() {
        Some(r) => r,
        None => rational::floor_dyadic(v.enclose(bits).lo(), bits),
    }
}

/// Rational `≥ v`, exact when `v` is rational.
fn rational_above(v: &PiPoly, bits: u32) -> Rational {
    match v.as_rational() {
        Some(r) => r,
        None => rational::ceil_dyadic(v.enclose(bits).hi(), bits),
    }
}

/// Proves `P > 0` on `(0, δ]`.
pub fn prove_positive(p: &UniPoly, delta: &PiPoly, precision_bits: u32) -> Result<PositivityProof, PositivityError> {
    prove_positive_on(p, &PiPoly::zero(), delta, precision_bits, Limits::default())
}

/// Proves `P > 0` on `(lo, hi]` for `0 ≤ lo < hi`.
///
/// The evidence actually covers the closed `[lo, hi]` for the cofactor `Q`
/// of `P = x^j · Q`, so for `lo > 0` it also shows `P(lo) > 0`.
pub fn prove_positive_on(
    p: &UniPoly,
    lo: &PiPoly,
    hi: &PiPoly,
    precision_bits: u32,
    limits: Limits,
) -> Result<PositivityProof, PositivityError> {
    if p.is_zero() {
        return Err(PositivityError::ZeroPolynomial);
    }
    let j = p.trailing_zeros();
    let q = p.shift_down(j);
    let a = rational_below(lo, precision_bits);
    let b = rational_above(hi, precision_bits);
    let cap = limits.precision_cap.max(precision_bits);

    match pisign(&q.eval_rational(&a), precision_bits, cap)? {
        1 => {}
        0 => {
            return Err(PositivityError::NotPositive {
                reason: format!("vanishes at {}", rational::to_canonical(&a)),
                root: None,
            })
        }
        _ => {
            if a.is_zero() {
                return Err(match witness_near_zero(p, &b, precision_bits, cap) {
                    Some(w) => PositivityError::Disproof { witness: w },
                    None => PositivityError::NotPositive {
                        reason: "negative at the left end".into(),
                        root: None,
                    },
                });
            }
            return Err(PositivityError::Disproof { witness: a });
        }
    }

    if let Some(coeffs) = q.rational_coeffs() {
        let seq = SturmSequence::new(&coeffs);
        if seq.count(&a, &b) == 0 {
            return Ok(PositivityProof {
                j,
                cover_lo: a,
                cover_hi: b,
                evidence: Evidence::Sturm,
            });
        }
        return Err(explain_rational_failure(&q, &seq, &a, &b, hi, precision_bits, cap));
    }

    let leaves = bisect(&q, &a, &b, hi, precision_bits, limits)?;
    Ok(PositivityProof {
        j,
        cover_lo: a,
        cover_hi: b,
        evidence: Evidence::Bisection { leaves },
    })
}

/// Looks for `x = b / 2^k` with `P(x)` certified negative.
fn witness_near_zero(p: &UniPoly, b: &Rational, bits: u32, cap: u32) -> Option<Rational> {
    let mut x = b / rational::int(2);
    for _ in 0..256 {
        if p.eval_rational(&x).sign(bits, cap) == Some(-1) {
            return Some(x);
        }
        x /= rational::int(2);
    }
    None
}

/// Either a disproof witness inside the domain or the root that blocks it.
fn explain_rational_failure(
    q: &UniPoly,
    seq: &SturmSequence,
    a: &Rational,
    b: &Rational,
    hi: &PiPoly,
    bits: u32,
    cap: u32,
) -> PositivityError {
    let sf = seq.square_free_part().to_vec();
    let root = isolate_least_rational(seq, &sf, a, b, &rational::pow2(-30));
    if let Some(r) = &root {
        // Scan to the right of the root for a negative value inside the domain.
        let span = b - &r.hi;
        for i in 0..=64 {
            let x = &r.hi + &span * rational::ratio(i, 64);
            let inside = (&PiPoly::constant(x.clone()) - hi).sign(bits, cap) == Some(-1) || x == *b && hi.is_rational();
            if !inside {
                break;
            }
            if q.eval_rational(&x).sign(bits, cap) == Some(-1) {
                return PositivityError::Disproof { witness: x };
            }
        }
    }
    PositivityError::NotPositive {
        reason: "a root lies in the interval".into(),
        root,
    }
}

/// Least root in `(a, b]` of a square-free rational polynomial, narrowed to
/// `width`; `None` when there is none.
fn isolate_least_rational(
    seq: &SturmSequence,
    sf: &[Rational],
    a: &Rational,
    b: &Rational,
    width: &Rational,
) -> Option<RootEnclosure> {
    if seq.count(a, b) == 0 {
        return None;
    }
    let mut lo = a.clone();
    let mut hi = b.clone();
    // Invariant: the least root in (a, b] lies in (lo, hi].
    while &(&hi - &lo) > width || seq.count(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / rational::int(2);
        if seq.count(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let d = sturm::derivative(sf);
    let at_hi = sturm::eval(sf, &hi);
    if at_hi.is_zero() {
        let s = rational::signum(&sturm::eval(&d, &hi));
        return Some(RootEnclosure {
            lo: hi.clone(),
            hi,
            sign_left: -s,
            sign_right: s,
        });
    }
    let sign_right = rational::signum(&at_hi);
    let at_lo = sturm::eval(sf, &lo);
    // lo itself may be a root only if it is a, which is excluded by (a, b].
    let sign_left = if at_lo.is_zero() { -sign_right } else { rational::signum(&at_lo) };
    Some(RootEnclosure {
        lo,
        hi,
        sign_left,
        sign_right,
    })
}

/// Left-to-right adaptive bisection of `[a, b]` proving `Q > 0`.
fn bisect(
    q: &UniPoly,
    a: &Rational,
    b: &Rational,
    hi: &PiPoly,
    bits: u32,
    limits: Limits,
) -> Result<Vec<Leaf>, PositivityError> {
    let cap = limits.precision_cap.max(bits);
    let min_width = rational::pow2(-64);
    let mut cache: HashMap<u32, Enclosed> = HashMap::new();
    let mut leaves = Vec::new();
    let mut stack = vec![RatInterval::new(a.clone(), b.clone())];
    let mut visited = 0usize;
    while let Some(cell) = stack.pop() {
        visited += 1;
        if leaves.len() >= limits.max_leaves || visited > 4 * limits.max_leaves {
            return Err(PositivityError::ResourceLimit(format!(
                "{} bisection leaves without finishing",
                leaves.len()
            )));
        }
        let mut precision = bits;
        loop {
            let enc = cache
                .entry(precision)
                .or_insert_with(|| Enclosed::new(q, precision))
                .range(&cell);
            if enc.is_positive() {
                leaves.push(Leaf {
                    lo: cell.lo().clone(),
                    hi: cell.hi().clone(),
                    precision,
                    lower_bound: enc.lo().clone(),
                });
                break;
            }
            if enc.is_negative() {
                return Err(negative_cell(q, &cell, hi, bits, cap));
            }
            if cell.width() > min_width {
                let (l, r) = cell.split();
                stack.push(r);
                stack.push(l);
                break;
            }
            if precision >= cap {
                let mid = cell.midpoint();
                if q.eval_rational(&mid).sign(bits, cap) == Some(-1) {
                    return Err(negative_cell(q, &cell, hi, bits, cap));
                }
                return Err(PositivityError::NotPositive {
                    reason: format!("touches zero near {}", rational::approx(&mid, 12)),
                    root: None,
                });
            }
            precision = (precision * 2).min(cap);
        }
    }
    Ok(leaves)
}

/// A disproof at a cell's midpoint when it lies inside the real domain.
fn negative_cell(q: &UniPoly, cell: &RatInterval, hi: &PiPoly, bits: u32, cap: u32) -> PositivityError {
    let mid = cell.midpoint();
    let inside = (&PiPoly::constant(mid.clone()) - hi).sign(bits, cap) != Some(1);
    if inside && q.eval_rational(&mid).sign(bits, cap) == Some(-1) {
        PositivityError::Disproof { witness: mid }
    } else {
        PositivityError::NotPositive {
            reason: format!("negative near {}", rational::approx(&mid, 12)),
            root: None,
        }
    }
}

/// Least positive root of `P`, enclosed to `width_target`.
pub fn least_positive_root(p: &UniPoly, width_target: &Rational, precision_bits: u32) -> Result<RootSearch, PositivityError> {
    least_positive_root_with(p, width_target, precision_bits, Limits::default())
}

pub fn least_positive_root_with(
    p: &UniPoly,
    width_target: &Rational,
    precision_bits: u32,
    limits: Limits,
) -> Result<RootSearch, PositivityError> {
    if p.is_zero() {
        return Err(PositivityError::ZeroPolynomial);
    }
    let q = p.shift_down(p.trailing_zeros());
    let zero = Rational::zero();
    if let Some(coeffs) = q.rational_coeffs() {
        let seq = SturmSequence::new(&coeffs);
        let sf = seq.square_free_part().to_vec();
        let bound = sturm::cauchy_bound(&sf);
        return Ok(match isolate_least_rational(&seq, &sf, &zero, &bound, width_target) {
            Some(r) => RootSearch::Root(r),
            None => RootSearch::NoneBelow(bound),
        });
    }
    let cap = limits.precision_cap.max(precision_bits);
    let bound = pi_cauchy_bound(&q, precision_bits, cap)?;
    least_root_bisection(&q, &bound, width_target, precision_bits, limits)
        .map(|r| r.map(RootSearch::Root).unwrap_or(RootSearch::NoneBelow(bound)))
}

/// Cauchy bound from coefficient enclosures.
fn pi_cauchy_bound(q: &UniPoly, bits: u32, cap: u32) -> Result<Rational, PositivityError> {
    let mut precision = bits;
    loop {
        let enc: Vec<RatInterval> = q.coeffs().iter().map(|c| c.enclose(precision)).collect();
        let lead = enc.last().unwrap().abs();
        if lead.lo().is_positive() {
            let m = enc[..enc.len() - 1]
                .iter()
                .map(|c| c.abs().hi() / lead.lo())
                .max()
                .unwrap_or_else(Rational::zero);
            return Ok(rational::ceil_dyadic(&(m + rational::int(1)), 8));
        }
        if precision >= cap {
            return Err(PositivityError::Undecidable("leading coefficient sign".into()));
        }
        precision = (precision * 2).min(cap);
    }
}

/// Left-first search for the least root of `Q` in `(0, bound]`.
fn least_root_bisection(
    q: &UniPoly,
    bound: &Rational,
    width_target: &Rational,
    bits: u32,
    limits: Limits,
) -> Result<Option<RootEnclosure>, PositivityError> {
    let cap = limits.precision_cap.max(bits);
    let enc = Enclosed::new(q, bits);
    let floor_width = width_target * rational::pow2(-40);
    let mut stack = vec![RatInterval::new(Rational::zero(), bound.clone())];
    let mut visited = 0usize;
    while let Some(cell) = stack.pop() {
        visited += 1;
        if visited > 4 * limits.max_leaves {
            return Err(PositivityError::ResourceLimit("root search did not finish".into()));
        }
        if !enc.range(&cell).contains_zero() {
            continue;
        }
        if &cell.width() <= width_target {
            let sl = pisign(&q.eval_rational(cell.lo()), bits, cap)?;
            let sr = pisign(&q.eval_rational(cell.hi()), bits, cap)?;
            if sl == 0 && cell.lo().is_positive() {
                return Ok(Some(point_root(q, cell.lo(), bits, cap)?));
            }
            let monotone = !enc.slope(&cell).contains_zero();
            if sl * sr == -1 && monotone {
                return Ok(Some(RootEnclosure {
                    lo: cell.lo().clone(),
                    hi: cell.hi().clone(),
                    sign_left: sl,
                    sign_right: sr,
                }));
            }
            if sr == 0 && monotone {
                return Ok(Some(point_root(q, cell.hi(), bits, cap)?));
            }
            if cell.width() < floor_width {
                return Err(PositivityError::Undecidable(format!(
                    "cannot separate roots near {}",
                    rational::approx(cell.lo(), 12)
                )));
            }
        }
        let (l, r) = cell.split();
        stack.push(r);
        stack.push(l);
    }
    Ok(None)
}

fn point_root(q: &UniPoly, x: &Rational, bits: u32, cap: u32) -> Result<RootEnclosure, PositivityError> {
    let s = pisign(&q.derivative().eval_rational(x), bits, cap)?;
    Ok(RootEnclosure {
        lo: x.clone(),
        hi: x.clone(),
        sign_left: -s,
        sign_right: s,
    })
}

/// Certified constant sign of a polynomial factor on the open `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignEvidence {
    pub sign: i32,
    /// Power of `x` divided out.
    pub x_power: usize,
    /// Multiplicity of `lo` as a root divided out (only for `lo > 0`).
    pub lo_zeros: usize,
    /// Multiplicity of `hi` as a root divided out.
    pub hi_zeros: usize,
    /// Positivity of `σ·g` on `[lo, hi]` for the remaining cofactor `g`.
    pub proof: PositivityProof,
}

/// Strips `x^j`, `(x − lo)^a`, `(x − hi)^b` from `h` as recorded.
pub fn strip_factor(h: &UniPoly, lo: &PiPoly, hi: &PiPoly, x_power: usize, lo_zeros: usize, hi_zeros: usize) -> Option<UniPoly> {
    if h.trailing_zeros() < x_power {
        return None;
    }
    let mut g = h.shift_down(x_power);
    for _ in 0..hi_zeros {
        let (qq, r) = g.div_linear(hi);
        if !r.is_zero() {
            return None;
        }
        g = qq;
    }
    for _ in 0..lo_zeros {
        let (qq, r) = g.div_linear(lo);
        if !r.is_zero() {
            return None;
        }
        g = qq;
    }
    Some(g)
}

/// Decides the sign of `h` on `(lo, hi)`, `0 ≤ lo < hi`, with evidence.
///
/// Zeros exactly at the endpoints are divided out first, since they do not
/// affect the sign on the open interval.
pub fn factor_sign(h: &UniPoly, lo: &PiPoly, hi: &PiPoly, precision_bits: u32) -> Result<SignEvidence, PositivityError> {
    if h.is_zero() {
        return Err(PositivityError::ZeroPolynomial);
    }
    let x_power = h.trailing_zeros();
    let mut g = h.shift_down(x_power);
    let mut hi_zeros = 0;
    while g.degree().unwrap_or(0) > 0 && g.eval(hi).is_zero() {
        g = g.div_linear(hi).0;
        hi_zeros += 1;
    }
    let mut lo_zeros = 0;
    if !lo.is_zero() {
        while g.degree().unwrap_or(0) > 0 && g.eval(lo).is_zero() {
            g = g.div_linear(lo).0;
            lo_zeros += 1;
        }
    }
    let cap = DEFAULT_PRECISION_CAP.max(precision_bits);
    let s = pisign(&g.eval(lo), precision_bits, cap)?;
    if s == 0 {
        return Err(PositivityError::NotPositive {
            reason: "factor vanishes at the left end".into(),
            root: None,
        });
    }
    let proof = prove_positive_on(&g.scale(&rational::int(s as i64)), lo, hi, precision_bits, Limits::default())?;
    let flip = if hi_zeros % 2 == 0 { 1 } else { -1 };
    Ok(SignEvidence {
        sign: s * flip,
        x_power,
        lo_zeros,
        hi_zeros,
        proof,
    })
}

/// Re-verifies a [`PositivityProof`] of `P > 0` on `(lo, hi]`.
pub fn verify_proof(p: &UniPoly, lo: &PiPoly, hi: &PiPoly, proof: &PositivityProof) -> Result<(), String> {
    if p.is_zero() {
        return Err("polynomial is zero".into());
    }
    if p.trailing_zeros() != proof.j {
        return Err(format!("x-power {} does not match the polynomial ({})", proof.j, p.trailing_zeros()));
    }
    let q = p.shift_down(proof.j);
    let cap = DEFAULT_PRECISION_CAP;
    let left_gap = lo - &PiPoly::constant(proof.cover_lo.clone());
    if !matches!(left_gap.sign(64, cap), Some(0 | 1)) {
        return Err("cover does not reach the left end".into());
    }
    let right_gap = &PiPoly::constant(proof.cover_hi.clone()) - hi;
    if !matches!(right_gap.sign(64, cap), Some(0 | 1)) {
        return Err("cover does not reach the right end".into());
    }
    if proof.cover_lo.is_negative() || proof.cover_lo >= proof.cover_hi {
        return Err("malformed cover".into());
    }
    match &proof.evidence {
        Evidence::Sturm => {
            let coeffs = q.rational_coeffs().ok_or("Sturm evidence for a polynomial with π coefficients")?;
            if !sturm::eval(&coeffs, &proof.cover_lo).is_positive() {
                return Err("not positive at the left end of the cover".into());
            }
            let n = SturmSequence::new(&coeffs).count(&proof.cover_lo, &proof.cover_hi);
            if n != 0 {
                return Err(format!("Sturm count is {n}, not 0"));
            }
            Ok(())
        }
        Evidence::Bisection { leaves } => {
            let first = leaves.first().ok_or("no leaves")?;
            if first.lo != proof.cover_lo || leaves.last().unwrap().hi != proof.cover_hi {
                return Err("leaves do not span the cover".into());
            }
            let mut cache: HashMap<u32, Enclosed> = HashMap::new();
            for (i, leaf) in leaves.iter().enumerate() {
                if i > 0 && leaves[i - 1].hi != leaf.lo {
                    return Err(format!("gap or overlap before leaf {i}"));
                }
                if leaf.lo >= leaf.hi {
                    return Err(format!("leaf {i} is empty"));
                }
                if leaf.precision < 8 || leaf.precision > 1 << 16 {
                    return Err(format!("leaf {i} has unusable precision"));
                }
                if !leaf.lower_bound.is_positive() {
                    return Err(format!("leaf {i} lower bound is not positive"));
                }
                let enc = cache
                    .entry(leaf.precision)
                    .or_insert_with(|| Enclosed::new(&q, leaf.precision))
                    .range(&RatInterval::new(leaf.lo.clone(), leaf.hi.clone()));
                if enc.lo() != &leaf.lower_bound {
                    return Err(format!("leaf {i} lower bound does not match re-evaluation"));
                }
            }
            Ok(())
        }
    }
}

/// Re-verifies a [`SignEvidence`] for `h` on `(lo, hi)`.
pub fn verify_sign_evidence(h: &UniPoly, lo: &PiPoly, hi: &PiPoly, ev: &SignEvidence) -> Result<(), String> {
    if ev.sign != 1 && ev.sign != -1 {
        return Err("sign must be +1 or -1".into());
    }
    if ev.lo_zeros > 0 && lo.is_zero() {
        return Err("zeros at 0 are recorded as the x-power".into());
    }
    let g = strip_factor(h, lo, hi, ev.x_power, ev.lo_zeros, ev.hi_zeros).ok_or("recorded endpoint zeros do not divide the factor")?;
    let flip = if ev.hi_zeros % 2 == 0 { 1 } else { -1 };
    let sigma = ev.sign * flip;
    verify_proof(&g.scale(&rational::int(sigma as i64)), lo, hi, &ev.proof)
}
