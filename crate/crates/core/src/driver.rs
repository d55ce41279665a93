//! Proof search: local-sign gate, bound substitution with uniform degree
//! escalation, positivity certification, and interval splitting with
//! reflection at multiples of π/2.

use num_traits::Signed;
use crate::multiangle::{expand_poly, MultiAngleSum};
use crate::pipoly::PiPoly;
use crate::positivity::{self, Limits, PositivityError, PositivityProof, RootSearch, SignEvidence};
use crate::problem::{MixedTrigPoly, ProblemSpec};
pub use crate::reflect::{quarter_turns, reflect_at, transform, ReflectError, StepTransform};
use crate::rational::{self, Rational};
use crate::series::{local_sign, LocalSignOutcome, DEFAULT_MAX_ORDER};
use crate::taylor::{self, BoundChoice, DegreeAssignment, TaylorError};
use crate::unipoly::UniPoly;

/// Split points are multiples of `1/SPLIT_DENOMINATOR`.
pub const SPLIT_DENOMINATOR: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub k_max: u32,
    pub split_depth_max: u32,
    pub precision_bits: u32,
    pub precision_cap: u32,
    pub width_target: Rational,
    pub max_leaves: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            k_max: 16,
            split_depth_max: 4,
            precision_bits: 256,
            precision_cap: positivity::DEFAULT_PRECISION_CAP,
            width_target: rational::ratio(1, 100000),
            max_leaves: positivity::DEFAULT_MAX_LEAVES,
        }
    }
}

impl SearchConfig {
    fn limits(&self) -> Limits {
        Limits {
            max_leaves: self.max_leaves,
            precision_cap: self.precision_cap.max(self.precision_bits),
        }
    }
}

/// One certified piece: `g = f∘transform` satisfies `g > P > 0` on the local
/// domain `(lo, hi]` (closed at `lo` as well when `lo > 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub transform: StepTransform,
    pub lo: PiPoly,
    pub hi: PiPoly,
    pub expansion: MultiAngleSum,
    pub signs: Vec<SignEvidence>,
    pub bounds: Vec<BoundChoice>,
    pub k: u32,
    pub polynomial: UniPoly,
    pub proof: PositivityProof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Proved,
    Refuted,
    GaveUp,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Proved => "proved",
            Verdict::Refuted => "refuted",
            Verdict::GaveUp => "gave-up",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProofOutcome {
    pub verdict: Verdict,
    pub problem: ProblemSpec,
    /// Certified pieces in increasing order along the original interval.
    pub steps: Vec<ProofStep>,
    /// A point of the interval where `f ≤ 0` is certified.
    pub witness: Option<Rational>,
    pub diagnostics: Vec<String>,
}

impl ProofOutcome {
    /// Degrees used by each step, in sub-addend order.
    pub fn degrees(&self) -> Vec<Vec<u32>> {
        self.steps.iter().map(|s| s.bounds.iter().map(|b| b.degree).collect()).collect()
    }

    pub fn split_count(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }
}

enum Failure {
    /// Local coordinate of a point where the segment's function is `≤ 0`.
    Refuted(Rational),
    GaveUp,
}

struct Search<'a> {
    f: &'a MixedTrigPoly,
    cfg: &'a SearchConfig,
    log: Vec<String>,
}

fn pi_sign(v: &PiPoly, cfg: &SearchConfig) -> Option<i32> {
    v.sign(cfg.precision_bits.min(64), cfg.precision_cap.max(cfg.precision_bits))
}

/// Rational strictly inside `(0, v]` close to `v` for sampling.
fn rational_at_most(v: &PiPoly, bits: u32) -> Rational {
    match v.as_rational() {
        Some(r) => r,
        None => rational::floor_dyadic(v.enclose(bits).lo(), bits),
    }
}

impl<'a> Search<'a> {
    fn note(&mut self, depth: u32, msg: String) {
        self.log.push(format!("{}{msg}", "  ".repeat(depth as usize)));
    }

    fn bits(&self) -> u32 {
        self.cfg.precision_bits
    }

    fn cap(&self) -> u32 {
        self.cfg.precision_cap.max(self.cfg.precision_bits)
    }

    /// Certified sign of `g(t)` at a rational point.
    fn sign_at(&self, g: &MixedTrigPoly, t: &Rational) -> Option<i32> {
        g.sign_at(t, 64, self.cap())
    }

    fn search_negative_near_zero(&self, g: &MixedTrigPoly, b: &PiPoly) -> Option<Rational> {
        let mut t = rational_at_most(b, 64) / rational::int(2);
        for _ in 0..200 {
            if self.sign_at(g, &t) == Some(-1) {
                return Some(t);
            }
            t /= rational::int(2);
        }
        None
    }

    /// A few samples across the segment looking for a certified nonpositive value.
    fn scan_for_counterexample(&self, g: &MixedTrigPoly, a: &PiPoly, b: &PiPoly) -> Option<Rational> {
        let lo = rational_at_most(a, 64);
        let hi = rational_at_most(b, 64);
        if hi <= lo {
            return None;
        }
        let n = 64;
        (1..n).map(|i| &lo + (&hi - &lo) * rational::ratio(i, n)).find(|t| self.sign_at(g, t) == Some(-1))
    }

    /// `g(b) = 0` exactly; decidable when `b` is a multiple of π/2.
    fn vanishes_at(&self, g: &MixedTrigPoly, b: &PiPoly) -> bool {
        let Some(_) = quarter_turns(b) else {
            return false;
        };
        match reflect_at(g, b) {
            Ok(r) => crate::series::series_coeffs(&r, 0)[0].is_zero(),
            Err(_) => false,
        }
    }

    /// Expansion, sign certificates and index floors for `g` on `(a, b)`.
    fn prepare(&mut self, g: &MixedTrigPoly, a: &PiPoly, b: &PiPoly) -> Result<(MultiAngleSum, Vec<SignEvidence>, Vec<u32>), String> {
        let raw = expand_poly(g);
        let (sum, signs) = taylor::sign_split(&raw, a, b, self.bits()).map_err(|e| e.to_string())?;
        let mut floors = Vec::with_capacity(signs.len());
        for (sa, ev) in sum.sub_addends.iter().zip(&signs) {
            let dir = if ev.sign > 0 { taylor::Direction::Lower } else { taylor::Direction::Upper };
            let l = taylor::minimal_index(sa.func, dir, sa.multiple, b, self.bits()).ok_or("validity radius undecidable")?;
            floors.push(l);
        }
        Ok((sum, signs, floors))
    }

    fn polynomial_at(
        &self,
        sum: &MultiAngleSum,
        signs: &[SignEvidence],
        floors: &[u32],
        k: u32,
        b: &PiPoly,
    ) -> Result<(Vec<BoundChoice>, UniPoly), TaylorError> {
        let d = DegreeAssignment {
            floors: floors.to_vec(),
            k,
        };
        let sg: Vec<i32> = signs.iter().map(|e| e.sign).collect();
        let bounds = taylor::choose_bounds(sum, &sg, &d, b, self.bits())?;
        let p = taylor::assemble(sum, &bounds)?;
        Ok((bounds, p))
    }

    /// Proves `g > 0` on the local segment `(a, b]`.
    fn segment(&mut self, t: &StepTransform, a: &PiPoly, b: &PiPoly, depth: u32) -> Result<Vec<ProofStep>, Failure> {
        let g = transform(self.f, t).map_err(|_| Failure::GaveUp)?;
        self.note(depth, format!("segment ({}, {}] under {t}", a.to_expr(), b.to_expr()));

        if a.is_zero() {
            match local_sign(&g, DEFAULT_MAX_ORDER) {
                LocalSignOutcome::Sign(ls) if ls.sign < 0 => {
                    self.note(depth, format!("local sign at 0 is negative (order {})", ls.order));
                    return Err(match self.search_negative_near_zero(&g, b) {
                        Some(w) => Failure::Refuted(w),
                        None => Failure::GaveUp,
                    });
                }
                LocalSignOutcome::Sign(ls) => {
                    self.note(depth, format!("local sign at 0 is positive (order {})", ls.order));
                }
                LocalSignOutcome::IdenticallyZero { .. } => {
                    self.note(depth, "series vanishes through the maximal order".into());
                    return Err(Failure::GaveUp);
                }
                LocalSignOutcome::Undecidable { order, .. } => {
                    self.note(depth, format!("sign of series coefficient {order} undecided"));
                    return Err(Failure::GaveUp);
                }
            }
        } else if let Some(ar) = a.as_rational() {
            match self.sign_at(&g, &ar) {
                Some(1) => {}
                Some(_) => return Err(Failure::Refuted(ar)),
                None => return Err(Failure::GaveUp),
            }
        }

        let (sum, signs, floors) = match self.prepare(&g, a, b) {
            Ok(v) => v,
            Err(e) => {
                self.note(depth, format!("expansion failed: {e}"));
                return Err(Failure::GaveUp);
            }
        };

        let boundary_zero = self.vanishes_at(&g, b);
        if boundary_zero {
            self.note(depth, "function vanishes at the right end; going straight to splitting".into());
        } else {
            for k in 0..=self.cfg.k_max {
                match self.attempt(&sum, &signs, &floors, k, a, b, depth) {
                    Ok((bounds, p, proof)) => {
                        return Ok(vec![ProofStep {
                            transform: t.clone(),
                            lo: a.clone(),
                            hi: b.clone(),
                            expansion: sum,
                            signs,
                            bounds,
                            k,
                            polynomial: p,
                            proof,
                        }]);
                    }
                    Err(Some(w)) if self.sign_at(&g, &w) == Some(-1) => {
                        self.note(depth, format!("counterexample at {}", rational::approx(&w, 12)));
                        return Err(Failure::Refuted(w));
                    }
                    Err(_) => {}
                }
            }
        }

        if depth < self.cfg.split_depth_max {
            if let Some(steps) = self.split(t, &g, &sum, &signs, &floors, a, b, depth) {
                return Ok(steps);
            }
        } else {
            self.note(depth, "split depth exhausted".into());
        }
        match self.scan_for_counterexample(&g, a, b) {
            Some(w) => Err(Failure::Refuted(w)),
            None => Err(Failure::GaveUp),
        }
    }

    /// One escalation level; on failure returns a candidate counterexample.
    #[allow(clippy::too_many_arguments)]
    fn attempt(
        &mut self,
        sum: &MultiAngleSum,
        signs: &[SignEvidence],
        floors: &[u32],
        k: u32,
        a: &PiPoly,
        b: &PiPoly,
        depth: u32,
    ) -> Result<(Vec<BoundChoice>, UniPoly, PositivityProof), Option<Rational>> {
        let (bounds, p) = match self.polynomial_at(sum, signs, floors, k, b) {
            Ok(v) => v,
            Err(e) => {
                self.note(depth, format!("K={k}: {e}"));
                return Err(None);
            }
        };
        let degs: Vec<String> = bounds.iter().map(|c| format!("{}{}", c.func, c.degree)).collect();
        match positivity::prove_positive_on(&p, a, b, self.bits(), self.cfg.limits()) {
            Ok(proof) => {
                self.note(depth, format!("K={k} degrees [{}]: positive ({})", degs.join(", "), proof.mode().name()));
                Ok((bounds, p, proof))
            }
            Err(e) => {
                self.note(depth, format!("K={k} degrees [{}]: {e}", degs.join(", ")));
                Err(match e {
                    PositivityError::Disproof { witness } => Some(witness),
                    _ => None,
                })
            }
        }
    }

    /// Splits just below the least root of the first polynomial that is
    /// positive at the left end, then proves both sides.
    #[allow(clippy::too_many_arguments)]
    fn split(
        &mut self,
        t: &StepTransform,
        g: &MixedTrigPoly,
        sum: &MultiAngleSum,
        signs: &[SignEvidence],
        floors: &[u32],
        a: &PiPoly,
        b: &PiPoly,
        depth: u32,
    ) -> Option<Vec<ProofStep>> {
        let _ = g;
        let reflect = quarter_turns(b).is_some();
        for k in 0..=self.cfg.k_max {
            let Ok((_, p)) = self.polynomial_at(sum, signs, floors, k, b) else {
                continue;
            };
            let Some(split) = self.split_point(&p, a, b) else {
                continue;
            };
            self.note(
                depth,
                format!("K={k}: splitting at {} below the least root", rational::to_canonical(&split)),
            );
            let sp = PiPoly::constant(split.clone());
            let Ok(left) = self.segment(t, a, &sp, depth + 1) else {
                self.note(depth, "left piece failed".into());
                continue;
            };
            let right = if reflect {
                let rt = t.then_reflect(b);
                self.segment(&rt, &PiPoly::zero(), &(b - &sp), depth + 1)
            } else {
                self.segment(t, &sp, b, depth + 1)
            };
            match right {
                Ok(right) => {
                    let mut steps = left;
                    steps.extend(right);
                    return Some(steps);
                }
                Err(_) => self.note(depth, "right piece failed".into()),
            }
        }
        None
    }

    /// Largest multiple of `1/1000` below the least root of `P` in `(a, b)`,
    /// provided `P` is positive just right of `a` and that value exceeds `a`.
    fn split_point(&self, p: &UniPoly, a: &PiPoly, b: &PiPoly) -> Option<Rational> {
        if p.is_zero() {
            return None;
        }
        let shifted = p.compose(&UniPoly::new(vec![a.clone(), PiPoly::one()]));
        let q = shifted.shift_down(shifted.trailing_zeros());
        if pi_sign(&q.coeff(0), self.cfg)? != 1 {
            return None;
        }
        let root = match positivity::least_positive_root_with(&shifted, &self.cfg.width_target, self.bits(), self.cfg.limits()) {
            Ok(RootSearch::Root(r)) => r,
            _ => return None,
        };
        let root_lo = &a.as_rational()? + &root.lo;
        let mut split = rational::floor_to_denominator(&root_lo, SPLIT_DENOMINATOR);
        if split == root_lo && root.lo == root.hi {
            split -= rational::ratio(1, SPLIT_DENOMINATOR as i64);
        }
        let above_a = pi_sign(&(&PiPoly::constant(split.clone()) - a), self.cfg)? == 1;
        let below_b = pi_sign(&(b - &PiPoly::constant(split.clone())), self.cfg)? == 1;
        (above_a && below_b && split.is_positive()).then_some(split)
    }
}

/// Runs the full search on a problem.
pub fn prove(p: &ProblemSpec, cfg: &SearchConfig) -> ProofOutcome {
    let mut search = Search {
        f: &p.f,
        cfg,
        log: Vec::new(),
    };
    let mut outcome = ProofOutcome {
        verdict: Verdict::GaveUp,
        problem: p.clone(),
        steps: Vec::new(),
        witness: None,
        diagnostics: Vec::new(),
    };
    if p.f.is_zero() {
        outcome.verdict = Verdict::Refuted;
        let a = rational::ceil_dyadic(p.lo.enclose(64).hi(), 64);
        let b = rational_at_most(&p.hi, 64);
        outcome.witness = (b > a).then(|| (a + b) / rational::int(2));
        outcome.diagnostics.push("the function is identically zero".into());
        return outcome;
    }

    let lo_sign = pi_sign(&p.lo, cfg);
    let hi_sign = pi_sign(&p.hi, cfg);
    // Segments as (transform, local lo, local hi).
    let mut segments: Vec<(StepTransform, PiPoly, PiPoly)> = Vec::new();
    match (lo_sign, hi_sign) {
        (Some(l), _) if l >= 0 => segments.push((StepTransform::identity(), p.lo.clone(), p.hi.clone())),
        (Some(-1), Some(h)) if h <= 0 => {
            let t = StepTransform {
                center: PiPoly::zero(),
                sign: -1,
            };
            segments.push((t, -&p.hi, -&p.lo));
        }
        (Some(-1), Some(1)) => {
            let zero = Rational::from_integer(0.into());
            match pi_sign(&crate::series::series_coeffs(&p.f, 0)[0], cfg) {
                Some(1) => {}
                Some(_) => {
                    outcome.verdict = Verdict::Refuted;
                    outcome.witness = Some(zero);
                    outcome.diagnostics.push("f(0) <= 0 inside the interval".into());
                    return outcome;
                }
                None => {
                    outcome.diagnostics.push("sign of f(0) undecided".into());
                    return outcome;
                }
            }
            let t = StepTransform {
                center: PiPoly::zero(),
                sign: -1,
            };
            segments.push((t, PiPoly::zero(), -&p.lo));
            segments.push((StepTransform::identity(), PiPoly::zero(), p.hi.clone()));
        }
        _ => {
            outcome.diagnostics.push("could not order the interval endpoints against 0".into());
            return outcome;
        }
    }

    let mut steps = Vec::new();
    for (t, a, b) in &segments {
        match search.segment(t, a, b, 0) {
            Ok(s) => steps.extend(s),
            Err(Failure::Refuted(w)) => {
                let x = t.map(&PiPoly::constant(w));
                outcome.verdict = Verdict::Refuted;
                outcome.witness = x.as_rational();
                outcome.diagnostics = search.log;
                return outcome;
            }
            Err(Failure::GaveUp) => {
                outcome.diagnostics = search.log;
                return outcome;
            }
        }
    }
    if segments.len() == 2 && !steps.iter().any(|s| s.transform.is_identity() && s.lo.is_zero() && s.proof.j == 0) {
        // The point 0 itself is covered only through a step whose polynomial
        // does not vanish there.
        search.log.push("0 lies inside the interval but f(0) > 0 was not certified".into());
        outcome.diagnostics = search.log;
        return outcome;
    }
    sort_steps(&mut steps, cfg);
    outcome.verdict = Verdict::Proved;
    outcome.steps = steps;
    outcome.diagnostics = search.log;
    outcome
}

/// Left end of a step on the original line.
pub fn step_span(s: &ProofStep) -> (PiPoly, PiPoly) {
    let x = s.transform.map(&s.lo);
    let y = s.transform.map(&s.hi);
    if s.transform.sign > 0 {
        (x, y)
    } else {
        (y, x)
    }
}

fn sort_steps(steps: &mut [ProofStep], cfg: &SearchConfig) {
    let cap = cfg.precision_cap.max(cfg.precision_bits);
    steps.sort_by(|a, b| {
        let d = &step_span(a).0 - &step_span(b).0;
        match d.sign(64, cap) {
            Some(s) if s < 0 => std::cmp::Ordering::Less,
            Some(s) if s > 0 => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::parser::parse_problem;

    #[test]
    fn negative_sine_is_refuted() {
        let p = parse_problem("-sin(x) > 0 on (0, 1)").unwrap();
        let o = prove(&p, &SearchConfig::default());
        assert_eq!(o.verdict, Verdict::Refuted);
        let w = o.witness.unwrap();
        assert!(w > Rational::zero() && w < rational::int(1));
        assert_eq!(p.f.sign_at(&w, 64, 1024), Some(-1));
    }

    #[test]
    fn interior_zero_is_refuted_at_zero() {
        let p = parse_problem("x^2*cos(x) + sin(x)^2 > 0 on (-1, 3/2)").unwrap();
        let o = prove(&p, &SearchConfig::default());
        assert_eq!(o.verdict, Verdict::Refuted);
        assert_eq!(o.witness, Some(Rational::zero()));
    }

    #[test]
    fn sine_is_positive_on_unit_interval() {
        let p = parse_problem("sin(x) > 0 on (0, 1)").unwrap();
        let o = prove(&p, &SearchConfig::default());
        assert_eq!(o.verdict, Verdict::Proved, "{:#?}", o.diagnostics);
        assert_eq!(o.steps.len(), 1);
    }

    #[test]
    fn cosine_across_zero() {
        let p = parse_problem("cos(x) > 0 on (-1, 1)").unwrap();
        let o = prove(&p, &SearchConfig::default());
        assert_eq!(o.verdict, Verdict::Proved, "{:#?}", o.diagnostics);
        assert_eq!(o.steps.len(), 2);
    }
}
