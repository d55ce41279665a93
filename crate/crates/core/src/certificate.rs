//! Certificate file format (version 1): canonical one-line JSON with sorted
//! keys in which every number is an exact `"p/q"` string, and an independent
//! checker that replays each step from the problem text.
//!
//! Layout: the top-level object has `version`, `problem` and the per-step
//! arrays `reflection`, `expansion`, `degrees`, `polynomial` and
//! `positivity`, all of equal length. A π-polynomial is an array of
//! coefficient strings (index = power of π); a polynomial in `x` is an array
//! of π-polynomials.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::driver::{ProofOutcome, ProofStep, Verdict};
use crate::multiangle::{expand_poly, MultiAngleSum, SubAddend, TrigFunc};
use crate::parser::parse_problem;
use crate::pipoly::PiPoly;
use crate::positivity::{verify_proof, verify_sign_evidence, Evidence, Leaf, PositivityProof, SignEvidence, DEFAULT_PRECISION_CAP};
use crate::problem::ProblemSpec;
use crate::rational::{self, Rational};
use crate::reflect::{quarter_turns, transform, StepTransform};
use crate::taylor::{assemble, classify, validity_holds, BoundChoice, Direction};
use crate::unipoly::UniPoly;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateStep {
    pub reflection: Option<StepTransform>,
    pub lo: PiPoly,
    pub hi: PiPoly,
    pub expansion: MultiAngleSum,
    pub signs: Vec<SignEvidence>,
    pub bounds: Vec<BoundChoice>,
    pub polynomial: UniPoly,
    pub proof: PositivityProof,
}

impl CertificateStep {
    fn transform(&self) -> StepTransform {
        self.reflection.clone().unwrap_or_else(StepTransform::identity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub version: u32,
    pub problem: String,
    pub steps: Vec<CertificateStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("only proved outcomes have certificates (verdict: {0})")]
    NotProved(&'static str),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

/// Checker stages, in the order they run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Parse,
    Problem,
    Reflection,
    Coverage,
    Expansion,
    Classification,
    Validity,
    SignEvidence,
    Polynomial,
    Positivity,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Parse => "parse",
            Stage::Problem => "problem",
            Stage::Reflection => "reflection",
            Stage::Coverage => "coverage",
            Stage::Expansion => "expansion",
            Stage::Classification => "classification",
            Stage::Validity => "validity",
            Stage::SignEvidence => "sign-evidence",
            Stage::Polynomial => "polynomial-reproduction",
            Stage::Positivity => "positivity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Accepted,
    Rejected { stage: Stage, step: Option<usize>, reason: String },
}

impl CheckResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckResult::Accepted)
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            CheckResult::Accepted => None,
            CheckResult::Rejected { stage, .. } => Some(*stage),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckResult::Accepted => write!(f, "accepted"),
            CheckResult::Rejected { stage, step, reason } => {
                write!(f, "rejected at {}", stage.name())?;
                if let Some(i) = step {
                    write!(f, " (step {i})")?;
                }
                write!(f, ": {reason}")
            }
        }
    }
}

// ---- encoding ----

fn enc_rat(r: &Rational) -> Value {
    Value::String(rational::to_canonical(r))
}

fn enc_int(v: impl Into<i64>) -> Value {
    enc_rat(&rational::int(v.into()))
}

fn enc_pi(p: &PiPoly) -> Value {
    Value::Array(p.coeffs().iter().map(enc_rat).collect())
}

fn enc_uni(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(enc_pi).collect())
}

fn enc_proof(p: &PositivityProof) -> Value {
    let leaves = match &p.evidence {
        Evidence::Sturm => vec![],
        Evidence::Bisection { leaves } => leaves
            .iter()
            .map(|l| {
                json!({
                    "lo": enc_rat(&l.lo),
                    "hi": enc_rat(&l.hi),
                    "precision": enc_int(l.precision),
                    "lower_bound": enc_rat(&l.lower_bound),
                })
            })
            .collect(),
    };
    json!({
        "j": enc_int(p.j as i64),
        "cover_lo": enc_rat(&p.cover_lo),
        "cover_hi": enc_rat(&p.cover_hi),
        "mode": p.mode().name(),
        "leaves": leaves,
    })
}

fn enc_step(s: &CertificateStep) -> [Value; 5] {
    let reflection = match &s.reflection {
        None => Value::Null,
        Some(t) => json!({ "center": enc_pi(&t.center), "sign": enc_int(t.sign) }),
    };
    let subs: Vec<Value> = s
        .expansion
        .sub_addends
        .iter()
        .zip(&s.signs)
        .map(|(sa, ev)| {
            json!({
                "func": sa.func.name(),
                "multiple": enc_int(sa.multiple),
                "coeff": enc_rat(&sa.coeff),
                "factor": enc_uni(&sa.factor),
                "sign_evidence": {
                    "sign": enc_int(ev.sign),
                    "x_power": enc_int(ev.x_power as i64),
                    "lo_zeros": enc_int(ev.lo_zeros as i64),
                    "hi_zeros": enc_int(ev.hi_zeros as i64),
                    "proof": enc_proof(&ev.proof),
                },
            })
        })
        .collect();
    let expansion = json!({ "constant_part": enc_uni(&s.expansion.constant_part), "sub_addends": subs });
    let degrees: Vec<Value> = s
        .bounds
        .iter()
        .map(|b| {
            json!({
                "func": b.func.name(),
                "multiple": enc_int(b.multiple),
                "degree": enc_int(b.degree),
                "direction": b.direction.name(),
                "radius_sq": enc_rat(&Rational::from_integer(b.radius_sq.into())),
            })
        })
        .collect();
    let mut positivity = enc_proof(&s.proof);
    positivity
        .as_object_mut()
        .expect("object")
        .insert("domain".into(), json!({ "lo": enc_pi(&s.lo), "hi": enc_pi(&s.hi) }));
    [reflection, expansion, Value::Array(degrees), enc_uni(&s.polynomial), positivity]
}

impl Certificate {
    pub fn from_outcome(o: &ProofOutcome) -> Result<Certificate, CertificateError> {
        if o.verdict != Verdict::Proved {
            return Err(CertificateError::NotProved(o.verdict.name()));
        }
        Ok(Certificate {
            version: FORMAT_VERSION,
            problem: o.problem.print(),
            steps: o.steps.iter().map(CertificateStep::from).collect(),
        })
    }

    pub fn to_value(&self) -> Value {
        let mut cols: [Vec<Value>; 5] = Default::default();
        for s in &self.steps {
            for (c, v) in cols.iter_mut().zip(enc_step(s)) {
                c.push(v);
            }
        }
        let [reflection, expansion, degrees, polynomial, positivity] = cols;
        json!({
            "version": enc_int(self.version),
            "problem": self.problem,
            "reflection": reflection,
            "expansion": expansion,
            "degrees": degrees,
            "polynomial": polynomial,
            "positivity": positivity,
        })
    }

    /// Canonical bytes: compact JSON, sorted keys, trailing newline.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut s = serde_json::to_string(&self.to_value()).expect("serializable");
        s.push('\n');
        s.into_bytes()
    }

    pub fn parse(bytes: &[u8]) -> Result<Certificate, CertificateError> {
        let v: Value = serde_json::from_slice(bytes).map_err(|e| CertificateError::Malformed(e.to_string()))?;
        decode(&v).map_err(CertificateError::Malformed)
    }
}

impl From<&ProofStep> for CertificateStep {
    fn from(s: &ProofStep) -> Self {
        CertificateStep {
            reflection: (!s.transform.is_identity()).then(|| s.transform.clone()),
            lo: s.lo.clone(),
            hi: s.hi.clone(),
            expansion: s.expansion.clone(),
            signs: s.signs.clone(),
            bounds: s.bounds.clone(),
            polynomial: s.polynomial.clone(),
            proof: s.proof.clone(),
        }
    }
}

/// Canonical certificate bytes for a proved outcome.
pub fn emit(o: &ProofOutcome) -> Result<Vec<u8>, CertificateError> {
    Ok(Certificate::from_outcome(o)?.to_bytes())
}

// ---- decoding ----

type D<T> = Result<T, String>;

fn obj<'a>(v: &'a Value, keys: &[&str], what: &str) -> D<&'a Map<String, Value>> {
    let m = v.as_object().ok_or_else(|| format!("{what} is not an object"))?;
    if m.len() != keys.len() || keys.iter().any(|k| !m.contains_key(*k)) {
        let mut got: Vec<&str> = m.keys().map(String::as_str).collect();
        got.sort_unstable();
        return Err(format!("{what} must have exactly the keys {keys:?}, found {got:?}"));
    }
    Ok(m)
}

fn arr<'a>(v: &'a Value, what: &str) -> D<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| format!("{what} is not an array"))
}

fn string<'a>(v: &'a Value, what: &str) -> D<&'a str> {
    v.as_str().ok_or_else(|| format!("{what} is not a string"))
}

fn dec_rat(v: &Value, what: &str) -> D<Rational> {
    let s = string(v, what)?;
    rational::parse_canonical(s).ok_or_else(|| format!("{what}: {s:?} is not a reduced p/q rational"))
}

fn dec_int(v: &Value, what: &str) -> D<i64> {
    let r = dec_rat(v, what)?;
    if !r.is_integer() {
        return Err(format!("{what} must be an integer"));
    }
    r.to_integer().to_i64().ok_or_else(|| format!("{what} is out of range"))
}

fn dec_nat<T: TryFrom<i64>>(v: &Value, what: &str) -> D<T> {
    let n = dec_int(v, what)?;
    if n < 0 {
        return Err(format!("{what} must be nonnegative"));
    }
    T::try_from(n).map_err(|_| format!("{what} is out of range"))
}

fn dec_pi(v: &Value, what: &str) -> D<PiPoly> {
    let c = arr(v, what)?.iter().map(|c| dec_rat(c, what)).collect::<D<Vec<_>>>()?;
    if c.last().is_some_and(Zero::is_zero) {
        return Err(format!("{what} has a trailing zero coefficient"));
    }
    Ok(PiPoly::new(c))
}

fn dec_uni(v: &Value, what: &str) -> D<UniPoly> {
    let c = arr(v, what)?.iter().map(|c| dec_pi(c, what)).collect::<D<Vec<_>>>()?;
    if c.last().is_some_and(PiPoly::is_zero) {
        return Err(format!("{what} has a trailing zero coefficient"));
    }
    Ok(UniPoly::new(c))
}

fn dec_func(v: &Value, what: &str) -> D<TrigFunc> {
    let s = string(v, what)?;
    TrigFunc::from_name(s).ok_or_else(|| format!("{what}: unknown function {s:?}"))
}

fn dec_sign(v: &Value, what: &str) -> D<i32> {
    match dec_int(v, what)? {
        1 => Ok(1),
        -1 => Ok(-1),
        _ => Err(format!("{what} must be 1/1 or -1/1")),
    }
}

fn dec_proof(v: &Value, extra: &[&str], what: &str) -> D<PositivityProof> {
    let mut keys = vec!["j", "cover_lo", "cover_hi", "mode", "leaves"];
    keys.extend_from_slice(extra);
    let m = obj(v, &keys, what)?;
    let leaves = arr(&m["leaves"], what)?
        .iter()
        .map(|l| {
            let l = obj(l, &["lo", "hi", "precision", "lower_bound"], "leaf")?;
            Ok(Leaf {
                lo: dec_rat(&l["lo"], "leaf lo")?,
                hi: dec_rat(&l["hi"], "leaf hi")?,
                precision: dec_nat(&l["precision"], "leaf precision")?,
                lower_bound: dec_rat(&l["lower_bound"], "leaf lower bound")?,
            })
        })
        .collect::<D<Vec<_>>>()?;
    let evidence = match string(&m["mode"], "mode")? {
        "sturm" if leaves.is_empty() => Evidence::Sturm,
        "sturm" => return Err(format!("{what}: Sturm evidence carries no leaves")),
        "bisection" => Evidence::Bisection { leaves },
        other => return Err(format!("{what}: unknown mode {other:?}")),
    };
    Ok(PositivityProof {
        j: dec_nat(&m["j"], "j")?,
        cover_lo: dec_rat(&m["cover_lo"], "cover_lo")?,
        cover_hi: dec_rat(&m["cover_hi"], "cover_hi")?,
        evidence,
    })
}

fn dec_step(r: &Value, e: &Value, d: &Value, p: &Value, q: &Value) -> D<CertificateStep> {
    let reflection = match r {
        Value::Null => None,
        v => {
            let m = obj(v, &["center", "sign"], "reflection")?;
            Some(StepTransform {
                center: dec_pi(&m["center"], "reflection center")?,
                sign: dec_sign(&m["sign"], "reflection sign")?,
            })
        }
    };
    let em = obj(e, &["constant_part", "sub_addends"], "expansion")?;
    let mut subs = Vec::new();
    let mut signs = Vec::new();
    for s in arr(&em["sub_addends"], "sub_addends")? {
        let m = obj(s, &["func", "multiple", "coeff", "factor", "sign_evidence"], "sub-addend")?;
        subs.push(SubAddend {
            func: dec_func(&m["func"], "sub-addend func")?,
            multiple: dec_nat(&m["multiple"], "multiple")?,
            coeff: dec_rat(&m["coeff"], "coeff")?,
            factor: dec_uni(&m["factor"], "factor")?,
        });
        let ev = obj(&m["sign_evidence"], &["sign", "x_power", "lo_zeros", "hi_zeros", "proof"], "sign evidence")?;
        signs.push(SignEvidence {
            sign: dec_sign(&ev["sign"], "evidence sign")?,
            x_power: dec_nat(&ev["x_power"], "x_power")?,
            lo_zeros: dec_nat(&ev["lo_zeros"], "lo_zeros")?,
            hi_zeros: dec_nat(&ev["hi_zeros"], "hi_zeros")?,
            proof: dec_proof(&ev["proof"], &[], "sign proof")?,
        });
    }
    let bounds = arr(d, "degrees")?
        .iter()
        .map(|b| {
            let m = obj(b, &["func", "multiple", "degree", "direction", "radius_sq"], "degree entry")?;
            let dir = string(&m["direction"], "direction")?;
            Ok(BoundChoice {
                func: dec_func(&m["func"], "degree func")?,
                multiple: dec_nat(&m["multiple"], "degree multiple")?,
                degree: dec_nat(&m["degree"], "degree")?,
                direction: Direction::from_name(dir).ok_or_else(|| format!("unknown direction {dir:?}"))?,
                radius_sq: dec_nat(&m["radius_sq"], "radius_sq")?,
            })
        })
        .collect::<D<Vec<_>>>()?;
    let proof = dec_proof(q, &["domain"], "positivity")?;
    let dm = obj(&q["domain"], &["lo", "hi"], "domain")?;
    Ok(CertificateStep {
        reflection,
        lo: dec_pi(&dm["lo"], "domain lo")?,
        hi: dec_pi(&dm["hi"], "domain hi")?,
        expansion: MultiAngleSum {
            sub_addends: subs,
            constant_part: dec_uni(&em["constant_part"], "constant_part")?,
        },
        signs,
        bounds,
        polynomial: dec_uni(p, "polynomial")?,
        proof,
    })
}

fn decode(v: &Value) -> D<Certificate> {
    let keys = ["version", "problem", "reflection", "expansion", "degrees", "polynomial", "positivity"];
    let m = obj(v, &keys, "certificate")?;
    let version: u32 = dec_nat(&m["version"], "version")?;
    if version != FORMAT_VERSION {
        return Err(format!("unsupported version {version}"));
    }
    let problem = string(&m["problem"], "problem")?.to_string();
    let cols: Vec<&Vec<Value>> = keys[2..].iter().map(|k| arr(&m[*k], k)).collect::<D<_>>()?;
    let n = cols[0].len();
    if n == 0 || cols.iter().any(|c| c.len() != n) {
        return Err("step arrays must be nonempty and of equal length".into());
    }
    let steps = (0..n)
        .map(|i| dec_step(&cols[0][i], &cols[1][i], &cols[2][i], &cols[3][i], &cols[4][i]).map_err(|e| format!("step {i}: {e}")))
        .collect::<D<Vec<_>>>()?;
    Ok(Certificate { version, problem, steps })
}

// ---- checking ----

fn reject(stage: Stage, step: Option<usize>, reason: impl Into<String>) -> CheckResult {
    CheckResult::Rejected {
        stage,
        step,
        reason: reason.into(),
    }
}

fn cap() -> u32 {
    DEFAULT_PRECISION_CAP
}

fn sign_of(p: &PiPoly) -> Option<i32> {
    p.sign(64, cap())
}

/// Original-line span of a step and whether each end is covered.
fn span(s: &CertificateStep) -> ((PiPoly, bool), (PiPoly, bool)) {
    let t = s.transform();
    let closed_lo = !s.lo.is_zero() || s.proof.j == 0;
    let a = (t.map(&s.lo), closed_lo);
    let b = (t.map(&s.hi), true);
    if t.sign > 0 {
        (a, b)
    } else {
        (b, a)
    }
}

fn check_coverage(p: &ProblemSpec, steps: &[CertificateStep]) -> Result<(), (Option<usize>, String)> {
    for (i, s) in steps.iter().enumerate() {
        if sign_of(&s.lo) != Some(0) && sign_of(&s.lo) != Some(1) {
            return Err((Some(i), "local domain must start at a nonnegative point".into()));
        }
        if sign_of(&(&s.hi - &s.lo)) != Some(1) {
            return Err((Some(i), "local domain is empty".into()));
        }
    }
    let spans: Vec<_> = steps.iter().map(span).collect();
    if spans[0].0 .0 != p.lo {
        return Err((Some(0), "first step does not start at the left end of the problem interval".into()));
    }
    if spans[spans.len() - 1].1 .0 != p.hi {
        return Err((Some(spans.len() - 1), "last step does not end at the right end of the problem interval".into()));
    }
    for i in 1..spans.len() {
        let (prev, next) = (&spans[i - 1].1, &spans[i].0);
        if prev.0 != next.0 {
            return Err((Some(i), "steps do not join exactly".into()));
        }
        if !prev.1 && !next.1 {
            return Err((Some(i), format!("join point {} is not covered", next.0.to_expr())));
        }
    }
    Ok(())
}

fn check_step(p: &ProblemSpec, s: &CertificateStep) -> Result<(), (Stage, String)> {
    let t = s.transform();
    let g = transform(&p.f, &t).map_err(|e| (Stage::Reflection, e.to_string()))?;

    // Expansion: same linear combination of sin/cos(m·x) and same remainder.
    let e = &s.expansion;
    for (k, sa) in e.sub_addends.iter().enumerate() {
        if sa.multiple == 0 {
            return Err((Stage::Expansion, format!("sub-addend {k} has multiple 0")));
        }
        if sa.coeff.is_zero() || sa.factor.is_zero() || sa.factor.primitive() != (rational::int(1), sa.factor.clone()) {
            return Err((Stage::Expansion, format!("sub-addend {k} is not normalized")));
        }
    }
    let expect = expand_poly(&g);
    if e.grouped() != expect.grouped() {
        return Err((Stage::Expansion, "sub-addends do not sum to the expansion of the function".into()));
    }
    if e.constant_part != expect.constant_part {
        return Err((Stage::Expansion, "constant part differs from the expansion".into()));
    }

    // Classification, validity and factor signs.
    if s.bounds.len() != e.sub_addends.len() || s.signs.len() != e.sub_addends.len() {
        return Err((Stage::Classification, "degree table and expansion differ in length".into()));
    }
    for (k, ((sa, b), ev)) in e.sub_addends.iter().zip(&s.bounds).zip(&s.signs).enumerate() {
        if b.func != sa.func || b.multiple != sa.multiple {
            return Err((Stage::Classification, format!("entry {k} names a different sub-addend")));
        }
        let c = classify(b.func, b.degree).map_err(|err| (Stage::Classification, format!("entry {k}: {err}")))?;
        if c.direction != b.direction {
            return Err((Stage::Classification, format!("entry {k}: degree {} gives a {} bound", b.degree, c.direction.name())));
        }
        if c.radius_sq != b.radius_sq {
            return Err((Stage::Classification, format!("entry {k}: wrong validity radius")));
        }
        let wanted = if ev.sign > 0 { Direction::Lower } else { Direction::Upper };
        if b.direction != wanted {
            return Err((Stage::Classification, format!("entry {k}: bound direction does not match the factor sign")));
        }
    }
    for (k, b) in s.bounds.iter().enumerate() {
        if validity_holds(b.multiple, &s.hi, b.radius_sq, 64, cap()) != Some(true) {
            return Err((Stage::Validity, format!("entry {k}: argument leaves the validity radius")));
        }
    }
    for (k, (sa, ev)) in e.sub_addends.iter().zip(&s.signs).enumerate() {
        verify_sign_evidence(&sa.effective_factor(), &s.lo, &s.hi, ev).map_err(|err| (Stage::SignEvidence, format!("sub-addend {k}: {err}")))?;
    }

    let poly = assemble(e, &s.bounds).map_err(|err| (Stage::Polynomial, err.to_string()))?;
    if poly != s.polynomial {
        return Err((Stage::Polynomial, "recorded polynomial differs from the substituted bounds".into()));
    }
    verify_proof(&s.polynomial, &s.lo, &s.hi, &s.proof).map_err(|err| (Stage::Positivity, err))
}

/// Independently verifies certificate bytes.
pub fn check(bytes: &[u8]) -> CheckResult {
    let cert = match Certificate::parse(bytes) {
        Ok(c) => c,
        Err(e) => return reject(Stage::Parse, None, e.to_string()),
    };
    if cert.to_bytes() != bytes {
        return reject(Stage::Parse, None, "not in canonical form");
    }
    let problem = match parse_problem(&cert.problem) {
        Ok(p) => p,
        Err(e) => return reject(Stage::Problem, None, e.to_string()),
    };
    if problem.print() != cert.problem {
        return reject(Stage::Problem, None, "problem text is not in printed form");
    }
    for (i, s) in cert.steps.iter().enumerate() {
        if let Some(t) = &s.reflection {
            if t.is_identity() {
                return reject(Stage::Reflection, Some(i), "identity must be recorded as null");
            }
            if quarter_turns(&t.center).is_none() {
                return reject(Stage::Reflection, Some(i), "center is not a multiple of pi/2");
            }
        }
    }
    if let Err((step, reason)) = check_coverage(&problem, &cert.steps) {
        return reject(Stage::Coverage, step, reason);
    }
    for (i, s) in cert.steps.iter().enumerate() {
        if let Err((stage, reason)) = check_step(&problem, s) {
            return reject(stage, Some(i), reason);
        }
    }
    CheckResult::Accepted
}

/// Number of bisection leaves across all proofs in the certificate.
pub fn leaf_total(c: &Certificate) -> usize {
    c.steps
        .iter()
        .map(|s| s.proof.leaf_count() + s.signs.iter().map(|e| e.proof.leaf_count()).sum::<usize>())
        .sum()
}
