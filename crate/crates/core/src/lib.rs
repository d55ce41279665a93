//! Certified positivity proofs for mixed trigonometric polynomials.
//!
//! A claim `f(x) > 0` on an interval, where `f` is a sum of terms
//! `h(x)·cos^q(x)·sin^r(x)` with polynomial `h` over ℚ[π], is reduced to the
//! positivity of a single polynomial: products of powers are linearized into
//! sines and cosines of multiple angles, and each of those is replaced by a
//! Maclaurin polynomial that bounds it from the correct side. The polynomial
//! is then certified positive with exact arithmetic, and the whole chain is
//! recorded in a certificate that an independent checker replays.

pub mod certificate;
pub mod driver;
pub mod interval;
pub mod multiangle;
pub mod parser;
pub mod pi;
pub mod pipoly;
pub mod positivity;
pub mod problem;
pub mod rational;
pub mod reflect;
pub mod series;
pub mod sturm;
pub mod taylor;
pub mod unipoly;

pub use interval::RatInterval;
pub use pi::pi_enclosure;
pub use pipoly::{pipoly_enclose, PiPoly};
pub use problem::{MixedTrigPoly, MixedTrigTerm, ProblemSpec};
pub use rational::Rational;
pub use unipoly::{unipoly_eval_interval, UniPoly};
