//! Hurwitz stability of polynomial segments and robust strictly-positive-real
//! (SPR) synthesis.
//!
//! Given two monic Hurwitz polynomials `a(s)` and `b(s)` of degree `n`, the
//! segment `(1 - λ) a + λ b`, `λ ∈ [0, 1]`, is Hurwitz stable exactly when a
//! single polynomial `c(s)` exists that makes both `c/a` and `c/b` strictly
//! positive real. This crate decides segment stability and, when it holds,
//! constructs such a `c(s)` together with positivity margins that can be
//! re-checked independently.
//!
//! The pieces:
//!
//! - [`polycore`]: polynomial arithmetic, even/odd split on the imaginary
//!   axis, Sturm root counting, half-line minimization, bilinear transform.
//! - [`stability`]: Routh–Hurwitz test and the value-set segment check.
//! - [`sprcheck`]: the SPR verifier and the linear coefficient map used by
//!   the synthesis.
//! - [`synthesis`]: cutting-plane search for a common degree `n-1`
//!   candidate, the ε adjustment, the δ degree lift and certificate checks.
//!
//! Coefficients are stored highest degree first throughout.

pub mod error;
pub mod polycore;
pub mod sprcheck;
pub mod stability;
pub mod synthesis;

pub use error::{Error, Result};
pub use polycore::{Bilinear, EvenOddParts, HalflineMin, Poly};
pub use sprcheck::{CandidatePoint, PositivityReport, SprCondition, SprReport};
pub use stability::SegmentVerdict;
pub use synthesis::{SynthesisOptions, SynthesisResult};

/// Numerical tolerances shared by every decision procedure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Strict-positivity floor. Margins at or below it count as failures.
    pub pos: f64,
    /// Root isolation width (relative to `1 + |t|`).
    pub root: f64,
    /// Relative coefficient cutoff for approximate gcd / remainder trimming.
    pub gcd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            pos: 1e-9,
            root: 1e-12,
            gcd: 1e-10,
        }
    }
}
