use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("non-finite coefficient at position {0}")]
    NonFinite(usize),
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(f64),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("dimension mismatch: polynomial degree {degree}, candidate dimension n = {n}")]
    DimensionMismatch { degree: usize, n: usize },
    #[error("ratio is unbounded below on [0, inf)")]
    Unbounded,
    #[error("not applicable: SPR condition ({0}) fails")]
    NotApplicable(u8),
    #[error("segment is not Hurwitz stable (lambda = {lambda:?}, omega = {omega:?})")]
    SegmentUnstable {
        lambda: Option<f64>,
        omega: Option<f64>,
    },
    #[error("iteration limit reached after {iterations} cuts (best margin {best_margin:e})")]
    IterationLimit { iterations: usize, best_margin: f64 },
    #[error("no admissible epsilon found")]
    NoEpsilonFound,
    #[error("no admissible delta found")]
    NoDeltaFound,
    #[error("linear program failed: {0}")]
    Lp(&'static str),
    #[error("synthesized polynomial failed re-verification")]
    VerificationFailed,
}
