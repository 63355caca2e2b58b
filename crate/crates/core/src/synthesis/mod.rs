//! Construction of a common SPR numerator for a stable segment.
//!
//! Pipeline for `n >= 2`:
//!
//! 1. [`find_common_point`]: an `x` for which the degree `n-1` candidate
//!    `s^{n-1} + x_1 s^{n-2} + ... + x_{n-1}` has strictly positive real part
//!    against both `a` and `b`.
//! 2. [`select_epsilon`]: the `(x_1 - ε, ..., x_{n-1} + ε)` adjustment,
//!    chosen by verified halving rather than from explicit inf/sup bounds.
//! 3. [`lift_degree`]: `c̃ = c + δ h` with `h` monic of degree `n`, again by
//!    verified halving, which restores equal degrees.
//!
//! `n = 1` is handled directly with `c = s + min(a_1, b_1) / 2`.

mod cutting_plane;
pub mod simplex;

pub use cutting_plane::{find_common_point, CommonPoint, Cut, Endpoint, FeasibilityProblem};

use crate::error::{Error, Result};
use crate::polycore::Poly;
use crate::sprcheck::{spr_margin, verify_positivity, verify_spr, CandidatePoint};
use crate::stability::{segment_point, segment_stable};
use crate::Tolerances;

const MAX_HALVINGS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SynthesisOptions {
    /// Target weighted margin for the common point.
    pub eta: f64,
    /// Cutting-plane iterations per box size.
    pub max_iters: usize,
    pub tol: Tolerances,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            eta: 1e-6,
            max_iters: 200,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisResult {
    /// `candidate(x, ε) + δ h`; degree `n`, leading coefficient `δ`.
    pub c_final: Poly,
    pub x: CandidatePoint,
    pub epsilon: f64,
    pub delta: f64,
    pub h: Poly,
    pub margin_a: f64,
    pub margin_b: f64,
    pub iterations: usize,
}

impl SynthesisResult {
    /// `c_final` scaled to leading coefficient one (SPR is scale invariant).
    pub fn c_monic(&self) -> Poly {
        self.c_final.scale(1.0 / self.c_final.leading())
    }
}

/// `s^{n-1} + (x_1 - ε) s^{n-2} + x_2 s^{n-3} + ... + (x_{n-1} + ε)`.
///
/// For `n = 2` both adjustments hit the same coefficient and cancel.
pub fn apply_epsilon(x: &CandidatePoint, epsilon: f64) -> Poly {
    let mut c = Vec::with_capacity(x.x.len() + 1);
    c.push(1.0);
    c.extend_from_slice(&x.x);
    let last = c.len() - 1;
    if last >= 1 {
        c[1] -= epsilon;
        c[last] += epsilon;
    }
    Poly::new(c)
}

/// Largest `ε = start / 2^k` for which both positivity margins of
/// `apply_epsilon(x, ε)` reach `floor`.
pub fn select_epsilon(
    a: &Poly,
    b: &Poly,
    x: &CandidatePoint,
    start: f64,
    floor: f64,
    tol: &Tolerances,
) -> Result<f64> {
    let mut epsilon = start;
    for _ in 0..MAX_HALVINGS {
        let c = apply_epsilon(x, epsilon);
        let ra = verify_positivity(&c, a, tol);
        let rb = verify_positivity(&c, b, tol);
        if ra.positive && rb.positive && ra.margin >= floor && rb.margin >= floor {
            return Ok(epsilon);
        }
        epsilon *= 0.5;
    }
    Err(Error::NoEpsilonFound)
}

/// `c + δ h` with `δ` from halving `1, 1/2, ...` until both SPR checks pass,
/// then halved once more when that still verifies.
pub fn lift_degree(
    c: &Poly,
    a: &Poly,
    b: &Poly,
    h: &Poly,
    tol: &Tolerances,
) -> Result<(Poly, f64)> {
    let passes = |p: &Poly| verify_spr(p, a, tol).spr && verify_spr(p, b, tol).spr;
    let mut delta = 1.0;
    for _ in 0..MAX_HALVINGS {
        let lifted = c + &h.scale(delta);
        if passes(&lifted) {
            let half = c + &h.scale(0.5 * delta);
            if passes(&half) {
                return Ok((half, 0.5 * delta));
            }
            return Ok((lifted, delta));
        }
        delta *= 0.5;
    }
    Err(Error::NoDeltaFound)
}

fn check_inputs(a: &Poly, b: &Poly) -> Result<usize> {
    let n = a.degree().ok_or(Error::ZeroPolynomial)?;
    let nb = b.degree().ok_or(Error::ZeroPolynomial)?;
    if n != nb {
        return Err(Error::DegreeMismatch(n, nb));
    }
    for p in [a, b] {
        if (p.leading() - 1.0).abs() > 1e-12 {
            return Err(Error::NotMonic(p.leading()));
        }
    }
    if n == 0 {
        return Err(Error::DegreeMismatch(0, 0));
    }
    Ok(n)
}

/// Builds `c` with `c/a` and `c/b` both SPR, or reports why none exists.
pub fn synthesize(a: &Poly, b: &Poly, opts: &SynthesisOptions) -> Result<SynthesisResult> {
    let n = check_inputs(a, b)?;
    let tol = &opts.tol;
    let verdict = segment_stable(a, b, tol)?;
    if !verdict.stable {
        return Err(Error::SegmentUnstable {
            lambda: verdict.witness_lambda,
            omega: verdict.witness_omega,
        });
    }
    let h = (a + b).scale(0.5);

    let (c_final, x, epsilon, delta, iterations) = if n == 1 {
        let k = 0.5 * a.coeff(0).min(b.coeff(0));
        (
            Poly::new(vec![1.0, k]),
            CandidatePoint::new(Vec::new()),
            0.0,
            0.0,
            0,
        )
    } else {
        let point = find_common_point(a, b, opts.eta, opts.max_iters, tol)?;
        let floor = 0.5 * opts.eta.min(point.margin);
        let epsilon = select_epsilon(a, b, &point.x, opts.eta, floor, tol)?;
        let c = apply_epsilon(&point.x, epsilon);
        let (c_final, delta) = lift_degree(&c, a, b, &h, tol)?;
        (c_final, point.x, epsilon, delta, point.iterations)
    };

    let ra = verify_spr(&c_final, a, tol);
    let rb = verify_spr(&c_final, b, tol);
    if !(ra.spr && rb.spr) {
        return Err(Error::VerificationFailed);
    }
    Ok(SynthesisResult {
        margin_a: spr_margin(&c_final, a, tol)?,
        margin_b: spr_margin(&c_final, b, tol)?,
        c_final,
        x,
        epsilon,
        delta,
        h,
        iterations,
    })
}

/// Checks `c_final / ((1 - λ) a + λ b)` is SPR at `k` evenly spaced λ.
pub fn verify_certificate(
    res: &SynthesisResult,
    a: &Poly,
    b: &Poly,
    k: usize,
    tol: &Tolerances,
) -> bool {
    assert!(k >= 2, "grid needs at least two points");
    (0..k).all(|i| {
        let lambda = i as f64 / (k - 1) as f64;
        verify_spr(&res.c_final, &segment_point(a, b, lambda), tol).spr
    })
}
