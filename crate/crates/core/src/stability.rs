//! Hurwitz stability of single polynomials and of convex segments.
//!
//! The segment test is the value-set (zero exclusion) criterion: since the
//! endpoints are monic of equal degree, a member of `(1 - λ) a + λ b` can only
//! lose stability by acquiring a root `jω` on the imaginary axis. Writing
//! `a(jω) = A_R(ω²) + jω A_I(ω²)` (likewise for `b`), such a crossing needs
//! `(1 - λ) A_R + λ B_R = 0` and `(1 - λ) A_I + λ B_I = 0` simultaneously,
//! which forces `W(ω²) = A_R B_I - A_I B_R = 0`. The candidate frequencies
//! are therefore the positive real roots of `W`, each of which fixes one λ.
//!
//! `ω = 0` never crosses: Hurwitz endpoints have positive constant terms, and
//! so does every convex combination of them.
//!
//! An eigenvalue (Białas) formulation would also work but does not hand back
//! a crossing frequency.

use crate::error::{Error, Result};
use crate::polycore::{even_odd_split, real_roots, EvenOddParts, Poly};
use crate::Tolerances;

/// Routh–Hurwitz test: true iff every root has strictly negative real part.
///
/// The polynomial is sign-normalized and frequency-balanced (`s -> σ s` with
/// `σ = |p_0|^(1/n)`) before the Routh array is built. Any first-column
/// entry at or below `tol.pos` relative to the row two above it is a
/// failure.
pub fn hurwitz_test(p: &Poly, tol: &Tolerances) -> bool {
    let n = match p.degree() {
        None => return false,
        Some(0) => return true,
        Some(n) => n,
    };
    let lead = p.leading();
    let c: Vec<f64> = p.coeffs().iter().map(|x| x / lead).collect();
    if c.iter().any(|&x| x <= 0.0) {
        return false;
    }
    let sigma = c[n].powf(1.0 / n as f64);
    let c: Vec<f64> = c
        .iter()
        .enumerate()
        .map(|(i, x)| x / sigma.powi(i as i32))
        .collect();

    let mut prev: Vec<f64> = c.iter().step_by(2).copied().collect();
    let mut cur: Vec<f64> = c.iter().skip(1).step_by(2).copied().collect();
    for _ in 1..n {
        let pivot = cur[0];
        let scale = prev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if pivot <= tol.pos * scale {
            return false;
        }
        let next: Vec<f64> = (0..prev.len().saturating_sub(1))
            .map(|i| {
                let upper = prev[i + 1];
                let lower = cur.get(i + 1).copied().unwrap_or(0.0);
                upper - prev[0] / pivot * lower
            })
            .collect();
        if next.is_empty() {
            return false;
        }
        prev = cur;
        cur = next;
    }
    let scale = prev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    cur[0] > tol.pos * scale
}

/// Outcome of a segment stability check.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentVerdict {
    pub stable: bool,
    /// λ at which `(1 - λ) a + λ b` fails. For an unstable endpoint this is
    /// 0 or 1.
    pub witness_lambda: Option<f64>,
    /// Crossing frequency; absent when an endpoint is already unstable.
    pub witness_omega: Option<f64>,
    /// `(hurwitz(a), hurwitz(b))`
    pub endpoint_reports: (bool, bool),
}

/// `W(t) = A_R(t) B_I(t) - A_I(t) B_R(t)`.
pub fn segment_crossing_function(a: &Poly, b: &Poly) -> Poly {
    let pa = even_odd_split(a);
    let pb = even_odd_split(b);
    crossing_from_parts(&pa, &pb)
}

fn crossing_from_parts(pa: &EvenOddParts, pb: &EvenOddParts) -> Poly {
    &(&pa.re * &pb.im) - &(&pa.im * &pb.re)
}

fn check_degrees(a: &Poly, b: &Poly) -> Result<usize> {
    let da = a.degree().ok_or(Error::ZeroPolynomial)?;
    let db = b.degree().ok_or(Error::ZeroPolynomial)?;
    if da != db {
        return Err(Error::DegreeMismatch(da, db));
    }
    Ok(da)
}

/// Decides Hurwitz stability of every member of `(1 - λ) a + λ b`.
pub fn segment_stable(a: &Poly, b: &Poly, tol: &Tolerances) -> Result<SegmentVerdict> {
    check_degrees(a, b)?;
    let ha = hurwitz_test(a, tol);
    let hb = hurwitz_test(b, tol);
    if !(ha && hb) {
        return Ok(SegmentVerdict {
            stable: false,
            witness_lambda: Some(if ha { 1.0 } else { 0.0 }),
            witness_omega: None,
            endpoint_reports: (ha, hb),
        });
    }
    debug_assert!(a.coeff(0) / a.leading() > 0.0 && b.coeff(0) / b.leading() > 0.0);

    let pa = even_odd_split(a);
    let pb = even_odd_split(b);
    let w = crossing_from_parts(&pa, &pb);
    let scale = (&pa.re * &pb.im).max_abs().max((&pa.im * &pb.re).max_abs());
    // W == 0 means a(jω) and b(jω) are collinear for every ω with a ratio
    // that cannot change sign (neither vanishes on the axis), so no crossing.
    if w.max_abs() > tol.gcd * scale {
        let w = w.trim_relative(tol.gcd);
        for t in real_roots(&w, 0.0, f64::INFINITY, tol) {
            if t <= 0.0 {
                continue;
            }
            if let Some(lambda) = crossing_lambda(&pa, &pb, t, tol) {
                return Ok(SegmentVerdict {
                    stable: false,
                    witness_lambda: Some(lambda),
                    witness_omega: Some(t.sqrt()),
                    endpoint_reports: (ha, hb),
                });
            }
        }
    }
    Ok(SegmentVerdict {
        stable: true,
        witness_lambda: None,
        witness_omega: None,
        endpoint_reports: (ha, hb),
    })
}

/// λ making `(1 - λ) a(jω) + λ b(jω)` vanish at `t = ω²`, if it lies in
/// `[0, 1]` (widened by `tol.pos`, boundary cases count as crossings).
fn crossing_lambda(pa: &EvenOddParts, pb: &EvenOddParts, t: f64, tol: &Tolerances) -> Option<f64> {
    let (ar, ai) = (pa.re.eval(t), pa.im.eval(t));
    let (br, bi) = (pb.re.eval(t), pb.im.eval(t));
    let dr = ar - br;
    let di = ai - bi;
    let lambda = if dr.abs() >= di.abs() {
        if dr == 0.0 {
            return None;
        }
        ar / dr
    } else {
        ai / di
    };
    if !(-tol.pos..=1.0 + tol.pos).contains(&lambda) {
        return None;
    }
    let lambda = lambda.clamp(0.0, 1.0);
    let w = t.sqrt();
    let res_r = (1.0 - lambda) * ar + lambda * br;
    let res_i = w * ((1.0 - lambda) * ai + lambda * bi);
    let mod_a = ar.hypot(w * ai);
    let mod_b = br.hypot(w * bi);
    if res_r.hypot(res_i) <= 1e-6 * (mod_a + mod_b) {
        Some(lambda)
    } else {
        None
    }
}

/// Routh test at `k` evenly spaced λ in `[0, 1]`.
///
/// One-sided: `false` is a counterexample, `true` is not a proof.
pub fn segment_grid_oracle(a: &Poly, b: &Poly, k: usize, tol: &Tolerances) -> bool {
    assert!(k >= 2, "grid needs at least two points");
    (0..k).all(|i| {
        let lambda = i as f64 / (k - 1) as f64;
        hurwitz_test(&segment_point(a, b, lambda), tol)
    })
}

/// `(1 - λ) a + λ b`
pub fn segment_point(a: &Poly, b: &Poly, lambda: f64) -> Poly {
    &a.scale(1.0 - lambda) + &b.scale(lambda)
}
