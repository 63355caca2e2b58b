use super::{approx_gcd, real_roots, Poly};
use crate::error::{Error, Result};
use crate::Tolerances;

/// Global minimum of `p(t) / w(t)` over `[0, inf)`.
///
/// `t` is `f64::INFINITY` when the infimum is the limit at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalflineMin {
    pub t: f64,
    pub value: f64,
}

/// Interior stationary points of `p / w` on `(0, inf)`.
///
/// These are the real roots of `p' w - p w'` after the common factor
/// `gcd(w, w')` has been divided out, so repeated factors of the weight do
/// not reach the root isolation.
pub fn critical_points(p: &Poly, w: &Poly, tol: &Tolerances) -> Vec<f64> {
    let dw = w.derivative();
    let g = approx_gcd(w, &dw, tol.gcd);
    let w1 = w.div_rem(&g).0;
    let w2 = if dw.is_zero() {
        Poly::zero()
    } else {
        dw.div_rem(&g).0
    };
    let dp = p.derivative();
    let lhs = &dp * &w1;
    let rhs = p * &w2;
    let q = &lhs - &rhs;
    let scale = lhs.max_abs().max(rhs.max_abs());
    if q.max_abs() <= tol.gcd * scale {
        return Vec::new();
    }
    real_roots(&q.trim_relative(tol.gcd), 0.0, f64::INFINITY, tol)
        .into_iter()
        .filter(|&t| t > 0.0)
        .collect()
}

/// Limit of `p / w` as `t -> inf`.
fn limit_at_infinity(p: &Poly, w: &Poly) -> f64 {
    let dp = p.degree().unwrap_or(0);
    let dw = w.degree().unwrap_or(0);
    let r = p.leading() / w.leading();
    if p.is_zero() || dp < dw {
        0.0
    } else if dp == dw {
        r
    } else if r > 0.0 {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}

/// Minimizes `p / w` over `[0, inf)`. `w` must be positive there.
///
/// Candidates are `t = 0`, the limit at infinity and the stationary points
/// from [`critical_points`]. Ties keep the earliest candidate, so a constant
/// ratio reports `t = 0`.
pub fn isolate_min_on_halfline(p: &Poly, w: &Poly, tol: &Tolerances) -> Result<HalflineMin> {
    let at_inf = limit_at_infinity(p, w);
    if at_inf == f64::NEG_INFINITY {
        return Err(Error::Unbounded);
    }
    let ratio = |t: f64| p.eval(t) / w.eval(t);
    let mut best = HalflineMin {
        t: 0.0,
        value: ratio(0.0),
    };
    for t in critical_points(p, w, tol) {
        let v = ratio(t);
        if v < best.value {
            best = HalflineMin { t, value: v };
        }
    }
    if at_inf < best.value {
        best = HalflineMin {
            t: f64::INFINITY,
            value: at_inf,
        };
    }
    Ok(best)
}
