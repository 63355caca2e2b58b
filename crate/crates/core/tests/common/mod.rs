//! Generators and independent oracles shared by the integration tests.
//!
//! Nothing here calls into the code paths it is used to check: complex
//! evaluation replaces the even/odd split, Aberth iteration replaces Routh
//! and Sturm, and dense grids replace the half-line minimizer.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sprseg::Poly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Monic polynomial of degree `n` built from random stable factors
/// `s + r` and `s^2 + 2ζω s + ω^2` with `r, ω ∈ [lo, hi]`.
pub fn random_stable(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Poly {
    let mut p = Poly::constant(1.0);
    let mut left = n;
    while left > 0 {
        if left >= 2 && rng.gen_bool(0.6) {
            let w = log_uniform(rng, lo, hi);
            let zeta = rng.gen_range(0.1..1.0);
            p = &p * &Poly::new(vec![1.0, 2.0 * zeta * w, w * w]);
            left -= 2;
        } else {
            p = &p * &Poly::linear(log_uniform(rng, lo, hi));
            left -= 1;
        }
    }
    p
}

/// Monic polynomial with every non-leading coefficient log-uniform in `[lo, hi]`.
pub fn random_positive_coeffs(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Poly {
    let mut c = vec![1.0];
    c.extend((0..n).map(|_| log_uniform(rng, lo, hi)));
    Poly::new(c)
}

pub fn eval_c(p: &Poly, z: Complex64) -> Complex64 {
    p.coeffs()
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn eval_jw(p: &Poly, w: f64) -> Complex64 {
    eval_c(p, Complex64::new(0.0, w))
}

/// `Re[c(jω) / d(jω)]`
pub fn re_ratio(c: &Poly, d: &Poly, w: f64) -> f64 {
    (eval_jw(c, w) / eval_jw(d, w)).re
}

/// All complex roots by Aberth–Ehrlich iteration.
pub fn roots(p: &Poly) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lead = p.leading();
    let monic: Vec<f64> = p.coeffs().iter().map(|c| c / lead).collect();
    let monic = Poly::new(monic);
    let dp = monic.derivative();
    let radius = 1.0
        + monic.coeffs()[1..]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
    let radius = radius.min(monic.coeff(0).abs().powf(1.0 / n as f64).max(1e-3) * 2.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let f = eval_c(&monic, z[i]);
            let df = eval_c(&dp, z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

pub fn max_real_part(p: &Poly) -> f64 {
    roots(p).iter().fold(f64::NEG_INFINITY, |m, z| m.max(z.re))
}

pub fn segment_point(a: &Poly, b: &Poly, lambda: f64) -> Poly {
    &a.scale(1.0 - lambda) + &b.scale(lambda)
}

/// `max_λ max Re(root)` over `k` evenly spaced λ.
pub fn segment_abscissa(a: &Poly, b: &Poly, k: usize) -> f64 {
    (0..k)
        .map(|i| max_real_part(&segment_point(a, b, i as f64 / (k - 1) as f64)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Schur–Cohn recursion: true iff every root lies in the open unit disk.
pub fn schur_stable(p: &Poly) -> bool {
    let mut c: Vec<f64> = p.coeffs().iter().rev().copied().collect();
    while c.len() > 1 {
        let m = c.len() - 1;
        let (c0, cm) = (c[0], c[m]);
        if c0.abs() >= cm.abs() {
            return false;
        }
        c = (0..m).map(|k| cm * c[k + 1] - c0 * c[m - 1 - k]).collect();
    }
    true
}

/// Random monic polynomial with all roots in `|z| <= r_max`.
pub fn random_schur(rng: &mut ChaCha8Rng, n: usize, r_max: f64) -> Poly {
    let mut p = Poly::constant(1.0);
    let mut left = n;
    while left > 0 {
        if left >= 2 && rng.gen_bool(0.5) {
            let r = rng.gen_range(0.05..r_max);
            let th = rng.gen_range(0.1..std::f64::consts::PI - 0.1);
            p = &p * &Poly::new(vec![1.0, -2.0 * r * th.cos(), r * r]);
            left -= 2;
        } else {
            p = &p * &Poly::linear(-rng.gen_range(-r_max..r_max));
            left -= 1;
        }
    }
    p
}

/// Minimum of `Re[c/d]` over `k` log-spaced ω in `[lo, hi]` plus ω = 0.
pub fn grid_min_re_ratio(c: &Poly, d: &Poly, k: usize, lo: f64, hi: f64) -> f64 {
    let mut m = re_ratio(c, d, 0.0);
    for i in 0..k {
        let w = lo * (hi / lo).powf(i as f64 / (k - 1) as f64);
        m = m.min(re_ratio(c, d, w));
    }
    m
}

pub fn poly(c: &[f64]) -> Poly {
    Poly::new(c.to_vec())
}

/// Nonnegative real roots of `q2 z^2 + q1 z + q0` (`q2 = 0` allowed).
pub fn nonneg_quadratic_roots(q2: f64, q1: f64, q0: f64) -> Vec<f64> {
    let scale = q2.abs().max(q1.abs()).max(q0.abs());
    let roots = if q2.abs() <= 1e-14 * scale {
        if q1 == 0.0 {
            Vec::new()
        } else {
            vec![-q0 / q1]
        }
    } else {
        let disc = q1 * q1 - 4.0 * q2 * q0;
        if disc < 0.0 {
            return Vec::new();
        }
        // stable form: avoid cancellation in the smaller root
        let s = -0.5 * (q1 + q1.signum() * disc.sqrt());
        if s == 0.0 {
            vec![0.0]
        } else {
            vec![s / q2, q0 / s]
        }
    };
    roots.into_iter().filter(|z| *z >= 0.0).collect()
}

/// `a_1..a_n` of a monic polynomial (index 0 is `a_1`).
pub fn tail(a: &Poly) -> Vec<f64> {
    a.coeffs()[1..].to_vec()
}

/// n = 3: the `x_2` values on `(a_2x_1 − a_1x_2 − a_3)^2 = 4(a_1 − x_1) a_3 x_2`.
pub fn ellipse3_locus(a: &Poly, x1: f64) -> Vec<f64> {
    let t = tail(a);
    let (a1, a2, a3) = (t[0], t[1], t[2]);
    let u = a2 * x1 - a3;
    let k = (a1 - x1) * a3;
    nonneg_quadratic_roots(a1 * a1, -(2.0 * a1 * u + 4.0 * k), u * u)
}

/// n = 4, first system on `x_3 = 0`: the `x_2` values on
/// `(a_2x_1 − a_1x_2 − a_3)^2 = 4(a_1 − x_1)(a_3x_2 − a_4x_1)`.
pub fn ellipse4_first(a: &Poly, x1: f64) -> Vec<f64> {
    let t = tail(a);
    let (a1, a2, a3, a4) = (t[0], t[1], t[2], t[3]);
    let u = a2 * x1 - a3;
    let k = a1 - x1;
    nonneg_quadratic_roots(
        a1 * a1,
        -(2.0 * a1 * u + 4.0 * k * a3),
        u * u + 4.0 * k * a4 * x1,
    )
}

/// n = 4, second system on `x_1 = a_1`: the `x_3` values on
/// `(a_3x_2 − a_2x_3 − a_4a_1)^2 = 4(a_2a_1 + x_3 − a_1x_2 − a_3) a_4 x_3`.
pub fn ellipse4_second(a: &Poly, x2: f64) -> Vec<f64> {
    let t = tail(a);
    let (a1, a2, a3, a4) = (t[0], t[1], t[2], t[3]);
    let v = a3 * x2 - a4 * a1;
    let w = a1 * a2 - a1 * x2 - a3;
    nonneg_quadratic_roots(a2 * a2 - 4.0 * a4, -(2.0 * a2 * v + 4.0 * a4 * w), v * v)
}

/// Coefficients (highest power of `t` first) of `N(t)` with
/// `N(ω^2) = Re[c(jω) conj(d(jω))]`, read off `P(s) = c(s) d(-s)`:
/// on the axis only even powers are real, so `N_k = (-1)^k P_{2k}`.
pub fn numerator_by_reflection(c: &Poly, d: &Poly) -> Vec<f64> {
    let reflected: Vec<f64> = {
        let deg = d.degree().unwrap_or(0);
        d.coeffs()
            .iter()
            .enumerate()
            .map(|(i, v)| if (deg - i) % 2 == 1 { -v } else { *v })
            .collect()
    };
    let p = c * &Poly::new(reflected);
    let asc: Vec<f64> = p.coeffs().iter().rev().copied().collect();
    let mut n: Vec<f64> = asc
        .iter()
        .step_by(2)
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { -v } else { *v })
        .collect();
    n.reverse();
    n
}
