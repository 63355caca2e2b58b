//! Cutting-plane search for a point in the common positivity region.
//!
//! For a fixed `t >= 0` the weighted numerator value
//! `g(x, t) / (1 + t)^{n-1}` is affine in `x`, so requiring it to exceed a
//! margin `μ` at finitely many `t` is a linear constraint. The loop solves
//! `max μ` over the current cut set, computes the true minima of both
//! numerators at the LP point and adds the minimizing `t` values as new cuts
//! until the verified margin is good enough.

use super::simplex::{solve, DenseLp};
use crate::error::{Error, Result};
use crate::polycore::{halfline_weight, isolate_min_on_halfline, Poly};
use crate::sprcheck::{AffineCoefficientMap, CandidatePoint};
use crate::Tolerances;

const GRID_POINTS: usize = 16;
const MAX_BOX_DOUBLINGS: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    A,
    B,
}

/// One semi-infinite constraint sampled at `t` (`inf` allowed).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cut {
    pub endpoint: Endpoint,
    pub t: f64,
}

/// Working state of the cutting-plane loop.
#[derive(Clone, Debug)]
pub struct FeasibilityProblem {
    n: usize,
    map_a: AffineCoefficientMap,
    map_b: AffineCoefficientMap,
    pub cuts: Vec<Cut>,
    pub x_max: f64,
}

/// A verified interior point.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonPoint {
    pub x: CandidatePoint,
    /// `min` of the two weighted numerator minima at `x`.
    pub margin: f64,
    /// Optimal value of the last LP relaxation. It bounds the margin in the
    /// coordinates the search ran in, which differ from the reported ones
    /// when frequency balancing was applied.
    pub lp_bound: f64,
    pub iterations: usize,
}

impl FeasibilityProblem {
    pub fn new(a: &Poly, b: &Poly, x_max: f64) -> Result<Self> {
        let n = a.degree().ok_or(Error::ZeroPolynomial)?;
        let map_a = AffineCoefficientMap::new(a)?;
        let map_b = AffineCoefficientMap::new(b)?;
        let freq = (a.coeff(0).powf(1.0 / n as f64) * b.coeff(0).powf(1.0 / n as f64)).sqrt();
        let mut cuts = Vec::new();
        for endpoint in [Endpoint::A, Endpoint::B] {
            cuts.push(Cut { endpoint, t: 0.0 });
            cuts.push(Cut {
                endpoint,
                t: f64::INFINITY,
            });
            for k in 0..GRID_POINTS {
                let e = -2.0 + 4.0 * k as f64 / (GRID_POINTS - 1) as f64;
                let omega = freq * 10f64.powf(e);
                cuts.push(Cut {
                    endpoint,
                    t: omega * omega,
                });
            }
        }
        Ok(Self {
            n,
            map_a,
            map_b,
            cuts,
            x_max,
        })
    }

    fn map(&self, e: Endpoint) -> &AffineCoefficientMap {
        match e {
            Endpoint::A => &self.map_a,
            Endpoint::B => &self.map_b,
        }
    }

    /// `(constant, coefficients)` of `g(x, t) / (1 + t)^{n-1}`.
    fn weighted_row(&self, cut: &Cut) -> (f64, Vec<f64>) {
        let n = self.n;
        let (u, v) = if cut.t.is_infinite() {
            (1.0, 0.0)
        } else {
            (cut.t / (1.0 + cut.t), 1.0 / (1.0 + cut.t))
        };
        let map = self.map(cut.endpoint);
        let mut constant = 0.0;
        let mut coef = vec![0.0; n - 1];
        for l in 1..=n {
            let w = u.powi((n - l) as i32) * v.powi((l - 1) as i32);
            if w == 0.0 {
                continue;
            }
            constant += w * map.constant[l - 1];
            for (c, m) in coef.iter_mut().zip(&map.linear[l - 1]) {
                *c += w * m;
            }
        }
        (constant, coef)
    }

    /// Solves the relaxation; returns `(x, μ)`.
    fn solve_relaxation(&self) -> Result<(Vec<f64>, f64)> {
        let dim = self.n - 1;
        let rows: Vec<(f64, Vec<f64>)> = self.cuts.iter().map(|c| self.weighted_row(c)).collect();
        // μ = ν - shift with ν >= 0; shift keeps every right-hand side >= 0 at x = 0.
        let shift = rows.iter().fold(0.0f64, |m, (c, _)| m.max(-c)) + 1.0;
        let mut objective = vec![0.0; dim + 1];
        objective[dim] = 1.0;
        let mut lp = DenseLp::new(objective);
        for (constant, coef) in &rows {
            let scale = coef.iter().fold(1.0f64, |m, c| m.max(c.abs()));
            let mut row: Vec<f64> = coef.iter().map(|c| -c / scale).collect();
            row.push(1.0 / scale);
            lp.push_row(row, (constant + shift) / scale);
        }
        for i in 0..dim {
            let mut row = vec![0.0; dim + 1];
            row[i] = 1.0;
            lp.push_row(row, self.x_max);
        }
        let sol = solve(&lp)?;
        Ok((sol.y[..dim].to_vec(), sol.y[dim] - shift))
    }

    pub fn numerator(&self, e: Endpoint, x: &[f64]) -> Poly {
        Poly::new(self.map(e).eval(x))
    }

    fn has_cut(&self, cut: &Cut) -> bool {
        self.cuts.iter().any(|c| {
            c.endpoint == cut.endpoint
                && (c.t == cut.t || (c.t - cut.t).abs() <= 1e-9 * (1.0 + cut.t))
        })
    }
}

/// Weighted minimum of `g` over `[0, inf)` with weight `(1 + t)^{n-1}`.
fn weighted_min(g: &Poly, n: usize, tol: &Tolerances) -> (f64, f64) {
    match isolate_min_on_halfline(g, &halfline_weight(n - 1), tol) {
        Ok(m) => (m.value, m.t),
        // deg g > n - 1 with negative lead cannot happen for the linear family
        Err(_) => (f64::NEG_INFINITY, f64::INFINITY),
    }
}

fn run_cuts(
    problem: &mut FeasibilityProblem,
    eta: f64,
    max_iters: usize,
    tol: &Tolerances,
) -> Result<CommonPoint> {
    let n = problem.n;
    let mut best = f64::NEG_INFINITY;
    for iteration in 0..=max_iters {
        let (x, mu) = problem.solve_relaxation()?;
        if mu <= tol.pos {
            return Err(Error::IterationLimit {
                iterations: iteration,
                best_margin: best.max(mu),
            });
        }
        let (ma, ta) = weighted_min(&problem.numerator(Endpoint::A, &x), n, tol);
        let (mb, tb) = weighted_min(&problem.numerator(Endpoint::B, &x), n, tol);
        let margin = ma.min(mb);
        best = best.max(margin);
        let accept = margin > tol.pos && margin >= eta.min(0.5 * mu);
        let done = |iterations| CommonPoint {
            x: CandidatePoint::new(x.clone()),
            margin,
            lp_bound: mu,
            iterations,
        };
        if accept {
            return Ok(done(iteration));
        }
        let mut added = false;
        for (endpoint, m, t) in [(Endpoint::A, ma, ta), (Endpoint::B, mb, tb)] {
            let cut = Cut { endpoint, t };
            if m < 0.5 * mu && !problem.has_cut(&cut) {
                problem.cuts.push(cut);
                added = true;
            }
        }
        if !added {
            if margin > tol.pos {
                return Ok(done(iteration));
            }
            break;
        }
    }
    Err(Error::IterationLimit {
        iterations: max_iters,
        best_margin: best,
    })
}

/// Finds `x` with both numerators strictly positive on `[0, inf)`.
///
/// The search first runs on the frequency-balanced pair `a(σs)/σ^n`,
/// `b(σs)/σ^n` with `σ = (a_n b_n)^{1/(2n)}`; positivity of `Re[c/a]` is
/// unchanged by `s -> σs`, and the point is mapped back with
/// `x_i -> σ^i x_i`. Margins are always reported in the original
/// coordinates, and if the mapped point misses `η` there the unbalanced
/// problem is tried as well. The box `0 <= x_i <= X` starts at
/// `X = 10 max(n, max |coeff|)` and is doubled on failure, at most ten times.
pub fn find_common_point(
    a: &Poly,
    b: &Poly,
    eta: f64,
    max_iters: usize,
    tol: &Tolerances,
) -> Result<CommonPoint> {
    let n = a.degree().ok_or(Error::ZeroPolynomial)?;
    let sigma = balancing_scale(a, b, n);
    let mut best: Option<CommonPoint> = None;
    let mut last_err = None;
    let scales = if sigma == 1.0 {
        vec![1.0]
    } else {
        vec![sigma, 1.0]
    };
    for s in scales {
        match search_box(a, b, s, n, eta, max_iters, tol) {
            Ok(p) => {
                if p.margin >= eta {
                    return Ok(p);
                }
                if best.as_ref().is_none_or(|b| p.margin > b.margin) {
                    best = Some(p);
                }
            }
            Err(e @ Error::IterationLimit { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    match best {
        Some(p) if p.margin > tol.pos => Ok(p),
        Some(p) => Err(Error::IterationLimit {
            iterations: p.iterations,
            best_margin: p.margin,
        }),
        None => Err(last_err.expect("at least one scale tried")),
    }
}

fn search_box(
    a: &Poly,
    b: &Poly,
    sigma: f64,
    n: usize,
    eta: f64,
    max_iters: usize,
    tol: &Tolerances,
) -> Result<CommonPoint> {
    let (sa, sb) = (balance(a, sigma, n), balance(b, sigma, n));
    let coeff_scale = sa
        .coeffs()
        .iter()
        .chain(sb.coeffs())
        .fold(n as f64, |m, c| m.max(c.abs()));
    let mut last_err = Error::IterationLimit {
        iterations: 0,
        best_margin: f64::NEG_INFINITY,
    };
    for k in 0..=MAX_BOX_DOUBLINGS {
        let x_max = 10.0 * coeff_scale * 2f64.powi(k as i32);
        let mut problem = FeasibilityProblem::new(&sa, &sb, x_max)?;
        match run_cuts(&mut problem, eta, max_iters, tol) {
            Ok(point) => return unbalance(point, a, b, sigma, n, tol),
            Err(e @ Error::IterationLimit { .. }) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

fn balancing_scale(a: &Poly, b: &Poly, n: usize) -> f64 {
    let s = (a.coeff(0) * b.coeff(0)).abs().powf(0.5 / n as f64);
    if s.is_finite() && s > 0.0 {
        s
    } else {
        1.0
    }
}

/// `p(σs) / σ^n`, monic when `p` is.
fn balance(p: &Poly, sigma: f64, n: usize) -> Poly {
    p.compose_scale(sigma).scale(sigma.powi(-(n as i32)))
}

fn unbalance(
    point: CommonPoint,
    a: &Poly,
    b: &Poly,
    sigma: f64,
    n: usize,
    tol: &Tolerances,
) -> Result<CommonPoint> {
    if sigma == 1.0 {
        return Ok(point);
    }
    let x: Vec<f64> = point
        .x
        .x
        .iter()
        .enumerate()
        .map(|(i, v)| v * sigma.powi(i as i32 + 1))
        .collect();
    let problem = FeasibilityProblem::new(a, b, f64::INFINITY)?;
    let (ma, _) = weighted_min(&problem.numerator(Endpoint::A, &x), n, tol);
    let (mb, _) = weighted_min(&problem.numerator(Endpoint::B, &x), n, tol);
    Ok(CommonPoint {
        x: CandidatePoint::new(x),
        margin: ma.min(mb),
        ..point
    })
}
