//! Strict positive realness checks.
//!
//! `f = p / q` is SPR when (i) `deg p = deg q`, (ii) `q` is Hurwitz and
//! (iii) `Re f(jω) > 0` for every real ω. Condition (iii) is decided on the
//! numerator `N(t) = Re[p(jω) conj(q(jω))]`, `t = ω²`, which has the same sign
//! as `Re f(jω)`. The limit ω → ∞ is covered by requiring the leading
//! coefficient of `N` to clear the positivity floor as well.

use crate::error::{Error, Result};
use crate::polycore::{
    even_odd_split, exact_root_count, halfline_weight, isolate_min_on_halfline, real_roots,
    sturm_count, Poly,
};
use crate::stability::hurwitz_test;
use crate::Tolerances;

/// Parameters `(x_1, ..., x_{n-1})` of the monic candidate
/// `s^{n-1} + x_1 s^{n-2} + ... + x_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidatePoint {
    pub x: Vec<f64>,
}

impl CandidatePoint {
    pub fn new(x: Vec<f64>) -> Self {
        Self { x }
    }

    /// Degree of the denominators this point is paired with.
    pub fn n(&self) -> usize {
        self.x.len() + 1
    }

    pub fn candidate(&self) -> Poly {
        let mut c = Vec::with_capacity(self.x.len() + 1);
        c.push(1.0);
        c.extend_from_slice(&self.x);
        Poly::new(c)
    }

    /// `x_i` with `x_0 = 1` and zero outside `0..=n-1`.
    fn padded(&self, i: isize) -> f64 {
        match i {
            0 => 1.0,
            i if i > 0 && (i as usize) <= self.x.len() => self.x[i as usize - 1],
            _ => 0.0,
        }
    }
}

fn monic_degree(a: &Poly) -> Result<usize> {
    let n = a.degree().ok_or(Error::ZeroPolynomial)?;
    if (a.leading() - 1.0).abs() > 1e-12 {
        return Err(Error::NotMonic(a.leading()));
    }
    Ok(n)
}

fn padded_coeff(a: &Poly, n: usize, j: isize) -> f64 {
    if j < 0 || j as usize > n {
        0.0
    } else {
        a.coeffs()[j as usize]
    }
}

fn alternating(k: isize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `c_l = Σ_{j=0}^{n} (-1)^{l+j} a_j x_{2l-j-1}`, `l = 1..n`, with `a_0 = 1`,
/// `x_0 = 1` and out-of-range entries zero.
///
/// These are the coefficients (highest first) of
/// `Re[candidate(jω) conj(a(jω))]` as a polynomial in `t = ω²`.
pub fn coefficient_map(a: &Poly, x: &CandidatePoint) -> Result<Vec<f64>> {
    let n = monic_degree(a)?;
    if n != x.n() {
        return Err(Error::DimensionMismatch {
            degree: n,
            n: x.n(),
        });
    }
    Ok((1..=n as isize)
        .map(|l| {
            (0..=n as isize)
                .map(|j| alternating(l + j) * padded_coeff(a, n, j) * x.padded(2 * l - j - 1))
                .sum()
        })
        .collect())
}

/// The coefficient map split into `c(x) = constant + linear · x`.
///
/// `linear[l][i]` multiplies `x_{i+1}` in `c_{l+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineCoefficientMap {
    pub constant: Vec<f64>,
    pub linear: Vec<Vec<f64>>,
}

impl AffineCoefficientMap {
    pub fn new(a: &Poly) -> Result<Self> {
        let n = monic_degree(a)?;
        let mut constant = vec![0.0; n];
        let mut linear = vec![vec![0.0; n.saturating_sub(1)]; n];
        for l in 1..=n as isize {
            for j in 0..=n as isize {
                let idx = 2 * l - j - 1;
                let v = alternating(l + j) * padded_coeff(a, n, j);
                let row = (l - 1) as usize;
                if idx == 0 {
                    constant[row] += v;
                } else if idx >= 1 && (idx as usize) < n {
                    linear[row][idx as usize - 1] += v;
                }
            }
        }
        Ok(Self { constant, linear })
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.constant
            .iter()
            .zip(&self.linear)
            .map(|(c, row)| c + row.iter().zip(x).map(|(m, xi)| m * xi).sum::<f64>())
            .collect()
    }
}

/// `N(t)` with `N(ω²) = Re[p(jω) conj(q(jω))]`, i.e. `R_p R_q + t I_p I_q`.
pub fn spr_numerator(p: &Poly, q: &Poly) -> Poly {
    let pp = even_odd_split(p);
    let pq = even_odd_split(q);
    let t = Poly::new(vec![1.0, 0.0]);
    &(&pp.re * &pq.re) + &(&t * &(&pp.im * &pq.im))
}

/// Strict positivity of a polynomial on `[0, inf)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositivityReport {
    pub positive: bool,
    /// `min g(t) / (1 + t)^deg g` over `[0, inf)`.
    pub margin: f64,
    /// Where the margin is attained (`inf` for the limit at infinity).
    pub t_witness: Option<f64>,
}

pub fn positivity_on_halfline(g: &Poly, tol: &Tolerances) -> PositivityReport {
    let d = match g.degree() {
        None => {
            return PositivityReport {
                positive: false,
                margin: 0.0,
                t_witness: Some(0.0),
            }
        }
        Some(d) => d,
    };
    let w = halfline_weight(d);
    let mut best = isolate_min_on_halfline(g, &w, tol).expect("equal degrees are bounded");
    let mut crossings = sturm_count(g, 0.0, f64::INFINITY, tol);
    if crossings > 0 && best.value > tol.pos {
        // a sign change with a positive minimum: one of the two float
        // computations is wrong, so recount exactly
        crossings = exact_root_count(g, 0.0, f64::INFINITY);
    }
    if crossings > 0 {
        for t in real_roots(g, 0.0, f64::INFINITY, tol) {
            let v = g.eval(t) / w.eval(t);
            if v < best.value {
                best.t = t;
                best.value = v;
            }
        }
    }
    PositivityReport {
        positive: crossings == 0 && best.value > tol.pos,
        margin: best.value,
        t_witness: Some(best.t),
    }
}

/// Condition (iii) only: `Re[c(jω) / d(jω)] > 0` for all ω.
pub fn verify_positivity(c: &Poly, d: &Poly, tol: &Tolerances) -> PositivityReport {
    positivity_on_halfline(&spr_numerator(c, d), tol)
}

/// Which SPR condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SprCondition {
    /// (i) numerator and denominator degrees differ
    Degree,
    /// (ii) denominator not Hurwitz
    Analytic,
    /// (iii) real part not strictly positive on the axis
    Positivity,
}

impl SprCondition {
    pub fn index(self) -> u8 {
        match self {
            Self::Degree => 1,
            Self::Analytic => 2,
            Self::Positivity => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SprReport {
    pub spr: bool,
    /// First failing condition in the order (i), (ii), (iii).
    pub failed: Option<SprCondition>,
    pub positivity: PositivityReport,
}

pub fn verify_spr(c: &Poly, d: &Poly, tol: &Tolerances) -> SprReport {
    let positivity = verify_positivity(c, d, tol);
    let failed = if c.degree() != d.degree() || c.is_zero() {
        Some(SprCondition::Degree)
    } else if !hurwitz_test(d, tol) {
        Some(SprCondition::Analytic)
    } else if !positivity.positive {
        Some(SprCondition::Positivity)
    } else {
        None
    };
    SprReport {
        spr: failed.is_none(),
        failed,
        positivity,
    }
}

/// `min N(t) / (1 + t)^n` over `[0, inf)` for `c / d` with `n = deg d`.
pub fn spr_margin(c: &Poly, d: &Poly, tol: &Tolerances) -> Result<f64> {
    let n = d.degree().ok_or(Error::ZeroPolynomial)?;
    if c.degree() != Some(n) {
        return Err(Error::NotApplicable(1));
    }
    if !hurwitz_test(d, tol) {
        return Err(Error::NotApplicable(2));
    }
    let numerator = spr_numerator(c, d);
    Ok(isolate_min_on_halfline(&numerator, &halfline_weight(n), tol)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn p(c: &[f64]) -> Poly {
        Poly::new(c.to_vec())
    }

    #[test]
    fn coefficient_map_n3() {
        let a = p(&[1.0, 3.0, 3.0, 1.0]);
        let c = coefficient_map(&a, &CandidatePoint::new(vec![1.0, 1.0])).unwrap();
        assert_eq!(c, vec![2.0, -1.0, 1.0]);
        let c = coefficient_map(&a, &CandidatePoint::new(vec![3.0, 0.0])).unwrap();
        assert_eq!(c[0], 0.0);
        assert_eq!(c[2], 0.0);
    }

    #[test]
    fn coefficient_map_dimension_mismatch() {
        let a = p(&[1.0, 3.0, 3.0, 1.0]);
        assert_eq!(
            coefficient_map(&a, &CandidatePoint::new(vec![1.0])),
            Err(Error::DimensionMismatch { degree: 3, n: 2 })
        );
    }

    #[test]
    fn affine_map_matches_direct() {
        let a = p(&[1.0, 2.5, 3.0, 1.5, 0.25]);
        let x = CandidatePoint::new(vec![0.7, 1.3, 0.4]);
        let m = AffineCoefficientMap::new(&a).unwrap();
        let direct = coefficient_map(&a, &x).unwrap();
        for (u, v) in m.eval(&x.x).iter().zip(&direct) {
            assert!((u - v).abs() < 1e-14);
        }
    }

    #[test]
    fn numerator_examples() {
        let q = p(&[1.0, 1.0]);
        assert_eq!(spr_numerator(&q, &q).coeffs(), &[1.0, 1.0]);
        let n = spr_numerator(&p(&[1.0]), &p(&[1.0, 1.0, 1.0]));
        assert_eq!(n.coeffs(), &[-1.0, 1.0]);
        for w in [0.0f64, 1.0, 2.0] {
            assert_eq!(n.eval(w * w), 1.0 - w * w);
        }
        let a = p(&[1.0, 3.0, 3.0, 1.0]);
        let x = CandidatePoint::new(vec![1.0, 1.0]);
        assert_eq!(
            spr_numerator(&x.candidate(), &a).coeffs(),
            coefficient_map(&a, &x).unwrap().as_slice()
        );
    }

    #[test]
    fn halfline_examples() {
        let r = positivity_on_halfline(&p(&[1.0, 1.0]), &tol());
        assert!(r.positive);
        assert_eq!(r.margin, 1.0);

        let r = positivity_on_halfline(&p(&[1.0, -2.0, 1.0]), &tol());
        assert!(!r.positive);
        assert!(r.margin.abs() < 1e-12);
        assert!((r.t_witness.unwrap() - 1.0).abs() < 1e-6);

        let r = positivity_on_halfline(&p(&[1.0, -1.0]), &tol());
        assert!(!r.positive);
        assert_eq!(r.t_witness, Some(0.0));
        assert_eq!(r.margin, -1.0);
    }

    #[test]
    fn verify_positivity_examples() {
        let d = p(&[1.0, 3.0, 3.0, 1.0]);
        assert!(verify_positivity(&d, &d, &tol()).positive);
        assert!(verify_positivity(&p(&[1.0, 2.0, 1.0]), &d, &tol()).positive);
        assert!(!verify_positivity(&p(&[1.0]), &p(&[1.0, 1.0, 1.0]), &tol()).positive);
    }

    #[test]
    fn verify_spr_examples() {
        let d = p(&[1.0, 3.0, 3.0, 1.0]);
        assert!(verify_spr(&d, &d, &tol()).spr);

        let r = verify_spr(&p(&[1.0, 2.0, 1.0]), &d, &tol());
        assert!(!r.spr);
        assert_eq!(r.failed, Some(SprCondition::Degree));
        assert!(r.positivity.positive);

        let r = verify_spr(&d, &p(&[1.0, 1.0, 1.0, 1.0]), &tol());
        assert_eq!(r.failed.map(SprCondition::index), Some(2));
    }

    #[test]
    fn margin_examples() {
        let d = p(&[1.0, 1.0]);
        assert_eq!(spr_margin(&d, &d, &tol()), Ok(1.0));
        let d = p(&[1.0, 3.0, 3.0, 1.0]);
        let m = spr_margin(&d, &d, &tol()).unwrap();
        assert!(m > 0.0);
        assert_eq!(
            spr_margin(&p(&[1.0, 1.0]), &d, &tol()),
            Err(Error::NotApplicable(1))
        );
        assert_eq!(
            spr_margin(&d, &p(&[1.0, 1.0, 1.0, 1.0]), &tol()),
            Err(Error::NotApplicable(2))
        );
    }
}
