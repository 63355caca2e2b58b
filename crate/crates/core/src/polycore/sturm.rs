//! Sturm chains over `f64` with relative coefficient cutoffs.

use super::Poly;
use crate::Tolerances;

/// Divisibility accepted by the approximate gcd: the least-squares residual
/// of the unit-norm `p` against multiples of monic `g` must be tiny on the
/// scale of the quotient.
const DIVIDES_REL: f64 = 1e-7;

fn divides(p: &Poly, g: &Poly) -> bool {
    let g = g.scale(1.0 / g.leading());
    let p = p.unit_norm();
    let (Some(dp), Some(dg)) = (p.degree(), g.degree()) else {
        return false;
    };
    if dg > dp {
        return false;
    }
    let quot = Poly::new(lstsq_quotient(p.coeffs(), g.coeffs(), dp - dg + 1));
    let resid = &p - &(&quot * &g);
    resid.max_abs() <= DIVIDES_REL * 1.0f64.max(quot.max_abs())
}

/// `argmin_q |p - q g|` over `q` with `k` coefficients, by Householder QR
/// of the convolution matrix. Long division is avoided because it amplifies
/// small errors in `g` when `g` has roots outside the unit disk.
fn lstsq_quotient(p: &[f64], g: &[f64], k: usize) -> Vec<f64> {
    let m = p.len();
    // column j holds g shifted down by j rows
    let mut a: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let mut col = vec![0.0; m];
            col[j..j + g.len()].copy_from_slice(g);
            col
        })
        .collect();
    let mut rhs = p.to_vec();
    for j in 0..k {
        let norm = a[j][j..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[j][j] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[j][j..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        let reflect = |col: &mut [f64]| {
            let d: f64 = v.iter().zip(col.iter()).map(|(x, y)| x * y).sum();
            let f = 2.0 * d / vv;
            for (c, x) in col.iter_mut().zip(&v) {
                *c -= f * x;
            }
        };
        for col in a.iter_mut().skip(j) {
            reflect(&mut col[j..]);
        }
        reflect(&mut rhs[j..]);
    }
    let mut q = vec![0.0; k];
    for j in (0..k).rev() {
        let s: f64 = (j + 1..k).map(|i| a[i][j] * q[i]).sum();
        q[j] = if a[j][j] == 0.0 {
            0.0
        } else {
            (rhs[j] - s) / a[j][j]
        };
    }
    q
}

/// Remainders below this (relative to the quotient) make the current divisor
/// a gcd candidate. Euclid loses several digits per step on clustered roots,
/// so this is much looser than the trimming cutoff; [`divides`] is what
/// actually decides.
const CANDIDATE_REL: f64 = 1e-6;

/// Approximate gcd via the Euclidean algorithm on unit-norm
/// polynomials. A remainder counts as zero once it is small compared with
/// the division that produced it and the current divisor really divides
/// both inputs. Coefficients below `rel` times that scale are trimmed.
pub fn approx_gcd(p: &Poly, q: &Poly, rel: f64) -> Poly {
    let mut a = p.unit_norm();
    let mut b = q.unit_norm();
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree() == Some(0) {
            return Poly::constant(1.0);
        }
        let (quot, rem) = a.div_rem(&b);
        let rem = reduce_remainder(rem, 1.0f64.max(quot.max_abs()), CANDIDATE_REL.max(rel), rel);
        let rem = match rem {
            Remainder::Zero | Remainder::Small(_) if divides(p, &b) && divides(q, &b) => return b,
            Remainder::Zero => return Poly::constant(1.0),
            Remainder::Small(r) | Remainder::Regular(r) => r,
        };
        a = b;
        b = rem.unit_norm();
    }
}

enum Remainder {
    Zero,
    /// Below the candidate cutoff; kept, trimmed relative to itself, in case
    /// the divisor turns out not to divide.
    Small(Poly),
    Regular(Poly),
}

fn reduce_remainder(rem: Poly, scale: f64, small: f64, rel: f64) -> Remainder {
    if rem.is_zero() {
        Remainder::Zero
    } else if rem.max_abs() <= small * scale {
        Remainder::Small(rem.trim_relative(rel))
    } else {
        Remainder::Regular(trim_abs(&rem, rel * scale))
    }
}

fn trim_abs(p: &Poly, cut: f64) -> Poly {
    let first = p
        .coeffs()
        .iter()
        .position(|c| c.abs() > cut)
        .unwrap_or(p.coeffs().len());
    Poly::new(p.coeffs()[first..].to_vec())
}

/// Divides out `gcd(p, p')` so every real root becomes simple.
pub fn square_free(p: &Poly, rel: f64) -> Poly {
    let p = p.unit_norm();
    match p.degree() {
        None | Some(0) | Some(1) => return p,
        _ => {}
    }
    let g = approx_gcd(&p, &p.derivative(), rel);
    if g.degree().unwrap_or(0) == 0 {
        return p;
    }
    p.div_rem(&g).0.unit_norm()
}

/// Sturm sequence `p, p', -rem(p, p'), ...` with each member normalized.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<Poly>,
}

impl SturmChain {
    /// `p` should already be square-free; see [`square_free`].
    pub fn new(p: &Poly, rel: f64) -> Self {
        let mut polys = vec![p.unit_norm()];
        let d = p.derivative().unit_norm();
        if !d.is_zero() {
            polys.push(d);
        }
        while polys.len() >= 2 {
            let k = polys.len();
            if polys[k - 1].degree() == Some(0) {
                break;
            }
            let (quot, rem) = polys[k - 2].div_rem(&polys[k - 1]);
            let last = &polys[k - 1];
            // the input is square-free already, so only near-exact
            // cancellation may end the chain early
            let rem = match reduce_remainder(rem, 1.0f64.max(quot.max_abs()), rel, rel) {
                Remainder::Zero => break,
                Remainder::Small(_) if divides(&polys[0], last) && divides(&polys[1], last) => {
                    break
                }
                Remainder::Small(r) | Remainder::Regular(r) => r,
            };
            polys.push((-&rem).unit_norm());
        }
        Self { polys }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Sign variations at `x`; `±inf` use leading-coefficient signs.
    pub fn variations(&self, x: f64) -> usize {
        let mut count = 0;
        let mut last = 0.0f64;
        for p in &self.polys {
            let v = if x == f64::INFINITY {
                p.leading()
            } else if x == f64::NEG_INFINITY {
                let d = p.degree().unwrap_or(0);
                if d % 2 == 0 {
                    p.leading()
                } else {
                    -p.leading()
                }
            } else {
                p.eval(x)
            };
            if v == 0.0 {
                continue;
            }
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = v;
        }
        count
    }

    /// Number of distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: f64, hi: f64) -> usize {
        let vl = self.variations(lo) as isize;
        let vh = self.variations(hi) as isize;
        (vl - vh).max(0) as usize
    }
}

fn nudge(x: f64, tol: f64) -> f64 {
    x + tol * (1.0 + x.abs())
}

/// `q(x)` is indistinguishable from zero given Horner rounding error.
fn at_root(q: &Poly, x: f64) -> bool {
    let bound = q
        .coeffs()
        .iter()
        .fold(0.0, |acc, c| acc * x.abs() + c.abs());
    q.eval(x).abs() <= 8.0 * f64::EPSILON * bound
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
///
/// Square-free reduction is applied first. An endpoint that is an exact root
/// (up to rounding) is nudged upward by `tol.root`, which keeps the
/// half-open convention.
pub fn sturm_count(p: &Poly, lo: f64, hi: f64, tol: &Tolerances) -> usize {
    if p.degree().unwrap_or(0) == 0 || lo >= hi {
        return 0;
    }
    let (p, rho) = balance(p);
    let (lo, hi) = (lo / rho, hi / rho);
    let q = square_free(&p, tol.gcd);
    let chain = SturmChain::new(&q, tol.gcd);
    let lo = if lo.is_finite() && at_root(&q, lo) {
        nudge(lo, tol.root)
    } else {
        lo
    };
    let hi = if hi.is_finite() && at_root(&q, hi) {
        nudge(hi, tol.root)
    } else {
        hi
    };
    chain.count(lo, hi)
}

/// Cauchy bound: every root satisfies `|t| < 1 + max |p_i / p_lead|`.
fn cauchy_bound(p: &Poly) -> f64 {
    let lead = p.leading().abs();
    1.0 + p.coeffs()[1..]
        .iter()
        .fold(0.0f64, |m, c| m.max(c.abs() / lead))
}

/// Distinct real roots of `p` in `(lo, hi]`, ascending, isolated by Sturm
/// bisection and refined to width `tol.root * (1 + |t|)`.
pub fn real_roots(p: &Poly, lo: f64, hi: f64, tol: &Tolerances) -> Vec<f64> {
    if p.degree().unwrap_or(0) == 0 || lo >= hi {
        return Vec::new();
    }
    let (p, rho) = balance(p);
    let (lo, hi) = (lo / rho, hi / rho);
    let mut roots = balanced_roots(&p, lo, hi, tol);
    polish(&p, &mut roots, lo, hi);
    for r in &mut roots {
        *r *= rho;
    }
    roots
}

/// Newton steps on the original polynomial. Roots are isolated on the
/// square-free part, which carries the error of the approximate gcd; a
/// polished value is kept only if it stays close, reduces `|p|` and keeps
/// the ordering.
fn polish(p: &Poly, roots: &mut [f64], lo: f64, hi: f64) {
    for i in 0..roots.len() {
        let r = roots[i];
        let mut x = r;
        for _ in 0..8 {
            let (f, df) = p.eval_with_derivative(x);
            if f == 0.0 || df == 0.0 {
                break;
            }
            let step = f / df;
            x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
                break;
            }
        }
        let left = if i > 0 { 0.5 * (roots[i - 1] + r) } else { lo };
        let right = roots.get(i + 1).map_or(hi, |n| 0.5 * (r + n));
        if x.is_finite()
            && (x - r).abs() <= 1e-6 * (1.0 + r.abs())
            && x > left
            && x <= right
            && p.eval(x).abs() <= p.eval(r).abs()
        {
            roots[i] = x;
        }
    }
}

/// `p(ρt)` with `ρ` a power of two chosen so the lowest nonzero and the
/// leading coefficient have comparable size. Exact up to over/underflow.
fn balance(p: &Poly) -> (Poly, f64) {
    let d = p.degree().unwrap_or(0);
    let c = p.coeffs();
    let Some(k) = c.iter().rposition(|v| *v != 0.0) else {
        return (p.clone(), 1.0);
    };
    if k == 0 {
        return (p.clone(), 1.0);
    }
    let ratio = (c[k] / c[0]).abs();
    let e = (ratio.log2() / k as f64).round().clamp(-60.0, 60.0);
    let rho = 2f64.powi(e as i32);
    if rho == 1.0 || d == 0 {
        return (p.clone(), 1.0);
    }
    (p.compose_scale(rho), rho)
}

fn balanced_roots(p: &Poly, lo: f64, hi: f64, tol: &Tolerances) -> Vec<f64> {
    let q = square_free(p, tol.gcd);
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let bound = cauchy_bound(&q);
    let lo = lo.max(-bound);
    let hi = hi.min(bound);
    if lo >= hi {
        return Vec::new();
    }
    let chain = SturmChain::new(&q, tol.gcd);
    let width = |a: f64, b: f64| tol.root * (1.0 + a.abs().max(b.abs()));

    let mut roots = Vec::new();
    let mut stack = vec![(lo, hi, chain.count(lo, hi))];
    while let Some((a, b, k)) = stack.pop() {
        if k == 0 {
            continue;
        }
        if b - a <= width(a, b) {
            roots.push(0.5 * (a + b));
            continue;
        }
        let (fa, fb) = (q.eval(a), q.eval(b));
        if fb == 0.0 && k == 1 {
            roots.push(b);
            continue;
        }
        if k == 1 && fa != 0.0 && (fa > 0.0) != (fb > 0.0) {
            roots.push(bisect_sign(&q, a, b, fa, tol.root));
            continue;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            roots.push(m);
            continue;
        }
        let kl = chain.count(a, m);
        let kr = chain.count(m, b);
        stack.push((m, b, kr));
        stack.push((a, m, kl));
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn bisect_sign(q: &Poly, mut a: f64, mut b: f64, fa: f64, tol: f64) -> f64 {
    let pos_a = fa > 0.0;
    loop {
        let m = 0.5 * (a + b);
        if b - a <= tol * (1.0 + m.abs()) || m <= a || m >= b {
            return m;
        }
        let fm = q.eval(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == pos_a {
            a = m;
        } else {
            b = m;
        }
    }
}
