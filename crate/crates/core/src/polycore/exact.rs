//! Exact Sturm counts.
//!
//! Every finite `f64` is a dyadic rational, so after scaling by a common
//! power of two a polynomial has integer coefficients and its Sturm sequence
//! can be formed without rounding (primitive pseudo-remainder sequence). This
//! is much slower than the floating-point chain and is only used to settle
//! disagreements between the float count and a verified minimum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, Signed, Zero};

use super::Poly;

/// Integer polynomial, highest degree first, no leading zeros.
type IPoly = Vec<BigInt>;

fn dyadic(x: f64) -> (BigInt, i32) {
    let (mant, exp, sign) = x.integer_decode();
    (BigInt::from(mant) * sign, exp as i32)
}

fn to_integer(p: &Poly) -> IPoly {
    let parts: Vec<(BigInt, i32)> = p.coeffs().iter().map(|&c| dyadic(c)).collect();
    let emin = parts
        .iter()
        .filter(|(m, _)| !m.is_zero())
        .map(|&(_, e)| e)
        .min()
        .unwrap_or(0);
    let coeffs = parts
        .into_iter()
        .map(|(m, e)| m << ((e - emin) as usize))
        .collect();
    primitive(trim(coeffs))
}

fn trim(mut p: IPoly) -> IPoly {
    let first = p.iter().position(|c| !c.is_zero()).unwrap_or(p.len());
    p.drain(..first);
    p
}

fn degree(p: &IPoly) -> usize {
    p.len().saturating_sub(1)
}

/// Divides by the positive content.
fn primitive(p: IPoly) -> IPoly {
    let content = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() || content.is_one() {
        return p;
    }
    p.into_iter().map(|c| c / &content).collect()
}

fn derivative(p: &IPoly) -> IPoly {
    let d = degree(p);
    trim(
        p[..d]
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(d - i))
            .collect(),
    )
}

/// `lc(q)^(deg p - deg q + 1) p = quot q + prem`; returns `(quot, prem)`.
fn pseudo_div(p: &IPoly, q: &IPoly) -> (IPoly, IPoly) {
    let (dp, dq) = (degree(p), degree(q));
    if p.is_empty() || dp < dq {
        return (Vec::new(), p.clone());
    }
    let lc = &q[0];
    let mut r = p.clone();
    let mut quot = vec![BigInt::zero(); dp - dq + 1];
    for k in 0..=dp - dq {
        for c in quot.iter_mut() {
            *c *= lc;
        }
        let lead = r[k].clone();
        quot[k] = lead.clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, qc) in q.iter().enumerate() {
            r[k + j] -= &lead * qc;
        }
    }
    (quot, trim(r[dp - dq + 1..].to_vec()))
}

fn gcd(p: &IPoly, q: &IPoly) -> IPoly {
    let (mut a, mut b) = (primitive(p.clone()), primitive(q.clone()));
    while !b.is_empty() {
        let (_, r) = pseudo_div(&a, &b);
        a = b;
        b = primitive(r);
    }
    a
}

/// Exact quotient of `p` by a known divisor `g`.
fn divide_exact(p: &IPoly, g: &IPoly) -> IPoly {
    let (quot, rem) = pseudo_div(p, g);
    debug_assert!(rem.is_empty());
    primitive(quot)
}

fn sturm_sequence(p: &IPoly) -> Vec<IPoly> {
    let mut seq = vec![p.clone()];
    let d = derivative(p);
    if d.is_empty() {
        return seq;
    }
    seq.push(primitive(d));
    loop {
        let k = seq.len();
        let (a, b) = (&seq[k - 2], &seq[k - 1]);
        let (_, prem) = pseudo_div(a, b);
        if prem.is_empty() {
            break;
        }
        // rem = prem / lc^m; negate, and flip again when lc^m < 0
        let m = degree(a) - degree(b) + 1;
        let flip = b[0].is_negative() && m % 2 == 1;
        let next: IPoly = prem
            .into_iter()
            .map(|c| if flip { c } else { -c })
            .collect();
        seq.push(primitive(next));
    }
    seq
}

/// Sign of `p(x)` for finite `x`.
fn sign_at(p: &IPoly, x: f64) -> i32 {
    if x == 0.0 {
        return sign(&p[degree(p)]);
    }
    let (m, e) = dyadic(x);
    let d = degree(p);
    // p(m 2^e) scaled by 2^(-e d) when e < 0 stays integral
    let value = if e >= 0 {
        let x = m << (e as usize);
        p.iter().fold(BigInt::zero(), |acc, c| acc * &x + c)
    } else {
        let s = (-e) as usize;
        let mut acc = BigInt::zero();
        let mut mpow = BigInt::one();
        for (i, c) in p.iter().rev().enumerate() {
            acc += (c * &mpow) << (s * (d - i));
            mpow *= &m;
        }
        acc
    };
    sign(&value)
}

fn sign(v: &BigInt) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

fn sign_at_infinity(p: &IPoly, positive: bool) -> i32 {
    let s = sign(&p[0]);
    if positive || degree(p) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[IPoly], x: f64) -> usize {
    if x == f64::INFINITY {
        variations(seq.iter().map(|p| sign_at_infinity(p, true)))
    } else if x == f64::NEG_INFINITY {
        variations(seq.iter().map(|p| sign_at_infinity(p, false)))
    } else {
        variations(seq.iter().map(|p| sign_at(p, x)))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`, computed exactly for
/// the polynomial the `f64` coefficients represent.
pub fn exact_root_count(p: &Poly, lo: f64, hi: f64) -> usize {
    if p.degree().unwrap_or(0) == 0 || lo >= hi || lo.is_nan() || hi.is_nan() {
        return 0;
    }
    let ip = to_integer(p);
    let g = gcd(&ip, &derivative(&ip));
    let q = if degree(&g) > 0 {
        divide_exact(&ip, &g)
    } else {
        ip
    };
    let seq = sturm_sequence(&q);
    // zero signs are skipped, so a root at `hi` is counted and one at `lo` is not
    variations_at(&seq, lo).saturating_sub(variations_at(&seq, hi))
}
