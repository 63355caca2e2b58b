//! Polynomial machinery: arithmetic, imaginary-axis decomposition, Sturm
//! root counting, half-line minimization and the bilinear transform.

mod bilinear;
mod exact;
mod minimize;
mod poly;
mod sturm;

pub use bilinear::{bilinear_to_s, Bilinear};
pub use exact::exact_root_count;
pub use minimize::{critical_points, isolate_min_on_halfline, HalflineMin};
pub use poly::Poly;
pub use sturm::{approx_gcd, real_roots, square_free, sturm_count, SturmChain};

use crate::error::{Error, Result};

/// Scales `p` to a monic polynomial.
///
/// Returns the monic polynomial and whether a negation was needed, i.e.
/// whether the leading coefficient was negative.
pub fn normalize_monic(p: &Poly) -> Result<(Poly, bool)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lead = p.leading();
    Ok((p.scale(1.0 / lead), lead < 0.0))
}

/// Even/odd decomposition on the imaginary axis:
/// `p(jω) = re(ω²) + jω·im(ω²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenOddParts {
    pub re: Poly,
    pub im: Poly,
}

pub fn even_odd_split(p: &Poly) -> EvenOddParts {
    let mut re = Vec::new();
    let mut im = Vec::new();
    // ascending: s^k with k = 2m contributes (-1)^m t^m, k = 2m+1 contributes jω (-1)^m t^m
    for k in 0..p.coeffs().len() {
        let c = p.coeff(k);
        let m = k / 2;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            re.push(sign * c);
        } else {
            im.push(sign * c);
        }
    }
    EvenOddParts {
        re: Poly::from_ascending(re),
        im: Poly::from_ascending(im),
    }
}

/// The weight `(1 + t)^k` used to compactify the half-line.
pub fn halfline_weight(k: usize) -> Poly {
    Poly::shifted_power(1.0, k)
}
