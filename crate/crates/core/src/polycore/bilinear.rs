use super::Poly;
use crate::error::{Error, Result};

/// Image of a z-domain polynomial under `z = (1 + s) / (1 - s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bilinear {
    pub poly: Poly,
    /// Set when `z = -1` is a root of the input, which makes the leading
    /// coefficient of the image vanish.
    pub degree_dropped: bool,
}

/// Numerator of `p_z((1 + s) / (1 - s)) · (1 - s)^m`, `m = deg p_z`.
///
/// Maps roots inside the unit disk to the open left half-plane.
pub fn bilinear_to_s(p_z: &Poly) -> Result<Bilinear> {
    let m = p_z.degree().ok_or(Error::ZeroPolynomial)?;
    let plus = Poly::linear(1.0);
    let minus = Poly::new(vec![-1.0, 1.0]);
    let mut out = Poly::zero();
    for k in 0..=m {
        let term = (0..k).fold(Poly::constant(p_z.coeff(k)), |acc, _| &acc * &plus);
        let term = (0..m - k).fold(term, |acc, _| &acc * &minus);
        out = &out + &term;
    }
    let degree_dropped = out.degree() != Some(m);
    Ok(Bilinear {
        poly: out,
        degree_dropped,
    })
}
