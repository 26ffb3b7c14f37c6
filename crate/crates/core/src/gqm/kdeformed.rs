//! Operator algebra with the deformed product `A ·_K B = AKB`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{commutator, hermitian_defect, inverse, min_eigenvalue, CMat};

#[derive(Clone, Debug, Serialize)]
pub struct KDeformedReport {
    /// `H' = HK⁻¹`.
    pub h_prime: CMat,
    /// `‖[H', A]_K − [H, A]‖`.
    pub bracket_residual: f64,
    /// Leibniz defect of `[H', ·]_K` on `A ·_K A†`.
    pub derivation_residual: f64,
}

/// `[X, Y]_K = XKY − YKX`.
pub fn k_commutator(x: &CMat, y: &CMat, k: &CMat) -> CMat {
    x * k * y - y * k * x
}

pub fn k_deformed_algebra(k: &CMat, h: &CMat, a: &CMat) -> Result<KDeformedReport> {
    let n = k.nrows();
    for m in [k, h, a] {
        if m.shape() != (n, n) {
            return Err(Error::Dimension("K, H and A must share one square shape".into()));
        }
    }
    let scale = k.norm().max(1.0);
    if hermitian_defect(k) > 1e-12 * scale || min_eigenvalue(k) <= 0.0 {
        return Err(Error::NotAMetric("K must be positive Hermitian".into()));
    }
    if hermitian_defect(h) > 1e-12 * h.norm().max(1.0) {
        return Err(Error::InvalidInput("H is not Hermitian".into()));
    }
    let residual = commutator(h, k).norm();
    if residual > 1e-10 * scale * h.norm().max(1.0) {
        return Err(Error::NotInvariant { residual });
    }
    let h_prime = h * inverse(k, "K")?;
    let bracket_residual = (k_commutator(&h_prime, a, k) - commutator(h, a)).norm();

    let b = a.adjoint();
    let d = |x: &CMat| k_commutator(&h_prime, x, k);
    let lhs = d(&(a * k * &b));
    let rhs = d(a) * k * &b + a * k * d(&b);
    Ok(KDeformedReport { h_prime, bracket_residual, derivation_residual: (lhs - rhs).norm() })
}
