use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{hermitian_defect, inverse, min_eigenvalue, CMat};
use crate::numerics::spectral::{spectral_decompose, DEFAULT_CLUSTER_TOL};

#[derive(Clone, Debug, Serialize)]
pub struct PseudoHermitianResult {
    /// `η = Σ |φₙ⟩⟨φₙ|`.
    pub eta: CMat,
    /// Right eigenvectors `ψₙ` as columns, unit norm.
    pub right: CMat,
    /// Dual basis `φₙ` with `⟨φₘ|ψₙ⟩ = δₘₙ`.
    pub left: CMat,
    pub eigenvalues: Vec<f64>,
    /// `‖ηH − H†η‖ / (‖η‖‖H‖)`.
    pub intertwining_residual: f64,
    /// `‖Φ†Ψ − I‖`.
    pub biorthogonality_residual: f64,
}

impl PseudoHermitianResult {
    /// `[A, B]_η = AηB − BηA`.
    pub fn eta_commutator(&self, a: &CMat, b: &CMat) -> CMat {
        a * &self.eta * b - b * &self.eta * a
    }
}

/// `‖ηH − H†η‖ / (‖η‖‖H‖)`.
pub fn metric_residual(h: &CMat, eta: &CMat) -> f64 {
    (eta * h - h.adjoint() * eta).norm() / (eta.norm() * h.norm()).max(f64::MIN_POSITIVE)
}

/// Metric operator rendering a diagonalisable real-spectrum `H` self-adjoint.
///
/// Only one representative is returned: `η` may be replaced by `ηA` for any
/// `A` commuting with `H` such that `ηA` stays positive.
pub fn pseudo_hermitian_metric(h: &CMat) -> Result<PseudoHermitianResult> {
    let spec = spectral_decompose(h, DEFAULT_CLUSTER_TOL)?;
    let scale = h.norm().max(f64::MIN_POSITIVE);
    let max_imag = spec.eigenvalues.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    if max_imag > 1e-8 * scale {
        return Err(Error::NonRealSpectrum { max_imag });
    }
    if spec.is_defective() {
        return Err(Error::NotDiagonalizable);
    }
    let psi = spec.eigenvectors.clone();
    let phi = inverse(&psi, "eigenvector matrix").map_err(|_| Error::NotDiagonalizable)?.adjoint();
    let eta = &phi * phi.adjoint();
    let eta = (&eta + eta.adjoint()) * num_complex::Complex64::new(0.5, 0.0);
    let n = h.nrows();
    let biorthogonality_residual = (phi.adjoint() * &psi - CMat::identity(n, n)).norm();
    if min_eigenvalue(&eta) <= 0.0 || hermitian_defect(&eta) > 0.0 {
        return Err(Error::Numerical { what: "metric lost positivity".into(), residual: min_eigenvalue(&eta) });
    }
    Ok(PseudoHermitianResult {
        intertwining_residual: metric_residual(h, &eta),
        eta,
        right: psi,
        left: phi,
        eigenvalues: spec.eigenvalues.iter().map(|z| z.re).collect(),
        biorthogonality_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::c;

    fn real(n: usize, v: &[f64]) -> CMat {
        CMat::from_row_slice(n, n, &v.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>())
    }

    #[test]
    fn hermitian_input_gives_identity_metric() {
        let h = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0), c(-1.0, 0.0)]);
        let r = pseudo_hermitian_metric(&h).unwrap();
        assert!((&r.eta - CMat::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn asymmetric_real_spectrum() {
        let h = real(2, &[0.0, 1.0, 2.0, 0.0]);
        let r = pseudo_hermitian_metric(&h).unwrap();
        assert!(r.intertwining_residual < 1e-12);
        assert!(r.biorthogonality_residual < 1e-12);
        assert!(min_eigenvalue(&r.eta) > 0.0);
        let mut ev = r.eigenvalues.clone();
        ev.sort_by(f64::total_cmp);
        assert!((ev[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rotation_has_complex_spectrum() {
        let err = pseudo_hermitian_metric(&real(2, &[0.0, 1.0, -1.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::NonRealSpectrum { .. }));
    }

    #[test]
    fn jordan_block_is_rejected() {
        let err = pseudo_hermitian_metric(&real(2, &[1.0, 1.0, 0.0, 1.0])).unwrap_err();
        assert_eq!(err, Error::NotDiagonalizable);
    }

    #[test]
    fn commutant_rescaling_is_another_metric() {
        let h = real(2, &[0.0, 1.0, 2.0, 0.0]);
        let r = pseudo_hermitian_metric(&h).unwrap();
        // A = H + 3I commutes with H; ηA is Hermitian positive here
        let a = &h + CMat::identity(2, 2) * c(3.0, 0.0);
        let eta2 = &r.eta * &a;
        assert!(hermitian_defect(&eta2) < 1e-12);
        assert!(min_eigenvalue(&((&eta2 + eta2.adjoint()) * c(0.5, 0.0))) > 0.0);
        assert!(metric_residual(&h, &eta2) < 1e-12);
    }

    #[test]
    fn eta_commutator_is_antisymmetric() {
        let h = real(2, &[0.0, 1.0, 2.0, 0.0]);
        let r = pseudo_hermitian_metric(&h).unwrap();
        let a = real(2, &[1.0, 2.0, 3.0, 4.0]);
        let b = real(2, &[0.0, 1.0, 1.0, 0.0]);
        assert!((r.eta_commutator(&a, &b) + r.eta_commutator(&b, &a)).norm() < 1e-14);
    }
}
