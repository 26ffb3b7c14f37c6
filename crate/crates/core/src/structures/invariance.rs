use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{expm_hermitian, hermitian_defect, min_eigenvalue, CMat};
use num_complex::Complex64;

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceVerdict {
    pub invariant: bool,
    /// `‖[H, K]‖ / (‖H‖‖K‖)`.
    pub commutator: f64,
    /// Largest `‖U(t)†KU(t) − K‖ / ‖K‖` over the sampled times.
    pub flow_residual: f64,
}

const SAMPLE_TIMES: [f64; 4] = [0.1, 0.7, 1.9, 5.3];

/// Whether `⟨φ|Kψ⟩` is conserved by the unitary flow `exp(−itH)`.
pub fn invariant_hermitian_check(h: &CMat, k: &CMat) -> Result<InvarianceVerdict> {
    if h.shape() != k.shape() || h.nrows() != h.ncols() {
        return Err(Error::Dimension("H and K must be square of equal size".into()));
    }
    if hermitian_defect(k) > 1e-12 * k.norm().max(1.0) || min_eigenvalue(k) <= 0.0 {
        return Err(Error::NotAMetric("K must be Hermitian positive-definite".into()));
    }
    if hermitian_defect(h) > 1e-12 * h.norm().max(1.0) {
        return Err(Error::InvalidInput("H must be Hermitian".into()));
    }
    let scale = (h.norm() * k.norm()).max(f64::MIN_POSITIVE);
    let commutator = (h * k - k * h).norm() / scale;
    let mut flow_residual: f64 = 0.0;
    for t in SAMPLE_TIMES {
        let u = expm_hermitian(h, Complex64::new(0.0, -t));
        flow_residual = flow_residual.max((u.adjoint() * k * &u - k).norm() / k.norm());
    }
    Ok(InvarianceVerdict { invariant: commutator <= 1e-10 && flow_residual <= 1e-9, commutator, flow_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{c, pauli};
    use crate::numerics::CVec;

    fn diag(v: &[f64]) -> CMat {
        CMat::from_diagonal(&CVec::from_iterator(v.len(), v.iter().map(|&x| c(x, 0.0))))
    }

    #[test]
    fn identity_metric_is_always_invariant() {
        let v = invariant_hermitian_check(&pauli()[0], &CMat::identity(2, 2)).unwrap();
        assert!(v.invariant);
    }

    #[test]
    fn commuting_diagonals() {
        assert!(invariant_hermitian_check(&diag(&[1.0, 2.0]), &diag(&[2.0, 5.0])).unwrap().invariant);
    }

    #[test]
    fn pauli_x_breaks_diagonal_metric() {
        let v = invariant_hermitian_check(&pauli()[0], &diag(&[1.0, 2.0])).unwrap();
        assert!(!v.invariant);
        assert!(v.flow_residual > 1e-3);
    }

    #[test]
    fn indefinite_metric_is_rejected() {
        let err = invariant_hermitian_check(&diag(&[1.0, 2.0]), &diag(&[1.0, -2.0])).unwrap_err();
        assert!(matches!(err, Error::NotAMetric(_)));
    }
}
