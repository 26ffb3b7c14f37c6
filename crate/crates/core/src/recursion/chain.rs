use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::quadratic_bracket;
use crate::numerics::matrix::{inverse, rank, vec_of, RMat};

#[derive(Clone, Debug, Serialize)]
pub struct InvariantChain {
    /// `H_k = sym((Tᵀ)ᵏH)` for `k = 0..=kmax`.
    pub hamiltonians: Vec<RMat>,
    /// First `k` whose `H_k` is a combination of the earlier ones; the chain
    /// yields nothing new from there on.
    pub stopped_at: Option<usize>,
    /// Largest relative antisymmetric part of `(Tᵀ)ᵏH`.
    pub max_antisymmetry: f64,
    /// Largest relative `‖{H_k, H_l}‖` under the Poisson tensor `ω⁻¹`.
    pub max_involution: f64,
}

/// Quadratic Hamiltonians generated from `H` by a constant recursion
/// operator, checked for pairwise involution under `ω`.
pub fn invariant_chain(t: &RMat, omega: &RMat, h: &RMat, kmax: usize) -> Result<InvariantChain> {
    let n = t.nrows();
    if t.ncols() != n || omega.shape() != (n, n) || h.shape() != (n, n) {
        return Err(Error::Dimension("T, ω and H must share one square shape".into()));
    }
    let lambda = inverse(omega, "symplectic form")?;
    let mut hamiltonians = Vec::with_capacity(kmax + 1);
    let mut raw = h.clone();
    let mut max_antisymmetry: f64 = 0.0;
    let mut stopped_at = None;
    for k in 0..=kmax {
        let sym = (&raw + raw.transpose()) * 0.5;
        let anti = (&raw - raw.transpose()) * 0.5;
        let scale = raw.norm().max(f64::MIN_POSITIVE);
        max_antisymmetry = max_antisymmetry.max(anti.norm() / scale);
        if stopped_at.is_none() && k > 0 {
            let mut cols: Vec<_> = hamiltonians.iter().map(vec_of).collect();
            let before = rank(&RMat::from_columns(&cols), 1e-10);
            cols.push(vec_of(&sym));
            if rank(&RMat::from_columns(&cols), 1e-10) == before {
                stopped_at = Some(k);
            }
        }
        hamiltonians.push(sym);
        raw = t.transpose() * raw;
    }
    if max_antisymmetry > 1e-12 {
        return Err(Error::Inconsistent {
            what: "(Tᵀ)ᵏH is not symmetric".into(),
            residual: max_antisymmetry,
        });
    }
    let mut max_involution: f64 = 0.0;
    for a in &hamiltonians {
        for b in &hamiltonians {
            let s = (a.norm() * b.norm()).max(f64::MIN_POSITIVE);
            max_involution = max_involution.max(quadratic_bracket(a, b, &lambda).norm() / s);
        }
    }
    if max_involution > 1e-10 {
        return Err(Error::Inconsistent { what: "chain is not in involution".into(), residual: max_involution });
    }
    Ok(InvariantChain { hamiltonians, stopped_at, max_antisymmetry, max_involution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{standard_symplectic, RVec};

    fn diag(v: &[f64]) -> RMat {
        RMat::from_diagonal(&RVec::from_row_slice(v))
    }

    #[test]
    fn identity_repeats_the_hamiltonian() {
        let h = diag(&[1.0, 2.0, 3.0, 4.0]);
        let c = invariant_chain(&RMat::identity(4, 4), &standard_symplectic(2), &h, 3).unwrap();
        assert!(c.hamiltonians.iter().all(|hk| (hk - &h).norm() == 0.0));
        assert_eq!(c.stopped_at, Some(1));
    }

    #[test]
    fn anisotropic_chain_weights_and_stops() {
        let (l1, l2, w1, w2) = (2.0, 3.0, 1.5, 0.5);
        // (q₁, q₂, p₁, p₂) ordering: T acts by λᵢ on the i-th oscillator plane
        let t = diag(&[l1, l2, l1, l2]);
        let h = diag(&[w1 * w1, w2 * w2, 1.0, 1.0]);
        let c = invariant_chain(&t, &standard_symplectic(2), &h, 3).unwrap();
        for (k, hk) in c.hamiltonians.iter().enumerate() {
            let k = k as i32;
            let expect = diag(&[l1.powi(k) * w1 * w1, l2.powi(k) * w2 * w2, l1.powi(k), l2.powi(k)]);
            assert!((hk - expect).norm() < 1e-12);
        }
        assert_eq!(c.stopped_at, Some(2));
        assert!(c.max_involution < 1e-12);
    }

    #[test]
    fn non_admissible_operator_is_reported() {
        let t = RMat::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let err = invariant_chain(&t, &standard_symplectic(1), &RMat::identity(2, 2), 2).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }));
    }
}
