//! Truncated Fock space with the nonlinear ladder operator `A = f(n̂)a`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{c, expm_hermitian, CMat, CVec};

#[derive(Clone, Debug, Serialize)]
pub struct DeformedFock {
    /// `f(0), …, f(N−1)`.
    pub f: Vec<f64>,
    pub a: CMat,
    pub number: CMat,
    /// `f(n̂)a`.
    pub big_a: CMat,
    /// `f(n̂)⁻¹a`, the adjoint of `A†` for the deformed product.
    pub big_a_dual: CMat,
}

#[derive(Clone, Debug, Serialize)]
pub struct FockReport {
    pub levels: usize,
    /// `max |[(A†)†₂, A†] − I|` on levels `0..N−2`.
    pub commutator_residual: f64,
    /// `Σ e^{−β(n+½)}` over the kept levels.
    pub z_standard: f64,
    /// Same trace over the normalised deformed states `(A†)ⁿ|0⟩`.
    pub z_deformed: f64,
}

impl DeformedFock {
    /// Levels `0..n`, so the matrices are `n × n`.
    pub fn new(f: impl Fn(usize) -> f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("truncation must keep at least two levels, got {n}")));
        }
        let f: Vec<f64> = (0..n).map(f).collect();
        if let Some(k) = f.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::Domain(format!("f({k}) = {} is not positive", f[k])));
        }
        let mut a = CMat::zeros(n, n);
        for k in 1..n {
            a[(k - 1, k)] = c((k as f64).sqrt(), 0.0);
        }
        let number = CMat::from_diagonal(&CVec::from_iterator(n, (0..n).map(|k| c(k as f64, 0.0))));
        let fd = CMat::from_diagonal(&CVec::from_iterator(n, f.iter().map(|&v| c(v, 0.0))));
        let fd_inv = CMat::from_diagonal(&CVec::from_iterator(n, f.iter().map(|&v| c(1.0 / v, 0.0))));
        let big_a = &fd * &a;
        let big_a_dual = &fd_inv * &a;
        Ok(Self { f, a, number, big_a, big_a_dual })
    }

    pub fn levels(&self) -> usize {
        self.f.len()
    }

    pub fn report(&self, beta_hbar_omega: f64) -> FockReport {
        let n = self.levels();
        let a_dag = self.big_a.adjoint();
        let comm = &self.big_a_dual * &a_dag - &a_dag * &self.big_a_dual;
        let mut commutator_residual = 0.0f64;
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let target = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                commutator_residual = commutator_residual.max((comm[(i, j)] - target).norm());
            }
        }

        let z_standard = (0..n).map(|k| (-beta_hbar_omega * (k as f64 + 0.5)).exp()).sum();

        // H̃ = A†(A†)†₂ + ½ evaluated on (A†)ⁿ|0⟩
        let h = &a_dag * &self.big_a_dual + CMat::identity(n, n) * c(0.5, 0.0);
        let h = (&h + h.adjoint()) * c(0.5, 0.0);
        let gibbs = expm_hermitian(&h, c(-beta_hbar_omega, 0.0));
        let mut v = CVec::zeros(n);
        v[0] = c(1.0, 0.0);
        let mut z_deformed = 0.0;
        for _ in 0..n {
            let u = &v / c(v.norm(), 0.0);
            z_deformed += u.dotc(&(&gibbs * &u)).re;
            v = &a_dag * v;
        }
        FockReport { levels: n, commutator_residual, z_standard, z_deformed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undeformed_case_is_the_standard_algebra() {
        let fock = DeformedFock::new(|_| 1.0, 10).unwrap();
        assert_eq!(fock.big_a, fock.a);
        assert!(fock.report(1.0).commutator_residual < 1e-14);
    }

    #[test]
    fn square_root_deformation() {
        let r = DeformedFock::new(|k| ((k + 1) as f64).sqrt(), 20).unwrap().report(1.0);
        assert!(r.commutator_residual < 1e-12);
    }

    #[test]
    fn partition_sums_agree() {
        for f in [|k: usize| ((k + 1) as f64).sqrt(), |k: usize| 1.0 / (1.0 + k as f64)] {
            let r = DeformedFock::new(f, 30).unwrap().report(1.0);
            assert!((r.z_standard - r.z_deformed).abs() < 1e-12, "{r:?}");
        }
    }

    #[test]
    fn top_level_is_a_truncation_artifact() {
        let fock = DeformedFock::new(|_| 1.0, 5).unwrap();
        let ad = fock.a.adjoint();
        let comm = &fock.a * &ad - &ad * &fock.a;
        assert!((comm[(4, 4)] - c(-4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn non_positive_deformation_is_rejected() {
        assert!(matches!(DeformedFock::new(|k| 1.0 - k as f64, 5), Err(Error::Domain(_))));
        assert!(DeformedFock::new(|_| 1.0, 1).is_err());
    }
}
