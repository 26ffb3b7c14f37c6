use crate::error::{Error, Result};
use crate::numerics::matrix::{commutator, vec_of, CMat};

/// Linear map on the algebra of `n×n` complex matrices.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraEndomorphism {
    /// `A ↦ KA`.
    LeftMul(CMat),
    /// `A ↦ [X, A]`.
    Inner(CMat),
    /// Matrix of size `n²×n²` acting on column-major vectorisations.
    General { n: usize, matrix: CMat },
}

impl AlgebraEndomorphism {
    pub fn general(n: usize, matrix: CMat) -> Result<Self> {
        if matrix.shape() != (n * n, n * n) {
            return Err(Error::Dimension(format!("expected a {0}×{0} matrix", n * n)));
        }
        Ok(Self::General { n, matrix })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::LeftMul(k) | Self::Inner(k) => k.nrows(),
            Self::General { n, .. } => *n,
        }
    }

    fn check(&self, a: &CMat) -> Result<()> {
        let n = self.dim();
        if a.shape() != (n, n) {
            return Err(Error::Dimension(format!("element of shape {:?}, algebra is {n}×{n}", a.shape())));
        }
        Ok(())
    }

    pub fn apply(&self, a: &CMat) -> Result<CMat> {
        self.check(a)?;
        Ok(match self {
            Self::LeftMul(k) => k * a,
            Self::Inner(x) => commutator(x, a),
            Self::General { n, matrix } => {
                let v = matrix * vec_of(a);
                CMat::from_column_slice(*n, *n, v.as_slice())
            }
        })
    }

    /// `a ∗_T b = T(a)b + aT(b) − T(ab)`, the Hochschild coboundary of `T`.
    pub fn star(&self, a: &CMat, b: &CMat) -> Result<CMat> {
        self.check(b)?;
        Ok(self.apply(a)? * b + a * self.apply(b)? - self.apply(&(a * b))?)
    }

    /// `T(a ∗_T b) − T(a)T(b)`.
    pub fn algebra_torsion(&self, a: &CMat, b: &CMat) -> Result<CMat> {
        Ok(self.apply(&self.star(a, b)?)? - self.apply(a)? * self.apply(b)?)
    }

    /// Largest `‖Eᵢⱼ ∗_T Eₖₗ‖` over matrix units; zero exactly for derivations.
    pub fn derivation_residual(&self) -> f64 {
        let n = self.dim();
        let unit = |k: usize| {
            let mut e = CMat::zeros(n, n);
            e[(k % n, k / n)] = num_complex::Complex64::new(1.0, 0.0);
            e
        };
        let mut worst: f64 = 0.0;
        for a in 0..n * n {
            for b in 0..n * n {
                let s = self.star(&unit(a), &unit(b)).expect("matching shapes");
                worst = worst.max(s.norm());
            }
        }
        worst
    }

    pub fn derivation_test(&self, tol: f64) -> bool {
        self.derivation_residual() <= tol
    }
}
