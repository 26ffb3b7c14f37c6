use serde::Serialize;

use super::tensor::{nijenhuis_torsion, TensorField11};
use crate::error::{Error, Result};
use crate::numerics::matrix::{inverse, rank, skew_defect, RMat};

/// `T = ω₁⁻¹ω₂` with the checks that make it a strong recursion operator.
#[derive(Clone, Debug, Serialize)]
pub struct RecursionOperator {
    pub t: RMat,
    /// Relative `‖Tᵀω₁ − ω₁T‖`.
    pub symmetry_residual: f64,
    pub torsion_free: bool,
    /// Constant forms are closed.
    pub closed: bool,
    pub kernel_dim: usize,
    pub strong: bool,
}

impl RecursionOperator {
    pub fn tensor(&self) -> TensorField11 {
        TensorField11::constant(&self.t).expect("square by construction")
    }
}

pub fn recursion_from_pair(omega1: &RMat, omega2: &RMat) -> Result<RecursionOperator> {
    if omega1.shape() != omega2.shape() || omega1.nrows() != omega1.ncols() {
        return Err(Error::Dimension("forms must be square of equal size".into()));
    }
    for (name, w) in [("first", omega1), ("second", omega2)] {
        let d = skew_defect(w);
        if d > 1e-12 * w.norm().max(1.0) {
            return Err(Error::InvalidInput(format!("{name} form is not skew (defect {d:.3e})")));
        }
    }
    let t = inverse(omega1, "first symplectic form")? * omega2;
    let symmetry_residual =
        (t.transpose() * omega1 - omega1 * &t).norm() / (t.norm() * omega1.norm()).max(1.0);
    let torsion_free = nijenhuis_torsion(&TensorField11::constant(&t)?).is_zero();
    let kernel_dim = t.nrows() - rank(&t, 1e-12);
    let strong = torsion_free && symmetry_residual <= 1e-10;
    Ok(RecursionOperator { t, symmetry_residual, torsion_free, closed: true, kernel_dim, strong })
}
