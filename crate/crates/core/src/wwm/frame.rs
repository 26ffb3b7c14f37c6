//! Discrete phase-point operators `Â(q, p)`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{GridFunction, KernelOperator, PhaseGrid};
use super::transform::weyl_map;
use crate::error::Result;
use crate::numerics::matrix::{c, CMat};

/// Frame `Â(z) = (2πħ/ΔqΔp) Ω(δ_z)` on a conjugate grid. Each `Â(z)` is
/// Hermitian with unit trace, `Σ_z Â(z) ΔqΔp/2πħ = I`, and
/// `Tr(ÔÂ(z))` reproduces the Wigner transform.
#[derive(Clone, Copy, Debug)]
pub struct PhasePointFrame {
    pub grid: PhaseGrid,
}

impl PhasePointFrame {
    pub fn new(grid: PhaseGrid) -> Result<Self> {
        grid.require_conjugate()?;
        Ok(Self { grid })
    }

    pub fn operator(&self, i: usize, j: usize) -> Result<KernelOperator> {
        let n = self.grid.n;
        let mut delta = CMat::zeros(n, n);
        delta[(i, j)] = c(1.0 / self.grid.cell(), 0.0);
        weyl_map(&GridFunction { grid: self.grid, values: delta })
    }

    /// `Ô = Σ_z f(z) Â(z) ΔqΔp/2πħ`.
    pub fn expand(&self, f: &GridFunction) -> Result<KernelOperator> {
        self.grid.require_same(&f.grid)?;
        weyl_map(f)
    }

    /// `Tr(ÔÂ(z))` for every grid point, evaluated operator by operator.
    pub fn coefficients(&self, op: &KernelOperator) -> Result<GridFunction> {
        self.grid.require_same(&op.grid)?;
        let n = self.grid.n;
        let vals: Vec<Result<Complex64>> = (0..n * n)
            .into_par_iter()
            .map(|idx| Ok(op.compose(&self.operator(idx / n, idx % n)?)?.trace()))
            .collect();
        let mut values = CMat::zeros(n, n);
        for (idx, v) in vals.into_iter().enumerate() {
            values[(idx / n, idx % n)] = v?;
        }
        Ok(GridFunction { grid: self.grid, values })
    }

    /// `Tr(Â(z)Â(z′)) ΔqΔp/2πħ`, which approximates `δ_{zz′}`.
    pub fn overlap(&self, z: (usize, usize), w: (usize, usize)) -> Result<Complex64> {
        let a = self.operator(z.0, z.1)?;
        let b = self.operator(w.0, w.1)?;
        Ok(a.compose(&b)?.trace() * self.grid.cell())
    }
}
