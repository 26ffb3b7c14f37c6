use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::matrix::{c, CMat};
use crate::numerics::{ModelConstants, PhasePolynomial};

/// Sign of the phase `e^{±ipξ/ħ}` in the Wigner transform.
///
/// `Weyl` uses `e^{+ipξ/ħ}`, under which the coordinate function `p`
/// corresponds to `−P̂`. `Standard` uses `e^{−ipξ/ħ}`, so `p ↔ P̂`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentumSign {
    #[default]
    Weyl,
    Standard,
}

/// `N × N` phase-space grid `q_i = −L_q + iΔq`, `p_j = −L_p + jΔp`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub n: usize,
    pub l_q: f64,
    pub l_p: f64,
    pub constants: ModelConstants,
    #[serde(default)]
    pub momentum_sign: MomentumSign,
}

impl PhaseGrid {
    pub fn new(n: usize, l_q: f64, l_p: f64, constants: ModelConstants) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::Grid(format!("grid size must be even and at least 4, got {n}")));
        }
        for (name, v) in [("L_q", l_q), ("L_p", l_p)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Grid(format!("{name} must be positive, got {v}")));
            }
        }
        constants.validate()?;
        Ok(Self { n, l_q, l_p, constants, momentum_sign: MomentumSign::Weyl })
    }

    /// Grid whose momentum axis is the discrete Fourier dual of the position
    /// axis: `Δp = 2πħ/(NΔq)`, `L_p = πħ/Δq`.
    pub fn conjugate(n: usize, l_q: f64, constants: ModelConstants) -> Result<Self> {
        let dq = 2.0 * l_q / n as f64;
        Self::new(n, l_q, PI * constants.hbar / dq, constants)
    }

    pub fn with_momentum_sign(mut self, sign: MomentumSign) -> Self {
        self.momentum_sign = sign;
        self
    }

    pub fn dq(&self) -> f64 {
        2.0 * self.l_q / self.n as f64
    }

    pub fn dp(&self) -> f64 {
        2.0 * self.l_p / self.n as f64
    }

    pub fn hbar(&self) -> f64 {
        self.constants.hbar
    }

    pub fn q(&self, i: usize) -> f64 {
        -self.l_q + i as f64 * self.dq()
    }

    pub fn p(&self, j: usize) -> f64 {
        -self.l_p + j as f64 * self.dp()
    }

    /// Phase-space cell `ΔqΔp/2πħ`.
    pub fn cell(&self) -> f64 {
        self.dq() * self.dp() / (2.0 * PI * self.hbar())
    }

    pub fn is_conjugate(&self) -> bool {
        let expect = PI * self.hbar() / self.dq();
        (self.l_p - expect).abs() <= 1e-12 * expect
    }

    pub(crate) fn require_conjugate(&self) -> Result<()> {
        if self.is_conjugate() {
            Ok(())
        } else {
            Err(Error::Grid(format!(
                "L_p = {} is not conjugate to the position grid (expected πħ/Δq = {})",
                self.l_p,
                PI * self.hbar() / self.dq()
            )))
        }
    }

    pub(crate) fn require_same(&self, other: &PhaseGrid) -> Result<()> {
        if self != other {
            return Err(Error::Grid("operands live on different grids".into()));
        }
        Ok(())
    }
}

/// Samples `f(q_i, p_j)`, row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridFunction {
    pub grid: PhaseGrid,
    pub values: CMat,
}

impl GridFunction {
    pub fn new(grid: PhaseGrid, values: CMat) -> Result<Self> {
        if values.shape() != (grid.n, grid.n) {
            return Err(Error::Grid(format!("samples of shape {:?} on an {}-point grid", values.shape(), grid.n)));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: PhaseGrid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let values = CMat::from_fn(grid.n, grid.n, |i, j| f(grid.q(i), grid.p(j)));
        Self { grid, values }
    }

    pub fn from_real_fn(grid: PhaseGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        Self::from_fn(grid, |q, p| c(f(q, p), 0.0))
    }

    pub fn constant(grid: PhaseGrid, v: Complex64) -> Self {
        Self { grid, values: CMat::from_element(grid.n, grid.n, v) }
    }

    /// Samples a one-degree-of-freedom polynomial, with ħ set to its grid value.
    pub fn from_poly(grid: PhaseGrid, f: &PhasePolynomial) -> Result<Self> {
        if f.nvars() != 2 {
            return Err(Error::Dimension(format!("grid functions need one degree of freedom, got {} variables", f.nvars())));
        }
        let h = grid.hbar();
        Ok(Self::from_fn(grid, |q, p| f.evaluate(&[q, p], h)))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[(i, j)]
    }

    /// `Σ f ΔqΔp/2πħ`.
    pub fn phase_space_trace(&self) -> Complex64 {
        self.values.sum() * self.grid.cell()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &GridFunction) -> f64 {
        (&self.values - &other.values).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Self {
        Self { grid: self.grid, values: self.values.map(|z| z.conj()) }
    }

    pub fn pointwise_mul(&self, other: &GridFunction) -> Result<Self> {
        self.grid.require_same(&other.grid)?;
        Ok(Self { grid: self.grid, values: self.values.component_mul(&other.values) })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { grid: self.grid, values: &self.values * s }
    }

    /// Rows `q, p, Re f, Im f`.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "q,p,re,im")?;
        for i in 0..self.grid.n {
            for j in 0..self.grid.n {
                let z = self.values[(i, j)];
                writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e}", self.grid.q(i), self.grid.p(j), z.re, z.im)?;
            }
        }
        Ok(())
    }

    /// Four little-endian `f64` columns `q, p, Re f, Im f`, column after column.
    pub fn write_columns(&self, mut w: impl Write) -> std::io::Result<()> {
        let n = self.grid.n;
        let cols: [Box<dyn Fn(usize, usize) -> f64 + '_>; 4] = [
            Box::new(|i, _| self.grid.q(i)),
            Box::new(|_, j| self.grid.p(j)),
            Box::new(|i, j| self.values[(i, j)].re),
            Box::new(|i, j| self.values[(i, j)].im),
        ];
        for col in cols {
            for i in 0..n {
                for j in 0..n {
                    w.write_all(&col(i, j).to_le_bytes())?;
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &GridFunction {
    type Output = GridFunction;
    fn add(self, rhs: &GridFunction) -> GridFunction {
        assert_eq!(self.grid, rhs.grid, "grid mismatch");
        GridFunction { grid: self.grid, values: &self.values + &rhs.values }
    }
}

impl std::ops::Sub for &GridFunction {
    type Output = GridFunction;
    fn sub(self, rhs: &GridFunction) -> GridFunction {
        assert_eq!(self.grid, rhs.grid, "grid mismatch");
        GridFunction { grid: self.grid, values: &self.values - &rhs.values }
    }
}

/// Kernel `⟨x_i|Ô|x_j⟩` on the position axis of a grid; integrals over `x`
/// become sums weighted by `Δx = Δq`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelOperator {
    pub grid: PhaseGrid,
    pub kernel: CMat,
}

impl KernelOperator {
    pub fn new(grid: PhaseGrid, kernel: CMat) -> Result<Self> {
        if kernel.shape() != (grid.n, grid.n) {
            return Err(Error::Grid(format!("kernel of shape {:?} on an {}-point grid", kernel.shape(), grid.n)));
        }
        Ok(Self { grid, kernel })
    }

    pub fn from_fn(grid: PhaseGrid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        Self { grid, kernel: CMat::from_fn(grid.n, grid.n, |i, j| f(grid.q(i), grid.q(j))) }
    }

    /// `δ_ij / Δx`.
    pub fn identity(grid: PhaseGrid) -> Self {
        Self { grid, kernel: CMat::identity(grid.n, grid.n) / c(grid.dq(), 0.0) }
    }

    /// `|ψ⟩⟨ψ|` for samples `ψ(x_i)`, normalised so that `Σ|ψ|²Δx = 1`.
    pub fn projector(grid: PhaseGrid, psi: &[Complex64]) -> Result<Self> {
        if psi.len() != grid.n {
            return Err(Error::Grid(format!("wave function of length {} on an {}-point grid", psi.len(), grid.n)));
        }
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.dq();
        if norm2 == 0.0 {
            return Err(Error::Domain("zero wave function".into()));
        }
        let kernel = CMat::from_fn(grid.n, grid.n, |i, j| psi[i] * psi[j].conj() / norm2);
        Ok(Self { grid, kernel })
    }

    /// Multiplication by `f(x)`: kernel `f(x_i)δ_ij/Δx`.
    pub fn multiplication(grid: PhaseGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let mut k = CMat::zeros(grid.n, grid.n);
        for i in 0..grid.n {
            k[(i, i)] = f(grid.q(i)) / grid.dq();
        }
        Self { grid, kernel: k }
    }

    /// `Σ K_ii Δx`.
    pub fn trace(&self) -> Complex64 {
        self.kernel.trace() * self.grid.dq()
    }

    /// Kernel of the product: `Σ_k A_ik B_kj Δx`.
    pub fn compose(&self, other: &KernelOperator) -> Result<Self> {
        self.grid.require_same(&other.grid)?;
        Ok(Self { grid: self.grid, kernel: &self.kernel * &other.kernel * c(self.grid.dq(), 0.0) })
    }

    pub fn adjoint(&self) -> Self {
        Self { grid: self.grid, kernel: self.kernel.adjoint() }
    }

    /// `Tr(Â†Â) = Σ|K_ij|²Δx²`.
    pub fn hilbert_schmidt_norm_sq(&self) -> f64 {
        self.kernel.norm_squared() * self.grid.dq().powi(2)
    }

    pub fn hermitian_defect(&self) -> f64 {
        (&self.kernel - self.kernel.adjoint()).norm()
    }

    pub fn commutator(&self, other: &KernelOperator) -> Result<Self> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        Ok(Self { grid: self.grid, kernel: ab.kernel - ba.kernel })
    }

    /// `max|K|` on entries touching the outer eighth of the box or with
    /// `|x − x′| ≥ 3L_q/4`, relative to `max|K|`.
    pub fn boundary_leakage(&self) -> f64 {
        let n = self.grid.n;
        let edge = (n / 8).max(1);
        let far = 3 * n / 8;
        let peak = self.kernel.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                let outer = i < edge || j < edge || i >= n - edge || j >= n - edge;
                if outer || i.abs_diff(j) >= far {
                    worst = worst.max(self.kernel[(i, j)].norm());
                }
            }
        }
        worst / peak
    }

    /// Rows `x, x′, Re, Im`.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "x,xp,re,im")?;
        for i in 0..self.grid.n {
            for j in 0..self.grid.n {
                let z = self.kernel[(i, j)];
                writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e}", self.grid.q(i), self.grid.q(j), z.re, z.im)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_grid_spacings() {
        let g = PhaseGrid::conjugate(512, 14.0, ModelConstants::default()).unwrap();
        assert!(g.is_conjugate());
        assert!((g.dp() - 2.0 * PI / (512.0 * g.dq())).abs() < 1e-14);
        assert!((g.cell() - 1.0 / 512.0).abs() < 1e-15);
        assert_eq!(g.q(256), 0.0);
        assert_eq!(g.p(256), 0.0);
    }

    #[test]
    fn odd_grid_is_rejected() {
        assert!(matches!(PhaseGrid::new(7, 1.0, 1.0, ModelConstants::default()), Err(Error::Grid(_))));
    }

    #[test]
    fn projector_has_unit_trace_and_is_idempotent() {
        let g = PhaseGrid::conjugate(64, 8.0, ModelConstants::default()).unwrap();
        let psi: Vec<Complex64> = (0..64).map(|i| c((-g.q(i).powi(2) / 2.0).exp(), 0.1 * g.q(i))).collect();
        let p = KernelOperator::projector(g, &psi).unwrap();
        assert!((p.trace() - c(1.0, 0.0)).norm() < 1e-14);
        let p2 = p.compose(&p).unwrap();
        assert!((p2.kernel - &p.kernel).norm() < 1e-12 * p.kernel.norm());
    }

    #[test]
    fn identity_composes_neutrally() {
        let g = PhaseGrid::conjugate(16, 3.0, ModelConstants::default()).unwrap();
        let a = KernelOperator::from_fn(g, |x, y| c(x * y, x - y));
        let b = KernelOperator::identity(g).compose(&a).unwrap();
        assert!((b.kernel - a.kernel).norm() < 1e-13);
    }
}
