//! Wigner transform, Weyl map and the symplectic Fourier transform on a grid.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use super::grid::{GridFunction, KernelOperator, MomentumSign, PhaseGrid};
use crate::error::Result;
use crate::numerics::matrix::{c, CMat};

const LEAKAGE_WARN: f64 = 1e-8;

pub(crate) struct Fft1 {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Fft1 {
    pub(crate) fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { n, fwd: planner.plan_fft_forward(n), inv: planner.plan_fft_inverse(n) }
    }

    /// `Σ x_k e^{−2πijk/N}`.
    pub(crate) fn forward(&self, x: &mut [Complex64]) {
        self.fwd.process(x);
    }

    /// `Σ x_k e^{+2πijk/N}`, unnormalised.
    pub(crate) fn inverse(&self, x: &mut [Complex64]) {
        self.inv.process(x);
    }

    /// Band-limited resampling `x(b) ↦ x(b + shift)` for `shift = ±½`. The
    /// Nyquist component has no symmetric shift and is dropped.
    fn half_shift(&self, x: &mut [Complex64], forward: bool) {
        let n = self.n;
        self.forward(x);
        let s = if forward { 1.0 } else { -1.0 };
        for (k, v) in x.iter_mut().enumerate() {
            let ks = signed(k, n);
            if ks == -(n as i64) / 2 {
                *v = c(0.0, 0.0);
            } else {
                *v *= Complex64::from_polar(1.0 / n as f64, s * PI * ks as f64 / n as f64);
            }
        }
        self.inverse(x);
    }
}

/// Representative of `k mod n` in `[−n/2, n/2)`.
fn signed(k: usize, n: usize) -> i64 {
    let k = k as i64;
    let n = n as i64;
    if k >= n / 2 {
        k - n
    } else {
        k
    }
}

fn wrap(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// Row-major copy of a matrix.
fn rows_of(m: &CMat) -> Vec<Complex64> {
    let n = m.nrows();
    let mut out = vec![c(0.0, 0.0); n * m.ncols()];
    for i in 0..n {
        for j in 0..m.ncols() {
            out[i * m.ncols() + j] = m[(i, j)];
        }
    }
    out
}

fn from_rows(n: usize, v: &[Complex64]) -> CMat {
    CMat::from_row_slice(n, n, v)
}

/// Centre samples `v_d[i] = K(q_i + dΔx/2, q_i − dΔx/2)`, indexed
/// `[d mod N][i]`. Odd `d` are interpolated along the diagonal. The diagonal
/// `d ≡ N/2` has two centrings, `d = ±N/2`, and gets their average.
fn centred_diagonals(k: &CMat, plan: &Fft1) -> Vec<Complex64> {
    let n = k.nrows();
    let mut out = vec![c(0.0, 0.0); n * n];
    out.par_chunks_mut(n).enumerate().for_each(|(dm, row)| {
        let d = signed(dm, n);
        let reps: &[i64] = if 2 * dm == n { &[d, -d] } else { &[d] };
        let w = 1.0 / reps.len() as f64;
        for &d in reps {
            let mut diag: Vec<Complex64> = (0..n).map(|b| k[(wrap(b as i64 + d, n), b)]).collect();
            let offset = if d % 2 == 0 {
                d / 2
            } else {
                plan.half_shift(&mut diag, true);
                (d + 1) / 2
            };
            for (i, v) in row.iter_mut().enumerate() {
                *v += diag[wrap(i as i64 - offset, n)] * w;
            }
        }
    });
    out
}

/// Inverse of [`centred_diagonals`] on band-limited data (its adjoint on the
/// diagonal `d ≡ N/2`).
fn kernel_from_diagonals(v: &[Complex64], n: usize, plan: &Fft1) -> CMat {
    let diags: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|dm| {
            let d = signed(dm, n);
            let reps: &[i64] = if 2 * dm == n { &[d, -d] } else { &[d] };
            let w = 1.0 / reps.len() as f64;
            let mut diag = vec![c(0.0, 0.0); n];
            for &d in reps {
                let mut centre = v[dm * n..(dm + 1) * n].to_vec();
                let offset = if d % 2 == 0 {
                    d / 2
                } else {
                    plan.half_shift(&mut centre, false);
                    (d + 1) / 2
                };
                for (b, z) in diag.iter_mut().enumerate() {
                    *z += centre[wrap(b as i64 + offset, n)] * w;
                }
            }
            diag
        })
        .collect();
    let mut k = CMat::zeros(n, n);
    for (dm, diag) in diags.iter().enumerate() {
        let d = signed(dm, n);
        for (b, z) in diag.iter().enumerate() {
            k[(wrap(b as i64 + d, n), b)] = *z;
        }
    }
    k
}

#[derive(Clone, Debug, Serialize)]
pub struct WignerFunction {
    pub function: GridFunction,
    pub hermitian_input: bool,
    pub max_imag: f64,
    pub boundary_leakage: f64,
    pub warning: Option<String>,
}

/// `Ω⁻¹(Ô)(q, p) = Σ_ξ Δx e^{±ipξ/ħ} ⟨q + ξ/2|Ô|q − ξ/2⟩`, sign per
/// [`MomentumSign`], on a conjugate grid.
pub fn wigner_transform(op: &KernelOperator) -> Result<WignerFunction> {
    let grid = op.grid;
    grid.require_conjugate()?;
    let n = grid.n;
    let plan = Fft1::new(n);
    let v = centred_diagonals(&op.kernel, &plan);
    let dx = grid.dq();
    let mut w = vec![c(0.0, 0.0); n * n];
    w.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (dm, u) in row.iter_mut().enumerate() {
            let sign = if dm % 2 == 0 { 1.0 } else { -1.0 };
            *u = v[dm * n + i] * sign;
        }
        match grid.momentum_sign {
            MomentumSign::Weyl => plan.inverse(row),
            MomentumSign::Standard => plan.forward(row),
        }
        for u in row.iter_mut() {
            *u *= dx;
        }
    });
    let function = GridFunction { grid, values: from_rows(n, &w) };
    let scale = op.kernel.norm().max(f64::MIN_POSITIVE);
    let hermitian_input = op.hermitian_defect() <= 1e-12 * scale;
    let max_imag = function.max_imag();
    let boundary_leakage = op.boundary_leakage();
    let warning = (boundary_leakage > LEAKAGE_WARN)
        .then(|| format!("kernel reaches the box boundary (relative size {boundary_leakage:.2e}); results may be inaccurate"));
    Ok(WignerFunction { function, hermitian_input, max_imag, boundary_leakage, warning })
}

/// `⟨x|Ô|x′⟩ = Σ_p (Δp/2πħ) e^{∓ip(x−x′)/ħ} f((x+x′)/2, p)`, left inverse of
/// [`wigner_transform`] on band-limited kernels.
///
/// Band-limited here means momentum content inside `|p| < L_p/2` and kernel
/// support inside `|x − x′| < L_q`; the half-step centres along odd
/// diagonals are interpolated and need the extra factor of two.
pub fn weyl_map(f: &GridFunction) -> Result<KernelOperator> {
    let grid = f.grid;
    grid.require_conjugate()?;
    let n = grid.n;
    let plan = Fft1::new(n);
    let mut rows = rows_of(&f.values);
    let weight = grid.dp() / (2.0 * PI * grid.hbar());
    rows.par_chunks_mut(n).for_each(|row| {
        match grid.momentum_sign {
            MomentumSign::Weyl => plan.forward(row),
            MomentumSign::Standard => plan.inverse(row),
        }
        for (dm, u) in row.iter_mut().enumerate() {
            let sign = if dm % 2 == 0 { 1.0 } else { -1.0 };
            *u *= weight * sign;
        }
    });
    // rows are indexed [i][d]; diagonals want [d][i]
    let mut v = vec![c(0.0, 0.0); n * n];
    for i in 0..n {
        for dm in 0..n {
            v[dm * n + i] = rows[i * n + dm];
        }
    }
    Ok(KernelOperator { grid, kernel: kernel_from_diagonals(&v, n, &plan) })
}

/// Symplectic Fourier transform
/// `F(η, ξ) = ∫ dq dp/2π f(q, p) e^{−i(qη − pξ)}` (or its inverse, with the
/// opposite phase). The result lives on the dual grid `L_η = π/Δq`,
/// `L_ξ = π/Δp`, so forward followed by inverse returns to the input grid.
pub fn symplectic_fourier(f: &GridFunction, inverse: bool) -> Result<GridFunction> {
    let g = f.grid;
    let n = g.n;
    let plan = Fft1::new(n);
    let mut out = PhaseGrid::new(n, PI / g.dq(), PI / g.dp(), g.constants)?;
    out.momentum_sign = g.momentum_sign;
    let mut m: Vec<Complex64> = rows_of(&f.values);
    let alt = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    for (i, row) in m.chunks_mut(n).enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z *= alt(i + j);
        }
    }
    // along p: e^{+ipξ} forward, e^{−ipξ} inverse
    m.par_chunks_mut(n).for_each(|row| if inverse { plan.forward(row) } else { plan.inverse(row) });
    let mut t = vec![c(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = m[i * n + j];
        }
    }
    // along q: e^{−iqη} forward, e^{+iqη} inverse
    t.par_chunks_mut(n).for_each(|col| if inverse { plan.inverse(col) } else { plan.forward(col) });
    let scale = g.dq() * g.dp() / (2.0 * PI);
    let values = CMat::from_fn(n, n, |k, l| t[l * n + k] * (scale * alt(k + l)));
    GridFunction::new(out, values)
}
