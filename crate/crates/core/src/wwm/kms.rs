//! Classical KMS condition `ω({f, g}) = β ω(g{f, H})` for a Gibbs state.

use rayon::prelude::*;
use serde::Serialize;

use super::grid::PhaseGrid;
use crate::error::{Error, Result};
use crate::numerics::{poisson_bracket, PhasePolynomial};

const DECAY_WARN: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct KmsReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Change of `|LHS − RHS|`'s ingredients when every second grid point
    /// is dropped.
    pub quadrature_error: f64,
    /// Largest Gibbs weight on the box boundary, relative to its maximum.
    pub boundary_weight: f64,
    pub warning: Option<String>,
}

/// `ω(a) = Σ a e^{−βH} / Σ e^{−βH}` with sample stride `stride`.
fn gibbs_average(grid: &PhaseGrid, h: &PhasePolynomial, beta: f64, fs: &[&PhasePolynomial], stride: usize) -> (Vec<f64>, f64) {
    let n = grid.n;
    let hb = grid.hbar();
    let h_min = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| h.evaluate(&[grid.q(i), grid.p(j)], hb).re)
        .fold(f64::INFINITY, f64::min);
    let rows: Vec<(Vec<f64>, f64)> = (0..n)
        .into_par_iter()
        .filter(|i| i % stride == 0)
        .map(|i| {
            let mut acc = vec![0.0; fs.len()];
            let mut z = 0.0;
            for j in (0..n).step_by(stride) {
                let x = [grid.q(i), grid.p(j)];
                let w = (-beta * (h.evaluate(&x, hb).re - h_min)).exp();
                z += w;
                for (a, f) in acc.iter_mut().zip(fs) {
                    *a += w * f.evaluate(&x, hb).re;
                }
            }
            (acc, z)
        })
        .collect();
    let z: f64 = rows.iter().map(|r| r.1).sum();
    let mut out = vec![0.0; fs.len()];
    for (acc, _) in &rows {
        for (o, a) in out.iter_mut().zip(acc) {
            *o += a;
        }
    }
    for o in &mut out {
        *o /= z;
    }
    (out, z)
}

pub fn classical_kms_check(
    h: &PhasePolynomial,
    f: &PhasePolynomial,
    g: &PhasePolynomial,
    beta: f64,
    grid: &PhaseGrid,
) -> Result<KmsReport> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::Domain(format!("β must be positive, got {beta}")));
    }
    for poly in [h, f, g] {
        if poly.nvars() != 2 {
            return Err(Error::Dimension("KMS check runs on one degree of freedom".into()));
        }
        if !poly.is_real() {
            return Err(Error::InvalidInput("KMS check expects real observables".into()));
        }
    }
    let fg = poisson_bracket(f, g)?;
    let rhs_integrand = g.checked_mul(&poisson_bracket(f, h)?)?;
    let fs = [&fg, &rhs_integrand];
    let (fine, _) = gibbs_average(grid, h, beta, &fs, 1);
    let (coarse, _) = gibbs_average(grid, h, beta, &fs, 2);
    let lhs = fine[0];
    let rhs = beta * fine[1];
    let quadrature_error = (coarse[0] - fine[0]).abs().max(beta * (coarse[1] - fine[1]).abs());

    let n = grid.n;
    let hb = grid.hbar();
    let edge: Vec<(usize, usize)> = (0..n).flat_map(|k| [(0, k), (n - 1, k), (k, 0), (k, n - 1)]).collect();
    let h_min = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| h.evaluate(&[grid.q(i), grid.p(j)], hb).re)
        .fold(f64::INFINITY, f64::min);
    let boundary_weight = edge
        .iter()
        .map(|&(i, j)| (-beta * (h.evaluate(&[grid.q(i), grid.p(j)], hb).re - h_min)).exp())
        .fold(0.0, f64::max);
    let warning = (boundary_weight > DECAY_WARN)
        .then(|| format!("Gibbs weight does not decay on the box (boundary weight {boundary_weight:.2e})"));
    Ok(KmsReport { lhs, rhs, residual: (lhs - rhs).abs(), quadrature_error, boundary_weight, warning })
}
