//! Tensors of the two-level system at a point of the Bloch sphere.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{RMat, RVec};

const SPHERE_TOL: f64 = 1e-10;

/// `ε_{ijk}` for indices in `0..3`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Tensors at `ξ` with `|ξ| = ½` (and `ξ⁰ = ½`).
///
/// `jordan` and `poisson` act on four-vectors `(y⁰, y)` of `u*`; the
/// remaining maps act on ambient three-vectors, with `metric` the orthogonal
/// projector onto the tangent plane.
#[derive(Clone, Debug, Serialize)]
pub struct BlochTensors {
    pub xi: [f64; 3],
    pub jordan: RMat,
    pub poisson: RMat,
    pub symplectic: RMat,
    pub metric: RMat,
    pub complex_structure: RMat,
    /// Orthonormal tangent basis, one vector per column.
    pub tangent_basis: RMat,
}

pub fn bloch_geometry(xi: [f64; 3]) -> Result<BlochTensors> {
    let v = RVec::from_row_slice(&xi);
    if !v.iter().all(|x| x.is_finite()) || (v.norm_squared() - 0.25).abs() > SPHERE_TOL {
        return Err(Error::Domain(format!("|ξ|² = {} is not 1/4", v.norm_squared())));
    }
    let xi0 = 0.5;

    let mut jordan = RMat::zeros(4, 4);
    jordan[(0, 0)] = 2.0 * xi0;
    for k in 0..3 {
        jordan[(0, k + 1)] = 2.0 * xi[k];
        jordan[(k + 1, 0)] = 2.0 * xi[k];
        jordan[(k + 1, k + 1)] = 2.0 * xi0;
    }

    let mut area = RMat::zeros(3, 3);
    for (j, k) in (0..3).flat_map(|j| (0..3).map(move |k| (j, k))) {
        area[(j, k)] = (0..3).map(|i| 2.0 * levi_civita(i, j, k) * xi[i]).sum();
    }
    let mut poisson = RMat::zeros(4, 4);
    poisson.view_mut((1, 1), (3, 3)).copy_from(&area);

    // j(u) = 2ξ × u, so that (u×)ᵀ conventions give j = −area
    let complex_structure = -&area;
    let normal = &v * 2.0;
    let metric = RMat::identity(3, 3) - &normal * normal.transpose();

    let mut basis: Vec<RVec> = Vec::with_capacity(2);
    let mut candidates: Vec<RVec> = (0..3).map(|k| RVec::from_fn(3, |i, _| f64::from(i == k))).collect();
    candidates.sort_by(|a, b| a.dot(&normal).abs().total_cmp(&b.dot(&normal).abs()));
    for e in candidates {
        let mut u = &e - &normal * normal.dot(&e);
        for b in &basis {
            u -= b * b.dot(&u);
        }
        if basis.len() < 2 && u.norm() > 1e-8 {
            basis.push(u.normalize());
        }
    }

    Ok(BlochTensors {
        xi,
        jordan,
        poisson,
        symplectic: area,
        metric,
        complex_structure,
        tangent_basis: RMat::from_columns(&basis),
    })
}

impl BlochTensors {
    /// `R(a, b)` on four-vectors `(y⁰, y)`.
    pub fn jordan_form(&self, a: [f64; 4], b: [f64; 4]) -> f64 {
        let (a, b) = (RVec::from_row_slice(&a), RVec::from_row_slice(&b));
        a.dot(&(&self.jordan * b))
    }

    /// `I(a, b)` on four-vectors `(y⁰, y)`.
    pub fn poisson_form(&self, a: [f64; 4], b: [f64; 4]) -> f64 {
        let (a, b) = (RVec::from_row_slice(&a), RVec::from_row_slice(&b));
        a.dot(&(&self.poisson * b))
    }

    /// `η(u, v) = 2ξ·(u × v)`.
    pub fn eta(&self, u: &RVec, v: &RVec) -> f64 {
        u.dot(&(&self.symplectic * v))
    }

    /// `σ(u, v)`, the Euclidean product of the tangent components.
    pub fn sigma(&self, u: &RVec, v: &RVec) -> f64 {
        u.dot(&(&self.metric * v))
    }

    pub fn j(&self, u: &RVec) -> RVec {
        &self.complex_structure * u
    }

    pub fn tangent(&self, k: usize) -> RVec {
        self.tangent_basis.column(k).into_owned()
    }

    /// `‖j³ + j‖` on the ambient space and `‖j² + I‖` on the tangent plane.
    pub fn complex_structure_defects(&self) -> (f64, f64) {
        let j = &self.complex_structure;
        let ambient = (j * j * j + j).norm();
        let t = &self.tangent_basis;
        let restricted = t.transpose() * j * j * t + RMat::identity(2, 2);
        (ambient, restricted.norm())
    }
}
