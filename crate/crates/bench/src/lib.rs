//! Fixed inputs shared by the benchmarks.

use biham_core::numerics::matrix::c;
use biham_core::recursion::TensorField11;
use biham_core::wwm::{oscillator_gibbs_kernel, KernelOperator, PhaseGrid};
use biham_core::{CMat, ModelConstants, Polynomial};

/// `(q² + p²)^deg` in one degree of freedom, dense in low orders.
pub fn radial_power(deg: u32) -> Polynomial {
    let q = Polynomial::q(1, 0);
    let p = Polynomial::p(1, 0);
    (&q.pow(2) + &p.pow(2)).pow(deg)
}

pub fn gibbs_kernel(n: usize) -> KernelOperator {
    let grid = PhaseGrid::conjugate(n, 12.0, ModelConstants::natural(1.0).unwrap()).unwrap();
    oscillator_gibbs_kernel(grid)
}

/// Tridiagonal Hermitian matrix.
pub fn hermitian_chain(n: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = c(i as f64, 0.0);
        if i + 1 < n {
            m[(i, i + 1)] = c(0.3, 0.1);
            m[(i + 1, i)] = c(0.3, -0.1);
        }
    }
    m
}

/// `T = diag(x₁, …, x_n)` plus the nilpotent shift `x₁ ∂/∂x₂`.
pub fn polynomial_tensor(n: usize) -> TensorField11 {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Polynomial::var(n, i)
                    } else if i == 1 && j == 0 {
                        Polynomial::var(n, 0)
                    } else {
                        Polynomial::zero(n)
                    }
                })
                .collect()
        })
        .collect();
    TensorField11::from_rows(rows).unwrap()
}
