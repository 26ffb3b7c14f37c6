//! Closed forms for the harmonic oscillator `H = p²/2m + mω²q²/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::grid::{GridFunction, KernelOperator, PhaseGrid};
use crate::numerics::matrix::c;
use crate::numerics::ModelConstants;

/// Gibbs kernel `⟨x|e^{−βH}|x′⟩` from Mehler's formula.
pub fn oscillator_gibbs_kernel(grid: PhaseGrid) -> KernelOperator {
    let k = grid.constants;
    let b = k.beta_hbar_omega();
    let a = k.mass * k.omega / k.hbar;
    let (s, ch) = (b.sinh(), b.cosh());
    let norm = (a / (2.0 * PI * s)).sqrt();
    KernelOperator::from_fn(grid, |x, y| c(norm * (-(a / (2.0 * s)) * ((x * x + y * y) * ch - 2.0 * x * y)).exp(), 0.0))
}

/// `Ω⁻¹(e^{−βH})(q, p) = sech(βħω/2) exp{−tanh(βħω/2)[mωq²/ħ + p²/(mħω)]}`.
pub fn oscillator_gibbs_wigner(grid: PhaseGrid) -> GridFunction {
    let k = grid.constants;
    let half = 0.5 * k.beta_hbar_omega();
    let (t, sech) = (half.tanh(), 1.0 / half.cosh());
    GridFunction::from_real_fn(grid, |q, p| {
        sech * (-t * (k.mass * k.omega * q * q / k.hbar + p * p / (k.mass * k.hbar * k.omega))).exp()
    })
}

/// `Tr e^{−βH} = 1/(2 sinh(βħω/2))`.
pub fn oscillator_partition_function(k: &ModelConstants) -> f64 {
    1.0 / (2.0 * (0.5 * k.beta_hbar_omega()).sinh())
}

/// Normalised eigenfunctions `ψ_0..ψ_nmax` sampled on the position axis.
pub fn oscillator_eigenfunctions(grid: &PhaseGrid, nmax: usize) -> Vec<Vec<Complex64>> {
    let k = grid.constants;
    let a = k.mass * k.omega / k.hbar;
    let pref = (a / PI).powf(0.25);
    let xs: Vec<f64> = (0..grid.n).map(|i| grid.q(i) * a.sqrt()).collect();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(nmax + 1);
    out.push(xs.iter().map(|x| pref * (-x * x / 2.0).exp()).collect());
    for n in 0..nmax {
        let next: Vec<f64> = (0..grid.n)
            .map(|i| {
                let prev = if n == 0 { 0.0 } else { out[n - 1][i] };
                (2.0 / (n + 1) as f64).sqrt() * xs[i] * out[n][i] - (n as f64 / (n + 1) as f64).sqrt() * prev
            })
            .collect();
        out.push(next);
    }
    out.into_iter().map(|v| v.into_iter().map(|x| c(x, 0.0)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenfunctions_are_orthonormal() {
        let g = PhaseGrid::conjugate(256, 12.0, ModelConstants::default()).unwrap();
        let psi = oscillator_eigenfunctions(&g, 10);
        for a in 0..=10 {
            for b in 0..=10 {
                let s: Complex64 = psi[a].iter().zip(&psi[b]).map(|(x, y)| x.conj() * y).sum::<Complex64>() * g.dq();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((s.re - expect).abs() < 1e-12 && s.im == 0.0);
            }
        }
    }

    #[test]
    fn mehler_kernel_is_the_spectral_sum() {
        let k = ModelConstants::natural(1.3).unwrap();
        let g = PhaseGrid::conjugate(64, 8.0, k).unwrap();
        let mehler = oscillator_gibbs_kernel(g);
        let psi = oscillator_eigenfunctions(&g, 60);
        for (i, j) in [(32, 32), (30, 35), (20, 40), (40, 41)] {
            let s: f64 = (0..=60).map(|n| (-1.3 * (n as f64 + 0.5)).exp() * psi[n][i].re * psi[n][j].re).sum();
            assert!((mehler.kernel[(i, j)].re - s).abs() < 1e-12);
        }
    }

    #[test]
    fn centre_value_and_partition_function() {
        let k = ModelConstants::natural(2.0).unwrap();
        let g = PhaseGrid::conjugate(64, 8.0, k).unwrap();
        assert!((oscillator_gibbs_wigner(g).get(32, 32).re - 1.0 / 1f64.cosh()).abs() < 1e-15);
        let e = std::f64::consts::E;
        assert!((oscillator_partition_function(&k) - 1.0 / (e - 1.0 / e)).abs() < 1e-15);
    }

    #[test]
    fn high_temperature_limit_is_flat() {
        let k = ModelConstants::natural(1e-9).unwrap();
        let g = PhaseGrid::conjugate(16, 2.0, k).unwrap();
        assert!(oscillator_gibbs_wigner(g).values.iter().all(|z| (z.re - 1.0).abs() < 1e-7));
    }
}
