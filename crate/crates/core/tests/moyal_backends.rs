use biham_core::wwm::{
    grid_moyal_product, moyal_product, oscillator_eigenfunctions, wigner_transform, GridFunction, GridMoyal,
    KernelOperator, MomentumSign, PhaseGrid, PolyMoyal, StarProduct,
};
use biham_core::{Complex64, ModelConstants, Polynomial};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid(n: usize, l: f64, sign: MomentumSign) -> PhaseGrid {
    PhaseGrid::conjugate(n, l, ModelConstants::default()).unwrap().with_momentum_sign(sign)
}

/// Values of `dᵏ/dxᵏ [x² e^{−ax²}]` for `k = 0..kmax` at `x`, from
/// `Pₖ₊₁ = Pₖ' − 2axPₖ` on the polynomial prefactor.
fn windowed_square_derivatives(a: f64, x: f64, kmax: usize) -> Vec<f64> {
    // prefactor coefficients, lowest degree first
    let mut poly = vec![0.0, 0.0, 1.0];
    let mut out = Vec::with_capacity(kmax + 1);
    let window = (-a * x * x).exp();
    for _ in 0..=kmax {
        let value: f64 = poly.iter().rev().fold(0.0, |acc, &cf| acc * x + cf);
        out.push(value * window);
        let mut next = vec![0.0; poly.len() + 1];
        for (d, &cf) in poly.iter().enumerate() {
            if d > 0 {
                next[d - 1] += d as f64 * cf;
            }
            next[d + 1] -= 2.0 * a * cf;
        }
        poly = next;
    }
    out
}

/// `f(q) ∗ g(p) = Σₖ (iħ/2)ᵏ/k! f⁽ᵏ⁾(q) g⁽ᵏ⁾(p)`.
fn separable_star(a: f64, q: f64, p: f64, hbar: f64) -> Complex64 {
    let kmax = 60;
    let fq = windowed_square_derivatives(a, q, kmax);
    let gp = windowed_square_derivatives(a, p, kmax);
    let mut weight = c(1.0, 0.0);
    let mut sum = c(0.0, 0.0);
    for k in 0..=kmax {
        sum += weight * fq[k] * gp[k];
        weight *= c(0.0, 0.5 * hbar) / (k + 1) as f64;
    }
    sum
}

#[test]
fn series_oracle_matches_the_polynomial_backend() {
    // without the window the series terminates and must reproduce q² ∗ p²
    let q = Polynomial::q(1, 0);
    let p = Polynomial::p(1, 0);
    let prod = moyal_product(&q.pow(2), &p.pow(2)).unwrap();
    for &(x, y) in &[(0.3, -1.2), (1.5, 0.7), (-2.0, 2.0)] {
        let mut weight = c(1.0, 0.0);
        let mut expect = c(0.0, 0.0);
        let dq = [x * x, 2.0 * x, 2.0];
        let dp = [y * y, 2.0 * y, 2.0];
        for k in 0..3 {
            expect += weight * dq[k] * dp[k];
            weight *= c(0.0, 0.5) / (k + 1) as f64;
        }
        assert!((prod.evaluate(&[x, y], 1.0) - expect).norm() < 1e-13);
    }
}

#[test]
fn windowed_squares_agree_between_grid_and_series() {
    let a = 0.5;
    let g = grid(256, 12.0, MomentumSign::Standard);
    let f = GridFunction::from_real_fn(g, |q, _| q * q * (-a * q * q).exp());
    let h = GridFunction::from_real_fn(g, |_, p| p * p * (-a * p * p).exp());
    let star = GridMoyal::default().star(&f, &h).unwrap();
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for i in (0..g.n).step_by(3) {
        for j in (0..g.n).step_by(3) {
            let expect = separable_star(a, g.q(i), g.p(j), 1.0);
            worst = worst.max((star.get(i, j) - expect).norm());
            peak = peak.max(expect.norm());
        }
    }
    assert!(worst / peak < 1e-8, "relative error {:.2e}", worst / peak);
}

#[test]
fn weyl_sign_conjugates_the_deformation_parameter() {
    let a = 0.5;
    let g = grid(256, 12.0, MomentumSign::Weyl);
    let f = GridFunction::from_real_fn(g, |q, _| q * q * (-a * q * q).exp());
    let h = GridFunction::from_real_fn(g, |_, p| p * p * (-a * p * p).exp());
    let star = grid_moyal_product(&f, &h).unwrap();
    for &(i, j) in &[(128, 128), (140, 120), (100, 150)] {
        let expect = separable_star(a, g.q(i), g.p(j), -1.0);
        assert!((star.get(i, j) - expect).norm() < 1e-8);
    }
}

#[test]
fn pure_states_are_star_idempotent() {
    let g = grid(128, 10.0, MomentumSign::Standard);
    let basis = oscillator_eigenfunctions(&g, 3);
    let psi: Vec<Complex64> = (0..g.n).map(|i| basis[0][i] * c(0.6, 0.0) + basis[3][i] * c(0.0, 0.8)).collect();
    let w = wigner_transform(&KernelOperator::projector(g, &psi).unwrap()).unwrap().function;
    let purity: f64 = w.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * g.cell();
    assert!((purity - 1.0).abs() < 1e-10);
    let ww = grid_moyal_product(&w, &w).unwrap();
    assert!(ww.max_diff(&w) < 1e-10);
    assert!((w.phase_space_trace() - c(1.0, 0.0)).norm() < 1e-10);
}

#[test]
fn mixed_state_has_purity_below_one() {
    let g = grid(128, 10.0, MomentumSign::Standard);
    let basis = oscillator_eigenfunctions(&g, 1);
    let p0 = KernelOperator::projector(g, &basis[0]).unwrap();
    let p1 = KernelOperator::projector(g, &basis[1]).unwrap();
    let mixed = KernelOperator::new(g, (&p0.kernel + &p1.kernel) * c(0.5, 0.0)).unwrap();
    let w = wigner_transform(&mixed).unwrap().function;
    let purity: f64 = w.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * g.cell();
    assert!((purity - 0.5).abs() < 1e-10);
}

/// Coherent state evolved in the number basis versus the classical flow of
/// its initial Wigner function.
#[test]
fn oscillator_dynamics_follow_the_classical_flow() {
    let g = grid(256, 12.0, MomentumSign::Standard);
    let nmax = 45;
    let basis = oscillator_eigenfunctions(&g, nmax);
    let (q0, p0) = (1.2, -0.7);
    let alpha = c(q0, p0) / 2f64.sqrt();
    let t = 0.9;
    let mut coeff = c((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    let mut psi = vec![c(0.0, 0.0); g.n];
    for (n, phi) in basis.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -(n as f64 + 0.5) * t);
        for (x, y) in psi.iter_mut().zip(phi) {
            *x += coeff * phase * y;
        }
        coeff *= alpha / ((n + 1) as f64).sqrt();
    }
    let w = wigner_transform(&KernelOperator::projector(g, &psi).unwrap()).unwrap().function;
    let (qt, pt) = (q0 * t.cos() + p0 * t.sin(), p0 * t.cos() - q0 * t.sin());
    let expect = GridFunction::from_real_fn(g, |q, p| 2.0 * (-(q - qt).powi(2) - (p - pt).powi(2)).exp());
    assert!(w.max_diff(&expect) < 1e-9, "{:.2e}", w.max_diff(&expect));
}

#[test]
fn poly_backend_bracket_of_quadratic_hamiltonian_is_classical() {
    let q = Polynomial::q(1, 0);
    let p = Polynomial::p(1, 0);
    let h = (&q.pow(2) + &p.pow(2)).scale(c(0.5, 0.0));
    let f = &q.pow(3) * &p;
    let moyal = PolyMoyal::default().bracket(&f, &h).unwrap();
    let classical = biham_core::numerics::poisson_bracket(&f, &h).unwrap();
    assert!(moyal.approx_eq(&classical, 1e-14));
}
