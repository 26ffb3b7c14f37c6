use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{c, hermitian_defect, pauli, trace_c, CMat, CVec};

const STATE_TOL: f64 = 1e-10;
const OVERLAP_TOL: f64 = 1e-8;

/// Rank-one orthogonal projector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PureState {
    rho: CMat,
}

impl PureState {
    pub fn new(rho: CMat) -> Result<Self> {
        let d = Self::defect(&rho)?;
        if d > STATE_TOL {
            return Err(Error::NotAState(format!("not a rank-one projector (defect {d:.3e})")));
        }
        Ok(Self { rho })
    }

    /// `|x⟩⟨x| / ⟨x|x⟩`.
    pub fn from_vector(x: &CVec) -> Result<Self> {
        let n2 = x.norm_squared();
        if n2 == 0.0 {
            return Err(Error::Domain("zero vector has no state".into()));
        }
        Ok(Self { rho: x * x.adjoint() / c(n2, 0.0) })
    }

    /// Largest of `‖ρ − ρ†‖`, `|Tr ρ − 1|`, `‖ρ² − ρ‖`.
    pub fn defect(rho: &CMat) -> Result<f64> {
        if rho.nrows() != rho.ncols() {
            return Err(Error::NotSquare { rows: rho.nrows(), cols: rho.ncols() });
        }
        let herm = hermitian_defect(rho);
        let tr = (trace_c(rho) - c(1.0, 0.0)).norm();
        let idem = (rho * rho - rho).norm();
        Ok(herm.max(tr).max(idem))
    }

    pub fn matrix(&self) -> &CMat {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }
}

/// `Tr(ρ₁ρ₂)`.
pub fn transition_probability(a: &PureState, b: &PureState) -> f64 {
    trace_c(&(a.matrix() * b.matrix())).re
}

/// `x ↦ |x⟩⟨x|`, not normalised.
pub fn momentum_map(x: &CVec) -> Result<CMat> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("momentum map is taken on nonzero vectors".into()));
    }
    Ok(x * x.adjoint())
}

/// Superposition of two orthogonal pure states relative to a fiducial one:
/// `ρ = Σᵢⱼ cᵢc̄ⱼ ρᵢρ₀ρⱼ / √Tr(ρᵢρ₀ρⱼρ₀)`.
pub fn superpose(
    rho1: &PureState,
    rho2: &PureState,
    rho0: &PureState,
    c1: Complex64,
    c2: Complex64,
) -> Result<PureState> {
    let n = rho1.dim();
    if rho2.dim() != n || rho0.dim() != n {
        return Err(Error::Dimension("states live on different spaces".into()));
    }
    let norm = c1.norm_sqr() + c2.norm_sqr();
    if (norm - 1.0).abs() > STATE_TOL {
        return Err(Error::InvalidInput(format!("|c₁|² + |c₂|² = {norm}, expected 1")));
    }
    let cross = transition_probability(rho1, rho2);
    if cross > OVERLAP_TOL {
        return Err(Error::InvalidInput(format!("inputs are not orthogonal (Tr ρ₁ρ₂ = {cross:.3e})")));
    }
    let states = [rho1.matrix(), rho2.matrix()];
    for s in states {
        let overlap = trace_c(&(s * rho0.matrix())).re;
        if overlap <= OVERLAP_TOL {
            return Err(Error::DegenerateFiducial { overlap });
        }
    }
    let coeffs = [c1, c2];
    let r0 = rho0.matrix();
    let mut rho = CMat::zeros(n, n);
    for i in 0..2 {
        for j in 0..2 {
            let w = coeffs[i] * coeffs[j].conj();
            if w == c(0.0, 0.0) {
                continue;
            }
            let prod = states[i] * r0 * states[j];
            let denom = trace_c(&(&prod * r0)).re.sqrt();
            rho += prod * (w / denom);
        }
    }
    let d = PureState::defect(&rho)?;
    if d > STATE_TOL {
        return Err(Error::Numerical { what: "superposition is not a pure state".into(), residual: d });
    }
    Ok(PureState { rho })
}

/// `ρ(θ, φ) = [[sin²(θ/2), ½e^{iφ} sin θ], [½e^{−iφ} sin θ, cos²(θ/2)]]`.
pub fn bloch_state(theta: f64, phi: f64) -> PureState {
    let (s, h) = (theta.sin(), 0.5 * theta);
    let off = Complex64::from_polar(0.5 * s, phi);
    PureState {
        rho: CMat::from_row_slice(2, 2, &[c(h.sin().powi(2), 0.0), off, off.conj(), c(h.cos().powi(2), 0.0)]),
    }
}

/// `(y⁰, y)` with `A = y⁰I + y·σ`, i.e. `y^μ = ½Tr(σ_μ A)`.
pub fn bloch_coordinates(a: &CMat) -> Result<(f64, [f64; 3])> {
    if a.shape() != (2, 2) {
        return Err(Error::Dimension("Bloch coordinates need a 2×2 matrix".into()));
    }
    if hermitian_defect(a) > 1e-12 * a.norm().max(1.0) {
        return Err(Error::InvalidInput("matrix is not Hermitian".into()));
    }
    let s = pauli();
    let y = [0, 1, 2].map(|k| 0.5 * trace_c(&(&s[k] * a)).re);
    Ok((0.5 * trace_c(a).re, y))
}

/// `y⁰I + y·σ`.
pub fn from_bloch_coordinates(y0: f64, y: [f64; 3]) -> CMat {
    let s = pauli();
    CMat::identity(2, 2) * c(y0, 0.0) + &s[0] * c(y[0], 0.0) + &s[1] * c(y[1], 0.0) + &s[2] * c(y[2], 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::I;
    use proptest::prelude::*;

    fn basis(n: usize, k: usize) -> PureState {
        let mut v = CVec::zeros(n);
        v[k] = c(1.0, 0.0);
        PureState::from_vector(&v).unwrap()
    }

    fn uniform(n: usize) -> PureState {
        PureState::from_vector(&CVec::from_element(n, c(1.0, 0.0))).unwrap()
    }

    #[test]
    fn trivial_coefficients_return_the_first_state() {
        let (r1, r2, r0) = (basis(3, 0), basis(3, 1), uniform(3));
        let out = superpose(&r1, &r2, &r0, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((out.matrix() - r1.matrix()).norm() < 1e-12);
    }

    #[test]
    fn global_phase_is_irrelevant() {
        let (r1, r2, r0) = (basis(2, 0), basis(2, 1), uniform(2));
        let s = 0.5f64.sqrt();
        let a = superpose(&r1, &r2, &r0, c(s, 0.0), c(0.0, s)).unwrap();
        let ph = Complex64::from_polar(1.0, 0.7);
        let b = superpose(&r1, &r2, &r0, c(s, 0.0) * ph, c(0.0, s) * ph).unwrap();
        assert!((a.matrix() - b.matrix()).norm() < 1e-14);
    }

    #[test]
    fn orthogonal_fiducial_is_rejected() {
        let (r1, r2) = (basis(3, 0), basis(3, 1));
        let err = superpose(&r1, &r2, &basis(3, 2), c(1.0, 0.0), c(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::DegenerateFiducial { .. }));
    }

    #[test]
    fn transition_probabilities() {
        assert!((transition_probability(&basis(2, 0), &basis(2, 0)) - 1.0).abs() < 1e-15);
        assert_eq!(transition_probability(&basis(2, 0), &basis(2, 1)), 0.0);
        let (t1, p1, t2, p2): (f64, f64, f64, f64) = (0.4, 1.1, 2.0, -0.3);
        let expect = 0.5 * (1.0 + t1.sin() * t2.sin() * (p1 - p2).cos() + t1.cos() * t2.cos());
        let got = transition_probability(&bloch_state(t1, p1), &bloch_state(t2, p2));
        assert!((got - expect).abs() < 1e-14);
    }

    #[test]
    fn momentum_map_of_basis_vector() {
        let mut e = CVec::zeros(3);
        e[0] = c(1.0, 0.0);
        let m = momentum_map(&e).unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m.norm(), 1.0);
        assert!(momentum_map(&CVec::zeros(2)).is_err());
    }

    #[test]
    fn bloch_parametrisation_lies_on_the_sphere() {
        for a in 0..12 {
            for b in 0..12 {
                let (theta, phi) = (a as f64 * 0.26, b as f64 * 0.52);
                let (y0, y) = bloch_coordinates(bloch_state(theta, phi).matrix()).unwrap();
                assert!((y0 - 0.5).abs() < 1e-15);
                assert!((y.iter().map(|v| v * v).sum::<f64>() - 0.25).abs() < 1e-15);
                assert!((y[0] - 0.5 * theta.sin() * phi.cos()).abs() < 1e-15);
                assert!((y[1] + 0.5 * theta.sin() * phi.sin()).abs() < 1e-15);
                assert!((y[2] + 0.5 * theta.cos()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn pauli_products() {
        let s = pauli();
        let eps = crate::gqm::levi_civita;
        for h in 0..3 {
            for k in 0..3 {
                let mut expect = if h == k { CMat::identity(2, 2) } else { CMat::zeros(2, 2) };
                for l in 0..3 {
                    expect += &s[l] * (I * eps(h, k, l));
                }
                assert_eq!(&s[h] * &s[k], expect);
            }
        }
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = CVec> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
            .prop_map(move |v| CVec::from_iterator(n, v.into_iter().map(|(a, b)| c(a, b))))
            .prop_filter("nonzero", |v| v.norm() > 1e-3)
    }

    proptest! {
        #[test]
        fn momentum_map_is_equivariant(x in arb_vec(3), m in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9)) {
            let u = CMat::from_iterator(3, 3, m.into_iter().map(|(a, b)| c(a, b))).qr().q();
            let lhs = momentum_map(&(&u * &x)).unwrap();
            let rhs = &u * momentum_map(&x).unwrap() * u.adjoint();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn weights_survive_superposition(x in arb_vec(3), ph in 0.0f64..6.28, w in 0.05f64..0.95) {
            let (r1, r2) = (basis(3, 0), basis(3, 1));
            let mut f = x.clone();
            f[0] = c(0.5 + f[0].norm(), 0.0);
            f[1] = c(0.5 + f[1].norm(), 0.0);
            let r0 = PureState::from_vector(&f).unwrap();
            let (c1, c2) = (c(w.sqrt(), 0.0), Complex64::from_polar((1.0 - w).sqrt(), ph));
            let out = superpose(&r1, &r2, &r0, c1, c2).unwrap();
            prop_assert!((transition_probability(&out, &r1) - w).abs() < 1e-10);
            prop_assert!((transition_probability(&out, &r2) - (1.0 - w)).abs() < 1e-10);
        }
    }
}
