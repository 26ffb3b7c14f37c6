//! Hamiltonian descriptions of linear vector fields `ẋ = Gx`.
//!
//! A description is a pair `(Λ, H)` with `Λ` skew and invertible, `H`
//! symmetric and `G = −ΛH`. The symplectic form is `Ω = Λ⁻¹`, so equivalently
//! `H = −ΩG`.

mod hamiltonicity;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{asymmetry, inverse, skew_defect, RMat, RVec};

pub use hamiltonicity::{
    eigenvalue_pairing, hamiltonicity_test, hamiltonicity_test_with, rank_sequence,
    HamiltonicityOptions, HamiltonicityVerdict,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearVectorField {
    g: RMat,
}

impl LinearVectorField {
    pub fn new(g: RMat) -> Result<Self> {
        if g.nrows() != g.ncols() {
            return Err(Error::NotSquare { rows: g.nrows(), cols: g.ncols() });
        }
        if !g.nrows().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "linear vector field needs even dimension, got {}",
                g.nrows()
            )));
        }
        Ok(Self { g })
    }

    pub fn matrix(&self) -> &RMat {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn n_dof(&self) -> usize {
        self.g.nrows() / 2
    }

    /// The field with matrix `G^k`.
    pub fn power(&self, k: usize) -> RMat {
        matrix_power(&self.g, k)
    }

    pub fn apply(&self, x: &RVec) -> RVec {
        &self.g * x
    }
}

pub(crate) fn matrix_power(m: &RMat, k: usize) -> RMat {
    let mut out = RMat::identity(m.nrows(), m.ncols());
    for _ in 0..k {
        out = &out * m;
    }
    out
}

/// A constant symplectic form `Ω` together with its Poisson tensor `Λ = Ω⁻¹`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantSymplectic {
    omega: RMat,
    lambda: RMat,
}

impl ConstantSymplectic {
    pub fn new(omega: RMat) -> Result<Self> {
        let lambda = Self::checked_inverse(&omega, "symplectic form")?;
        Ok(Self { omega, lambda })
    }

    /// Build from the Poisson tensor instead.
    pub fn from_poisson(lambda: RMat) -> Result<Self> {
        let omega = Self::checked_inverse(&lambda, "Poisson tensor")?;
        Ok(Self { omega, lambda })
    }

    /// `Σ dqᵢ∧dpᵢ`.
    pub fn standard(n_dof: usize) -> Self {
        Self {
            omega: crate::numerics::matrix::standard_symplectic(n_dof),
            lambda: crate::numerics::matrix::standard_poisson(n_dof),
        }
    }

    fn checked_inverse(m: &RMat, what: &str) -> Result<RMat> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if !m.nrows().is_multiple_of(2) {
            return Err(Error::Dimension(format!("{what} needs even dimension")));
        }
        let defect = skew_defect(m);
        if defect > 1e-12 * m.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::InvalidInput(format!("{what} is not skew (defect {defect:.3e})")));
        }
        let inv = inverse(m, what)?;
        let check = (&inv * m - RMat::identity(m.nrows(), m.ncols())).norm();
        if check > 1e-10 {
            return Err(Error::Numerical { what: format!("{what} inverse"), residual: check });
        }
        // exact skewness of the inverse
        Ok((&inv - inv.transpose()) * 0.5)
    }

    pub fn omega(&self) -> &RMat {
        &self.omega
    }

    pub fn lambda(&self) -> &RMat {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.omega.nrows()
    }
}

/// `𝓗(x) = ½ xᵀHx`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticHamiltonian {
    h: RMat,
}

impl QuadraticHamiltonian {
    pub fn new(h: RMat) -> Result<Self> {
        if h.nrows() != h.ncols() {
            return Err(Error::NotSquare { rows: h.nrows(), cols: h.ncols() });
        }
        let a = asymmetry(&h);
        if a > 1e-12 * h.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::InvalidInput(format!("Hamiltonian matrix not symmetric ({a:.3e})")));
        }
        Ok(Self { h: (&h + h.transpose()) * 0.5 })
    }

    pub(crate) fn from_symmetric_unchecked(h: RMat) -> Self {
        Self { h }
    }

    pub fn matrix(&self) -> &RMat {
        &self.h
    }

    pub fn value(&self, x: &RVec) -> f64 {
        0.5 * x.dot(&(&self.h * x))
    }

    pub fn gradient(&self, x: &RVec) -> RVec {
        &self.h * x
    }
}

/// Matrix of the quadratic form `{½xᵀAx, ½xᵀBx}` for the bracket whose
/// Hamiltonian vector fields are `−Λ∇`.
///
/// With this sign `{f, 𝓗}` is the derivative of `f` along `G = −ΛH`.
pub fn quadratic_bracket(a: &RMat, b: &RMat, lambda: &RMat) -> RMat {
    b * lambda * a - a * lambda * b
}

/// `H = −ΩG`, provided `ΩG` is symmetric.
pub fn factorize(field: &LinearVectorField, omega: &ConstantSymplectic) -> Result<QuadraticHamiltonian> {
    if field.dim() != omega.dim() {
        return Err(Error::Dimension(format!(
            "field has dimension {}, form has {}",
            field.dim(),
            omega.dim()
        )));
    }
    let og = omega.omega() * field.matrix();
    let asym = asymmetry(&og);
    let scale = omega.omega().norm() * field.matrix().norm();
    if asym > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotHamiltonianForThisStructure { asymmetry: asym });
    }
    let h = -(&og + og.transpose()) * 0.5;
    Ok(QuadraticHamiltonian::from_symmetric_unchecked(h))
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyEntry {
    pub k: usize,
    /// Matrix of `Γ_k`, i.e. `G^{2k+1}`.
    pub field: RMat,
    pub hamiltonian: QuadraticHamiltonian,
}

#[derive(Clone, Debug, Serialize)]
pub struct HamiltonianHierarchy {
    pub entries: Vec<HierarchyEntry>,
    lambda: RMat,
}

impl HamiltonianHierarchy {
    /// `‖{H_k, H_l}‖ / (‖H_k‖‖H_l‖)` for every pair.
    pub fn involution_residuals(&self) -> Vec<Vec<f64>> {
        let m = self.entries.len();
        let mut out = vec![vec![0.0; m]; m];
        for k in 0..m {
            for l in 0..m {
                let a = self.entries[k].hamiltonian.matrix();
                let b = self.entries[l].hamiltonian.matrix();
                let scale = (a.norm() * b.norm()).max(f64::MIN_POSITIVE);
                out[k][l] = quadratic_bracket(a, b, &self.lambda).norm() / scale;
            }
        }
        out
    }

    pub fn max_involution_residual(&self) -> f64 {
        self.involution_residuals()
            .into_iter()
            .flatten()
            .fold(0.0, f64::max)
    }

    /// Largest `‖[Γ_k, Γ_l]‖`.
    pub fn max_commutator(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in &self.entries {
            for b in &self.entries {
                worst = worst.max((&a.field * &b.field - &b.field * &a.field).norm());
            }
        }
        worst
    }

    /// Largest relative `‖G^{2k+1} + ΛH_k‖`.
    pub fn max_factorization_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| {
                let r = (&e.field + &self.lambda * e.hamiltonian.matrix()).norm();
                r / e.field.norm().max(f64::MIN_POSITIVE)
            })
            .fold(0.0, f64::max)
    }
}

/// Conserved quadratic Hamiltonians `H_k = (−1)ᵏ (Gᵀ)ᵏ H Gᵏ` for the odd
/// powers `G^{2k+1} = −ΛH_k`, `k = 0..=kmax`.
pub fn hierarchy(
    field: &LinearVectorField,
    omega: &ConstantSymplectic,
    kmax: usize,
) -> Result<HamiltonianHierarchy> {
    let h0 = factorize(field, omega)?;
    let g = field.matrix();
    let g2 = g * g;
    let mut entries = Vec::with_capacity(kmax + 1);
    let mut gk = RMat::identity(g.nrows(), g.ncols());
    let mut odd = g.clone();
    for k in 0..=kmax {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let hk = gk.transpose() * h0.matrix() * &gk * sign;
        let hk = (&hk + hk.transpose()) * 0.5;
        entries.push(HierarchyEntry {
            k,
            field: odd.clone(),
            hamiltonian: QuadraticHamiltonian::from_symmetric_unchecked(hk),
        });
        gk = &gk * g;
        odd = &odd * &g2;
    }
    Ok(HamiltonianHierarchy { entries, lambda: omega.lambda().clone() })
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantDeformation {
    pub structure: ConstantSymplectic,
    pub hamiltonian: QuadraticHamiltonian,
    /// `TᵀΩT = Ω`: the new pair is a canonical image of the old one.
    pub is_canonical: bool,
    /// Relative `‖G + Λ'H'‖`.
    pub product_residual: f64,
}

/// New description `Λ' = T⁻¹Λ(T⁻¹)ᵀ`, `H' = TᵀHT` from a symmetry `T` of `G`.
pub fn commutant_deformation(
    field: &LinearVectorField,
    omega: &ConstantSymplectic,
    t: &RMat,
) -> Result<CommutantDeformation> {
    let h = factorize(field, omega)?;
    let g = field.matrix();
    if t.shape() != g.shape() {
        return Err(Error::Dimension("deformation matrix shape differs from G".into()));
    }
    let comm = (t * g - g * t).norm();
    if comm > 1e-10 * (t.norm() * g.norm()).max(f64::MIN_POSITIVE) {
        return Err(Error::NotASymmetry { residual: comm });
    }
    let t_inv = inverse(t, "deformation matrix")?;
    let lambda = &t_inv * omega.lambda() * t_inv.transpose();
    let lambda = (&lambda - lambda.transpose()) * 0.5;
    let hp = t.transpose() * h.matrix() * t;
    let hp = QuadraticHamiltonian::from_symmetric_unchecked((&hp + hp.transpose()) * 0.5);
    let structure = ConstantSymplectic::from_poisson(lambda)?;
    let om = omega.omega();
    let canon = (t.transpose() * om * t - om).norm() <= 1e-10 * om.norm();
    let product_residual =
        (g + structure.lambda() * hp.matrix()).norm() / g.norm().max(f64::MIN_POSITIVE);
    Ok(CommutantDeformation { structure, hamiltonian: hp, is_canonical: canon, product_residual })
}

#[derive(Clone, Debug, Serialize)]
pub struct LieDeformed {
    /// `Λ₂ = ΛHΛHΛ`.
    pub poisson: RMat,
    /// `(ΛHΛ)⁻¹`.
    pub hamiltonian: QuadraticHamiltonian,
    /// Relative `‖G + Λ₂H₂‖`.
    pub reproduction_residual: f64,
}

/// Second Poisson structure `Λ₂ = ΛHΛHΛ` and Hamiltonian `(ΛHΛ)⁻¹` for the
/// same dynamics. Needs `G = −ΛH` invertible.
pub fn lie_deformed_structure(omega: &ConstantSymplectic, h: &QuadraticHamiltonian) -> Result<LieDeformed> {
    let la = omega.lambda();
    if h.matrix().shape() != la.shape() {
        return Err(Error::Dimension("Hamiltonian shape differs from the structure".into()));
    }
    let g = -(la * h.matrix());
    if g.norm() == 0.0 || inverse(&g, "dynamics").is_err() {
        return Err(Error::SingularDynamics);
    }
    let lhl = la * h.matrix() * la;
    let poisson = &lhl * h.matrix() * la;
    let poisson = (&poisson - poisson.transpose()) * 0.5;
    let h2 = inverse(&lhl, "ΛHΛ").map_err(|_| Error::SingularDynamics)?;
    let h2 = QuadraticHamiltonian::from_symmetric_unchecked((&h2 + h2.transpose()) * 0.5);
    let reproduction_residual = (&g + &poisson * h2.matrix()).norm() / g.norm();
    Ok(LieDeformed { poisson, hamiltonian: h2, reproduction_residual })
}
