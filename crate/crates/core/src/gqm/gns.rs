//! GNS construction for a density matrix on `Cⁿ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::matrix::{c, hermitian_defect, hermitian_eigen, kron, trace_c, vec_of, CMat, CVec};

const STATE_TOL: f64 = 1e-10;
const SUPPORT_TOL: f64 = 1e-12;

/// `H_ω = B(Cⁿ)/𝓘_ω`, realised as `X ↦ vec(X U √p)` where `ω = U p U†` on
/// its support. On this space `π_ω(A) = I_m ⊗ A`.
#[derive(Clone, Debug, Serialize)]
pub struct GnsRepresentation {
    pub omega: CMat,
    /// Orthonormal support vectors of `ω`, one per column.
    pub support: CMat,
    pub weights: Vec<f64>,
}

pub fn gns_construct(omega: &CMat) -> Result<GnsRepresentation> {
    if omega.nrows() != omega.ncols() {
        return Err(Error::NotSquare { rows: omega.nrows(), cols: omega.ncols() });
    }
    if hermitian_defect(omega) > STATE_TOL {
        return Err(Error::NotAState("density matrix is not Hermitian".into()));
    }
    let tr = trace_c(omega);
    if (tr - c(1.0, 0.0)).norm() > STATE_TOL {
        return Err(Error::NotAState(format!("trace {tr} is not 1")));
    }
    let (vals, vecs) = hermitian_eigen(omega);
    if vals.first().is_some_and(|&v| v < -STATE_TOL) {
        return Err(Error::NotAState(format!("negative eigenvalue {:.3e}", vals[0])));
    }
    let keep: Vec<usize> = (0..vals.len()).filter(|&k| vals[k] > SUPPORT_TOL).collect();
    let support = CMat::from_columns(&keep.iter().map(|&k| vecs.column(k).into_owned()).collect::<Vec<_>>());
    let weights = keep.iter().map(|&k| vals[k]).collect();
    Ok(GnsRepresentation { omega: omega.clone(), support, weights })
}

impl GnsRepresentation {
    pub fn n(&self) -> usize {
        self.omega.nrows()
    }

    /// Rank of `ω`, the multiplicity of the defining representation.
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn dim(&self) -> usize {
        self.n() * self.rank()
    }

    pub fn is_irreducible(&self) -> bool {
        self.rank() == 1
    }

    fn root_support(&self) -> CMat {
        let mut u = self.support.clone();
        for (k, w) in self.weights.iter().enumerate() {
            u.column_mut(k).scale_mut(w.sqrt());
        }
        u
    }

    /// Class of `X` in `H_ω`.
    pub fn embed(&self, x: &CMat) -> Result<CVec> {
        if x.shape() != self.omega.shape() {
            return Err(Error::Dimension("algebra element has the wrong size".into()));
        }
        Ok(vec_of(&(x * self.root_support())))
    }

    /// `Ψ_I`.
    pub fn cyclic_vector(&self) -> CVec {
        vec_of(&self.root_support())
    }

    pub fn pi(&self, a: &CMat) -> Result<CMat> {
        if a.shape() != self.omega.shape() {
            return Err(Error::Dimension("algebra element has the wrong size".into()));
        }
        Ok(kron(&CMat::identity(self.rank(), self.rank()), a))
    }

    /// `X` lies in the Gelfand ideal, i.e. `XU = 0`.
    pub fn in_gelfand_ideal(&self, x: &CMat, tol: f64) -> bool {
        (x * &self.support).norm() <= tol
    }

    /// `⟨A|B⟩ = Tr[BωA†]`.
    pub fn scalar_product(&self, a: &CMat, b: &CMat) -> num_complex::Complex64 {
        trace_c(&(b * &self.omega * a.adjoint()))
    }

    /// `‖π(AB) − π(A)π(B)‖`.
    pub fn homomorphism_residual(&self, a: &CMat, b: &CMat) -> Result<f64> {
        Ok((self.pi(&(a * b))? - self.pi(a)? * self.pi(b)?).norm())
    }

    /// `|⟨Ψ_I|π(A)|Ψ_I⟩ − Tr[ωA]|`.
    pub fn expectation_residual(&self, a: &CMat) -> Result<f64> {
        let psi = self.cyclic_vector();
        Ok((psi.dotc(&(self.pi(a)? * &psi)) - trace_c(&(&self.omega * a))).norm())
    }

    /// `‖π(A) embed(X) − embed(AX)‖`: `π` acts by left multiplication on classes.
    pub fn intertwining_residual(&self, a: &CMat, x: &CMat) -> Result<f64> {
        Ok((self.pi(a)? * self.embed(x)? - self.embed(&(a * x))?).norm())
    }
}
