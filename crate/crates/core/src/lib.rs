//! Alternative Hamiltonian descriptions, classical and quantum.
//!
//! The crate is organised in layers:
//!
//! - [`numerics`]: dense matrices, a sparse polynomial ring over phase-space
//!   variables with a formal ħ, spectral utilities and model constants.
//! - [`linear`]: the Hamiltonian inverse problem for linear vector fields.
//! - [`structures`]: admissible `(g, J, ω)` triples, compatible Hermitian
//!   pairs, pseudo-Hermitian metrics and nonlinear charts.
//! - [`recursion`]: Nijenhuis torsion, recursion operators, Hochschild
//!   star products and Schouten brackets.
//! - [`gqm`]: geometric quantum mechanics on finite-level systems.
//! - [`wwm`]: the Weyl-Wigner-Moyal engine on a phase-space grid.

pub mod error;
pub mod gqm;
pub mod linear;
pub mod numerics;
pub mod recursion;
pub mod structures;
pub mod wwm;

pub use error::{Error, Result};
pub use numerics::{
    CMat, CVec, ModelConstants, PhasePolynomial, Polynomial, RMat, RVec, Spectrum,
};
pub use num_complex::Complex64;
