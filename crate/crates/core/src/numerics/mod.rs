//! Shared numerical substrate.

mod constants;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod spectral;

pub use constants::ModelConstants;
pub use matrix::{CMat, CVec, RMat, RVec};
pub use poly::{poisson_bracket, Monomial, PhasePolynomial, PolyRecord, Polynomial};
pub use spectral::{commutant_basis, commutant_dimension, spectral_decompose, Spectrum, VectorKind};
