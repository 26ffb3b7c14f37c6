//! Compatible geometric structures on a real vector space.
//!
//! Matrices act on real coordinates `(q₁..qₙ, p₁..pₙ)`. A complex vector
//! `z = q + ip` is identified with this ordering, so [`realify`] maps complex
//! `n×n` matrices to real `2n×2n` ones.

mod chart;
mod compat;
mod invariance;
mod pencil;
mod pseudo;
mod realify;
mod triple;

pub use chart::NonlinearChart;
pub use compat::{
    compatibility_analysis, compatibility_of_triples, CompatibilityBlock, ConnectingOperator,
    HermitianForm,
};
pub use invariance::{invariant_hermitian_check, InvarianceVerdict};
pub use pencil::pencil_fields;
pub use pseudo::{metric_residual, pseudo_hermitian_metric, PseudoHermitianResult};
pub use realify::{complex_structure_of, hermitian_to_real_pair, realify, unrealify};
pub use triple::{complete_triple, AdmissibleTriple, TripleInput};
