//! Recursion operators and the tensors that test them.

mod chain;
mod hochschild;
mod pair;
mod schouten;
mod tensor;

pub use chain::{invariant_chain, InvariantChain};
pub use hochschild::AlgebraEndomorphism;
pub use pair::{recursion_from_pair, RecursionOperator};
pub use schouten::{schouten_bracket, PolyBivector, PolyTrivector, PolyVectorField};
pub use tensor::{lie_derivative_along_linear, nijenhuis_torsion, TensorField11, Torsion};
