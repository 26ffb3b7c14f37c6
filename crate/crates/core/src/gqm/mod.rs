//! Geometric quantum mechanics on finite-level systems.

mod bloch;
mod brackets;
mod fock;
mod gns;
mod kdeformed;
mod states;

pub use bloch::{bloch_geometry, levi_civita, BlochTensors};
pub use brackets::{
    expectation, fs_gradient, jordan_bracket_at, poisson_bracket_at, quadratic_bracket_check,
    star_at, QuadraticBracketReport,
};
pub use fock::{DeformedFock, FockReport};
pub use gns::{gns_construct, GnsRepresentation};
pub use kdeformed::{k_commutator, k_deformed_algebra, KDeformedReport};
pub use states::{
    bloch_coordinates, bloch_state, from_bloch_coordinates, momentum_map, superpose,
    transition_probability, PureState,
};
