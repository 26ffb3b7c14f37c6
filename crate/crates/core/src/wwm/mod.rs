//! Weyl-Wigner-Moyal correspondence on a discretised phase space.

mod circle;
mod frame;
mod grid;
mod kms;
mod moyal;
mod oscillator;
mod transform;

pub use circle::{circle_jacobi_bracket, CircleFunction};
pub use frame::PhasePointFrame;
pub use grid::{GridFunction, KernelOperator, MomentumSign, PhaseGrid};
pub use kms::{classical_kms_check, KmsReport};
pub use moyal::{
    classical_deformed_bracket, deformed_moyal_bracket, deformed_moyal_product, grid_deformed_product,
    grid_moyal_product, moyal_bracket, moyal_product, GridMoyal, PolyMoyal, StarProduct,
};
pub use oscillator::{
    oscillator_eigenfunctions, oscillator_gibbs_kernel, oscillator_gibbs_wigner, oscillator_partition_function,
};
pub use transform::{symplectic_fourier, weyl_map, wigner_transform, WignerFunction};
