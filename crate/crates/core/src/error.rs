use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("numerical failure: {what} (residual {residual:.3e})")]
    Numerical { what: String, residual: f64 },

    #[error("field is not Hamiltonian for this structure: asymmetry of Omega*G is {asymmetry:.3e}")]
    NotHamiltonianForThisStructure { asymmetry: f64 },

    #[error("matrix does not commute with the dynamics: residual {residual:.3e}")]
    NotASymmetry { residual: f64 },

    #[error("dynamics matrix is singular; the Lie-derived structure is undefined")]
    SingularDynamics,

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("not a Hermitian form: {0}")]
    NotAHermitianForm(String),

    #[error("not in generic position: {0}")]
    NotGeneric(String),

    #[error("spectrum is not real: largest imaginary part {max_imag:.3e}")]
    NonRealSpectrum { max_imag: f64 },

    #[error("matrix is not diagonalizable")]
    NotDiagonalizable,

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("not a metric: {0}")]
    NotAMetric(String),

    #[error("metric is not invariant: commutator norm {residual:.3e}")]
    NotInvariant { residual: f64 },

    #[error("fiducial projector is orthogonal to an input state (overlap {overlap:.3e})")]
    DegenerateFiducial { overlap: f64 },

    #[error("not a state: {0}")]
    NotAState(String),

    #[error("inconsistent chain: {what} (residual {residual:.3e})")]
    Inconsistent { what: String, residual: f64 },

    #[error("grid error: {0}")]
    Grid(String),

    #[error("deformation error: {0}")]
    Deformation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
