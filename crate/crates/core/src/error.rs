use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid subsystem selection: {0}")]
    Subsystems(String),

    #[error("invalid density operator: {0}")]
    Density(#[from] DensityViolation),

    #[error("invalid distribution: {0}")]
    Distribution(String),

    #[error("parameter `{name}` = {value} lies outside {range}")]
    Parameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid state spec: {0}")]
    Spec(String),

    #[error("invalid witness: {0}")]
    Witness(String),
}

/// The density-operator invariant that a candidate matrix failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DensityViolation {
    #[error("dimension {0} is not 2^n with 1 <= n <= 3")]
    Dimension(usize),

    #[error("hermiticity: max |rho - rho^dagger| = {0:.3e}")]
    Hermiticity(f64),

    #[error("trace: Tr(rho) = {0:.12}")]
    Trace(f64),

    #[error("positivity: minimum eigenvalue {0:.3e}")]
    Positivity(f64),
}
