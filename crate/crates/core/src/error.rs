use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument is outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A pair Hamiltonian that is not of the form diag(a², ab, ab, b²).
    #[error("pair Hamiltonian is not of the form diag(a^2, ab, ab, b^2): {0}")]
    Shape(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("matrix is not unitary (max |U^dagger U - I| = {deviation:e})")]
    NonUnitary { deviation: f64 },

    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    #[error("register of {requested} qubits exceeds simulator capacity of {max}")]
    Capacity { requested: usize, max: usize },

    /// Dual-rail geometry where the two rail pairs overlap.
    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("solution set is empty")]
    EmptySolutionSet,

    #[error("quality factor {0} outside (0, 1]")]
    InvalidQuality(f64),

    #[error("cannot fit power law: {0}")]
    Fit(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    /// Malformed circuit document; position is 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid sweep configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
