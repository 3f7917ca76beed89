//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("basis index {index} out of range for {n_qubits} qubit(s)")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit {qubit} out of range for {n_qubits} qubit(s)")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("qubit {0} repeated in operand list")]
    RepeatedQubit(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("not a completely positive trace preserving map: {0}")]
    NotCptp(String),

    #[error("invalid thermal parameters: {0}")]
    InvalidThermalParams(String),

    #[error("empty measurement set")]
    EmptyMeasurement,

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("circuit does not fit architecture: {0}")]
    ArchitectureViolation(String),

    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),

    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("calibration does not cover the architecture: {0}")]
    CoverageGap(String),

    #[error("walk state space must be a power of two with at least 4 states, got {0}")]
    InvalidWalkSize(usize),

    #[error("genome length {got} does not match the parameter census length {expected}")]
    GenomeLengthMismatch { expected: usize, got: usize },

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
