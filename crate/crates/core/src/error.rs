use thiserror::Error;

/// Errors raised by the simulator and its helpers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Pauli letter {letter:?} at position {position}")]
    InvalidPauliLetter { letter: char, position: usize },
    #[error("qubit count {0} not supported (must be 1..=32)")]
    UnsupportedQubitCount(usize),
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("qubit index {index} out of range 1..={n}")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("qubits {0} and {1} are not nearest neighbours")]
    NotAdjacent(usize, usize),
    #[error("invalid majorana index set: {0}")]
    InvalidSpinor(String),
    #[error("pruning threshold must be non-negative, got {0}")]
    NegativeThreshold(f64),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("not a matchgate: {0}")]
    NotMatchgate(String),
    #[error("Pauli exponential generator must not be the identity")]
    IdentityGenerator,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("instance too large for dense oracle: {0}")]
    TooLarge(String),
    #[error("invalid cut {cut} for circuit with {gates} gates")]
    InvalidCut { cut: usize, gates: usize },
    #[error("mixed input state is not supported by the statevector oracle (qubit {0})")]
    MixedState(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
