use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },

    #[error("matrix holds a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("state is not normalized: norm² = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("register of {0} qubits exceeds the supported maximum of {max}", max = crate::MAX_QUBITS)]
    RegisterTooLarge(usize),

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid qubit subset: {0}")]
    InvalidSubset(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("channel is not trace preserving (completeness defect {defect:.3e})")]
    IncompleteChannel { defect: f64 },

    #[error("channel has {0} operators; a single ancilla qubit supports at most 2")]
    TooManyOperators(usize),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("bloch vector has norm {0} > 1")]
    OutsideBlochBall(f64),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    Format(String),
}
