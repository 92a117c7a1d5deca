use thiserror::Error;

/// Errors produced by symbol, channel and oracle operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coefficients for n = {n}, got {got}")]
    DimensionMismatch { n: usize, expected: usize, got: usize },

    #[error("dimension n = {0} out of supported range [{1}, {2}]")]
    DimensionOutOfRange(usize, usize, usize),

    #[error("odd-dimension matrix realization unsupported (n = {0})")]
    OddDimension(usize),

    #[error("no matrix realization attached to this channel")]
    MissingMatrixRealization,

    #[error("matrix size mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    MatrixSizeMismatch { expected: usize, rows: usize, cols: usize },

    #[error("subset bitmask {mask:#x} out of range for n = {n}")]
    SubsetOutOfRange { mask: usize, n: usize },

    #[error("invalid exponent p = {0}: must be >= 1 (or infinity)")]
    InvalidExponent(f64),

    #[error("invalid exponent p = {0}: formula requires p > 1")]
    ExponentNotAboveOne(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("function is not real-valued (max imaginary part {0:.3e})")]
    NotRealValued(f64),

    #[error("not a quantum-channel symbol: {0}")]
    NotChannelSymbol(String),

    #[error("not a quantum channel (requires complete positivity and trace preservation)")]
    NotQuantumChannel,

    #[error("invalid density operator: {0}")]
    InvalidDensityOperator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
