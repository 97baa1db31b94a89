//! Error type shared by all qchan modules.

use thiserror::Error;

/// Errors produced by matrix, channel, circuit, and metric operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operand shapes are incompatible with the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A Hermitian matrix was required.
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    /// A unitary matrix was required.
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    /// A positive semidefinite matrix was required.
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    /// The input failed the density-matrix validity checks.
    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    /// A parameter lies outside its documented range.
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    /// A vector that must be normalized is not.
    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),

    /// The compiler or exporter met a gate it cannot handle.
    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    /// OpenQASM text could not be parsed.
    #[error("QASM parse error at line {line}: {message}")]
    QasmParse { line: usize, message: String },

    /// A channel JSON spec is malformed or names an unsupported family.
    #[error("channel spec error: {0}")]
    ChannelSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
