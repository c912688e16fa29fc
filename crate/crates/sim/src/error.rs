use thiserror::Error;
use twirl_core::CoreError;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },
    #[error("matrix dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{n} qubits exceeds the dense limit of {limit}")]
    DenseLimit { n: usize, limit: usize },
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("state is not supported on a single stabiliser eigenspace (residual {residual:.3e})")]
    OutsideCodeSpace { residual: f64 },
    #[error("probability {value} outside [0, 1]")]
    InvalidProbability { value: f64 },
    #[error("invalid density matrix: {reason} (residual {residual:.3e})")]
    InvalidDensity { reason: &'static str, residual: f64 },
    #[error("channel has no Kraus operators")]
    EmptyChannel,
    #[error("twirling set is empty")]
    EmptyTwirlSet,
    #[error("need at least one sample")]
    NoSamples,
    #[error("{got} branch weights for {expected} Kraus operators")]
    WeightCountMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
}
