use alloc::string::String;
use core::fmt;

/// Errors reported by the construction pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Two operands act on different numbers of qubits.
    QubitCountMismatch { left: usize, right: usize },
    /// Qubit count is zero or beyond the supported cap.
    UnsupportedQubitCount { n: usize },
    /// A Pauli literal could not be parsed.
    Parse { message: String },
    /// An operation that needs at least one element was given none.
    EmptyInput,
    /// The constraint rows passed to the generator solver are linearly
    /// dependent or contradictory.
    InconsistentConstraints,
    /// The abstract group is too small to hold the basis injectively.
    MappingCapacity { elements: usize, n_bits: usize },
    /// A composite element references a generator outside the declared
    /// relation set.
    RelationOutsideVs,
    /// Enumerating the span would allocate more elements than supported.
    SpanTooLarge { generators: usize, max: usize },
    /// The provided stabilisers do not commute pairwise.
    NonCommutingStabilisers,
    /// An internal construction invariant failed; indicates a bug, not bad
    /// input.
    ConstructionInvariant { message: String },
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::QubitCountMismatch { left, right } => {
                write!(f, "qubit count mismatch: {left} vs {right}")
            }
            CoreError::UnsupportedQubitCount { n } => {
                write!(f, "unsupported qubit count {n}")
            }
            CoreError::Parse { message } => write!(f, "parse error: {message}"),
            CoreError::EmptyInput => write!(f, "input must not be empty"),
            CoreError::InconsistentConstraints => {
                write!(f, "constraints are dependent or contradictory")
            }
            CoreError::MappingCapacity { elements, n_bits } => write!(
                f,
                "cannot map {elements} elements into a group on {n_bits} generators"
            ),
            CoreError::RelationOutsideVs => {
                write!(f, "composition relation uses a generator outside the relation set")
            }
            CoreError::SpanTooLarge { generators, max } => {
                write!(f, "span of {generators} generators exceeds the cap of 2^{max} elements")
            }
            CoreError::NonCommutingStabilisers => {
                write!(f, "stabilisers must commute pairwise")
            }
            CoreError::ConstructionInvariant { message } => {
                write!(f, "construction invariant violated: {message}")
            }
        }
    }
}

impl core::error::Error for CoreError {}
