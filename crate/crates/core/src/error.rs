//! Crate-wide error type.

use thiserror::Error;

use crate::qstate::StateViolation;

/// Errors raised by the linear-algebra kernel, state operations, the
/// transfer protocol, and the optimizer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("non-finite parameter `{0}`")]
    NonFiniteParameter(&'static str),

    #[error("matrix dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("entry count {found} does not match dim^2 = {expected}")]
    EntryCountMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge (off-diagonal mass {off_diagonal:.3e})")]
    EigNoConvergence { off_diagonal: f64 },

    #[error("matrix is not unitary (max residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix dimension {dim} does not match {labels} qubit labels")]
    LabelCountMismatch { labels: usize, dim: usize },

    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(char),

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(char),

    #[error("empty subsystem selection")]
    EmptySelection,

    #[error("cannot trace out every subsystem")]
    TraceAllLabels,

    #[error("partial transpose requires a proper subset of the labels")]
    TransposeAllLabels,

    #[error("invalid density operator: {0}")]
    InvalidState(#[from] StateViolation),

    #[error("operation requires a two-qubit state, got {qubits} qubits")]
    NotTwoQubit { qubits: usize },

    #[error("requested {requested} rounds, exceeding the cap of {cap}")]
    RoundCapExceeded { requested: usize, cap: usize },

    #[error("family constraint `{name}` violated by {magnitude:.3e}")]
    FamilyConstraint { name: &'static str, magnitude: f64 },

    #[error("family coefficients a_i are undefined at p = 1")]
    UndefinedAtUnitP,

    #[error("degenerate interaction parameter t = {0} (cos 2t vanishes)")]
    DegenerateT(f64),

    #[error("interaction parameter t = {0} outside [0, pi/4]")]
    TOutOfRange(f64),

    #[error("no feasible t found for {n_target} transfer rounds")]
    NoFeasibleT { n_target: usize },

    #[error("invalid request: {0}")]
    InvalidRequest(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
