//! Sequential entanglement-transfer simulator.
//!
//! A Bell pair held by Alice and Bob is tapped, round after round, by
//! fresh Charu-Debu ancilla pairs through joint local unitaries
//! `U_CA (x) U_BD`. The crate provides:
//!
//! - a dense complex matrix kernel with a Jacobi eigensolver
//!   ([`linalg`]),
//! - labeled multi-qubit density operators with partial trace and
//!   partial transpose ([`qstate`]),
//! - logarithmic negativity and the two-qubit PPT entanglement
//!   predicate ([`entanglement`]),
//! - the XX+YY interaction gate and a 15-parameter general two-qubit
//!   unitary ([`unitary`]),
//! - the sequential transfer engine ([`protocol`]),
//! - the diagonal-plus-Bell state family, its recurrence dynamics, and
//!   a numerical feasibility verifier ([`family`]),
//! - a derivative-free multistart optimizer maximizing the number of
//!   pairs that receive at least `2^-x` ebits ([`optimizer`]).
//!
//! All values are immutable after construction and all operations are
//! pure functions, so everything is safe to share across threads.

pub mod entanglement;
pub mod error;
pub mod family;
pub mod linalg;
pub mod optimizer;
pub mod protocol;
pub mod qstate;
pub mod random;
pub mod tol;
pub mod unitary;

pub use error::{Error, Result};
pub use linalg::{kron, ComplexMatrix};
pub use qstate::{DensityOp, Label};
