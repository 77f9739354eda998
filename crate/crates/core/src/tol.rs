//! Centralized numerical tolerances.
//!
//! Every threshold used by the library is defined here so that the
//! numeric contracts stay in one place. Operations that take an explicit
//! `tol` argument default to these values at call sites.

/// Largest matrix dimension the dense kernel supports. The protocol
/// never needs more than four qubits (16x16).
pub const MAX_DIM: usize = 16;

/// Convergence threshold for the cyclic Jacobi eigensolver: iteration
/// stops once the Frobenius mass of the off-diagonal part drops below
/// this value.
pub const JACOBI_OFF_DIAG: f64 = 1e-14;

/// Round-off floor for the Jacobi sweep. If the off-diagonal mass
/// stalls above `JACOBI_OFF_DIAG` but below this relative bound the
/// decomposition is still accepted; the reconstruction residual
/// contract (`EIG_RESIDUAL`) remains satisfied with margin.
pub const JACOBI_OFF_DIAG_FLOOR_REL: f64 = 1e-13;

/// Maximum number of Jacobi sweeps before reporting non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigendecomposition reconstruction residual, relative to `max|A|`.
pub const EIG_RESIDUAL: f64 = 1e-12;

/// Hermiticity check threshold (max entry deviation from the adjoint).
pub const HERMITICITY: f64 = 1e-10;

/// Unitarity check threshold (max entry deviation of `U^dag U` from I).
pub const UNITARITY: f64 = 1e-10;

/// Density-operator validity: trace deviation and eigenvalue floor.
/// Eigenvalues in `(-STATE_EIGEN_FLOOR, 0)` are treated as exact zeros;
/// this absorbs Jacobi round-off on physically positive states.
pub const STATE_EIGEN_FLOOR: f64 = 1e-10;

/// Default tolerance for full state validation (Hermiticity, trace,
/// positivity) of protocol inputs and outputs.
pub const STATE_VALID: f64 = 1e-9;

/// Zero clamp for logarithmic negativity: a partial-transpose trace
/// norm in `[0, 1 + LOG_NEG_CLAMP]` reports exactly zero ebits, so
/// separable states measure 0 despite round-off.
pub const LOG_NEG_CLAMP: f64 = 1e-12;

/// Default threshold for the two-qubit PPT entanglement predicate: a
/// state counts as entangled when the minimum partial-transpose
/// eigenvalue lies below `-PPT_DETECT`.
pub const PPT_DETECT: f64 = 1e-9;

/// Stricter negativity threshold used by the feasibility verifier.
/// Comfortably above eigensolver noise (~1e-15) while letting the
/// verifier certify deep rounds whose negativity has decayed far
/// below `PPT_DETECT`.
pub const PPT_CERTIFY: f64 = 1e-12;

/// Slack applied when comparing a per-round entanglement value against
/// the `2^-x` threshold, so that exact boundary cases (e.g. a full
/// one-ebit transfer at the `x = 0` threshold) are not lost to
/// round-off in the trace norm.
pub const COUNT_THRESHOLD_SLACK: f64 = 1e-9;

/// Below this value of `q = 1 - p` the family coefficients `a_i = b_i/q`
/// are considered undefined and only the `b`-form is exposed.
pub const FAMILY_Q_MIN: f64 = 1e-12;

/// Tolerance on the family normalization constraint
/// `b1 + b2 + b3 + b4 = 1 - p` and on the sign constraints for b2, b3.
pub const FAMILY_CONSTRAINT: f64 = 1e-12;

/// `t` values with `|cos 2t|` or `|sin 2t|` below this bound are
/// treated as degenerate by the family inequalities.
pub const DEGENERATE_TRIG: f64 = 1e-12;

/// Hard cap on protocol rounds; saturation is flagged, never silent.
pub const MAX_ROUNDS: usize = 10_000;

/// Simplex diameter below which Nelder-Mead terminates.
pub const SIMPLEX_DIAMETER: f64 = 1e-6;
