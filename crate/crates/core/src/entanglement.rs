//! Entanglement quantification and detection.
//!
//! Logarithmic negativity (log base 2 of the partial-transpose trace
//! norm) is the measure used throughout; the PPT predicate gives the
//! matching yes/no test, which for two qubits is necessary and
//! sufficient. Both always work on the full matrix, never on closed
//! forms: the family module's formulas are cross-checked against these
//! routines, not trusted in their place.

use crate::error::{Error, Result};
use crate::linalg::hermitian_eig;
use crate::qstate::{DensityOp, Label};
use crate::tol;

/// Entanglement of one bipartition of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementValue {
    /// Logarithmic negativity in ebits; zero for separable states by
    /// construction (trace norms within `LOG_NEG_CLAMP` of 1 clamp to
    /// exactly 0).
    pub log_negativity: f64,
    /// Smallest eigenvalue of the partial transpose.
    pub min_pt_eigenvalue: f64,
}

/// Logarithmic negativity of `s` across the cut defined by `part`.
///
/// `part` must be a proper nonempty subset of the labels and `s` must
/// be a valid state at [`tol::STATE_VALID`].
pub fn log_negativity(s: &DensityOp, part: &[Label]) -> Result<EntanglementValue> {
    s.validate(tol::STATE_VALID).map_err(Error::from)?;
    let pt = s.partial_transpose(part)?;
    let eig = hermitian_eig(&pt, tol::HERMITICITY)?;
    let trace_norm: f64 = eig.eigenvalues.iter().map(|l| l.abs()).sum();
    let log_negativity = if trace_norm <= 1.0 + tol::LOG_NEG_CLAMP {
        0.0
    } else {
        trace_norm.log2()
    };
    Ok(EntanglementValue {
        log_negativity,
        min_pt_eigenvalue: eig.eigenvalues[0],
    })
}

/// Two-qubit PPT entanglement predicate: true iff the partial
/// transpose has an eigenvalue below `-tol`.
///
/// Restricted to two qubits, where PPT is necessary and sufficient.
/// For larger systems a negative partial transpose would still witness
/// entanglement, but the predicate contract is two-qubit only.
pub fn is_ppt_entangled(s: &DensityOp, part: &[Label], tol: f64) -> Result<bool> {
    if s.qubit_count() != 2 {
        return Err(Error::NotTwoQubit {
            qubits: s.qubit_count(),
        });
    }
    s.validate(crate::tol::STATE_VALID).map_err(Error::from)?;
    let pt = s.partial_transpose(part)?;
    let eig = hermitian_eig(&pt, crate::tol::HERMITICITY)?;
    Ok(eig.eigenvalues[0] < -tol)
}
