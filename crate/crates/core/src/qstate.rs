//! Labeled multi-qubit density operators.
//!
//! A [`DensityOp`] pairs a dense matrix with an ordered list of
//! subsystem labels. Label order maps to tensor-factor order with the
//! most significant bit first: label 0 owns the leftmost factor, which
//! matches the protocol's `rho_C (x) rho_AB (x) rho_D` ordering
//! (C, A, B, D) and the usual |00>, |01>, |10>, |11> basis layout.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, ComplexMatrix};
use crate::tol;

/// Name of one qubit subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub char);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Constraint violated by a would-be density operator, with the
/// magnitude of the violation.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum StateViolation {
    #[error("Hermiticity violated by {0:.3e}")]
    Hermiticity(f64),
    #[error("unit trace violated by {0:.3e}")]
    Trace(f64),
    #[error("positive semidefiniteness violated by {0:.3e}")]
    Positivity(f64),
}

/// Multi-qubit density operator on named subsystems.
///
/// Construction checks structure, Hermiticity, and trace; positive
/// semidefiniteness is preserved by every operation in this crate and
/// can be re-checked with [`DensityOp::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOp {
    labels: Vec<Label>,
    matrix: ComplexMatrix,
}

impl DensityOp {
    pub fn new(labels: Vec<Label>, matrix: ComplexMatrix) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySelection);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.0));
            }
        }
        if matrix.dim() != 1 << labels.len() {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                dim: matrix.dim(),
            });
        }
        let herm = matrix.hermiticity_deviation();
        if herm > tol::HERMITICITY {
            return Err(StateViolation::Hermiticity(herm).into());
        }
        let tr = matrix.trace();
        let tr_dev = (tr.re - 1.0).abs().max(tr.im.abs());
        if tr_dev > tol::HERMITICITY {
            return Err(StateViolation::Trace(tr_dev).into());
        }
        Ok(Self { labels, matrix })
    }

    /// |0><0| on a single labeled qubit.
    pub fn ground(label: Label) -> Self {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        Self {
            labels: vec![label],
            matrix: m,
        }
    }

    /// The maximally entangled pair |phi+><phi+| on two labeled qubits,
    /// with |phi+> = (|00> + |11>)/sqrt(2).
    pub fn bell_phi_plus(a: Label, b: Label) -> Self {
        let half = Complex64::new(0.5, 0.0);
        let mut m = ComplexMatrix::zeros(4);
        m[(0, 0)] = half;
        m[(0, 3)] = half;
        m[(3, 0)] = half;
        m[(3, 3)] = half;
        Self {
            labels: vec![a, b],
            matrix: m,
        }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubit_count(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn position(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| *l == label)
            .ok_or(Error::UnknownLabel(label.0))
    }

    /// Tensor product; labels concatenate in order (`self` then
    /// `other`). Fails on a label collision.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        for l in &other.labels {
            if self.labels.contains(l) {
                return Err(Error::DuplicateLabel(l.0));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let matrix = kron(&self.matrix, &other.matrix)?;
        Ok(Self { labels, matrix })
    }

    /// Traces out the subsystems in `drop`, returning the reduced state
    /// on the remaining labels in their original order.
    pub fn partial_trace(&self, drop: &[Label]) -> Result<Self> {
        if drop.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut drop_pos = self.selection_positions(drop)?;
        // Canonical summation order, so reordering `drop` cannot change
        // the result even at round-off scale.
        drop_pos.sort_unstable();
        if drop_pos.len() == self.labels.len() {
            return Err(Error::TraceAllLabels);
        }
        let keep_pos: Vec<usize> = (0..self.labels.len())
            .filter(|i| !drop_pos.contains(i))
            .collect();
        let k = self.labels.len();
        let kept_labels: Vec<Label> = keep_pos.iter().map(|&i| self.labels[i]).collect();
        let out_dim = 1 << keep_pos.len();
        let sum_dim = 1 << drop_pos.len();
        let mut out = ComplexMatrix::zeros(out_dim);
        for r in 0..out_dim {
            for c in 0..out_dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for m in 0..sum_dim {
                    let row = scatter_bits(r, &keep_pos, k) | scatter_bits(m, &drop_pos, k);
                    let col = scatter_bits(c, &keep_pos, k) | scatter_bits(m, &drop_pos, k);
                    acc += self.matrix[(row, col)];
                }
                out[(r, c)] = acc;
            }
        }
        Ok(Self {
            labels: kept_labels,
            matrix: out,
        })
    }

    /// Transposes the tensor factors named in `part`. Returns a raw
    /// matrix rather than a state: the result is Hermitian with the
    /// same trace but may fail positivity, which is exactly what the
    /// PPT test inspects.
    pub fn partial_transpose(&self, part: &[Label]) -> Result<ComplexMatrix> {
        if part.is_empty() {
            return Err(Error::EmptySelection);
        }
        let part_pos = self.selection_positions(part)?;
        if part_pos.len() == self.labels.len() {
            return Err(Error::TransposeAllLabels);
        }
        let k = self.labels.len();
        let mask: usize = part_pos.iter().map(|&p| 1 << (k - 1 - p)).sum();
        let dim = self.matrix.dim();
        let mut out = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                // Swap the `part` bits between row and column.
                let ni = (i & !mask) | (j & mask);
                let nj = (j & !mask) | (i & mask);
                out[(ni, nj)] = self.matrix[(i, j)];
            }
        }
        Ok(out)
    }

    /// Checks Hermiticity, unit trace, and positive semidefiniteness
    /// within `tol`. Eigenvalues in `(-tol, 0)` count as zero (Jacobi
    /// round-off on physically positive states).
    pub fn validate(&self, tol: f64) -> std::result::Result<(), StateViolation> {
        let herm = self.matrix.hermiticity_deviation();
        if herm > tol {
            return Err(StateViolation::Hermiticity(herm));
        }
        let tr = self.matrix.trace();
        let tr_dev = (tr.re - 1.0).abs().max(tr.im.abs());
        if tr_dev > tol {
            return Err(StateViolation::Trace(tr_dev));
        }
        let eig =
            hermitian_eig(&self.matrix, tol).map_err(|_| StateViolation::Hermiticity(herm))?;
        let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
        if min < -tol {
            return Err(StateViolation::Positivity(-min));
        }
        Ok(())
    }

    fn selection_positions(&self, selection: &[Label]) -> Result<Vec<usize>> {
        let mut positions = Vec::with_capacity(selection.len());
        for l in selection {
            let p = self.position(*l)?;
            if positions.contains(&p) {
                return Err(Error::DuplicateLabel(l.0));
            }
            positions.push(p);
        }
        Ok(positions)
    }
}

/// Spreads the bits of `value` (MSB first) onto the given label
/// positions of a `k`-qubit basis index.
fn scatter_bits(value: usize, positions: &[usize], k: usize) -> usize {
    let mut out = 0;
    for (bit, &pos) in positions.iter().enumerate() {
        if (value >> (positions.len() - 1 - bit)) & 1 == 1 {
            out |= 1 << (k - 1 - pos);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Label = Label('A');
    const B: Label = Label('B');
    const C: Label = Label('C');

    #[test]
    fn ground_tensor_ground_has_single_unit_entry() {
        // The fresh ancilla pair |0><0| (x) |0><0|.
        let cd = DensityOp::ground(C)
            .tensor(&DensityOp::ground(Label('D')))
            .unwrap();
        assert_eq!(cd.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert_eq!(cd.matrix()[(i, j)], Complex64::new(expected, 0.0));
            }
        }
    }

    #[test]
    fn tensor_of_pure_states_is_pure() {
        let s = DensityOp::ground(C)
            .tensor(&DensityOp::bell_phi_plus(A, B))
            .unwrap();
        assert_eq!(s.labels(), &[C, A, B]);
        assert_eq!(s.dim(), 8);
        let sq = s.matrix().mul(s.matrix()).unwrap();
        assert!((sq.trace().re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tensor_rejects_label_collision() {
        let result = DensityOp::ground(A).tensor(&DensityOp::bell_phi_plus(A, B));
        assert!(matches!(result, Err(Error::DuplicateLabel('A'))));
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let bell = DensityOp::bell_phi_plus(A, B);
        let reduced = bell.partial_trace(&[B]).unwrap();
        assert_eq!(reduced.labels(), &[A]);
        let expected = ComplexMatrix::from_real_diag(&[0.5, 0.5]);
        assert!(reduced.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn partial_trace_undoes_tensor() {
        let bell = DensityOp::bell_phi_plus(A, B);
        let joint = bell.tensor(&DensityOp::ground(C)).unwrap();
        let back = joint.partial_trace(&[C]).unwrap();
        assert_eq!(back.labels(), bell.labels());
        assert!(back.matrix().max_abs_diff(bell.matrix()) < 1e-15);
    }

    #[test]
    fn partial_trace_unknown_label() {
        let bell = DensityOp::bell_phi_plus(A, B);
        assert!(matches!(
            bell.partial_trace(&[Label('Z')]),
            Err(Error::UnknownLabel('Z'))
        ));
    }

    #[test]
    fn partial_trace_cannot_drop_everything() {
        let bell = DensityOp::bell_phi_plus(A, B);
        assert!(matches!(
            bell.partial_trace(&[A, B]),
            Err(Error::TraceAllLabels)
        ));
    }

    #[test]
    fn partial_transpose_bell_eigenvalues() {
        let bell = DensityOp::bell_phi_plus(A, B);
        let pt = bell.partial_transpose(&[B]).unwrap();
        let eig = crate::linalg::hermitian_eig(&pt, tol::HERMITICITY).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (l, e) in eig.eigenvalues.iter().zip(expected) {
            assert!((l - e).abs() < 1e-14);
        }
    }

    #[test]
    fn partial_transpose_fixes_product_state() {
        let prod = DensityOp::ground(A).tensor(&DensityOp::ground(B)).unwrap();
        let pt = prod.partial_transpose(&[B]).unwrap();
        assert!(pt.max_abs_diff(prod.matrix()) < 1e-15);
    }

    #[test]
    fn partial_transpose_is_involutive_and_trace_preserving() {
        let bell = DensityOp::bell_phi_plus(A, B);
        let pt = bell.partial_transpose(&[B]).unwrap();
        assert!((pt.trace().re - 1.0).abs() < 1e-15);
        let twice = DensityOp::new(vec![A, B], pt)
            .unwrap()
            .partial_transpose(&[B])
            .unwrap();
        assert!(twice.max_abs_diff(bell.matrix()) < 1e-15);
    }

    #[test]
    fn validate_accepts_bell() {
        assert!(DensityOp::bell_phi_plus(A, B)
            .validate(tol::STATE_EIGEN_FLOOR)
            .is_ok());
    }

    #[test]
    fn validate_reports_positivity_violation() {
        let m = ComplexMatrix::from_real_diag(&[1.5, -0.5]);
        let s = DensityOp::new(vec![A], m).unwrap();
        match s.validate(tol::STATE_EIGEN_FLOOR) {
            Err(StateViolation::Positivity(mag)) => assert!((mag - 0.5).abs() < 1e-14),
            other => panic!("expected positivity violation, got {other:?}"),
        }
    }

    #[test]
    fn new_rejects_bad_trace() {
        let m = ComplexMatrix::from_real_diag(&[0.7, 0.7]);
        assert!(matches!(
            DensityOp::new(vec![A], m),
            Err(Error::InvalidState(StateViolation::Trace(_)))
        ));
    }

    #[test]
    fn new_rejects_wrong_dim() {
        let m = ComplexMatrix::identity(3).scale(Complex64::new(1.0 / 3.0, 0.0));
        assert!(matches!(
            DensityOp::new(vec![A], m),
            Err(Error::LabelCountMismatch { labels: 1, dim: 3 })
        ));
    }
}
