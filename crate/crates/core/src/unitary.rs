//! The two interaction-unitary families.
//!
//! The protocol's reference gate is `exp(-i lambda (XX + YY))`, the
//! evolution generated by the spin-exchange coupling; only the
//! dimensionless product `lambda = gamma * t` of coupling strength and
//! interaction time ever appears. The optimizer searches instead over
//! a fully general two-qubit unitary written as the exponential of a
//! 15-coefficient Pauli-basis generator.

use crate::error::{Error, Result};
use crate::linalg::{expm_i_hermitian, kron, pauli, unitarity_residual, ComplexMatrix};

/// Number of traceless two-qubit Pauli products.
pub const PAULI_PARAM_DIM: usize = 15;

/// One-parameter XX+YY gate specification.
///
/// A `pi/2` shift in `lambda` changes the gate only by a
/// `sigma_z (x) sigma_z` phase (the nonzero generator eigenvalues are
/// +/-2), which no entanglement measure can see, so `[0, pi/2)` is the
/// canonical range; any finite value is accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxYySpec {
    pub lambda: f64,
}

impl XxYySpec {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::NonFiniteParameter("lambda"));
        }
        Ok(Self { lambda })
    }
}

/// General two-qubit unitary specification: coefficients of the
/// traceless Pauli basis.
///
/// Generator ordering is frozen: `P_k = PAULIS[(k+1)/4] (x)
/// PAULIS[(k+1)%4]` with `PAULIS = [I, X, Y, Z]`, i.e. the row-major
/// enumeration of the 4x4 grid `(I,X,Y,Z) (x) (I,X,Y,Z)` with `I (x) I`
/// excluded. In particular `theta[4]` multiplies `X (x) X` and
/// `theta[9]` multiplies `Y (x) Y`. The optimizer's canonical search
/// box is `|theta_k| <= pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliParamSpec {
    pub theta: [f64; PAULI_PARAM_DIM],
}

impl PauliParamSpec {
    pub fn new(theta: [f64; PAULI_PARAM_DIM]) -> Result<Self> {
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFiniteParameter("theta"));
        }
        Ok(Self { theta })
    }

    /// The spec whose only nonzero coefficients are XX and YY, both set
    /// to `lambda`; builds the same gate as [`build_xxyy`].
    pub fn from_xxyy_lambda(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::NonFiniteParameter("lambda"));
        }
        let mut theta = [0.0; PAULI_PARAM_DIM];
        theta[4] = lambda;
        theta[9] = lambda;
        Ok(Self { theta })
    }
}

/// Either interaction family, as configured for a protocol run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitarySpec {
    XxYy(XxYySpec),
    PauliParam(PauliParamSpec),
}

impl UnitarySpec {
    pub fn build(&self) -> ComplexMatrix {
        match self {
            UnitarySpec::XxYy(spec) => build_xxyy(spec),
            UnitarySpec::PauliParam(spec) => build_pauli_param(spec),
        }
    }
}

/// The `k`-th traceless two-qubit Pauli product in the frozen ordering.
pub fn pauli_generator(k: usize) -> ComplexMatrix {
    assert!(k < PAULI_PARAM_DIM, "generator index {k} out of range");
    let left = pauli((k + 1) / 4);
    let right = pauli((k + 1) % 4);
    kron(&left, &right).expect("4x4 fits")
}

/// `exp(-i lambda (sigma_x (x) sigma_x + sigma_y (x) sigma_y))`.
///
/// Acts as the identity on span{|00>, |11>} and as
/// `cos(2 lambda) I - i sin(2 lambda) sigma_x` on span{|01>, |10>}.
pub fn build_xxyy(spec: &XxYySpec) -> ComplexMatrix {
    let xx = pauli_generator(4);
    let yy = pauli_generator(9);
    let h = xx.add(&yy).expect("same dimension");
    expm_i_hermitian(&h, spec.lambda).expect("XX+YY generator is Hermitian")
}

/// `exp(-i sum_k theta_k P_k)` over the frozen generator ordering.
pub fn build_pauli_param(spec: &PauliParamSpec) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(4);
    for (k, &coeff) in spec.theta.iter().enumerate() {
        if coeff != 0.0 {
            let term = pauli_generator(k).scale(coeff.into());
            h = h.add(&term).expect("same dimension");
        }
    }
    expm_i_hermitian(&h, 1.0).expect("Pauli generator sum is Hermitian")
}

/// Checks `U^dag U = I` to within `tol`; the error carries the max
/// entry residual.
pub fn check_unitary(u: &ComplexMatrix, tol: f64) -> Result<()> {
    let residual = unitarity_residual(u);
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}
