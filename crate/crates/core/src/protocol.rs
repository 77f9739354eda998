//! The sequential transfer engine.
//!
//! Each round couples a fresh ancilla pair, prepared in
//! `|0><0| (x) |0><0|`, to the current Alice-Bob state by the joint
//! local unitary `U (x) U` acting on (Charu, Alice) and (Bob, Debu)
//! respectively, then splits the four-qubit state back into the new
//! Alice-Bob state and the outgoing Charu-Debu pair. The same gate is
//! used on both sides and in every round; per-round gate schedules are
//! out of scope.

use crate::entanglement::log_negativity;
use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};
use crate::qstate::{DensityOp, Label};
use crate::tol;
use crate::unitary::{check_unitary, UnitarySpec, XxYySpec};

pub const CHARU: Label = Label('C');
pub const ALICE: Label = Label('A');
pub const BOB: Label = Label('B');
pub const DEBU: Label = Label('D');

/// Configuration of a protocol run.
#[derive(Debug, Clone)]
pub struct ProtocolConfig {
    /// Alice-Bob resource state; defaults to the Bell pair.
    pub initial_ab: DensityOp,
    /// Interaction gate, shared by both sides and all rounds.
    pub unitary: UnitarySpec,
    /// Hard cap on rounds for this configuration.
    pub max_rounds: usize,
    /// Threshold exponent `x`; a round succeeds while the transferred
    /// entanglement stays at or above `2^-x`.
    pub threshold_exponent: f64,
}

impl ProtocolConfig {
    pub fn new(unitary: UnitarySpec) -> Self {
        Self {
            initial_ab: DensityOp::bell_phi_plus(ALICE, BOB),
            unitary,
            max_rounds: tol::MAX_ROUNDS,
            threshold_exponent: 0.0,
        }
    }

    pub fn with_xxyy(lambda: f64) -> Result<Self> {
        Ok(Self::new(UnitarySpec::XxYy(XxYySpec::new(lambda)?)))
    }
}

/// Entanglement bookkeeping for one round.
#[derive(Debug, Clone)]
pub struct RoundRecord {
    /// Round index, starting at 1.
    pub round: usize,
    /// Ebits received by this round's Charu-Debu pair.
    pub e_cd: f64,
    /// Ebits left between Alice and Bob after the round.
    pub e_ab: f64,
    /// Alice-Bob state after the round.
    pub rho_ab: DensityOp,
}

/// Full run history.
#[derive(Debug, Clone)]
pub struct ProtocolTrace {
    pub config: ProtocolConfig,
    /// Records for rounds 1..=n, contiguous.
    pub records: Vec<RoundRecord>,
}

/// Result of counting consecutive above-threshold transfers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCount {
    /// Number of consecutive rounds from the start whose transferred
    /// entanglement met the threshold.
    pub pairs: usize,
    /// True when the round cap was reached without a failing round.
    pub saturated: bool,
    /// Transferred entanglement at the first failing round; 0 when
    /// saturated. Gives optimizers a continuous signal past the count.
    pub failing_e_cd: f64,
}

/// One interaction round.
///
/// Builds `rho_C (x) rho_AB (x) rho_D` on labels (C, A, B, D) with both
/// ancillas in `|0><0|`, applies `U (x) U`, and returns the two reduced
/// states `(rho_AB', rho_CD)`.
pub fn step(rho_ab: &DensityOp, u: &ComplexMatrix) -> Result<(DensityOp, DensityOp)> {
    if rho_ab.qubit_count() != 2 {
        return Err(Error::NotTwoQubit {
            qubits: rho_ab.qubit_count(),
        });
    }
    rho_ab.validate(tol::STATE_VALID).map_err(Error::from)?;
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: 4,
        });
    }
    check_unitary(u, tol::UNITARITY)?;

    let ab_labels = rho_ab.labels().to_vec();
    let joint = DensityOp::ground(CHARU)
        .tensor(rho_ab)?
        .tensor(&DensityOp::ground(DEBU))?;
    let u16 = kron(u, u)?;
    let evolved = joint.matrix().conjugate_by(&u16)?;
    let evolved = DensityOp::new(joint.labels().to_vec(), evolved)?;

    let rho_ab_next = evolved.partial_trace(&[CHARU, DEBU])?;
    let rho_cd = evolved.partial_trace(&ab_labels)?;
    Ok((rho_ab_next, rho_cd))
}

/// Runs the protocol for the given number of rounds, recording the
/// logarithmic negativity of each outgoing pair and of the remaining
/// Alice-Bob state.
pub fn run(config: &ProtocolConfig, rounds: usize) -> Result<ProtocolTrace> {
    if rounds > config.max_rounds || rounds > tol::MAX_ROUNDS {
        return Err(Error::RoundCapExceeded {
            requested: rounds,
            cap: config.max_rounds.min(tol::MAX_ROUNDS),
        });
    }
    let u = config.unitary.build();
    let mut rho_ab = config.initial_ab.clone();
    let mut records = Vec::with_capacity(rounds);
    for round in 1..=rounds {
        let (next_ab, rho_cd) = step(&rho_ab, &u)?;
        let e_cd = log_negativity(&rho_cd, &[DEBU])?.log_negativity;
        let ab_cut = [next_ab.labels()[1]];
        let e_ab = log_negativity(&next_ab, &ab_cut)?.log_negativity;
        records.push(RoundRecord {
            round,
            e_cd,
            e_ab,
            rho_ab: next_ab.clone(),
        });
        rho_ab = next_ab;
    }
    Ok(ProtocolTrace {
        config: config.clone(),
        records,
    })
}

/// Counts how many consecutive Charu-Debu pairs receive at least
/// `2^-x` ebits, starting from the Bell pair and stopping at the first
/// round that falls short (rounds past the failure are not inspected)
/// or at `cap` with the saturation flag set.
pub fn count_pairs(u: &ComplexMatrix, x: f64, cap: usize) -> Result<PairCount> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::NonFiniteParameter("x"));
    }
    let cap = cap.min(tol::MAX_ROUNDS);
    let threshold = (-x).exp2();
    let mut rho_ab = DensityOp::bell_phi_plus(ALICE, BOB);
    let mut pairs = 0;
    for _ in 0..cap {
        let (next_ab, rho_cd) = step(&rho_ab, u)?;
        let e_cd = log_negativity(&rho_cd, &[DEBU])?.log_negativity;
        if e_cd + tol::COUNT_THRESHOLD_SLACK < threshold {
            return Ok(PairCount {
                pairs,
                saturated: false,
                failing_e_cd: e_cd,
            });
        }
        pairs += 1;
        rho_ab = next_ab;
    }
    Ok(PairCount {
        pairs,
        saturated: true,
        failing_e_cd: 0.0,
    })
}

/// One sweep row: entanglement bookkeeping for round `round` of the
/// run at interaction strength `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub round: usize,
    pub e_cd: f64,
    pub e_ab: f64,
}

/// One run per grid point with the XX+YY gate at that strength
/// (the configured unitary is overridden per point); rows are ordered
/// by grid position, then round.
pub fn sweep(config: &ProtocolConfig, lambda_grid: &[f64], rounds: usize) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(lambda_grid.len() * rounds);
    for &lambda in lambda_grid {
        let point = ProtocolConfig {
            initial_ab: config.initial_ab.clone(),
            unitary: UnitarySpec::XxYy(XxYySpec::new(lambda)?),
            max_rounds: config.max_rounds,
            threshold_exponent: config.threshold_exponent,
        };
        let trace = run(&point, rounds)?;
        for record in &trace.records {
            rows.push(SweepRow {
                lambda,
                round: record.round,
                e_cd: record.e_cd,
                e_ab: record.e_ab,
            });
        }
    }
    Ok(rows)
}

/// Round-1 transferred entanglement for the XX+YY gate:
/// `log2((11 - 4 cos 4l + cos 8l)/8)`, which simplifies to
/// `log2(1 + sin^4 2l)`.
pub fn round1_closed_form(lambda: f64) -> f64 {
    ((11.0 - 4.0 * (4.0 * lambda).cos() + (8.0 * lambda).cos()) / 8.0).log2()
}

/// Round-2 transferred entanglement for the XX+YY gate:
/// `log2((131 - 4 cos 8l + cos 16l)/128)`.
pub fn round2_closed_form(lambda: f64) -> f64 {
    ((131.0 - 4.0 * (8.0 * lambda).cos() + (16.0 * lambda).cos()) / 128.0).log2()
}

/// The Alice-Bob state after one round on the Bell pair, in closed
/// form: diagonal `((1+s^4)/2, s^2 c^2/2, s^2 c^2/2, c^4/2)` plus
/// `c^2/2` on the (00,11) corner, with `s = sin 2l`, `c = cos 2l`.
pub fn round1_ab_closed_form(lambda: f64) -> ComplexMatrix {
    let s2 = (2.0 * lambda).sin().powi(2);
    let c2 = (2.0 * lambda).cos().powi(2);
    let mut m = ComplexMatrix::zeros(4);
    m[(0, 0)] = ((1.0 + s2 * s2) / 2.0).into();
    m[(1, 1)] = (s2 * c2 / 2.0).into();
    m[(2, 2)] = (s2 * c2 / 2.0).into();
    m[(3, 3)] = (c2 * c2 / 2.0).into();
    m[(0, 3)] = (c2 / 2.0).into();
    m[(3, 0)] = (c2 / 2.0).into();
    m
}
