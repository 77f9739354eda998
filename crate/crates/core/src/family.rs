//! The diagonal-plus-Bell state family and its transfer dynamics.
//!
//! Every Alice-Bob state reached by the XX+YY protocol from the Bell
//! pair has the form `p |phi+><phi+| + diag(a1, a2, a3, a4) * (1 - p)`.
//! Internally the products `b_i = a_i * (1 - p)` are stored directly:
//! the recurrence relations are exact in the `b_i`, and at `p = 1` the
//! `a_i` are individually undefined while the `b_i` are simply zero, so
//! no division by `q = 1 - p` ever occurs. The `a_i` are exposed only
//! when `q` is safely positive.
//!
//! On top of the recurrence sit the closed-form PPT inequalities and a
//! numerical feasibility verifier: for a requested number of rounds it
//! certifies that every outgoing pair is entangled, checking each round
//! both with the closed-form family route and with a full-matrix
//! simulation, so a transcription error in the inequalities cannot
//! silently certify.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use num_complex::Complex64;

use crate::entanglement::log_negativity;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::protocol::{self, ALICE, BOB, DEBU};
use crate::qstate::DensityOp;
use crate::tol;
use crate::unitary::{build_xxyy, XxYySpec};

/// Parameters of the family state `p |phi+><phi+| + diag(b1..b4)` with
/// `b_i = a_i * (1 - p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    p: f64,
    b: [f64; 4],
}

impl FamilyParams {
    /// Validates the constraint set: `p` in [0, 1], `b2, b3 >= 0`,
    /// normalization `b1 + b2 + b3 + b4 = 1 - p`, and positivity of the
    /// reconstructed matrix (which subsumes the quartic condition on
    /// `b1, b4`).
    pub fn new(p: f64, b: [f64; 4]) -> Result<Self> {
        if !p.is_finite() || b.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteParameter("family parameters"));
        }
        if !(-tol::FAMILY_CONSTRAINT..=1.0 + tol::FAMILY_CONSTRAINT).contains(&p) {
            return Err(Error::FamilyConstraint {
                name: "p in [0, 1]",
                magnitude: if p < 0.0 { -p } else { p - 1.0 },
            });
        }
        if b[1] < -tol::FAMILY_CONSTRAINT {
            return Err(Error::FamilyConstraint {
                name: "b2 >= 0",
                magnitude: -b[1],
            });
        }
        if b[2] < -tol::FAMILY_CONSTRAINT {
            return Err(Error::FamilyConstraint {
                name: "b3 >= 0",
                magnitude: -b[2],
            });
        }
        let sum: f64 = b.iter().sum();
        let norm_dev = (sum - (1.0 - p)).abs();
        if norm_dev > tol::FAMILY_CONSTRAINT {
            return Err(Error::FamilyConstraint {
                name: "b1 + b2 + b3 + b4 = 1 - p",
                magnitude: norm_dev,
            });
        }
        let candidate = Self { p, b };
        if let Err(violation) = candidate.to_density().validate(tol::STATE_VALID) {
            return Err(Error::FamilyConstraint {
                name: "reconstructed state validity",
                magnitude: match violation {
                    crate::qstate::StateViolation::Hermiticity(m)
                    | crate::qstate::StateViolation::Trace(m)
                    | crate::qstate::StateViolation::Positivity(m) => m,
                },
            });
        }
        Ok(candidate)
    }

    /// The Bell pair: `p = 1`, all `b_i = 0`.
    pub fn bell() -> Self {
        Self {
            p: 1.0,
            b: [0.0; 4],
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// The stored products `b_i = a_i * (1 - p)`.
    pub fn b(&self) -> [f64; 4] {
        self.b
    }

    /// The diagonal weights `a_i`, defined only when `q = 1 - p` is
    /// safely positive.
    pub fn a(&self) -> Option<[f64; 4]> {
        let q = 1.0 - self.p;
        if q <= tol::FAMILY_Q_MIN {
            return None;
        }
        Some([self.b[0] / q, self.b[1] / q, self.b[2] / q, self.b[3] / q])
    }

    /// `X = b4 + p/2`, the sign-invariant combination of the
    /// recurrence. Nonnegative for every valid state in this
    /// parameterization, since it equals the (11,11) diagonal entry.
    pub fn x_value(&self) -> f64 {
        self.b[3] + self.p / 2.0
    }

    fn to_density(self) -> DensityOp {
        let h = Complex64::new(self.p / 2.0, 0.0);
        let mut m = ComplexMatrix::zeros(4);
        m[(0, 0)] = Complex64::new(self.p / 2.0 + self.b[0], 0.0);
        m[(1, 1)] = Complex64::new(self.b[1], 0.0);
        m[(2, 2)] = Complex64::new(self.b[2], 0.0);
        m[(3, 3)] = Complex64::new(self.p / 2.0 + self.b[3], 0.0);
        m[(0, 3)] = h;
        m[(3, 0)] = h;
        DensityOp::new(vec![ALICE, BOB], m).expect("family matrix is Hermitian with unit trace")
    }
}

/// Reconstructs the density operator `p |phi+><phi+| + diag(b)` on
/// labels (A, B).
pub fn family_to_density(f: &FamilyParams) -> DensityOp {
    f.to_density()
}

/// One protocol round in parameter space.
///
/// The recurrences in `b`-form, writing `X = b4 + p/2`, `s2 = sin^2 2t`
/// and `c2 = cos^2 2t`:
///
/// ```text
/// p'  = p c2
/// b4' = X c2^2 - p'/2   (= b4 c2^2 - (p/2) c2 s2)
/// b2' = (b2 + X s2) c2
/// b3' = (b3 + X s2) c2
/// b1' = b1 + (p - p')/2 + (b2 + b3) s2 + X s2^2
/// ```
///
/// The `b1'` line and normalization agree identically, so the output
/// satisfies the constraint set whenever the input does. The `b1'` and
/// `b4'` forms are arranged so that `t = 0` is an exact identity.
pub fn recurrence_step(f: &FamilyParams, t: f64) -> Result<FamilyParams> {
    if !t.is_finite() {
        return Err(Error::NonFiniteParameter("t"));
    }
    let s2 = (2.0 * t).sin().powi(2);
    let c2 = (2.0 * t).cos().powi(2);
    let p = f.p;
    let [b1, b2, b3, b4] = f.b;
    let x = b4 + p / 2.0;
    let p_next = p * c2;
    let b4_next = b4 * c2 * c2 - (p / 2.0) * c2 * s2;
    let b2_next = (b2 + x * s2) * c2;
    let b3_next = (b3 + x * s2) * c2;
    let b1_next = b1 + (p - p_next) / 2.0 + (b2 + b3) * s2 + x * s2 * s2;
    FamilyParams::new(p_next, [b1_next, b2_next, b3_next, b4_next])
}

/// Closed-form PPT test for the family state itself: entangled iff
/// `b2 * b3 < (p/2)^2` (the `b`-form of `a2 a3 < [p / 2(1-p)]^2`);
/// a pure Bell component (`p = 1`) is always entangled.
pub fn is_family_entangled(f: &FamilyParams) -> bool {
    if 1.0 - f.p <= tol::FAMILY_Q_MIN {
        return true;
    }
    f.b[1] * f.b[2] < (f.p / 2.0).powi(2)
}

fn require_nondegenerate_cos(t: f64) -> Result<(f64, f64)> {
    if !t.is_finite() {
        return Err(Error::NonFiniteParameter("t"));
    }
    let c = (2.0 * t).cos();
    if c.abs() < tol::DEGENERATE_TRIG {
        return Err(Error::DegenerateT(t));
    }
    Ok(((2.0 * t).sin(), c))
}

fn require_mixed(f: &FamilyParams) -> Result<f64> {
    let q = 1.0 - f.p;
    if q <= tol::FAMILY_Q_MIN {
        return Err(Error::UndefinedAtUnitP);
    }
    Ok(q)
}

/// `chi = [2 a4 + p/(1-p)] cos^2 2t`, the shift entering the PPT
/// condition for the next outgoing pair. Positive whenever the state
/// was reached from the Bell pair with `cos 2t != 0`.
pub fn chi(f: &FamilyParams, t: f64) -> Result<f64> {
    let q = require_mixed(f)?;
    let (_, c) = require_nondegenerate_cos(t)?;
    Ok((2.0 * f.b[3] + f.p) * c * c / q)
}

/// `xi = chi (1 - cos^2 2t sin^2 2t) / cos^2 2t`, the corresponding
/// shift one recurrence step ahead. Always at least `chi`, with the
/// gap vanishing as `t -> 0`.
pub fn xi(f: &FamilyParams, t: f64) -> Result<f64> {
    let q = require_mixed(f)?;
    let (s, c) = require_nondegenerate_cos(t)?;
    let damp = 1.0 - c * c * s * s;
    Ok((2.0 * f.b[3] + f.p) * damp / q)
}

/// Margin of the two-rounds-ahead entanglement condition:
/// `[2 a2 + xi][2 a3 + xi] - [p/(1-p)]^2`. Negative iff the pair after
/// next receives entanglement.
pub fn theorem_condition(f: &FamilyParams, t: f64) -> Result<f64> {
    let q = require_mixed(f)?;
    let xi_val = xi(f, t)?;
    let a2 = f.b[1] / q;
    let a3 = f.b[2] / q;
    let ratio = f.p / q;
    Ok((2.0 * a2 + xi_val) * (2.0 * a3 + xi_val) - ratio * ratio)
}

/// Smallest partial-transpose eigenvalue of the outgoing Charu-Debu
/// pair produced by one round on a family-form parent, in closed form.
///
/// Expanding the round by linearity over the family components gives a
/// CD state that is diagonal except for a `-p sin^2(2t)/2` coupling of
/// |00> and |11>; its partial transpose has one potentially negative
/// eigenvalue, from the central 2x2 block.
pub fn predict_cd_min_pt_eigenvalue(f: &FamilyParams, t: f64) -> f64 {
    let s2 = (2.0 * t).sin().powi(2);
    let c2 = (2.0 * t).cos().powi(2);
    let x = f.x_value();
    let rho01 = s2 * (f.b[1] + c2 * x);
    let rho10 = s2 * (f.b[2] + c2 * x);
    let off = f.p * s2 / 2.0;
    let mid = (rho01 + rho10) / 2.0;
    let gap = ((rho01 - rho10) / 2.0).hypot(off);
    mid - gap
}

/// Logarithmic negativity of the outgoing pair predicted by the family
/// closed form; the value `protocol::run` must reproduce from the full
/// matrix.
pub fn predict_cd_log_negativity(f: &FamilyParams, t: f64) -> f64 {
    let min_eig = predict_cd_min_pt_eigenvalue(f, t);
    let trace_norm = 1.0 + 2.0 * (-min_eig).max(0.0);
    if trace_norm <= 1.0 + tol::LOG_NEG_CLAMP {
        0.0
    } else {
        trace_norm.log2()
    }
}

/// Per-round transferred entanglement along the closed recurrence path
/// from the Bell pair, without any matrix simulation.
pub fn closed_path_e_cd(t: f64, rounds: usize) -> Result<Vec<f64>> {
    let mut f = FamilyParams::bell();
    let mut out = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        out.push(predict_cd_log_negativity(&f, t));
        f = recurrence_step(&f, t)?;
    }
    Ok(out)
}

/// The Remark's branch conditions for parents with `X < 0`, evaluated
/// on raw `(p, b)` values so the formulas stay testable even though no
/// valid state in this parameterization reaches that branch (a valid
/// state has `X >= 0` because `X` is a diagonal matrix entry).
///
/// `a4_branch` is `a4 < p / 2(p-1)`, i.e. `X < 0`. `sin_bound` is
/// `sin^2 2t < (1-p)(a2 + a3) / |a4(1-p) + p/2|`, evaluated in the
/// cross-multiplied form `sin^2 2t * |X| < b2 + b3`.
pub fn remark_conditions_raw(p: f64, b: [f64; 4], t: f64) -> RemarkConditions {
    let x = b[3] + p / 2.0;
    let s2 = (2.0 * t).sin().powi(2);
    RemarkConditions {
        a4_branch: x < 0.0,
        sin_bound: s2 * x.abs() < b[1] + b[2],
    }
}

/// See [`remark_conditions_raw`]; requires a mixed state (`p < 1`).
pub fn remark_conditions(f: &FamilyParams, t: f64) -> Result<RemarkConditions> {
    require_mixed(f)?;
    if !t.is_finite() {
        return Err(Error::NonFiniteParameter("t"));
    }
    Ok(remark_conditions_raw(f.p, f.b, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RemarkConditions {
    /// The `X < 0` branch condition `a4 < p / 2(p-1)`.
    pub a4_branch: bool,
    /// The interaction-strength bound keeping the parent entangled.
    pub sin_bound: bool,
}

/// Proof that `rounds_checked` consecutive pairs all receive
/// entanglement at interaction parameter `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCertificate {
    pub t: f64,
    pub rounds_checked: usize,
    /// Measured transferred entanglement per round, from the
    /// full-matrix simulation.
    pub e_cd: Vec<f64>,
    /// Margins of the two-rounds-ahead condition, one per certified
    /// round from round 3 on; all strictly negative.
    pub lookahead_margins: Vec<f64>,
}

/// First round at which certification failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremFailure {
    pub round: usize,
    pub e_cd: f64,
    pub min_pt_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyOutcome {
    Certified(TheoremCertificate),
    Failed(TheoremFailure),
}

impl VerifyOutcome {
    pub fn certificate(&self) -> Option<&TheoremCertificate> {
        match self {
            VerifyOutcome::Certified(c) => Some(c),
            VerifyOutcome::Failed(_) => None,
        }
    }
}

/// Checks that `n_target` consecutive rounds from the Bell pair all
/// hand an entangled state to their Charu-Debu pair at interaction
/// parameter `t`.
///
/// Each round must pass two independent routes: the closed-form family
/// prediction and the PPT eigenvalue of the fully simulated 16x16
/// round, both below `-`[`tol::PPT_CERTIFY`]. Recorded margins of the
/// two-rounds-ahead inequality must be strictly negative as well.
/// Degenerate parameters (`t = 0`, `t = pi/4`) simply fail at the
/// first affected round; values outside `[0, pi/4]` are rejected.
pub fn verify_theorem(n_target: usize, t: f64) -> Result<VerifyOutcome> {
    if n_target == 0 {
        return Err(Error::InvalidRequest("n_target must be at least 1"));
    }
    if !t.is_finite() {
        return Err(Error::NonFiniteParameter("t"));
    }
    if !(0.0..=FRAC_PI_4).contains(&t) {
        return Err(Error::TOutOfRange(t));
    }
    let u = build_xxyy(&XxYySpec { lambda: t });
    let mut fam = FamilyParams::bell();
    let mut rho_ab = DensityOp::bell_phi_plus(ALICE, BOB);
    let mut e_cd = Vec::with_capacity(n_target);
    let mut lookahead_margins = Vec::new();

    for round in 1..=n_target {
        let (next_ab, rho_cd) = protocol::step(&rho_ab, &u)?;
        let measured = log_negativity(&rho_cd, &[DEBU])?;
        let predicted_min = predict_cd_min_pt_eigenvalue(&fam, t);
        let matrix_route = measured.min_pt_eigenvalue < -tol::PPT_CERTIFY;
        let family_route = predicted_min < -tol::PPT_CERTIFY;
        if !matrix_route || !family_route {
            return Ok(VerifyOutcome::Failed(TheoremFailure {
                round,
                e_cd: measured.log_negativity,
                min_pt_eigenvalue: measured.min_pt_eigenvalue.max(predicted_min),
            }));
        }
        e_cd.push(measured.log_negativity);

        let next_fam = recurrence_step(&fam, t)?;
        if round >= 2 && round < n_target {
            // fam is the parent before this round; its margin decides
            // the pair after next.
            let margin = theorem_condition(&fam, t)?;
            if margin >= 0.0 {
                return Ok(VerifyOutcome::Failed(TheoremFailure {
                    round: round + 1,
                    e_cd: predict_cd_log_negativity(&next_fam, t),
                    min_pt_eigenvalue: predict_cd_min_pt_eigenvalue(&next_fam, t),
                }));
            }
            lookahead_margins.push(margin);
        }
        fam = next_fam;
        rho_ab = next_ab;
    }
    Ok(VerifyOutcome::Certified(TheoremCertificate {
        t,
        rounds_checked: n_target,
        e_cd,
        lookahead_margins,
    }))
}

/// Searches for the largest `t` in `(0, pi/8]` that certifies
/// `n_target` rounds: a geometric grid scan from `pi/8` downward finds
/// the first certifying point, then bisection against the next-larger
/// failing grid point pushes the bound upward. Fully deterministic.
pub fn find_t(n_target: usize) -> Result<(f64, TheoremCertificate)> {
    const RATIO: f64 = 0.75;
    const GRID_STEPS: i32 = 60;
    const BISECT_ITERS: usize = 40;

    if n_target == 0 {
        return Err(Error::InvalidRequest("n_target must be at least 1"));
    }
    let mut found: Option<(i32, f64, TheoremCertificate)> = None;
    for k in 0..=GRID_STEPS {
        let t = FRAC_PI_8 * RATIO.powi(k);
        if let VerifyOutcome::Certified(cert) = verify_theorem(n_target, t)? {
            found = Some((k, t, cert));
            break;
        }
    }
    let Some((k, mut lo, mut cert)) = found else {
        return Err(Error::NoFeasibleT { n_target });
    };
    if k == 0 {
        return Ok((lo, cert));
    }
    let mut hi = FRAC_PI_8 * RATIO.powi(k - 1);
    for _ in 0..BISECT_ITERS {
        if hi - lo < 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match verify_theorem(n_target, mid)? {
            VerifyOutcome::Certified(c) => {
                lo = mid;
                cert = c;
            }
            VerifyOutcome::Failed(_) => hi = mid,
        }
    }
    Ok((lo, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_and_mixed_reconstruction() {
        let bell = family_to_density(&FamilyParams::bell());
        assert!(
            bell.matrix()
                .max_abs_diff(DensityOp::bell_phi_plus(ALICE, BOB).matrix())
                == 0.0
        );

        let mixed = FamilyParams::new(0.0, [0.25; 4]).unwrap();
        let expected = ComplexMatrix::from_real_diag(&[0.25; 4]);
        assert!(family_to_density(&mixed).matrix().max_abs_diff(&expected) == 0.0);
    }

    #[test]
    fn one_step_from_bell_matches_printed_matrix() {
        for &t in &[0.1, 0.35, 0.6] {
            let f = recurrence_step(&FamilyParams::bell(), t).unwrap();
            assert!((f.p() - (2.0 * t).cos().powi(2)).abs() < 1e-15);
            let reconstructed = family_to_density(&f);
            let printed = protocol::round1_ab_closed_form(t);
            assert!(
                reconstructed.matrix().max_abs_diff(&printed) < 1e-14,
                "t = {t}"
            );
        }
    }

    #[test]
    fn recurrence_at_zero_is_identity() {
        let f = FamilyParams::new(0.5, [0.2, 0.1, 0.15, 0.05]).unwrap();
        let g = recurrence_step(&f, 0.0).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn entanglement_predicate_examples() {
        assert!(is_family_entangled(&FamilyParams::bell()));
        assert!(!is_family_entangled(
            &FamilyParams::new(0.0, [0.25; 4]).unwrap()
        ));
        let one_step = recurrence_step(&FamilyParams::bell(), 0.1).unwrap();
        assert!(is_family_entangled(&one_step));
    }

    #[test]
    fn predicate_agrees_with_matrix_ppt() {
        let one_step = recurrence_step(&FamilyParams::bell(), 0.1).unwrap();
        let matrix_route = crate::entanglement::is_ppt_entangled(
            &family_to_density(&one_step),
            &[BOB],
            tol::PPT_DETECT,
        )
        .unwrap();
        assert_eq!(is_family_entangled(&one_step), matrix_route);
    }

    #[test]
    fn chi_stays_positive_along_the_bell_path() {
        // The X > 0 sign argument: every state reached from the Bell
        // pair keeps chi positive.
        for &t in &[0.05, 0.2, 0.35] {
            let mut f = recurrence_step(&FamilyParams::bell(), t).unwrap();
            for _ in 0..30 {
                assert!(chi(&f, t).unwrap() > 0.0, "t = {t}");
                f = recurrence_step(&f, t).unwrap();
            }
        }
    }

    #[test]
    fn chi_xi_relations() {
        let f = recurrence_step(&FamilyParams::bell(), 0.1).unwrap();
        let c = chi(&f, 0.1).unwrap();
        let x = xi(&f, 0.1).unwrap();
        assert!(c > 0.0);
        assert!(x >= c);
        let two_t = 0.2f64;
        let expected_ratio =
            (1.0 - two_t.cos().powi(2) * two_t.sin().powi(2)) / two_t.cos().powi(2);
        assert!((x / c - expected_ratio).abs() < 1e-12);

        // The gap closes quadratically as t -> 0.
        let tiny = xi(&f, 1e-5).unwrap() - chi(&f, 1e-5).unwrap();
        assert!(tiny.abs() < 1e-8);
    }

    #[test]
    fn chi_undefined_at_bell_or_degenerate_t() {
        assert!(matches!(
            chi(&FamilyParams::bell(), 0.1),
            Err(Error::UndefinedAtUnitP)
        ));
        let f = recurrence_step(&FamilyParams::bell(), 0.1).unwrap();
        assert!(matches!(chi(&f, FRAC_PI_4), Err(Error::DegenerateT(_))));
        assert!(matches!(
            theorem_condition(&f, FRAC_PI_4),
            Err(Error::DegenerateT(_))
        ));
    }

    #[test]
    fn theorem_condition_negative_at_small_t() {
        let f = recurrence_step(&FamilyParams::bell(), 0.1).unwrap();
        assert!(theorem_condition(&f, 0.1).unwrap() < 0.0);
    }

    #[test]
    fn closed_form_round_formulas() {
        // Round 1 and round 2 of the closed path are the published
        // trigonometric expressions.
        for &t in &[0.1, 0.25, std::f64::consts::FRAC_PI_8] {
            let path = closed_path_e_cd(t, 2).unwrap();
            assert!((path[0] - protocol::round1_closed_form(t)).abs() < 1e-12);
            assert!((path[1] - protocol::round2_closed_form(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn remark_branch_is_vacuous_for_valid_states() {
        // X = b4 + p/2 is the (11,11) entry of the reconstruction, so a
        // valid state can never reach the X < 0 branch.
        assert!(FamilyParams::new(0.5, [0.6, 0.1, 0.1, -0.3]).is_err());

        // Formula-level checks on raw parameters.
        let raw = remark_conditions_raw(0.5, [0.6, 0.1, 0.1, -0.3], 0.2);
        assert!(raw.a4_branch);
        let valid = recurrence_step(&FamilyParams::bell(), 0.3).unwrap();
        let conds = remark_conditions(&valid, 0.2).unwrap();
        assert!(!conds.a4_branch);
        // t = 0 satisfies the sin bound whenever b2 + b3 > 0.
        assert!(remark_conditions(&valid, 0.0).unwrap().sin_bound);
    }

    #[test]
    fn verify_small_cases() {
        assert!(matches!(
            verify_theorem(1, 0.3).unwrap(),
            VerifyOutcome::Certified(_)
        ));
        match verify_theorem(1, 0.0).unwrap() {
            VerifyOutcome::Failed(f) => assert_eq!(f.round, 1),
            other => panic!("expected failure at round 1, got {other:?}"),
        }
        assert!(matches!(verify_theorem(1, 1.0), Err(Error::TOutOfRange(_))));
    }

    #[test]
    fn verify_deep_case_has_negative_margins() {
        match verify_theorem(20, 0.15).unwrap() {
            VerifyOutcome::Certified(cert) => {
                assert_eq!(cert.rounds_checked, 20);
                assert_eq!(cert.e_cd.len(), 20);
                assert_eq!(cert.lookahead_margins.len(), 18);
                assert!(cert.e_cd.iter().all(|&e| e > 0.0));
                assert!(cert.lookahead_margins.iter().all(|&m| m < 0.0));
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn find_t_simple_cases() {
        let (t, cert) = find_t(1).unwrap();
        assert!((t - FRAC_PI_8).abs() < 1e-15);
        assert_eq!(cert.rounds_checked, 1);

        let (t10, _) = find_t(10).unwrap();
        let (t25, _) = find_t(25).unwrap();
        assert!(t10 >= t25);
        assert!(t25 > 0.0);
    }
}
