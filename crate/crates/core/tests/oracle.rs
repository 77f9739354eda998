//! Cross-route oracle checks: every closed form is pitted against the
//! full-matrix simulation, and the detection predicate against the
//! measure, on large seeded samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use entxfer::entanglement::{is_ppt_entangled, log_negativity};
use entxfer::family::{
    closed_path_e_cd, family_to_density, is_family_entangled, recurrence_step, theorem_condition,
};
use entxfer::linalg::kron;
use entxfer::protocol::{
    self, count_pairs, round1_closed_form, round2_closed_form, step, ProtocolConfig, ALICE, BOB,
    CHARU, DEBU,
};
use entxfer::qstate::DensityOp;
use entxfer::random::{random_family_params, random_separable_state, random_two_qubit_state};
use entxfer::tol;
use entxfer::unitary::{build_xxyy, XxYySpec};

#[test]
fn family_recurrence_matches_full_simulation() {
    // The closed recurrence and the 16x16 simulation must walk the
    // same path, elementwise, round after round.
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..1000 {
        let f = random_family_params(&mut rng);
        let t = rng.gen_range(0.01..0.7);
        let u = build_xxyy(&XxYySpec::new(t).unwrap());
        let stepped = recurrence_step(&f, t).unwrap();
        let (simulated, _) = step(&family_to_density(&f), &u).unwrap();
        let diff = family_to_density(&stepped)
            .matrix()
            .max_abs_diff(simulated.matrix());
        assert!(diff < 1e-9, "recurrence drifted by {diff}");
    }
}

#[test]
fn predicted_outgoing_entanglement_matches_simulation() {
    // The closed-form prediction of the outgoing pair's entanglement
    // must agree with the measured value on arbitrary family parents.
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for _ in 0..500 {
        let f = random_family_params(&mut rng);
        let t = rng.gen_range(0.01..0.7);
        let u = build_xxyy(&XxYySpec::new(t).unwrap());
        let (_, rho_cd) = step(&family_to_density(&f), &u).unwrap();
        let measured = log_negativity(&rho_cd, &[DEBU]).unwrap();
        let predicted = entxfer::family::predict_cd_log_negativity(&f, t);
        assert!(
            (measured.log_negativity - predicted).abs() < 1e-9,
            "prediction drifted: {} vs {} at t = {t}",
            measured.log_negativity,
            predicted
        );
    }
}

#[test]
fn family_predicate_matches_matrix_ppt() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..1000 {
        let f = random_family_params(&mut rng);
        let closed_form = is_family_entangled(&f);
        let matrix = is_ppt_entangled(&family_to_density(&f), &[BOB], tol::PPT_DETECT).unwrap();
        assert_eq!(closed_form, matrix, "family params {f:?}");
    }
}

#[test]
fn ppt_predicate_matches_measure() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..1000 {
        let s = random_two_qubit_state(&mut rng, ALICE, BOB);
        let detected = is_ppt_entangled(&s, &[BOB], tol::PPT_DETECT).unwrap();
        let measured = log_negativity(&s, &[BOB]).unwrap().log_negativity > 1e-9;
        assert_eq!(detected, measured);
    }
}

#[test]
fn separable_states_measure_exactly_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..1000 {
        let s = random_separable_state(&mut rng, ALICE, BOB);
        assert_eq!(log_negativity(&s, &[BOB]).unwrap().log_negativity, 0.0);
    }
}

#[test]
fn zero_clamp_is_consistent_with_the_pt_eigenvalue() {
    // A two-qubit partial transpose has at most one negative
    // eigenvalue, so the measure clamps to zero exactly when the
    // minimum eigenvalue sits above -LOG_NEG_CLAMP/2.
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let threshold = -tol::LOG_NEG_CLAMP / 2.0;
    for _ in 0..1000 {
        let s = if rng.gen_bool(0.5) {
            random_two_qubit_state(&mut rng, ALICE, BOB)
        } else {
            random_separable_state(&mut rng, ALICE, BOB)
        };
        let e = log_negativity(&s, &[BOB]).unwrap();
        assert_eq!(e.log_negativity > 0.0, e.min_pt_eigenvalue < threshold);
        assert!(e.log_negativity >= 0.0);
    }
}

#[test]
fn protocol_matches_closed_path_for_fifty_rounds() {
    for &t in &[0.05, 0.1, 0.22] {
        let config = ProtocolConfig::with_xxyy(t).unwrap();
        let trace = protocol::run(&config, 50).unwrap();
        let predicted = closed_path_e_cd(t, 50).unwrap();
        for (record, expected) in trace.records.iter().zip(&predicted) {
            assert!(
                (record.e_cd - expected).abs() < 1e-9,
                "round {} at t = {t}",
                record.round
            );
        }
    }
}

#[test]
fn count_pairs_matches_recurrence_prediction() {
    // Direct simulation against the closed-path count at lambda = 0.1.
    // At x = 8 the first round already falls short; by x = 10 a run of
    // successes builds up. Both counts must match the recurrence.
    let t = 0.1;
    let u = build_xxyy(&XxYySpec::new(t).unwrap());
    let path = closed_path_e_cd(t, 1000).unwrap();
    for x in [8.0, 10.0] {
        let simulated = count_pairs(&u, x, 1000).unwrap();
        let threshold = (-x).exp2();
        let predicted = path
            .iter()
            .take_while(|&&e| e + tol::COUNT_THRESHOLD_SLACK >= threshold)
            .count();
        assert!(!simulated.saturated);
        assert_eq!(simulated.pairs, predicted, "x = {x}");
    }
    assert!(count_pairs(&u, 10.0, 1000).unwrap().pairs > 0);
}

#[test]
fn theorem_margin_sign_matches_two_rounds_ahead_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut checked = 0;
    while checked < 200 {
        let f = random_family_params(&mut rng);
        let t = rng.gen_range(0.02..0.6);
        let Ok(margin) = theorem_condition(&f, t) else {
            continue;
        };
        let u = build_xxyy(&XxYySpec::new(t).unwrap());
        let (ab1, _) = step(&family_to_density(&f), &u).unwrap();
        let (_, cd2) = step(&ab1, &u).unwrap();
        let entangled = is_ppt_entangled(&cd2, &[DEBU], tol::PPT_CERTIFY).unwrap();
        // Skip near-boundary margins where the two routes may
        // legitimately disagree at round-off scale.
        if margin.abs() < 1e-9 {
            continue;
        }
        assert_eq!(margin < 0.0, entangled, "margin {margin} at t = {t}");
        checked += 1;
    }
}

#[test]
fn half_wave_nesting_of_round_entanglements() {
    // E_CD^(1) repeats every pi/2 in lambda, E_CD^(2) every pi/4.
    for i in 0..1000 {
        let lambda = i as f64 * FRAC_PI_2 / 999.0;
        let e1 = round1_closed_form(lambda);
        let e2 = round2_closed_form(lambda);
        assert!((e1 - round1_closed_form(lambda + FRAC_PI_2)).abs() < 1e-12);
        assert!((e2 - round2_closed_form(lambda + FRAC_PI_4)).abs() < 1e-12);
    }
}

#[test]
fn round_one_sum_is_bounded_by_one_ebit() {
    let config = ProtocolConfig::with_xxyy(0.0).unwrap();
    let grid: Vec<f64> = (0..200).map(|i| i as f64 * FRAC_PI_2 / 199.0).collect();
    for row in protocol::sweep(&config, &grid, 1).unwrap() {
        assert!(
            row.e_cd + row.e_ab <= 1.0 + 1e-9,
            "sum exceeded at lambda = {}",
            row.lambda
        );
    }
}

#[test]
fn intermediate_four_qubit_state_has_valid_marginals() {
    // Rebuild the evolved 16x16 state and check the CD, AB, and CA
    // marginals round after round.
    let u = build_xxyy(&XxYySpec::new(0.2).unwrap());
    let u16 = kron(&u, &u).unwrap();
    let mut rho_ab = DensityOp::bell_phi_plus(ALICE, BOB);
    for _ in 0..10 {
        let joint = DensityOp::ground(CHARU)
            .tensor(&rho_ab)
            .unwrap()
            .tensor(&DensityOp::ground(DEBU))
            .unwrap();
        let evolved = DensityOp::new(
            joint.labels().to_vec(),
            joint.matrix().conjugate_by(&u16).unwrap(),
        )
        .unwrap();
        assert!(evolved.validate(1e-9).is_ok());
        for drop in [[ALICE, BOB], [CHARU, DEBU], [BOB, DEBU]] {
            let marginal = evolved.partial_trace(&drop).unwrap();
            assert!(marginal.validate(1e-9).is_ok());
        }
        rho_ab = evolved.partial_trace(&[CHARU, DEBU]).unwrap();
    }
}

#[test]
fn reduced_state_at_eighth_pi_carries_known_entanglement() {
    // Tracing Alice and Bob out of the evolved four-qubit state at
    // lambda = pi/8 leaves a pair holding log2(10/8) ebits.
    let u = build_xxyy(&XxYySpec::new(FRAC_PI_8).unwrap());
    let (_, rho_cd) = step(&DensityOp::bell_phi_plus(ALICE, BOB), &u).unwrap();
    assert!(rho_cd.validate(tol::STATE_VALID).is_ok());
    let e = log_negativity(&rho_cd, &[DEBU]).unwrap().log_negativity;
    assert!((e - (10.0f64 / 8.0).log2()).abs() < 1e-12);
}

#[test]
fn no_valid_family_state_reaches_negative_x() {
    // Witness search for the X < 0 remark branch: within p in [0, 1]
    // the branch is vacuous, because X is a diagonal entry of the
    // state.
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..2000 {
        let f = random_family_params(&mut rng);
        assert!(f.x_value() >= -tol::FAMILY_CONSTRAINT);
    }
}
