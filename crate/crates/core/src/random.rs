//! Seeded random states and unitaries for measure checks.
//!
//! Ginibre-ensemble density matrices, product-mixture separable states,
//! and random unitaries built from Gaussian Hermitian generators. Used
//! by the sanity suites that pit the entanglement measure against the
//! PPT predicate on large random samples.

use num_complex::Complex64;
use rand::Rng;

use crate::linalg::{expm_i_hermitian, ComplexMatrix};
use crate::qstate::{DensityOp, Label};

/// Random density matrix from the Ginibre ensemble: `G G^dag`,
/// normalized to unit trace.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    loop {
        let mut g = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                g[(i, j)] = Complex64::new(gaussian(rng), gaussian(rng));
            }
        }
        let rho = g.mul(&g.adjoint()).expect("same dimension");
        let tr = rho.trace().re;
        if tr > 1e-12 {
            return rho.scale(Complex64::new(1.0 / tr, 0.0));
        }
    }
}

/// Random two-qubit state on the given labels.
pub fn random_two_qubit_state(rng: &mut impl Rng, a: Label, b: Label) -> DensityOp {
    DensityOp::new(vec![a, b], random_density(rng, 4)).expect("Ginibre state is valid")
}

/// Random separable two-qubit state: a mixture of up to four random
/// product states.
pub fn random_separable_state(rng: &mut impl Rng, a: Label, b: Label) -> DensityOp {
    let terms = rng.gen_range(1..=4);
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut m = ComplexMatrix::zeros(4);
    for w in weights {
        let left = random_density(rng, 2);
        let right = random_density(rng, 2);
        let product = crate::linalg::kron(&left, &right).expect("4x4 fits");
        m = m
            .add(&product.scale(Complex64::new(w, 0.0)))
            .expect("same dimension");
    }
    DensityOp::new(vec![a, b], m).expect("product mixture is valid")
}

/// Random unitary: the exponential of a Gaussian Hermitian generator.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            h[(i, j)] = Complex64::new(gaussian(rng), gaussian(rng));
        }
    }
    let h = h.hermitian_part();
    expm_i_hermitian(&h, 1.0).expect("Hermitian part is Hermitian")
}

/// Random valid family-form parameters `(p, b)` with `b2, b3 >= 0`:
/// draws `p` and a diagonal with nonnegative b2, b3 and keeps the draw
/// only when the reconstructed matrix is a state.
pub fn random_family_params(rng: &mut impl Rng) -> crate::family::FamilyParams {
    loop {
        let p = rng.gen_range(0.0..0.999);
        let q = 1.0 - p;
        // b1 and b4 may dip negative as long as the matrix stays PSD.
        let raw: [f64; 4] = [
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..1.0),
            rng.gen_range(-0.2..1.0),
        ];
        let total: f64 = raw.iter().sum();
        if total <= 1e-9 {
            continue;
        }
        let b = [
            raw[0] / total * q,
            raw[1] / total * q,
            raw[2] / total * q,
            raw[3] / total * q,
        ];
        if let Ok(f) = crate::family::FamilyParams::new(p, b) {
            return f;
        }
    }
}

/// Standard normal via Box-Muller.
fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
