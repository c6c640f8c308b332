//! Cross-cutting invariants of the simulation primitives.

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;
use qsim_core::{dephase, DeviationOperator, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn norm_drift_below_1e10_per_100_gates() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n = 7;
    let mut psi = StateVector::zero_state(n);
    for round in 0..10 {
        for _ in 0..100 {
            match rng.gen_range(0..4) {
                0 => {
                    let q = rng.gen_range(0..n);
                    psi = psi.apply_single(q, &qsim_core::hadamard());
                }
                1 => {
                    let q = rng.gen_range(0..n);
                    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                    psi = psi.apply_single(q, &qsim_core::rotation_y(theta));
                }
                2 => {
                    let q = rng.gen_range(0..n);
                    let phi = rng.gen::<f64>() * std::f64::consts::TAU;
                    psi = psi.apply_single(q, &qsim_core::transverse_rotation(phi, 1.3));
                }
                _ => {
                    let c = rng.gen_range(0..n);
                    let mut t = rng.gen_range(0..n);
                    while t == c {
                        t = rng.gen_range(0..n);
                    }
                    psi = psi.apply_cnot(c, t);
                }
            }
        }
        assert!(
            (psi.norm() - 1.0).abs() < 1e-10 * (round + 1) as f64,
            "norm drifted to {} after {} gates",
            psi.norm(),
            (round + 1) * 100
        );
    }
}

fn arbitrary_deviation(n: usize, seed: u64) -> DeviationOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1usize << n;
    let v = DVector::from_fn(dim, |_, _| {
        Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    let s = StateVector::new(n, v).unwrap().normalized().unwrap();
    let t = StateVector::basis_state(n, rng.gen_range(0..dim));
    DeviationOperator::from_projectors(&[(0.5, &s), (-0.5, &t)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dephasing_is_a_valid_channel(seed in 0u64..1000, dt in 0.0f64..2.0) {
        let n = 3;
        let rho = arbitrary_deviation(n, seed);
        let t2 = [0.3, 0.8, 1.4];
        let out = dephase(&rho, dt, &t2).unwrap();
        for r in 0..rho.dim() {
            for c in 0..rho.dim() {
                prop_assert!(out.entry(r, c).norm() <= rho.entry(r, c).norm() + 1e-14);
            }
            prop_assert!((out.entry(r, r) - rho.entry(r, r)).norm() < 1e-15);
        }
        prop_assert!(out.hermiticity_deviation() < 1e-13);
        prop_assert!((out.trace() - rho.trace()).norm() < 1e-12);
    }

    #[test]
    fn dephasing_composes_additively(seed in 0u64..1000, t1 in 0.0f64..1.0, t2s in 0.0f64..1.0) {
        let n = 3;
        let rho = arbitrary_deviation(n, seed);
        let t2 = [0.5, 0.9, 2.0];
        let once = dephase(&rho, t1 + t2s, &t2).unwrap();
        let twice = dephase(&dephase(&rho, t1, &t2).unwrap(), t2s, &t2).unwrap();
        let diff = (once.matrix() - twice.matrix())
            .iter()
            .map(|e| e.norm())
            .fold(0.0f64, f64::max);
        prop_assert!(diff < 1e-12);
    }

    #[test]
    fn unitary_conjugation_preserves_deviation_structure(seed in 0u64..500) {
        let n = 3;
        let rho = arbitrary_deviation(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        let mut out = rho.clone();
        for _ in 0..10 {
            let q = rng.gen_range(0..n);
            out = out.apply_single(q, &qsim_core::hadamard());
            let c = rng.gen_range(0..n);
            let mut t = rng.gen_range(0..n);
            while t == c { t = rng.gen_range(0..n); }
            out = out.apply_cnot(c, t);
        }
        prop_assert!(out.hermiticity_deviation() < 1e-12);
        prop_assert!((out.trace() - rho.trace()).norm() < 1e-12);
    }
}
