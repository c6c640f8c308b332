//! Independent per-qubit dephasing channel.

use crate::state::{DeviationOperator, QuantumState};
use crate::{QsimError, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Applies `dt` seconds of uncorrelated T2 dephasing.
///
/// Element `(r, s)` is damped by `exp(-dt * sum_k 1/T2_k)` over the qubits `k`
/// whose bits differ between the basis indices `r` and `s`; diagonal elements
/// are untouched. `t2` is indexed by qubit (qubit 0 first).
pub fn dephase(rho: &DeviationOperator, dt: f64, t2: &[f64]) -> Result<DeviationOperator> {
    let n = rho.n_qubits();
    if t2.len() != n {
        return Err(QsimError::DimensionMismatch(format!(
            "{} T2 values for {} qubits",
            t2.len(),
            n
        )));
    }
    for (q, &t) in t2.iter().enumerate() {
        if t <= 0.0 {
            return Err(QsimError::NonpositiveT2(q));
        }
    }
    if dt < 0.0 {
        return Err(QsimError::NegativeDuration(dt));
    }
    let dim = rho.dim();
    // Rate of the (r, s) element depends only on r ^ s.
    let mut rate = vec![0.0f64; dim];
    for (q, &t) in t2.iter().enumerate() {
        let bit = 1usize << (n - 1 - q);
        for (m, r) in rate.iter_mut().enumerate() {
            if m & bit != 0 {
                *r += 1.0 / t;
            }
        }
    }
    let src = rho.matrix();
    let damped = DMatrix::from_fn(dim, dim, |r, s| {
        src[(r, s)] * Complex64::new((-dt * rate[r ^ s]).exp(), 0.0)
    });
    DeviationOperator::new(n, damped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateVector;
    use approx::assert_abs_diff_eq;
    use nalgebra::DVector;

    fn plus_state(n: usize) -> StateVector {
        let dim = 1usize << n;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        StateVector::new(n, DVector::from_element(dim, a)).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let rho = DeviationOperator::from_projectors(&[(1.0, &plus_state(2))]).unwrap();
        let out = dephase(&rho, 0.0, &[1.0, 2.0]).unwrap();
        assert!((out.matrix() - rho.matrix()).norm() < 1e-15);
    }

    #[test]
    fn single_qubit_closed_form() {
        // rho_{01} = 0.5, T2 = 1 s, dt = 0.5 s -> 0.5 e^{-0.5}.
        let rho = DeviationOperator::from_projectors(&[(1.0, &plus_state(1))]).unwrap();
        assert_abs_diff_eq!(rho.entry(0, 1).re, 0.5, epsilon = 1e-15);
        let out = dephase(&rho, 0.5, &[1.0]).unwrap();
        assert_abs_diff_eq!(out.entry(0, 1).re, 0.5 * (-0.5f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(out.entry(0, 1).re, 0.303_265_329_856_316_7, epsilon = 1e-12);
    }

    #[test]
    fn two_qubit_rates_add_over_differing_bits() {
        // |00><11| with T2 = (1, 2) s over dt = 1 s picks up e^{-1.5}.
        let rho = DeviationOperator::from_projectors(&[(1.0, &plus_state(2))]).unwrap();
        let out = dephase(&rho, 1.0, &[1.0, 2.0]).unwrap();
        let expect = 0.25 * (-1.5f64).exp();
        assert_abs_diff_eq!(out.entry(0, 3).re, expect, epsilon = 1e-15);
        // Single-bit difference on qubit 1 (basis LSB) decays at 1/T2_1 only.
        assert_abs_diff_eq!(out.entry(0, 1).re, 0.25 * (-0.5f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn rejects_nonpositive_t2() {
        let rho = DeviationOperator::from_projectors(&[(1.0, &plus_state(1))]).unwrap();
        assert!(matches!(
            dephase(&rho, 0.1, &[0.0]),
            Err(QsimError::NonpositiveT2(0))
        ));
    }

    #[test]
    fn composition_and_channel_properties() {
        let n = 3;
        let rho = DeviationOperator::from_projectors(&[
            (0.8, &plus_state(n)),
            (-0.8, &StateVector::basis_state(n, 5)),
        ])
        .unwrap();
        let t2 = [0.4, 0.9, 1.7];
        let once = dephase(&rho, 0.7, &t2).unwrap();
        let split = dephase(&dephase(&rho, 0.3, &t2).unwrap(), 0.4, &t2).unwrap();
        assert!((once.matrix() - split.matrix()).norm() < 1e-12);
        for r in 0..rho.dim() {
            for c in 0..rho.dim() {
                let before = rho.entry(r, c).norm();
                let after = once.entry(r, c).norm();
                assert!(after <= before + 1e-15, "no element may grow");
                if r == c {
                    assert!((rho.entry(r, c) - once.entry(r, c)).norm() < 1e-15);
                }
            }
        }
        assert!(once.hermiticity_deviation() < 1e-14);
        assert!(once.trace().norm() - rho.trace().norm() < 1e-14);
    }
}
