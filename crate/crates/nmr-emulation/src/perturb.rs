//! Gate imperfection: fidelity-targeted random Hermitian perturbations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use qsim_core::{hermitian_eigen, UnitaryStep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{NmrError, Result};

/// Deterministic per-step stream id derived from a base seed and a step label.
pub fn step_seed(base: u64, label: &str) -> u64 {
    // splitmix64 absorbing the base and each label byte.
    let mut x = 0x9e3779b97f4a7c15u64;
    let mut absorb = |b: u64| {
        x = x.wrapping_add(b).wrapping_add(0x9e3779b97f4a7c15);
        let mut z = x;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        x = z ^ (z >> 31);
    };
    absorb(base);
    for b in label.bytes() {
        absorb(b as u64);
    }
    x
}

/// Random GUE Hermitian matrix: real N(0,1) diagonal, complex N(0,1)
/// off-diagonal entries split evenly between real and imaginary parts.
fn gue(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<Complex64> {
    let mut h = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for r in 0..dim {
        let d: f64 = rng.sample(StandardNormal);
        h[(r, r)] = Complex64::new(d, 0.0);
        for c in r + 1..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let v = Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
            h[(r, c)] = v;
            h[(c, r)] = v.conj();
        }
    }
    h
}

/// Replaces `U` by `exp(i eps H) U` with seeded Hermitian `H` and `eps`
/// bisected so the average gate fidelity against `U` hits `target_fidelity`.
///
/// Deterministic for a given seed; `target_fidelity = 1.0` returns `U` itself.
pub fn perturb_unitary(u: &UnitaryStep, target_fidelity: f64, seed: u64) -> Result<UnitaryStep> {
    if !(target_fidelity > 0.0 && target_fidelity <= 1.0) {
        return Err(NmrError::FidelityOutOfRange(target_fidelity));
    }
    if target_fidelity == 1.0 {
        return Ok(u.clone());
    }
    let dim = u.dim();
    let d = dim as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = gue(&mut rng, dim);
    let (lambda, q) = hermitian_eigen(&h);

    // Average gate fidelity of exp(i eps H) against the identity depends only
    // on the eigenvalues: F(eps) = (|sum_j e^{i eps l_j}|^2 + d) / (d^2 + d).
    let fidelity = |eps: f64| -> f64 {
        let tr: Complex64 = lambda
            .iter()
            .map(|&l| Complex64::from_polar(1.0, eps * l))
            .sum();
        (tr.norm_sqr() + d) / (d * d + d)
    };

    let lambda_max = lambda.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let mut hi = 0.1 / lambda_max.max(1e-12);
    let mut guard = 0;
    while fidelity(hi) > target_fidelity {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(NmrError::InvalidConfig(format!(
                "cannot reach fidelity {target_fidelity} by scaling the perturbation"
            )));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if fidelity(mid) > target_fidelity {
            lo = mid;
        } else {
            hi = mid;
        }
        if (fidelity(lo) - target_fidelity).abs() < 1e-9 {
            break;
        }
    }
    let eps = 0.5 * (lo + hi);
    let phases = DVector::from_fn(dim, |i, _| Complex64::from_polar(1.0, eps * lambda[i]));
    let expm = &q * DMatrix::from_diagonal(&phases) * q.adjoint();
    let v = expm * u.matrix();
    UnitaryStep::new(format!("{}~f{:.3}", u.label, target_fidelity), v, u.duration)
        .map_err(Into::into)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use qsim_core::average_gate_fidelity;

    #[test]
    fn unit_target_returns_the_input() {
        let u = UnitaryStep::identity(3, "id", 0.01).unwrap();
        let v = perturb_unitary(&u, 1.0, 5).unwrap();
        assert_eq!(v.matrix(), u.matrix());
    }

    #[test]
    fn hits_the_fidelity_target() {
        let gd = kitaev_model::gd_circuit();
        for seed in [1u64, 2, 3] {
            let v = perturb_unitary(&gd.composite, 0.99, seed).unwrap();
            let f = average_gate_fidelity(&gd.composite, &v).unwrap();
            assert_abs_diff_eq!(f, 0.99, epsilon = 2e-3);
            assert_abs_diff_eq!(v.duration, gd.composite.duration, epsilon = 1e-15);
        }
    }

    #[test]
    fn different_seeds_give_different_perturbations() {
        let u = UnitaryStep::identity(4, "id", 0.0).unwrap();
        let a = perturb_unitary(&u, 0.95, 1).unwrap();
        let b = perturb_unitary(&u, 0.95, 2).unwrap();
        assert!(qsim_core::max_abs_diff(a.matrix(), b.matrix()) > 1e-3);
        let fa = average_gate_fidelity(&u, &a).unwrap();
        let fb = average_gate_fidelity(&u, &b).unwrap();
        assert_abs_diff_eq!(fa, fb, epsilon = 4e-3);
    }

    #[test]
    fn determinism_per_seed() {
        let u = UnitaryStep::identity(4, "id", 0.0).unwrap();
        let a = perturb_unitary(&u, 0.97, 9).unwrap();
        let b = perturb_unitary(&u, 0.97, 9).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn rejects_out_of_range_targets() {
        let u = UnitaryStep::identity(2, "id", 0.0).unwrap();
        assert!(matches!(
            perturb_unitary(&u, 0.0, 1),
            Err(NmrError::FidelityOutOfRange(_))
        ));
        assert!(matches!(
            perturb_unitary(&u, 1.2, 1),
            Err(NmrError::FidelityOutOfRange(_))
        ));
    }

    #[test]
    fn step_seed_is_stable_and_label_sensitive() {
        assert_eq!(step_seed(7, "GD"), step_seed(7, "GD"));
        assert_ne!(step_seed(7, "GD"), step_seed(7, "MM"));
        assert_ne!(step_seed(7, "GD"), step_seed(8, "GD"));
    }
}
