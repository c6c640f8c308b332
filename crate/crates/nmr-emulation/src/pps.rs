//! Cat-state preparation of the labeled pseudo-pure state.
//!
//! Starting from the deviation state `Z` on the labeling spin, the register is
//! encoded into the full-weight string `Z Z .. Z`, a seven-setting phase cycle
//! keeps only the ±n-quantum cat coherence, and decoding folds that coherence
//! into `|0..0><0..0| (x) Z_label`. Phase cycling is an equal-weight average
//! over pi/2 rotations about transverse axes stepped by `2 pi k / n`; the axis
//! phase reference is offset a quarter turn so the surviving cat coherence
//! comes out real positive.

use qsim_core::{hadamard, transverse_rotation, DeviationOperator, PauliString};

use crate::molecule::MoleculeParams;
use crate::{NmrError, Result};

/// Residual above which the preparation is reported as broken.
const RESIDUAL_TOL: f64 = 1e-10;

/// Intermediate states of the preparation, exposed for verification.
#[derive(Clone, Debug)]
pub struct PpsStages {
    /// After the encoding CNOT chain: `Z_0 Z_1 .. Z_{n-1}` (times 1/2).
    pub encoded: DeviationOperator,
    /// After phase cycling: the cat coherence `(|0..0><1..1| + h.c.)` (times 1/2).
    pub post_cycle: DeviationOperator,
    /// The labeled PPS itself.
    pub output: DeviationOperator,
}

/// Runs the full preparation and returns only the labeled PPS.
pub fn labeled_pps(params: &MoleculeParams) -> Result<DeviationOperator> {
    Ok(labeled_pps_stages(params)?.output)
}

/// Runs the preparation keeping all intermediate stages.
pub fn labeled_pps_stages(params: &MoleculeParams) -> Result<PpsStages> {
    params.validate()?;
    let n = params.n_spins;
    let obs = params.observe_spin;
    let dim = 1usize << n;

    // Net output of the polarization steps: Z on the labeling spin, scaled so
    // the final PPS diagonal reads ±1/2.
    let z_obs = PauliString::z_string(n, &[obs])?;
    let rho0 = DeviationOperator::from_pauli(&z_obs, 0.5);

    let mut encoded = rho0;
    for i in (0..n).filter(|&i| i != obs) {
        encoded = encoded.apply_cnot(i, obs);
    }

    let mut accumulated = DeviationOperator::new(
        n,
        nalgebra::DMatrix::from_element(dim, dim, num_complex::Complex64::new(0.0, 0.0)),
    )?;
    for k in 1..=n {
        let axis = std::f64::consts::TAU * k as f64 / n as f64 + std::f64::consts::FRAC_PI_2;
        let rot = transverse_rotation(axis, std::f64::consts::FRAC_PI_2);
        let mut rotated = encoded.clone();
        for q in 0..n {
            rotated = rotated.apply_single(q, &rot);
        }
        accumulated = accumulated.add(&rotated)?;
    }
    let post_cycle = accumulated.scale(1.0 / n as f64);
    check_support(&post_cycle, &[(0, dim - 1), (dim - 1, 0)])?;

    let mut output = post_cycle.clone();
    for i in (0..n).filter(|&i| i != obs) {
        output = output.apply_cnot(obs, i);
    }
    output = output.apply_single(obs, &hadamard());
    let label_index = 1usize << (n - 1 - obs);
    check_support(&output, &[(0, 0), (label_index, label_index)])?;

    Ok(PpsStages {
        encoded,
        post_cycle,
        output,
    })
}

/// All entries outside `allowed` must vanish to within [`RESIDUAL_TOL`].
fn check_support(rho: &DeviationOperator, allowed: &[(usize, usize)]) -> Result<()> {
    let mut max_offtarget = 0.0f64;
    for r in 0..rho.dim() {
        for c in 0..rho.dim() {
            if !allowed.contains(&(r, c)) {
                max_offtarget = max_offtarget.max(rho.entry(r, c).norm());
            }
        }
    }
    if max_offtarget > RESIDUAL_TOL {
        return Err(NmrError::PhaseCycleResidual(max_offtarget));
    }
    Ok(())
}
