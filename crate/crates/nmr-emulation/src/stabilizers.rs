//! Stabilizer transforms under the preparation circuit and readout planning.

use qsim_core::{
    rotation_x, rotation_y, PauliString, QsimError, SingleQubitPauli, UnitaryStep,
};

use crate::{NmrError, Result};

/// Conjugates the labeled-PPS stabilizers `Z_i Z_obs` through the preparation
/// unitary, returning the signed Pauli strings the prepared state satisfies.
///
/// Fails when a conjugate is not a Pauli string to within 1e-8, i.e. when the
/// supplied circuit is not Clifford.
pub fn transform_stabilizers(
    gd: &UnitaryStep,
    observe_spin: usize,
) -> Result<Vec<PauliString>> {
    let n = gd.n_qubits();
    let u = gd.matrix();
    let mut out = Vec::with_capacity(n - 1);
    for i in (0..n).filter(|&i| i != observe_spin) {
        let zz = PauliString::z_string(n, &[i, observe_spin])?;
        let sandwich = u * zz.dense() * u.adjoint();
        let p = PauliString::recognize(&sandwich, 1e-8).map_err(|e| match e {
            QsimError::NotPauli(dev) => NmrError::NonClifford(format!(
                "Z_{i} Z_{observe_spin} conjugate deviates by {dev:.3e}"
            )),
            other => NmrError::Core(other),
        })?;
        out.push(p);
    }
    Ok(out)
}

/// Axis of a single-spin readout rotation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RotationAxis {
    X,
    Y,
}

/// One hard pulse on one spin.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SpinRotation {
    pub spin: usize,
    pub axis: RotationAxis,
    /// Signed angle, always ±pi/2 here.
    pub angle: f64,
}

impl SpinRotation {
    pub fn matrix(&self) -> nalgebra::Matrix2<num_complex::Complex64> {
        match self.axis {
            RotationAxis::X => rotation_x(self.angle),
            RotationAxis::Y => rotation_y(self.angle),
        }
    }
}

/// A pulse plan and the observable form it produces.
#[derive(Clone, Debug)]
pub struct ReadoutPlan {
    pub rotations: Vec<SpinRotation>,
    /// The rotated operator: Z or I everywhere except X/Y on the observe spin.
    pub observable: PauliString,
}

/// Plans per-spin ±pi/2 rotations taking `target` to NMR-observable form.
///
/// Non-observe spins are rotated `X -> Z` (by `R_y(-pi/2)`) or `Y -> Z`
/// (by `R_x(pi/2)`); a Z on the observe spin becomes X via `R_y(pi/2)`. A
/// target acting as identity on the observe spin produces no observe-spin
/// signal and is rejected.
pub fn plan_readout_pulse(target: &PauliString, observe_spin: usize) -> Result<ReadoutPlan> {
    let n = target.n_qubits();
    if observe_spin >= n {
        return Err(NmrError::InvalidConfig(format!(
            "observe spin {observe_spin} out of range"
        )));
    }
    let mut rotations = Vec::new();
    let mut ops = Vec::new();
    for q in 0..n {
        let op = target.op_on(q);
        if q == observe_spin {
            match op {
                SingleQubitPauli::X | SingleQubitPauli::Y => ops.push((q, op)),
                SingleQubitPauli::Z => {
                    rotations.push(SpinRotation {
                        spin: q,
                        axis: RotationAxis::Y,
                        angle: std::f64::consts::FRAC_PI_2,
                    });
                    ops.push((q, SingleQubitPauli::X));
                }
                SingleQubitPauli::I => {
                    return Err(NmrError::Unobservable(target.to_string()));
                }
            }
        } else {
            match op {
                SingleQubitPauli::I => {}
                SingleQubitPauli::Z => ops.push((q, SingleQubitPauli::Z)),
                SingleQubitPauli::X => {
                    rotations.push(SpinRotation {
                        spin: q,
                        axis: RotationAxis::Y,
                        angle: -std::f64::consts::FRAC_PI_2,
                    });
                    ops.push((q, SingleQubitPauli::Z));
                }
                SingleQubitPauli::Y => {
                    rotations.push(SpinRotation {
                        spin: q,
                        axis: RotationAxis::X,
                        angle: std::f64::consts::FRAC_PI_2,
                    });
                    ops.push((q, SingleQubitPauli::Z));
                }
            }
        }
    }
    let observable = PauliString::from_ops(n, &ops)?.with_phase(target.phase());
    Ok(ReadoutPlan {
        rotations,
        observable,
    })
}
