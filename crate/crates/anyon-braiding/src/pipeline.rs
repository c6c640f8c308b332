//! Create / braid / annihilate state pipeline.
//!
//! The superposition trick: `sqrt(C) X_m |g>` splits the state into an
//! `m`-pair component and an `m`-pair-plus-`e` component. A braid multiplies
//! the charged component by ±1, and undoing the creation converts that sign
//! into a ground-vs-excited final state.

use num_complex::Complex64;
use qsim_core::{PauliString, QuantumState, StateVector};

use crate::loops::{validate_loop, BraidLoop, BraidPhase};
use crate::{BraidError, Result};
use kitaev_model::{ground_state_by_projection, seven_qubit_model, LatticeSpec};

/// `sqrt(C) = e^{i pi/4}(I - iC)/sqrt(2)` for a Hermitian Pauli string `C`.
pub fn sqrt_charge(state: &StateVector, charge: &PauliString) -> Result<StateVector> {
    let rotated = state.apply_pauli(charge)?;
    let a = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_PI_4);
    let amps = state.amplitudes() * a + rotated.amplitudes() * (a * Complex64::new(0.0, -1.0));
    Ok(StateVector::new(state.n_qubits(), amps)?)
}

/// Inverse of [`sqrt_charge`]: `e^{-i pi/4}(I + iC)/sqrt(2)`.
pub fn sqrt_charge_inv(state: &StateVector, charge: &PauliString) -> Result<StateVector> {
    let rotated = state.apply_pauli(charge)?;
    let a = Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_PI_4);
    let amps = state.amplitudes() * a + rotated.amplitudes() * (a * Complex64::new(0.0, 1.0));
    Ok(StateVector::new(state.n_qubits(), amps)?)
}

/// The Z-string creating the single `e` particle of the seven-qubit pipeline.
pub fn seven_qubit_charge() -> PauliString {
    PauliString::z_string(7, &[0]).expect("static string")
}

/// The X operator creating the `m` pair of the seven-qubit pipeline.
pub fn seven_qubit_m_creator() -> PauliString {
    PauliString::x_string(7, &[4]).expect("static string")
}

/// `sqrt(Z_1) X_5 |g7>`: equal superposition of the `mm` and `mme` states.
pub fn create_superposition(ground: &StateVector) -> Result<StateVector> {
    let with_m = ground.apply_pauli(&seven_qubit_m_creator())?;
    sqrt_charge(&with_m, &seven_qubit_charge())
}

/// Runs create -> braid -> annihilate on the seven-qubit model.
///
/// `None` skips the braid stage entirely (the no-braid reference), returning
/// the ground state. With a loop, the output is
/// `((1+e^{i theta})|g7> + i(1-e^{i theta})|e7>)/2` for `theta` in `{0, pi}`.
pub fn run_braiding_pipeline(braid_loop: Option<&BraidLoop>) -> Result<StateVector> {
    let model = seven_qubit_model();
    let ground = ground_state_by_projection(&model.lattice)?;
    let Some(l) = braid_loop else {
        return Ok(ground);
    };
    braiding_pipeline_on(
        &model.lattice,
        &ground,
        &seven_qubit_charge(),
        &seven_qubit_m_creator(),
        l,
    )
}

/// Generic pipeline on any lattice whose ground state the caller supplies.
///
/// `charge` is the Z-string whose `e` excitation rides the superposition and
/// `m_creator` is an X-string disjoint from it.
pub fn braiding_pipeline_on(
    lattice: &LatticeSpec,
    ground: &StateVector,
    charge: &PauliString,
    m_creator: &PauliString,
    braid_loop: &BraidLoop,
) -> Result<StateVector> {
    if !validate_loop(braid_loop, lattice) {
        return Err(BraidError::InvalidLoop(braid_loop.qubits.clone()));
    }
    let with_m = ground.apply_pauli(m_creator)?;
    let psi_b = sqrt_charge(&with_m, charge)?;
    let psi_c = psi_b.apply_pauli(&braid_loop.operator(lattice.n_qubits)?)?;
    let undone = psi_c.apply_pauli(m_creator)?;
    sqrt_charge_inv(&undone, charge)
}

/// Braiding phase extracted from full state evolution.
///
/// Compares the sign of `<mme|L|mme>` against `<mm|L|mm>`; both must be ±1,
/// which holds whenever the lattice's valid loops act as +1 on the ground
/// state (any nondegenerate rough-boundary lattice).
pub fn evolved_braiding_phase(
    lattice: &LatticeSpec,
    ground: &StateVector,
    charge: &PauliString,
    m_creator: &PauliString,
    braid_loop: &BraidLoop,
) -> Result<BraidPhase> {
    if !validate_loop(braid_loop, lattice) {
        return Err(BraidError::InvalidLoop(braid_loop.qubits.clone()));
    }
    let op = braid_loop.operator(lattice.n_qubits)?;
    let psi_mm = ground.apply_pauli(m_creator)?;
    let psi_mme = psi_mm.apply_pauli(charge)?;
    let s_mm = psi_mm.pauli_expectation_c(&op)?.re;
    let s_mme = psi_mme.pauli_expectation_c(&op)?.re;
    for (label, v) in [("mm", s_mm), ("mme", s_mme)] {
        if (v.abs() - 1.0).abs() > 1e-8 {
            return Err(BraidError::PhaseExtraction {
                operator: format!("{op} on psi_{label}"),
                value: v,
            });
        }
    }
    Ok(if s_mm.signum() == s_mme.signum() {
        BraidPhase::Zero
    } else {
        BraidPhase::Pi
    })
}
