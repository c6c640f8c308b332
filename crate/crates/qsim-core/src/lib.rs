//! Dense numerical backbone for simulating small qubit registers.
//!
//! Everything here is value-semantic and dense: states are complex vectors of
//! length `2^n`, operators are `2^n x 2^n` complex matrices, and Pauli strings
//! are bit-mask encoded with an explicit `{±1, ±i}` phase. The crate targets
//! registers of at most ~12 qubits, where exact dense arithmetic is both
//! affordable and simpler to audit than any sparse shortcut.
//!
//! Basis convention: qubit 0 is the **most significant bit** of a computational
//! basis index, so `|q0 q1 .. q6>` reads left to right exactly like the printed
//! ket. All operations are pure functions; inputs are never mutated.

mod channel;
mod gates;
mod linalg;
mod pauli;
mod state;

pub use channel::dephase;
pub use gates::{
    cnot_matrix, embed_single, hadamard, pauli_x_gate, pauli_y_gate, pauli_z_gate, phase_gate,
    phase_gate_inv, rotation_x, rotation_y, transverse_rotation, UnitaryStep,
};
pub use linalg::{
    average_gate_fidelity, fractional_unitary, hermitian_eigen, max_abs_diff, unitarity_deviation,
    unitary_eigen,
};
pub use pauli::{CommutationParity, PauliString, Phase, SingleQubitPauli};
pub use state::{DeviationOperator, QuantumState, StateVector};

use num_complex::Complex64;

/// Errors surfaced by the simulation primitives.
#[derive(Debug, thiserror::Error)]
pub enum QsimError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("matrix is not a Pauli string (max deviation {0:.3e})")]
    NotPauli(f64),
    #[error("nonpositive T2 time for qubit {0}")]
    NonpositiveT2(usize),
    #[error("negative duration {0}")]
    NegativeDuration(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, QsimError>;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Applies a unitary step to a state or deviation operator, returning a new value.
pub fn apply_unitary<S: QuantumState>(state: &S, u: &UnitaryStep) -> Result<S> {
    state.apply_matrix(u.matrix())
}

/// Real part of `<psi|P|psi>` or `Tr(rho P)`.
///
/// The result is real up to floating error whenever `P` is Hermitian; callers
/// inspecting non-Hermitian strings should use the complex-valued methods on
/// the state types.
pub fn pauli_expectation<S: QuantumState>(state: &S, p: &PauliString) -> Result<f64> {
    Ok(state.pauli_expectation_c(p)?.re)
}

/// Commutation parity of two equal-width Pauli strings.
pub fn commutation_parity(a: &PauliString, b: &PauliString) -> CommutationParity {
    a.commutation_parity(b)
}
