//! Kitaev spin-lattice models at desk scale.
//!
//! Provides lattice geometry with vertex (`XXXX`-type) and plaquette
//! (`ZZ..Z`-type) stabilizers, dense Hamiltonian assembly, exact ground-space
//! computation, the projector construction of the ground state, and the
//! Hadamard/CNOT circuit that prepares the seven-qubit ground state.

mod circuit;
mod lattice;
mod model;

pub use circuit::{gd_circuit, gd_circuit_with_prefix, GdCircuit, GD_DURATION_S};
pub use lattice::{Boundary, LatticeSpec};
pub use model::{
    build_hamiltonian, ground_space, ground_state_by_projection, seven_qubit_model, GroundSpace,
    SevenQubitModel,
};

/// Errors from lattice validation and model construction.
#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("stabilizers {0} and {1} do not commute; lattice is invalid")]
    NonCommutingStabilizers(String, String),
    #[error("dimension too large: {0} qubits exceeds the 12-qubit dense limit")]
    TooLarge(usize),
    #[error("|0..0> is not a +1 eigenstate of plaquette {0}")]
    ProjectionPrecondition(usize),
    #[error(transparent)]
    Core(#[from] qsim_core::QsimError),
}

pub type Result<T> = std::result::Result<T, ModelError>;
