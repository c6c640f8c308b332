//! Anyon creation, braiding loops, and the full braiding pipeline.
//!
//! Excitations are tracked as stabilizer defects (-1 expectation values), and
//! braiding phases are computed two independent ways: algebraically from the
//! support-overlap parity of the loop against the charge's creation string,
//! and dynamically by evolving the full state through
//! create / braid / annihilate.

mod excitation;
mod loops;
mod pipeline;

pub use excitation::{detect_defects, ExcitationConfig};
pub use loops::{braiding_parity, validate_loop, BraidLoop, BraidPhase, LoopKind};
pub use pipeline::{
    braiding_pipeline_on, create_superposition, evolved_braiding_phase, run_braiding_pipeline,
    seven_qubit_charge, seven_qubit_m_creator, sqrt_charge, sqrt_charge_inv,
};

/// Errors from defect detection and pipeline runs.
#[derive(Debug, thiserror::Error)]
pub enum BraidError {
    #[error("state is not a stabilizer eigenstate: <{operator}> = {value:.6} is not ±1")]
    NotStabilizerEigenstate { operator: String, value: f64 },
    #[error("loop {0:?} is not closed: it anticommutes with a plaquette operator")]
    InvalidLoop(Vec<usize>),
    #[error("expectation <{operator}> = {value:.6} is not ±1 during phase extraction")]
    PhaseExtraction { operator: String, value: f64 },
    #[error(transparent)]
    Model(#[from] kitaev_model::ModelError),
    #[error(transparent)]
    Core(#[from] qsim_core::QsimError),
}

pub type Result<T> = std::result::Result<T, BraidError>;
