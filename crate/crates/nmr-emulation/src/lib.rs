//! Emulation of the NMR realization of the seven-qubit braiding experiment.
//!
//! Covers the cat-state labeled pseudo-pure state preparation, the measurement
//! basis change, per-step dephasing and gate-imperfection noise, readout-pulse
//! planning, and synthesis of the observe-spin spectrum.

mod measurement;
mod molecule;
mod perturb;
mod pps;
mod scenario;
mod spectrum;
mod stabilizers;

pub use measurement::{measurement_circuit, MM_DURATION_S};
pub use molecule::MoleculeParams;
pub use perturb::{perturb_unitary, step_seed};
pub use pps::{labeled_pps, labeled_pps_stages, PpsStages};
pub use scenario::{
    braid_step, run_scenario, run_scenario_with, NoiseModel, Scenario, ScenarioConfig,
    SimulationSetup, StepDurations,
};
pub use spectrum::{
    analysis_frequencies, analysis_partner_populations, peaks_csv, readout_spectrum,
    synthesize_trace, trace_csv, AnalysisFrequencies, Peak, Spectrum, Trace,
};
pub use stabilizers::{plan_readout_pulse, transform_stabilizers, ReadoutPlan, RotationAxis, SpinRotation};

/// Errors from preparation, scenario runs and readout planning.
#[derive(Debug, thiserror::Error)]
pub enum NmrError {
    #[error("invalid molecule parameters: {0}")]
    InvalidMolecule(String),
    #[error("phase-cycle residual {0:.3e} above tolerance; decoding circuit is wrong")]
    PhaseCycleResidual(f64),
    #[error("target fidelity {0} outside (0, 1]")]
    FidelityOutOfRange(f64),
    #[error("conjugated stabilizer is not a Pauli string; circuit is not Clifford: {0}")]
    NonClifford(String),
    #[error("operator {0} has no single-qubit-rotation readout: identity on the observe spin")]
    Unobservable(String),
    #[error("invalid scenario configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Braid(#[from] anyon_braiding::BraidError),
    #[error(transparent)]
    Model(#[from] kitaev_model::ModelError),
    #[error(transparent)]
    Core(#[from] qsim_core::QsimError),
}

pub type Result<T> = std::result::Result<T, NmrError>;
