//! Spectrum fitting and anyonic phase estimation.
//!
//! Peak offsets are always known exactly in simulation, so the fit solves only
//! for per-peak amplitudes and one shared linewidth. Phase extraction follows
//! the doublet-readout convention: the two lines of each doublet enter with
//! opposite signs, their difference is normalized against the labeled-PPS
//! reference peak, and the phase is `2 atan(sqrt(beta^2 / alpha^2))`.

mod fit;
mod phase;
mod report;

pub use fit::{fit_amplitudes, fit_lorentzians, FittedPeak, PeakFit};
pub use phase::{
    anyonic_phase, estimate_alpha_beta, propagate_phase_error, AlphaBeta, PhaseResult,
};
pub use report::{
    acceptance_band, render_scenario_svg, scenario_report, Report, ReportRow, ScenarioOutcome,
};

/// Errors from fitting and estimation.
#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error("fit did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("grid does not cover peak offset {0} Hz")]
    GridCoverage(f64),
    #[error("no fitted peak at offset {0} Hz")]
    MissingPeak(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, AnalysisError>;
