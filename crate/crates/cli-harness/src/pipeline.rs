//! Glue from a run configuration to per-scenario phase estimates.

use analysis::{
    anyonic_phase, estimate_alpha_beta, fit_lorentzians, propagate_phase_error, PhaseResult,
};
use kitaev_model::gd_circuit_with_prefix;
use nmr_emulation::{
    analysis_frequencies, analysis_partner_populations, labeled_pps, measurement_circuit,
    readout_spectrum, run_scenario_with, synthesize_trace, Scenario, ScenarioConfig,
    SimulationSetup, Spectrum, Trace,
};

use crate::config::RunConfig;
use crate::CliError;

/// Setup assembled from the config: preparation circuit with the configured
/// separation prefix, measurement circuit, and the three loops.
pub fn setup_from_config(cfg: &RunConfig) -> Result<SimulationSetup, CliError> {
    if cfg.lattice.n_qubits != 7 {
        return Err(CliError::Contract(format!(
            "the scenario pipeline runs on the seven-qubit model; config lattice has {} qubits",
            cfg.lattice.n_qubits
        )));
    }
    cfg.lattice
        .validate()
        .map_err(|e| CliError::Contract(e.to_string()))?;
    for (name, l) in [("bd0", &cfg.loops.bd0), ("bd1", &cfg.loops.bd1), ("bd2", &cfg.loops.bd2)] {
        if !anyon_braiding::validate_loop(l, &cfg.lattice) {
            return Err(CliError::Contract(format!(
                "loop {name} {:?} is not closed on the configured lattice",
                l.qubits
            )));
        }
    }
    let gd = gd_circuit_with_prefix(&cfg.separation_prefix)
        .map_err(|e| CliError::Contract(e.to_string()))?;
    let mm = measurement_circuit().map_err(|e| CliError::Contract(e.to_string()))?;
    Ok(SimulationSetup {
        lattice: cfg.lattice.clone(),
        gd,
        mm,
        bd0: cfg.loops.bd0.clone(),
        bd1: cfg.loops.bd1.clone(),
        bd2: cfg.loops.bd2.clone(),
    })
}

/// Reference quantities from the labeled-PPS spectrum.
pub struct PpsReference {
    pub amplitude: f64,
    pub amplitude_stderr: f64,
    pub spectrum: Spectrum,
    pub trace: Trace,
}

/// Everything produced for a single scenario.
pub struct ScenarioRun {
    pub scenario: Scenario,
    pub result: PhaseResult,
    pub spectrum: Spectrum,
    pub trace: Trace,
    /// Largest diagonal element the doublet readout assumed to be zero.
    pub neglected_partner_max: f64,
}

fn fit_trace(
    cfg: &RunConfig,
    trace: &Trace,
    offsets: &[f64],
) -> Result<analysis::PeakFit, CliError> {
    fit_lorentzians(
        &trace.freq_hz,
        &trace.real,
        offsets,
        cfg.molecule.observe_linewidth_hz(),
    )
    .map_err(|e| CliError::Contract(format!("spectrum fit failed: {e}")))
}

/// Synthesizes, fits and normalizes the labeled-PPS reference peak.
pub fn pps_reference(cfg: &RunConfig) -> Result<PpsReference, CliError> {
    let rho = labeled_pps(&cfg.molecule).map_err(|e| CliError::Contract(e.to_string()))?;
    let spectrum = readout_spectrum(&rho, &cfg.molecule);
    let trace = synthesize_trace(
        &spectrum.peaks,
        cfg.grid.min_hz,
        cfg.grid.max_hz,
        cfg.grid.step_hz,
    );
    let offsets: Vec<f64> = spectrum.peaks.iter().map(|p| p.offset_hz).collect();
    let fit = fit_trace(cfg, &trace, &offsets)?;
    let freqs = analysis_frequencies(&cfg.molecule);
    let (amplitude, amplitude_stderr) = fit
        .amplitude_at(freqs.a)
        .map_err(|e| CliError::Contract(e.to_string()))?;
    Ok(PpsReference {
        amplitude,
        amplitude_stderr,
        spectrum,
        trace,
    })
}

/// Full chain for one scenario: simulate, read out, fit, estimate the phase.
pub fn run_one_scenario(
    cfg: &RunConfig,
    setup: &SimulationSetup,
    scenario: Scenario,
    reference: &PpsReference,
) -> Result<ScenarioRun, CliError> {
    let scenario_cfg = ScenarioConfig {
        scenario,
        noise: cfg.run.noise,
        slices_per_step: cfg.run.slices_per_step,
        target_gate_fidelity: cfg.run.target_gate_fidelity,
        rng_seed: cfg.run.rng_seed,
        durations: cfg.run.durations,
    };
    let rho = run_scenario_with(setup, &scenario_cfg, &cfg.molecule)
        .map_err(|e| CliError::Contract(e.to_string()))?;
    let spectrum = readout_spectrum(&rho, &cfg.molecule);
    let trace = synthesize_trace(
        &spectrum.peaks,
        cfg.grid.min_hz,
        cfg.grid.max_hz,
        cfg.grid.step_hz,
    );
    let offsets: Vec<f64> = spectrum.peaks.iter().map(|p| p.offset_hz).collect();
    let fit = fit_trace(cfg, &trace, &offsets)?;
    let freqs = analysis_frequencies(&cfg.molecule);
    let ab = estimate_alpha_beta(
        &fit,
        &freqs.as_array(),
        reference.amplitude,
        reference.amplitude_stderr,
    )
    .map_err(|e| CliError::Contract(e.to_string()))?;
    let theta = anyonic_phase(ab.alpha_sq, ab.beta_sq)
        .map_err(|e| CliError::Contract(format!("{scenario}: {e}")))?;
    let theta_err = propagate_phase_error(
        (ab.alpha_sq, ab.alpha_err),
        (ab.beta_sq, ab.beta_err),
    );
    let neglected = analysis_partner_populations(&rho, &cfg.molecule)
        .into_iter()
        .fold(0.0f64, f64::max);
    Ok(ScenarioRun {
        scenario,
        result: PhaseResult {
            scenario: scenario.to_string(),
            alpha_sq: ab.alpha_sq,
            alpha_err: ab.alpha_err,
            beta_sq: ab.beta_sq,
            beta_err: ab.beta_err,
            theta_deg: theta,
            theta_err_deg: theta_err,
        },
        spectrum,
        trace,
        neglected_partner_max: neglected,
    })
}
