//! The `sweep` subcommand: re-run scenarios over one noise parameter.

use std::path::Path;

use nmr_emulation::NoiseModel;

use crate::config::RunConfig;
use crate::manifest::RunManifest;
use crate::pipeline::{pps_reference, run_one_scenario, setup_from_config};
use crate::CliError;

/// Parameter axis of a sweep. Each axis runs under the noise model that the
/// parameter actually feeds: T2 scaling under dephasing, fidelity under gate
/// imperfection, slice count under combined noise.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweepParam {
    T2Scale,
    GateFidelity,
    SlicesPerStep,
}

impl std::str::FromStr for SweepParam {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "t2_scale" => Ok(SweepParam::T2Scale),
            "gate_fidelity" => Ok(SweepParam::GateFidelity),
            "slices_per_step" => Ok(SweepParam::SlicesPerStep),
            other => Err(CliError::Config(format!(
                "unknown sweep parameter '{other}' (expected t2_scale, gate_fidelity or slices_per_step)"
            ))),
        }
    }
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::T2Scale => "t2_scale",
            SweepParam::GateFidelity => "gate_fidelity",
            SweepParam::SlicesPerStep => "slices_per_step",
        }
    }

    fn noise(self) -> NoiseModel {
        match self {
            SweepParam::T2Scale => NoiseModel::Dephasing,
            SweepParam::GateFidelity => NoiseModel::GateImperfection,
            SweepParam::SlicesPerStep => NoiseModel::Both,
        }
    }

    /// A config specialized to one sweep point.
    fn apply(self, base: &RunConfig, value: f64) -> Result<RunConfig, CliError> {
        let mut cfg = base.clone();
        cfg.run.noise = self.noise();
        match self {
            SweepParam::T2Scale => {
                if !value.is_finite() || value <= 0.0 {
                    return Err(CliError::Config(format!("t2_scale must be positive: {value}")));
                }
                cfg.molecule = cfg.molecule.with_t2_scale(value);
            }
            SweepParam::GateFidelity => {
                cfg.run.target_gate_fidelity = value;
            }
            SweepParam::SlicesPerStep => {
                if value < 1.0 || value.fract() != 0.0 {
                    return Err(CliError::Config(format!(
                        "slices_per_step must be a positive integer: {value}"
                    )));
                }
                cfg.run.slices_per_step = value as usize;
            }
        }
        Ok(cfg)
    }
}

/// One sweep point result.
pub struct SweepRow {
    pub value: f64,
    pub scenario: String,
    pub alpha_sq: f64,
    pub beta_sq: f64,
    pub theta_deg: f64,
    pub theta_err_deg: f64,
}

/// Runs the sweep and writes `sweep_<param>.csv` into `out_dir`.
pub fn cmd_sweep(
    cfg: &RunConfig,
    config_text: &str,
    param: SweepParam,
    values: &[f64],
    out_dir: &Path,
) -> Result<Vec<SweepRow>, CliError> {
    if values.is_empty() {
        return Err(CliError::Config("no sweep values given".into()));
    }
    std::fs::create_dir_all(out_dir)?;
    let mut rows = Vec::new();
    for &value in values {
        let point = param.apply(cfg, value)?;
        let setup = setup_from_config(&point)?;
        let reference = pps_reference(&point)?;
        for &scenario in &point.run.scenarios {
            let run = run_one_scenario(&point, &setup, scenario, &reference)?;
            rows.push(SweepRow {
                value,
                scenario: scenario.to_string(),
                alpha_sq: run.result.alpha_sq,
                beta_sq: run.result.beta_sq,
                theta_deg: run.result.theta_deg,
                theta_err_deg: run.result.theta_err_deg,
            });
        }
    }

    let mut csv = String::from("parameter,value,scenario,alpha_sq,beta_sq,theta_deg,theta_err\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{:.6},{},{:.9},{:.9},{:.6},{:.6}\n",
            param.name(),
            r.value,
            r.scenario,
            r.alpha_sq,
            r.beta_sq,
            r.theta_deg,
            r.theta_err_deg
        ));
    }
    let mut manifest = RunManifest::new(
        config_text,
        cfg.run.scenarios.iter().map(|s| s.to_string()).collect(),
        param.noise().to_string(),
        cfg.run.rng_seed,
    );
    manifest.emit(out_dir, &format!("sweep_{}.csv", param.name()), csv.as_bytes())?;
    manifest.finish(out_dir)?;

    print!("{csv}");
    Ok(rows)
}
