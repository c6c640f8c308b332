//! Single human-editable run configuration.

use anyon_braiding::BraidLoop;
use kitaev_model::{Boundary, LatticeSpec};
use nmr_emulation::{MoleculeParams, NoiseModel, Scenario, StepDurations};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Whole-file configuration: lattice, molecule, loops, run parameters, grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub lattice: LatticeSpec,
    pub molecule: MoleculeParams,
    pub loops: LoopConfig,
    /// CNOT `(control, target)` pairs prepended to the preparation circuit to
    /// reroute the deviation partner away from the analysis lines.
    #[serde(default)]
    pub separation_prefix: Vec<(usize, usize)>,
    pub run: RunSection,
    #[serde(default)]
    pub grid: GridSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopConfig {
    pub bd0: BraidLoop,
    pub bd1: BraidLoop,
    pub bd2: BraidLoop,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSection {
    pub scenarios: Vec<Scenario>,
    pub noise: NoiseModel,
    pub slices_per_step: usize,
    pub target_gate_fidelity: f64,
    pub rng_seed: u64,
    #[serde(default)]
    pub durations: StepDurations,
}

/// Frequency grid for dense traces and fitting.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridSection {
    pub min_hz: f64,
    pub max_hz: f64,
    pub step_hz: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            min_hz: -80.0,
            max_hz: 80.0,
            step_hz: 0.05,
        }
    }
}

impl RunConfig {
    /// Built-in default: the seven-qubit model, reference loops, calibrated
    /// molecule, no noise.
    pub fn builtin_default() -> Self {
        RunConfig {
            lattice: LatticeSpec {
                n_qubits: 7,
                vertices: vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]],
                plaquettes: vec![
                    vec![0, 1],
                    vec![0, 2],
                    vec![1, 3, 4],
                    vec![2, 3, 5],
                    vec![4, 6],
                ],
                boundary: Boundary::Rough,
            },
            molecule: MoleculeParams::default_calibration(),
            loops: LoopConfig {
                bd0: BraidLoop::x_string(vec![3, 4, 5, 6]),
                bd1: BraidLoop::x_string(vec![0, 1, 2, 4, 5, 6]),
                bd2: BraidLoop::x_string(vec![0, 1, 2, 3]),
            },
            separation_prefix: vec![(6, 1), (6, 2)],
            run: RunSection {
                scenarios: Scenario::all().to_vec(),
                noise: NoiseModel::None,
                slices_per_step: 16,
                target_gate_fidelity: 0.99,
                rng_seed: 7,
                durations: StepDurations::default(),
            },
            grid: GridSection::default(),
        }
    }

    /// Parses and validates a config file; molecule and grid problems are
    /// rejected here, lattice/loop consistency is checked by `verify` and at
    /// run time.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| format!("parse error: {e}"))?;
        cfg.molecule.validate().map_err(|e| e.to_string())?;
        if !cfg.grid.step_hz.is_finite() || cfg.grid.step_hz <= 0.0 || cfg.grid.max_hz <= cfg.grid.min_hz {
            return Err("grid must have positive step and max_hz > min_hz".into());
        }
        if cfg.run.scenarios.is_empty() {
            return Err("run.scenarios must not be empty".into());
        }
        for &(c, t) in &cfg.separation_prefix {
            if c >= cfg.lattice.n_qubits || t >= cfg.lattice.n_qubits || c == t {
                return Err(format!("invalid separation prefix CNOT ({c},{t})"));
            }
        }
        Ok(cfg)
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }
}
