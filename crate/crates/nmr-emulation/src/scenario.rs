//! Scenario orchestration: PPS -> GD -> (braid) -> MM with optional noise.

use anyon_braiding::BraidLoop;
use kitaev_model::{gd_circuit_with_prefix, seven_qubit_model, GdCircuit, LatticeSpec};
use qsim_core::{
    apply_unitary, dephase, embed_single, fractional_unitary, pauli_x_gate, phase_gate,
    phase_gate_inv, DeviationOperator, UnitaryStep,
};
use serde::{Deserialize, Serialize};

use crate::measurement::measurement_circuit;
use crate::molecule::MoleculeParams;
use crate::perturb::{perturb_unitary, step_seed};
use crate::pps::labeled_pps;
use crate::{NmrError, Result};

/// The four measured cases.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Scenario {
    #[serde(rename = "noBD")]
    NoBd,
    #[serde(rename = "BD0")]
    Bd0,
    #[serde(rename = "BD1")]
    Bd1,
    #[serde(rename = "BD2")]
    Bd2,
}

impl Scenario {
    pub fn all() -> [Scenario; 4] {
        [Scenario::NoBd, Scenario::Bd0, Scenario::Bd1, Scenario::Bd2]
    }

    /// Ideal anyonic phase in degrees.
    pub fn theory_theta_deg(self) -> f64 {
        match self {
            Scenario::NoBd | Scenario::Bd0 => 0.0,
            Scenario::Bd1 | Scenario::Bd2 => 180.0,
        }
    }

    pub fn is_trivial(self) -> bool {
        matches!(self, Scenario::NoBd | Scenario::Bd0)
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Scenario::NoBd => "noBD",
            Scenario::Bd0 => "BD0",
            Scenario::Bd1 => "BD1",
            Scenario::Bd2 => "BD2",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Scenario {
    type Err = NmrError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noBD" | "nobd" | "noBd" => Ok(Scenario::NoBd),
            "BD0" | "bd0" => Ok(Scenario::Bd0),
            "BD1" | "bd1" => Ok(Scenario::Bd1),
            "BD2" | "bd2" => Ok(Scenario::Bd2),
            other => Err(NmrError::InvalidConfig(format!("unknown scenario '{other}'"))),
        }
    }
}

/// Which error sources act during the run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseModel {
    None,
    Dephasing,
    GateImperfection,
    Both,
}

impl std::fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NoiseModel::None => "none",
            NoiseModel::Dephasing => "dephasing",
            NoiseModel::GateImperfection => "gate_imperfection",
            NoiseModel::Both => "both",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for NoiseModel {
    type Err = NmrError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(NoiseModel::None),
            "dephasing" => Ok(NoiseModel::Dephasing),
            "gate_imperfection" => Ok(NoiseModel::GateImperfection),
            "both" => Ok(NoiseModel::Both),
            other => Err(NmrError::InvalidConfig(format!("unknown noise model '{other}'"))),
        }
    }
}

/// Wall-clock duration of each pipeline step, seconds.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct StepDurations {
    pub pps: f64,
    pub gd: f64,
    pub braid: f64,
    pub mm: f64,
}

impl Default for StepDurations {
    fn default() -> Self {
        StepDurations {
            pps: 0.1,
            gd: 0.06,
            braid: 0.001,
            mm: 0.06,
        }
    }
}

/// One scenario run: which case, which noise, and the noise parameters.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub noise: NoiseModel,
    pub slices_per_step: usize,
    pub target_gate_fidelity: f64,
    pub rng_seed: u64,
    #[serde(default)]
    pub durations: StepDurations,
}

impl ScenarioConfig {
    pub fn noiseless(scenario: Scenario) -> Self {
        ScenarioConfig {
            scenario,
            noise: NoiseModel::None,
            slices_per_step: 16,
            target_gate_fidelity: 0.99,
            rng_seed: 7,
            durations: StepDurations::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.durations;
        for (name, v) in [("pps", d.pps), ("gd", d.gd), ("braid", d.braid), ("mm", d.mm)] {
            if v <= 0.0 {
                return Err(NmrError::InvalidConfig(format!(
                    "duration '{name}' must be positive, got {v}"
                )));
            }
        }
        if !(self.target_gate_fidelity > 0.0 && self.target_gate_fidelity <= 1.0) {
            return Err(NmrError::FidelityOutOfRange(self.target_gate_fidelity));
        }
        if self.slices_per_step == 0 {
            return Err(NmrError::InvalidConfig("slices_per_step must be >= 1".into()));
        }
        Ok(())
    }
}

/// Lattice, circuits and loops a run operates on.
#[derive(Clone, Debug)]
pub struct SimulationSetup {
    pub lattice: LatticeSpec,
    pub gd: GdCircuit,
    pub mm: UnitaryStep,
    pub bd0: BraidLoop,
    pub bd1: BraidLoop,
    pub bd2: BraidLoop,
}

impl SimulationSetup {
    /// Seven-qubit model with the spectral-separation prefix and the three
    /// reference loops.
    pub fn default_setup() -> Result<Self> {
        Ok(SimulationSetup {
            lattice: seven_qubit_model().lattice,
            gd: gd_circuit_with_prefix(&[(6, 1), (6, 2)])?,
            mm: measurement_circuit()?,
            bd0: BraidLoop::x_string(vec![3, 4, 5, 6]),
            bd1: BraidLoop::x_string(vec![0, 1, 2, 4, 5, 6]),
            bd2: BraidLoop::x_string(vec![0, 1, 2, 3]),
        })
    }

    pub fn loop_for(&self, scenario: Scenario) -> Option<&BraidLoop> {
        match scenario {
            Scenario::NoBd => None,
            Scenario::Bd0 => Some(&self.bd0),
            Scenario::Bd1 => Some(&self.bd1),
            Scenario::Bd2 => Some(&self.bd2),
        }
    }
}

/// Compressed braid-stage unitary: annihilate * loop * create, one pulse.
pub fn braid_step(braid_loop: &BraidLoop, label: &str, duration: f64) -> Result<UnitaryStep> {
    let n = 7;
    let create = embed_single(n, 0, &phase_gate()) * embed_single(n, 4, &pauli_x_gate());
    let annihilate = embed_single(n, 0, &phase_gate_inv()) * embed_single(n, 4, &pauli_x_gate());
    let loop_dense = braid_loop.operator(n)?.dense();
    UnitaryStep::new(label, annihilate * loop_dense * create, duration).map_err(Into::into)
}

/// Runs one scenario on the default seven-qubit setup.
pub fn run_scenario(cfg: &ScenarioConfig, params: &MoleculeParams) -> Result<DeviationOperator> {
    run_scenario_with(&SimulationSetup::default_setup()?, cfg, params)
}

/// Runs one scenario: ideal labeled PPS, then GD / braid / MM with the
/// configured noise.
///
/// Under dephasing each step splits into `slices_per_step` equal fractional
/// unitaries, each followed by dephasing for its share of the step duration.
/// Under gate imperfection each step unitary is replaced by its
/// fidelity-targeted perturbation before any slicing, so combined noise
/// dephases the perturbed pulse.
pub fn run_scenario_with(
    setup: &SimulationSetup,
    cfg: &ScenarioConfig,
    params: &MoleculeParams,
) -> Result<DeviationOperator> {
    cfg.validate()?;
    params.validate()?;
    let mut rho = labeled_pps(params)?;

    let mut steps: Vec<(&'static str, UnitaryStep)> = Vec::new();
    steps.push((
        "GD",
        UnitaryStep::new("GD", setup.gd.composite.matrix().clone(), cfg.durations.gd)?,
    ));
    if let Some(l) = setup.loop_for(cfg.scenario) {
        steps.push(("BD", braid_step(l, "BD", cfg.durations.braid)?));
    }
    steps.push((
        "MM",
        UnitaryStep::new("MM", setup.mm.matrix().clone(), cfg.durations.mm)?,
    ));

    for (role, step) in steps {
        rho = apply_step(rho, role, &step, cfg, params)?;
    }
    Ok(rho)
}

fn apply_step(
    rho: DeviationOperator,
    role: &str,
    step: &UnitaryStep,
    cfg: &ScenarioConfig,
    params: &MoleculeParams,
) -> Result<DeviationOperator> {
    let perturbed;
    let effective = match cfg.noise {
        NoiseModel::GateImperfection | NoiseModel::Both => {
            perturbed = perturb_unitary(
                step,
                cfg.target_gate_fidelity,
                step_seed(cfg.rng_seed, role),
            )?;
            &perturbed
        }
        _ => step,
    };
    match cfg.noise {
        NoiseModel::None | NoiseModel::GateImperfection => {
            Ok(apply_unitary(&rho, effective)?)
        }
        NoiseModel::Dephasing | NoiseModel::Both => {
            let k = cfg.slices_per_step;
            let slice = fractional_unitary(effective, k)?;
            let dt = effective.duration / k as f64;
            let mut out = rho;
            for _ in 0..k {
                out = apply_unitary(&out, &slice)?;
                out = dephase(&out, dt, &params.t2)?;
            }
            Ok(out)
        }
    }
}
