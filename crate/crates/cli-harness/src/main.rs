//! `anyon-sim`: seven-qubit anyon braiding simulation over an NMR-style
//! readout chain.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use cli_harness::config::RunConfig;
use cli_harness::run_cmd::cmd_run;
use cli_harness::sweep_cmd::{cmd_sweep, SweepParam};
use cli_harness::verify_cmd::cmd_verify;
use cli_harness::CliError;
use nmr_emulation::{NoiseModel, Scenario};

#[derive(Parser)]
#[command(
    name = "anyon-sim",
    version,
    about = "Simulates braiding of Kitaev-model anyons on seven qubits with NMR-style preparation, noise and spectral readout",
    after_help = "exit codes: 0 success, 1 verification failure, 2 config/usage error, 3 simulation contract or I/O failure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run scenarios and write spectra, peak lists, plots and the phase report.
    Run {
        /// Path to a JSON config; defaults to the built-in configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Scenario to run: all, noBD, BD0, BD1 or BD2.
        #[arg(long, default_value = "all")]
        scenario: String,
        /// Noise override: none, dephasing, gate_imperfection or both.
        #[arg(long)]
        noise: Option<String>,
        /// Seed override for gate-imperfection sampling.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for artifacts.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run the invariant suite and print a pass/fail table.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Sweep one noise parameter over a list of values.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// t2_scale, gate_fidelity or slices_per_step.
        #[arg(long)]
        param: String,
        /// Comma-separated values, e.g. 1,0.5,0.25.
        #[arg(long)]
        values: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Print the built-in default config as editable JSON.
    DumpConfig,
}

fn load(config: &Option<PathBuf>) -> Result<(RunConfig, String), CliError> {
    match config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            let cfg = RunConfig::parse(&text).map_err(CliError::Config)?;
            Ok((cfg, text))
        }
        None => {
            let text = include_str!("../config/default.json").to_string();
            let cfg = RunConfig::parse(&text).map_err(CliError::Config)?;
            Ok((cfg, text))
        }
    }
}

fn scenario_list(cfg: &RunConfig, flag: &str) -> Result<Vec<Scenario>, CliError> {
    if flag == "all" {
        return Ok(cfg.run.scenarios.clone());
    }
    Scenario::from_str(flag).map(|s| vec![s]).map_err(|_| {
        CliError::Config(format!(
            "unknown scenario '{flag}'\nusage: --scenario all|noBD|BD0|BD1|BD2"
        ))
    })
}

fn run() -> Result<bool, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            scenario,
            noise,
            seed,
            out,
        } => {
            let (mut cfg, text) = load(&config)?;
            if let Some(n) = noise {
                cfg.run.noise = NoiseModel::from_str(&n).map_err(|_| {
                    CliError::Config(format!(
                        "unknown noise model '{n}'\nusage: --noise none|dephasing|gate_imperfection|both"
                    ))
                })?;
            }
            if let Some(s) = seed {
                cfg.run.rng_seed = s;
            }
            let scenarios = scenario_list(&cfg, &scenario)?;
            cmd_run(&cfg, &text, &scenarios, &out)?;
            Ok(true)
        }
        Command::Verify { config } => {
            let (cfg, _) = load(&config)?;
            Ok(cmd_verify(&cfg))
        }
        Command::Sweep {
            config,
            param,
            values,
            out,
        } => {
            let (cfg, text) = load(&config)?;
            let param = SweepParam::from_str(&param)?;
            let values: Vec<f64> = values
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|e| CliError::Config(format!("bad sweep value '{v}': {e}")))
                })
                .collect::<Result<_, _>>()?;
            cmd_sweep(&cfg, &text, param, &values, &out)?;
            Ok(true)
        }
        Command::DumpConfig => {
            print!("{}", RunConfig::builtin_default().to_json_pretty());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
