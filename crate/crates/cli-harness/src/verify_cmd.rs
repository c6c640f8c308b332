//! The `verify` subcommand: invariant suite over the configured model.

use anyon_braiding::{braiding_parity, evolved_braiding_phase, validate_loop, BraidLoop};
use kitaev_model::{
    gd_circuit_with_prefix, ground_space, ground_state_by_projection, LatticeSpec,
};
use nmr_emulation::{
    analysis_frequencies, labeled_pps, labeled_pps_stages, measurement_circuit,
    transform_stabilizers,
};
use qsim_core::{apply_unitary, PauliString, QuantumState, StateVector, UnitaryStep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;

type CheckResult = Result<(), String>;
type Check = (&'static str, CheckResult);

/// Runs every invariant check and prints a pass/fail table.
///
/// Returns true when all checks pass.
pub fn cmd_verify(cfg: &RunConfig) -> bool {
    let checks = run_checks(cfg);
    let mut all_ok = true;
    println!("{:<52} status", "check");
    for (name, outcome) in &checks {
        match outcome {
            Ok(()) => println!("{name:<52} pass"),
            Err(msg) => {
                all_ok = false;
                println!("{name:<52} FAIL: {msg}");
            }
        }
    }
    all_ok
}

pub fn run_checks(cfg: &RunConfig) -> Vec<Check> {
    let mut checks: Vec<Check> = vec![
        (
            "molecule parameters valid",
            cfg.molecule.validate().map_err(|e| e.to_string()),
        ),
        (
            "lattice stabilizers mutually commute",
            cfg.lattice.validate().map_err(|e| e.to_string()),
        ),
    ];
    if cfg.lattice.validate().is_err() {
        return checks;
    }
    checks.push(("configured loops are closed", loops_closed(cfg)));
    checks.push((
        "projected ground state satisfies all stabilizers",
        ground_stabilized(cfg),
    ));
    checks.push((
        "preparation circuit reproduces the ground state",
        circuit_matches_projection(cfg),
    ));
    checks.push((
        "gate-list product equals the composite",
        gate_list_consistent(cfg),
    ));
    checks.push(("toric 2x2 ground degeneracy is 4", toric_degeneracy()));
    checks.push((
        "braiding oracle equivalence on random loops",
        oracle_sample(cfg, 60),
    ));
    checks.push((
        "labeled PPS prepared with clean support",
        pps_prepared(cfg),
    ));
    checks.push((
        "measurement circuit maps both doublets",
        measurement_maps_doublets(cfg),
    ));
    checks.push((
        "analysis frequencies consistent (a - b = c - d)",
        frequency_consistency(cfg),
    ));
    checks.push((
        "transformed stabilizers fix the prepared state",
        transformed_stabilizers_hold(cfg),
    ));
    checks
}

fn check(ok: bool, msg: String) -> CheckResult {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn loops_closed(cfg: &RunConfig) -> CheckResult {
    for (name, l) in [("bd0", &cfg.loops.bd0), ("bd1", &cfg.loops.bd1), ("bd2", &cfg.loops.bd2)] {
        if !validate_loop(l, &cfg.lattice) {
            return Err(format!("loop {name} {:?} is open", l.qubits));
        }
    }
    Ok(())
}

fn ground_stabilized(cfg: &RunConfig) -> CheckResult {
    let ground = ground_state_by_projection(&cfg.lattice).map_err(|e| e.to_string())?;
    for s in cfg.lattice.stabilizers().map_err(|e| e.to_string())? {
        let e = ground.pauli_expectation_c(&s).map_err(|e| e.to_string())?;
        if (e.re - 1.0).abs() > 1e-10 {
            return Err(format!("<{s}> = {:.9}", e.re));
        }
    }
    Ok(())
}

fn circuit_matches_projection(cfg: &RunConfig) -> CheckResult {
    let ground = ground_state_by_projection(&cfg.lattice).map_err(|e| e.to_string())?;
    let gd = gd_circuit_with_prefix(&cfg.separation_prefix).map_err(|e| e.to_string())?;
    if gd.composite.dim() != 1 << cfg.lattice.n_qubits {
        return Err("preparation circuit is seven-qubit only".into());
    }
    let prepared = apply_unitary(&StateVector::zero_state(cfg.lattice.n_qubits), &gd.composite)
        .map_err(|e| e.to_string())?;
    check(
        (prepared.overlap(&ground) - 1.0).abs() < 1e-10,
        format!("overlap {:.12}", prepared.overlap(&ground)),
    )
}

fn gate_list_consistent(cfg: &RunConfig) -> CheckResult {
    let gd = gd_circuit_with_prefix(&cfg.separation_prefix).map_err(|e| e.to_string())?;
    let product = UnitaryStep::compose(&gd.steps, "recomposed").map_err(|e| e.to_string())?;
    let dev = qsim_core::max_abs_diff(product.matrix(), gd.composite.matrix());
    check(dev < 1e-10, format!("deviation {dev:.3e}"))
}

fn toric_degeneracy() -> CheckResult {
    let gs = ground_space(&LatticeSpec::toric(2, 2)).map_err(|e| e.to_string())?;
    check(
        gs.degeneracy == 4 && (gs.energy + 8.0).abs() < 1e-9,
        format!("degeneracy {} energy {:.6}", gs.degeneracy, gs.energy),
    )
}

fn oracle_sample(cfg: &RunConfig, count: usize) -> CheckResult {
    let lattice = &cfg.lattice;
    let ground = ground_state_by_projection(lattice).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c0a);
    for _ in 0..count {
        let mut mask = 0u64;
        while mask == 0 {
            for v in &lattice.vertices {
                if rng.gen() {
                    for &q in v {
                        mask ^= 1 << q;
                    }
                }
            }
        }
        let l = BraidLoop::x_string(
            (0..lattice.n_qubits)
                .filter(|&q| mask >> q & 1 != 0)
                .collect(),
        );
        let m_qubit = rng.gen_range(0..lattice.n_qubits);
        let charge_qubits: Vec<usize> = (0..lattice.n_qubits)
            .filter(|&q| q != m_qubit && rng.gen_bool(0.4))
            .collect();
        if charge_qubits.is_empty() {
            continue;
        }
        let charge =
            PauliString::z_string(lattice.n_qubits, &charge_qubits).map_err(|e| e.to_string())?;
        let m_creator =
            PauliString::x_string(lattice.n_qubits, &[m_qubit]).map_err(|e| e.to_string())?;
        let algebraic = braiding_parity(&l, &charge).map_err(|e| e.to_string())?;
        let evolved = evolved_braiding_phase(lattice, &ground, &charge, &m_creator, &l)
            .map_err(|e| e.to_string())?;
        if algebraic != evolved {
            return Err(format!("loop {:?} vs charge {charge}", l.qubits));
        }
    }
    Ok(())
}

fn pps_prepared(cfg: &RunConfig) -> CheckResult {
    let stages = labeled_pps_stages(&cfg.molecule).map_err(|e| e.to_string())?;
    let dim = stages.post_cycle.dim();
    check(
        (stages.post_cycle.entry(0, dim - 1).re - 0.5).abs() < 1e-10
            && (stages.output.entry(0, 0).re - 0.5).abs() < 1e-10,
        "cat coherence or PPS diagonal off target".into(),
    )
}

fn measurement_maps_doublets(cfg: &RunConfig) -> CheckResult {
    let ground = ground_state_by_projection(&cfg.lattice).map_err(|e| e.to_string())?;
    let mm = measurement_circuit().map_err(|e| e.to_string())?;
    let g_img = apply_unitary(&ground, &mm).map_err(|e| e.to_string())?;
    let charge = PauliString::z_string(7, &[0]).map_err(|e| e.to_string())?;
    let e_state = ground.apply_pauli(&charge).map_err(|e| e.to_string())?;
    let e_img = apply_unitary(&e_state, &mm).map_err(|e| e.to_string())?;
    let ok_g = (g_img.amplitude(0).norm_sqr() - 0.5).abs() < 1e-10
        && (g_img.amplitude(0b0001111).norm_sqr() - 0.5).abs() < 1e-10;
    let ok_e = (e_img.amplitude(0b1000000).norm_sqr() - 0.5).abs() < 1e-10
        && (e_img.amplitude(0b1001111).norm_sqr() - 0.5).abs() < 1e-10;
    check(ok_g && ok_e, "doublet images off target".into())
}

fn frequency_consistency(cfg: &RunConfig) -> CheckResult {
    let f = analysis_frequencies(&cfg.molecule);
    check(
        ((f.a - f.b) - (f.c - f.d)).abs() < 0.02,
        format!("a-b = {:.4}, c-d = {:.4}", f.a - f.b, f.c - f.d),
    )
}

fn transformed_stabilizers_hold(cfg: &RunConfig) -> CheckResult {
    let gd = gd_circuit_with_prefix(&cfg.separation_prefix).map_err(|e| e.to_string())?;
    let rho = labeled_pps(&cfg.molecule).map_err(|e| e.to_string())?;
    let prepared = rho
        .apply_matrix(gd.composite.matrix())
        .map_err(|e| e.to_string())?;
    let stabs = transform_stabilizers(&gd.composite, cfg.molecule.observe_spin)
        .map_err(|e| e.to_string())?;
    for s in &stabs {
        let e = prepared.pauli_expectation_c(s).map_err(|e| e.to_string())?;
        if (e.re - 1.0).abs() > 1e-8 {
            return Err(format!("<{s}> = {:.6}", e.re));
        }
    }
    Ok(())
}
