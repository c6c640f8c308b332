//! Acceptance suite: one test per release criterion, each printing a PASS line
//! with the measured numbers. Run with `cargo test -p cli-harness --test
//! acceptance -- --nocapture` to see them.

use std::str::FromStr;
use std::time::Instant;

use analysis::{anyonic_phase, fit_lorentzians};
use anyon_braiding::{braiding_parity, braiding_pipeline_on, evolved_braiding_phase, BraidLoop, BraidPhase};
use approx::assert_abs_diff_eq;
use cli_harness::config::RunConfig;
use cli_harness::pipeline::{pps_reference, run_one_scenario, setup_from_config};
use cli_harness::run_cmd::cmd_run;
use kitaev_model::{
    gd_circuit_with_prefix, ground_space, ground_state_by_projection, seven_qubit_model, Boundary,
    LatticeSpec,
};
use nmr_emulation::{
    analysis_frequencies, labeled_pps_stages, MoleculeParams, NoiseModel, Scenario,
};
use qsim_core::{apply_unitary, PauliString, QuantumState, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn default_config() -> (RunConfig, String) {
    let text = include_str!("../config/default.json").to_string();
    let cfg = RunConfig::parse(&text).unwrap();
    (cfg, text)
}

#[test]
fn criterion_01_noiseless_theory_reproduction() {
    let start = Instant::now();
    let (cfg, text) = default_config();
    let dir = tempfile::tempdir().unwrap();
    let report = cmd_run(&cfg, &text, &Scenario::all(), dir.path()).unwrap();
    for row in &report.rows {
        let theory = Scenario::from_str(&row.scenario).unwrap().theory_theta_deg();
        assert!(
            (row.theta_deg - theory).abs() < 1e-6,
            "{}: {} vs {}",
            row.scenario,
            row.theta_deg,
            theory
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "PASS criterion 1: noiseless run gives theta = (0, 0, 180, 180) within 1e-6 deg in {:.2}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_02_ground_state_exactness() {
    let gd = gd_circuit_with_prefix(&[(6, 1), (6, 2)]).unwrap();
    let prepared = apply_unitary(&StateVector::zero_state(7), &gd.composite).unwrap();
    let kets = [0usize, 0b1111000, 0b0001111, 0b1110111];
    for idx in 0..prepared.dim() {
        let a = prepared.amplitude(idx);
        if kets.contains(&idx) {
            assert!((a - num_complex::Complex64::new(0.5, 0.0)).norm() < 1e-10);
        } else {
            assert!(a.norm() < 1e-10, "stray amplitude at {idx}");
        }
    }
    let model = seven_qubit_model();
    for s in &model.stabilizers {
        let e = prepared.pauli_expectation_c(s).unwrap();
        assert!((e.re - 1.0).abs() < 1e-10 && e.im.abs() < 1e-10, "<{s}> = {e}");
    }
    println!("PASS criterion 2: four amplitudes of 1/2 and all seven stabilizers at +1 within 1e-10");
}

#[test]
fn criterion_03_toric_degeneracy() {
    let start = Instant::now();
    let gs = ground_space(&LatticeSpec::toric(2, 2)).unwrap();
    assert_eq!(gs.degeneracy, 4);
    assert_abs_diff_eq!(gs.energy, -8.0, epsilon = 1e-9);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0);
    println!(
        "PASS criterion 3: 2x2 toric ground space has dimension 4 at energy -8 in {:.2}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_04_oracle_equivalence_and_path_independence() {
    let lattices = vec![
        seven_qubit_model().lattice,
        LatticeSpec::new(
            5,
            vec![vec![0, 1, 2], vec![2, 3, 4]],
            vec![vec![0, 1], vec![1, 2, 3], vec![3, 4]],
            Boundary::Rough,
        )
        .unwrap(),
        LatticeSpec::new(
            7,
            vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]],
            vec![vec![0, 1], vec![1, 2, 3], vec![3, 4, 5], vec![5, 6]],
            Boundary::Rough,
        )
        .unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let mut total = 0usize;
    for lattice in &lattices {
        let ground = ground_state_by_projection(lattice).unwrap();
        let mut final_states: Vec<(BraidPhase, StateVector)> = Vec::new();
        let charge = PauliString::z_string(lattice.n_qubits, &[0]).unwrap();
        let m_creator = PauliString::x_string(
            lattice.n_qubits,
            &[lattice.n_qubits - 1],
        )
        .unwrap();
        for _ in 0..70 {
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
                (0..lattice.n_qubits).filter(|&q| mask >> q & 1 != 0).collect(),
            );
            // Oracle equivalence against a random charge.
            let rand_charge_qubits: Vec<usize> = (0..lattice.n_qubits - 1)
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            if !rand_charge_qubits.is_empty() {
                let rc = PauliString::z_string(lattice.n_qubits, &rand_charge_qubits).unwrap();
                let algebraic = braiding_parity(&l, &rc).unwrap();
                let evolved =
                    evolved_braiding_phase(lattice, &ground, &rc, &m_creator, &l).unwrap();
                assert_eq!(algebraic, evolved, "loop {:?}", l.qubits);
            }
            // Path independence of the full pipeline against a fixed charge.
            let phase = braiding_parity(&l, &charge).unwrap();
            let out = braiding_pipeline_on(lattice, &ground, &charge, &m_creator, &l).unwrap();
            for (p, s) in &final_states {
                if *p == phase {
                    assert!(
                        (out.overlap(s) - 1.0).abs() < 1e-10,
                        "same-parity loops disagree on lattice with {} qubits",
                        lattice.n_qubits
                    );
                }
            }
            final_states.push((phase, out));
            total += 1;
        }
    }
    assert!(total >= 200, "only {total} loops exercised");
    println!("PASS criterion 4: {total} random loops match the algebraic oracle; same-parity finals overlap at 1");
}

#[test]
fn criterion_05_four_analysis_frequencies() {
    let params = MoleculeParams::default_calibration();
    let f = analysis_frequencies(&params);
    assert_abs_diff_eq!(f.a, 61.25, epsilon = 0.02);
    assert_abs_diff_eq!(f.b, 24.09, epsilon = 0.02);
    assert_abs_diff_eq!(f.c, 32.24, epsilon = 0.02);
    assert_abs_diff_eq!(f.d, -4.93, epsilon = 0.02);
    assert_abs_diff_eq!(f.a - f.b, f.c - f.d, epsilon = 0.02);
    println!(
        "PASS criterion 5: analysis lines at ({:.4}, {:.4}, {:.4}, {:.4}) Hz with a-b = c-d",
        f.a, f.b, f.c, f.d
    );
}

#[test]
fn criterion_06_phase_formula_regression() {
    let pairs = [(0.83, 0.01), (0.83, 0.02), (0.05, 0.85), (0.05, 0.81)];
    let ours = [12.55, 17.65, 152.73, 152.10];
    let reported = [12.1, 17.4, 153.9, 151.4];
    for i in 0..4 {
        let theta = anyonic_phase(pairs[i].0, pairs[i].1).unwrap();
        assert!(
            (theta - ours[i]).abs() < 0.1,
            "formula value {theta} vs {}",
            ours[i]
        );
        assert!(
            (theta - reported[i]).abs() < 2.0,
            "formula value {theta} vs reported {}",
            reported[i]
        );
    }
    println!("PASS criterion 6: phase formula reproduces the published pairs within 0.1 deg (ours) and 2 deg (reported)");
}

#[test]
fn criterion_07_noisy_simulation_bands() {
    let start = Instant::now();
    let (base, _) = default_config();
    let setup = setup_from_config(&base).unwrap();
    let reference = pps_reference(&base).unwrap();

    let run_theta = |noise: NoiseModel, seed: u64, scenario: Scenario| -> f64 {
        let mut cfg = base.clone();
        cfg.run.noise = noise;
        cfg.run.rng_seed = seed;
        run_one_scenario(&cfg, &setup, scenario, &reference)
            .unwrap()
            .result
            .theta_deg
    };

    // Dephasing plus imperfection: trivial in [10, 30], nontrivial in [140, 170].
    let mut both = std::collections::BTreeMap::new();
    for scenario in Scenario::all() {
        let theta = run_theta(NoiseModel::Both, base.run.rng_seed, scenario);
        let band = if scenario.is_trivial() { (10.0, 30.0) } else { (140.0, 170.0) };
        assert!(
            theta >= band.0 && theta <= band.1,
            "{scenario} at {theta:.2} outside [{}, {}]",
            band.0,
            band.1
        );
        both.insert(scenario, theta);
    }
    assert!((both[&Scenario::Bd1] - both[&Scenario::Bd2]).abs() <= 2.0);

    // Dephasing alone obeys the same bands and path independence.
    let d1 = run_theta(NoiseModel::Dephasing, base.run.rng_seed, Scenario::Bd1);
    let d2 = run_theta(NoiseModel::Dephasing, base.run.rng_seed, Scenario::Bd2);
    assert!((140.0..=170.0).contains(&d1) && (140.0..=170.0).contains(&d2));
    assert!((d1 - d2).abs() <= 2.0);

    // Gate imperfection alone: median over 20 seeds in [170, 180].
    let median = |mut v: Vec<f64>| -> f64 {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        0.5 * (v[v.len() / 2] + v[(v.len() - 1) / 2])
    };
    let mut med = std::collections::BTreeMap::new();
    for scenario in [Scenario::Bd1, Scenario::Bd2] {
        let thetas: Vec<f64> = (0..20)
            .map(|seed| run_theta(NoiseModel::GateImperfection, seed, scenario))
            .collect();
        let m = median(thetas);
        assert!(
            (170.0..=180.0).contains(&m),
            "{scenario} imperfection median {m:.2}"
        );
        med.insert(scenario, m);
    }
    assert!((med[&Scenario::Bd1] - med[&Scenario::Bd2]).abs() <= 2.0);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}");
    println!(
        "PASS criterion 7: both-noise thetas ({:.1}, {:.1}, {:.1}, {:.1}); imperfection medians ({:.1}, {:.1}); BD1-BD2 within 2 deg; {:.1}s",
        both[&Scenario::NoBd],
        both[&Scenario::Bd0],
        both[&Scenario::Bd1],
        both[&Scenario::Bd2],
        med[&Scenario::Bd1],
        med[&Scenario::Bd2],
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_08_cat_state_pps() {
    let params = MoleculeParams::default_calibration();
    let stages = labeled_pps_stages(&params).unwrap();
    let out = &stages.output;
    for r in 0..out.dim() {
        for c in 0..out.dim() {
            let expect = match (r, c) {
                (0, 0) => 0.5,
                (1, 1) => -0.5,
                _ => 0.0,
            };
            assert!(
                (out.entry(r, c) - num_complex::Complex64::new(expect, 0.0)).norm() < 1e-9,
                "PPS entry ({r},{c})"
            );
        }
    }
    // Post-cycle state matches the cat coherence (|0..0><1..1| + h.c.)/sqrt(2)
    // after normalizing both to unit Frobenius norm.
    let cat = &stages.post_cycle;
    let frob: f64 = (0..cat.dim())
        .flat_map(|r| (0..cat.dim()).map(move |c| (r, c)))
        .map(|(r, c)| cat.entry(r, c).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let dim = cat.dim();
    for r in 0..dim {
        for c in 0..dim {
            let expect = if (r, c) == (0, dim - 1) || (r, c) == (dim - 1, 0) {
                std::f64::consts::FRAC_1_SQRT_2
            } else {
                0.0
            };
            assert!(
                (cat.entry(r, c) / num_complex::Complex64::new(frob, 0.0)
                    - num_complex::Complex64::new(expect, 0.0))
                .norm()
                    < 1e-9,
                "cat entry ({r},{c})"
            );
        }
    }
    println!("PASS criterion 8: labeled PPS exact to 1e-9 and post-cycle state is the stated cat coherence");
}

#[test]
fn criterion_09_fitting_fidelity() {
    let lorentz = |f: f64, f0: f64, w: f64| {
        let x = (f - f0) / (w / 2.0);
        1.0 / (1.0 + x * x)
    };
    let step = 0.05;
    let n = (160.0 / step) as usize + 1;
    let grid: Vec<f64> = (0..n).map(|i| -80.0 + i as f64 * step).collect();
    let w = 0.64;

    // Noiseless round trip.
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let offsets: Vec<f64> = (0..64)
        .map(|i| -50.0 + i as f64 * (100.0 / 64.0) + rng.gen::<f64>() * 0.2)
        .collect();
    let amps: Vec<f64> = (0..64).map(|_| 0.3 + 0.7 * rng.gen::<f64>()).collect();
    let synth = |noise_rng: Option<&mut ChaCha8Rng>| -> Vec<f64> {
        let clean: Vec<f64> = grid
            .iter()
            .map(|&f| offsets.iter().zip(&amps).map(|(&f0, &a)| a * lorentz(f, f0, w)).sum())
            .collect();
        match noise_rng {
            None => clean,
            Some(rng) => {
                let max = clean.iter().cloned().fold(0.0f64, f64::max);
                clean
                    .iter()
                    .map(|v| v + 0.01 * max * rng.sample::<f64, _>(StandardNormal))
                    .collect()
            }
        }
    };
    let clean = synth(None);
    let fit = fit_lorentzians(&grid, &clean, &offsets, 0.5).unwrap();
    for (p, &truth) in fit.peaks.iter().zip(&amps) {
        assert!((p.amplitude - truth).abs() < 1e-6);
    }

    // Monte Carlo: 100 seeds, 1% of max additive noise, errors under 2% of
    // the amplitude scale.
    let max_amp = amps.iter().cloned().fold(0.0f64, f64::max);
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let mut noise_rng = ChaCha8Rng::seed_from_u64(7000 + seed);
        let noisy = synth(Some(&mut noise_rng));
        let fit = fit_lorentzians(&grid, &noisy, &offsets, 0.5).unwrap();
        for (p, &truth) in fit.peaks.iter().zip(&amps) {
            let err = (p.amplitude - truth).abs();
            worst = worst.max(err);
            assert!(
                err < 0.02 * max_amp,
                "seed {seed}: error {err} at offset {}",
                p.offset_hz
            );
        }
    }
    println!(
        "PASS criterion 9: noiseless round trip < 1e-6; 100-seed worst amplitude error {:.4} < 2% of scale",
        worst
    );
}

#[test]
fn criterion_10_determinism() {
    let (mut cfg, text) = default_config();
    cfg.run.noise = NoiseModel::Both;
    cfg.run.rng_seed = 42;
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    cmd_run(&cfg, &text, &Scenario::all(), a.path()).unwrap();
    cmd_run(&cfg, &text, &Scenario::all(), b.path()).unwrap();
    let mut names: Vec<String> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert!(names.len() >= 15);
    for name in &names {
        let left = std::fs::read(a.path().join(name)).unwrap();
        let right = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(left, right, "artifact {name} differs");
    }
    println!(
        "PASS criterion 10: {} artifacts byte-identical across reruns",
        names.len()
    );
}
