//! Defect detection: stabilizers with -1 expectation mark anyon sites.

use std::collections::BTreeSet;

use kitaev_model::LatticeSpec;
use qsim_core::{QuantumState, StateVector};

use crate::{BraidError, Result};

/// Anyon configuration: `e` particles live on vertices, `m` on plaquettes.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExcitationConfig {
    pub e_sites: BTreeSet<usize>,
    pub m_sites: BTreeSet<usize>,
}

impl ExcitationConfig {
    pub fn is_vacuum(&self) -> bool {
        self.e_sites.is_empty() && self.m_sites.is_empty()
    }
}

/// Scans all stabilizer expectations and reports the -1 sites.
///
/// Fails when the state is not an eigenstate of every stabilizer (expectation
/// away from ±1 by more than 1e-8).
pub fn detect_defects(state: &StateVector, lattice: &LatticeSpec) -> Result<ExcitationConfig> {
    let mut config = ExcitationConfig::default();
    for (v, _) in lattice.vertices.iter().enumerate() {
        let a = lattice.vertex_operator(v)?;
        let e = state.pauli_expectation_c(&a)?.re;
        match classify(e) {
            Some(false) => {
                config.e_sites.insert(v);
            }
            Some(true) => {}
            None => {
                return Err(BraidError::NotStabilizerEigenstate {
                    operator: a.to_string(),
                    value: e,
                })
            }
        }
    }
    for (p, _) in lattice.plaquettes.iter().enumerate() {
        let b = lattice.plaquette_operator(p)?;
        let e = state.pauli_expectation_c(&b)?.re;
        match classify(e) {
            Some(false) => {
                config.m_sites.insert(p);
            }
            Some(true) => {}
            None => {
                return Err(BraidError::NotStabilizerEigenstate {
                    operator: b.to_string(),
                    value: e,
                })
            }
        }
    }
    Ok(config)
}

/// `Some(true)` for +1, `Some(false)` for -1, `None` otherwise.
fn classify(expectation: f64) -> Option<bool> {
    if (expectation - 1.0).abs() < 1e-8 {
        Some(true)
    } else if (expectation + 1.0).abs() < 1e-8 {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kitaev_model::{ground_state_by_projection, seven_qubit_model};
    use qsim_core::PauliString;

    #[test]
    fn ground_state_is_vacuum() {
        let m = seven_qubit_model();
        let g = ground_state_by_projection(&m.lattice).unwrap();
        assert!(detect_defects(&g, &m.lattice).unwrap().is_vacuum());
    }

    #[test]
    fn x_on_qubit_five_creates_m_pair_at_b3_b5() {
        let m = seven_qubit_model();
        let g = ground_state_by_projection(&m.lattice).unwrap();
        let x5 = PauliString::x_string(7, &[4]).unwrap();
        let excited = g.apply_pauli(&x5).unwrap();
        let cfg = detect_defects(&excited, &m.lattice).unwrap();
        assert!(cfg.e_sites.is_empty());
        // B_3 and B_5 are plaquette indices 2 and 4.
        assert_eq!(cfg.m_sites, BTreeSet::from([2, 4]));
    }

    #[test]
    fn z_on_qubit_one_creates_single_e_at_v1() {
        let m = seven_qubit_model();
        let g = ground_state_by_projection(&m.lattice).unwrap();
        let z1 = PauliString::z_string(7, &[0]).unwrap();
        let excited = g.apply_pauli(&z1).unwrap();
        let cfg = detect_defects(&excited, &m.lattice).unwrap();
        assert_eq!(cfg.e_sites, BTreeSet::from([0]));
        assert!(cfg.m_sites.is_empty());
    }

    #[test]
    fn both_operators_combine() {
        let m = seven_qubit_model();
        let g = ground_state_by_projection(&m.lattice).unwrap();
        let zx = PauliString::z_string(7, &[0])
            .unwrap()
            .mul(&PauliString::x_string(7, &[4]).unwrap())
            .unwrap();
        let excited = g.apply_pauli(&zx).unwrap();
        let cfg = detect_defects(&excited, &m.lattice).unwrap();
        assert_eq!(cfg.e_sites, BTreeSet::from([0]));
        assert_eq!(cfg.m_sites, BTreeSet::from([2, 4]));
    }

    #[test]
    fn superposition_of_sectors_is_rejected() {
        let m = seven_qubit_model();
        let g = ground_state_by_projection(&m.lattice).unwrap();
        let z1 = PauliString::z_string(7, &[0]).unwrap();
        let excited = g.apply_pauli(&z1).unwrap();
        let mixed = StateVector::new(
            7,
            (g.amplitudes() + excited.amplitudes()) * num_complex::Complex64::new(0.5f64.sqrt(), 0.0),
        )
        .unwrap();
        assert!(matches!(
            detect_defects(&mixed, &m.lattice),
            Err(BraidError::NotStabilizerEigenstate { .. })
        ));
    }
}
