//! Per-spin calibration of the simulated molecule.

use serde::{Deserialize, Serialize};

use crate::{NmrError, Result};

/// Chemical shifts, scalar couplings and relaxation times of the spin system.
///
/// The default calibration pins only what the four stated observe-spin
/// analysis frequencies determine: `J[0][6] = 29.015`,
/// `J[1][6] + J[2][6] = 56.325` and `J[3][6] + J[4][6] + J[5][6] = 37.165` Hz.
/// The split within each sum and all relaxation times are placeholders chosen
/// so that every one of the 64 observe-spin lines is spectrally resolved; all
/// values can be overridden from the molecule section of a config file.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MoleculeParams {
    pub n_spins: usize,
    /// Chemical shift offsets, Hz.
    pub nu: Vec<f64>,
    /// Symmetric scalar coupling matrix, Hz, zero diagonal.
    pub j: Vec<Vec<f64>>,
    /// T1 relaxation times, seconds.
    pub t1: Vec<f64>,
    /// T2 dephasing times, seconds.
    pub t2: Vec<f64>,
    /// Spin whose spectrum is read out (the labeling spin).
    pub observe_spin: usize,
}

impl MoleculeParams {
    /// Seven-spin default calibration with observe spin 6.
    pub fn default_calibration() -> Self {
        let couplings_to_observe = [29.015, 45.0524, 11.2726, 22.508, 12.3883, 2.2687];
        let n = 7;
        let mut j = vec![vec![0.0; n]; n];
        for (i, &v) in couplings_to_observe.iter().enumerate() {
            j[i][6] = v;
            j[6][i] = v;
        }
        MoleculeParams {
            n_spins: n,
            nu: vec![0.0; n],
            j,
            t1: vec![15.0; n],
            t2: vec![3.5; n],
            observe_spin: 6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_spins;
        if self.nu.len() != n || self.t1.len() != n || self.t2.len() != n {
            return Err(NmrError::InvalidMolecule(format!(
                "per-spin arrays must have length {n}"
            )));
        }
        if self.j.len() != n || self.j.iter().any(|row| row.len() != n) {
            return Err(NmrError::InvalidMolecule(format!(
                "coupling matrix must be {n}x{n}"
            )));
        }
        if self.observe_spin >= n {
            return Err(NmrError::InvalidMolecule(format!(
                "observe_spin {} out of range",
                self.observe_spin
            )));
        }
        for i in 0..n {
            if self.j[i][i] != 0.0 {
                return Err(NmrError::InvalidMolecule(format!(
                    "coupling diagonal must be zero (spin {i})"
                )));
            }
            for k in 0..n {
                if (self.j[i][k] - self.j[k][i]).abs() > 1e-12 {
                    return Err(NmrError::InvalidMolecule(format!(
                        "coupling matrix must be symmetric ({i},{k})"
                    )));
                }
            }
            if self.t2[i] <= 0.0 {
                return Err(NmrError::InvalidMolecule(format!(
                    "T2 of spin {i} must be positive, got {}",
                    self.t2[i]
                )));
            }
            if self.t1[i] < self.t2[i] {
                return Err(NmrError::InvalidMolecule(format!(
                    "T1 of spin {i} must be >= T2 ({} < {})",
                    self.t1[i], self.t2[i]
                )));
            }
        }
        Ok(())
    }

    /// Uniformly rescales all T2 values (noise sweeps).
    pub fn with_t2_scale(&self, scale: f64) -> Self {
        let mut out = self.clone();
        for t in &mut out.t2 {
            *t *= scale;
        }
        out
    }

    /// Default full-width-at-half-maximum linewidth of the observe spin, Hz.
    pub fn observe_linewidth_hz(&self) -> f64 {
        1.0 / (std::f64::consts::PI * self.t2[self.observe_spin])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_calibration_is_valid() {
        MoleculeParams::default_calibration().validate().unwrap();
    }

    #[test]
    fn paper_constrained_coupling_sums() {
        let p = MoleculeParams::default_calibration();
        let j = |i: usize| p.j[i][6];
        assert!((j(0) - 29.015).abs() < 1e-9);
        assert!((j(1) + j(2) - 56.325).abs() < 1e-9);
        assert!((j(3) + j(4) + j(5) - 37.165).abs() < 1e-9);
    }

    #[test]
    fn rejects_zero_t2() {
        let mut p = MoleculeParams::default_calibration();
        p.t2[3] = 0.0;
        assert!(matches!(p.validate(), Err(NmrError::InvalidMolecule(_))));
    }

    #[test]
    fn rejects_asymmetric_couplings() {
        let mut p = MoleculeParams::default_calibration();
        p.j[0][1] = 5.0;
        assert!(matches!(p.validate(), Err(NmrError::InvalidMolecule(_))));
    }

    #[test]
    fn rejects_t1_below_t2() {
        let mut p = MoleculeParams::default_calibration();
        p.t1[2] = 0.1;
        assert!(matches!(p.validate(), Err(NmrError::InvalidMolecule(_))));
    }
}
