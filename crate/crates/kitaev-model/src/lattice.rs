//! Lattice geometry: qubits on edges, stabilizers from explicit qubit sets.

use qsim_core::PauliString;
use serde::{Deserialize, Serialize};

use crate::{ModelError, Result};

/// Boundary type of the lattice.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Periodic boundary; vertex/plaquette products carry global constraints.
    Toric,
    /// Open boundary with reduced-weight Z plaquettes and a unique ground state.
    Rough,
}

/// Planar or toric lattice described by explicit stabilizer supports.
///
/// `vertices[v]` lists the qubits of `star(v)` (the X-type stabilizer `A_v`);
/// `plaquettes[p]` lists the qubits of `bond(p)` (the Z-type stabilizer `B_p`).
/// Accepting explicit qubit sets lets the seven-qubit rough-boundary model and
/// small toric grids share one code path.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub n_qubits: usize,
    pub vertices: Vec<Vec<usize>>,
    pub plaquettes: Vec<Vec<usize>>,
    pub boundary: Boundary,
}

impl LatticeSpec {
    /// Validates index ranges and pairwise commutation of all stabilizers.
    pub fn new(
        n_qubits: usize,
        vertices: Vec<Vec<usize>>,
        plaquettes: Vec<Vec<usize>>,
        boundary: Boundary,
    ) -> Result<Self> {
        let lat = LatticeSpec {
            n_qubits,
            vertices,
            plaquettes,
            boundary,
        };
        lat.validate()?;
        Ok(lat)
    }

    /// Re-checks all invariants; useful after deserializing a config file.
    pub fn validate(&self) -> Result<()> {
        for set in self.vertices.iter().chain(self.plaquettes.iter()) {
            for &q in set {
                if q >= self.n_qubits {
                    return Err(ModelError::QubitOutOfRange {
                        index: q,
                        n_qubits: self.n_qubits,
                    });
                }
            }
        }
        // X-type pairs and Z-type pairs commute trivially; check X against Z.
        for (vi, v) in self.vertices.iter().enumerate() {
            let a = self.vertex_operator(vi)?;
            for (pi, _) in self.plaquettes.iter().enumerate() {
                let b = self.plaquette_operator(pi)?;
                if !a.commutes_with(&b) {
                    return Err(ModelError::NonCommutingStabilizers(
                        format!("A_{vi} ({:?})", v),
                        format!("B_{pi} ({:?})", self.plaquettes[pi]),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `A_v`: product of X over `star(v)`.
    pub fn vertex_operator(&self, v: usize) -> Result<PauliString> {
        Ok(PauliString::x_string(self.n_qubits, &self.vertices[v])?)
    }

    /// `B_p`: product of Z over `bond(p)`.
    pub fn plaquette_operator(&self, p: usize) -> Result<PauliString> {
        Ok(PauliString::z_string(self.n_qubits, &self.plaquettes[p])?)
    }

    /// All stabilizers, vertices first.
    pub fn stabilizers(&self) -> Result<Vec<PauliString>> {
        let mut out = Vec::with_capacity(self.vertices.len() + self.plaquettes.len());
        for v in 0..self.vertices.len() {
            out.push(self.vertex_operator(v)?);
        }
        for p in 0..self.plaquettes.len() {
            out.push(self.plaquette_operator(p)?);
        }
        Ok(out)
    }

    /// `w x h` toric lattice with qubits on edges (`2*w*h` qubits).
    ///
    /// Horizontal edge `(c, r)` leaves vertex `(c, r)` rightward and has index
    /// `r*w + c`; vertical edge `(c, r)` leaves it downward at `w*h + r*w + c`.
    pub fn toric(w: usize, h: usize) -> Self {
        assert!(w >= 2 && h >= 2, "toric grids below 2x2 degenerate");
        let hor = |c: usize, r: usize| r * w + c;
        let ver = |c: usize, r: usize| w * h + r * w + c;
        let mut vertices = Vec::new();
        let mut plaquettes = Vec::new();
        for r in 0..h {
            for c in 0..w {
                vertices.push(vec![
                    hor(c, r),
                    hor((c + w - 1) % w, r),
                    ver(c, r),
                    ver(c, (r + h - 1) % h),
                ]);
                plaquettes.push(vec![
                    hor(c, r),
                    hor(c, (r + 1) % h),
                    ver(c, r),
                    ver((c + 1) % w, r),
                ]);
            }
        }
        LatticeSpec {
            n_qubits: 2 * w * h,
            vertices,
            plaquettes,
            boundary: Boundary::Toric,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toric_2x2_is_valid_and_has_8_qubits() {
        let lat = LatticeSpec::toric(2, 2);
        assert_eq!(lat.n_qubits, 8);
        assert_eq!(lat.vertices.len(), 4);
        assert_eq!(lat.plaquettes.len(), 4);
        lat.validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range_indices() {
        let err = LatticeSpec::new(3, vec![vec![0, 3]], vec![], Boundary::Rough);
        assert!(matches!(err, Err(ModelError::QubitOutOfRange { .. })));
    }

    #[test]
    fn rejects_non_commuting_stabilizers() {
        // X_0 X_1 and Z_0 Z_2 overlap on a single qubit.
        let err = LatticeSpec::new(3, vec![vec![0, 1]], vec![vec![0, 2]], Boundary::Rough);
        assert!(matches!(err, Err(ModelError::NonCommutingStabilizers(_, _))));
    }

    #[test]
    fn round_trips_through_json() {
        let lat = LatticeSpec::toric(2, 2);
        let text = serde_json::to_string(&lat).unwrap();
        let back: LatticeSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(lat, back);
    }
}
