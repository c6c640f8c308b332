//! Braiding loops and their topological classification.

use kitaev_model::LatticeSpec;
use qsim_core::{CommutationParity, PauliString};
use serde::{Deserialize, Serialize};

use crate::Result;

/// Loop operator flavor; only X-strings move `m` particles here.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopKind {
    XString,
}

/// A braiding path given as the ordered qubits its operator acts on.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BraidLoop {
    pub kind: LoopKind,
    pub qubits: Vec<usize>,
}

impl BraidLoop {
    pub fn x_string(qubits: Vec<usize>) -> Self {
        BraidLoop {
            kind: LoopKind::XString,
            qubits,
        }
    }

    /// The loop operator: product of X over the listed qubits.
    pub fn operator(&self, n_qubits: usize) -> Result<PauliString> {
        Ok(PauliString::x_string(n_qubits, &self.qubits)?)
    }
}

/// Phase acquired by the enclosed-charge component after one full braid.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BraidPhase {
    Zero,
    Pi,
}

impl BraidPhase {
    pub fn radians(self) -> f64 {
        match self {
            BraidPhase::Zero => 0.0,
            BraidPhase::Pi => std::f64::consts::PI,
        }
    }
}

/// A loop is closed exactly when its operator commutes with every plaquette.
pub fn validate_loop(braid_loop: &BraidLoop, lattice: &LatticeSpec) -> bool {
    let op = match braid_loop.operator(lattice.n_qubits) {
        Ok(op) => op,
        Err(_) => return false,
    };
    (0..lattice.plaquettes.len()).all(|p| {
        lattice
            .plaquette_operator(p)
            .map(|b| op.commutes_with(&b))
            .unwrap_or(false)
    })
}

/// Algebraic oracle for the braiding phase: pi exactly when the loop operator
/// anticommutes with the Z-string that created the enclosed `e` charge.
pub fn braiding_parity(braid_loop: &BraidLoop, charge: &PauliString) -> Result<BraidPhase> {
    let op = braid_loop.operator(charge.n_qubits())?;
    Ok(match op.commutation_parity(charge) {
        CommutationParity::Commute => BraidPhase::Zero,
        CommutationParity::Anticommute => BraidPhase::Pi,
    })
}
