//! Ground-state (GD) preparation circuit for the seven-qubit model.

use qsim_core::{cnot_matrix, embed_single, hadamard, UnitaryStep};

use crate::Result;

/// Duration of the whole ground-state preparation step, seconds.
pub const GD_DURATION_S: f64 = 0.06;

/// Gate list plus the composite unitary of the preparation step.
#[derive(Clone, Debug)]
pub struct GdCircuit {
    /// Gates in temporal order (first applied first).
    pub steps: Vec<UnitaryStep>,
    pub composite: UnitaryStep,
}

/// Canonical decomposition without any prefix gates.
///
/// Two commuting halves, each a Hadamard fanned out by three CNOTs:
/// `H(0), CNOT(0->1), CNOT(0->2), CNOT(0->3)` projects onto the +1 space of
/// `A_1`, then `H(4), CNOT(4->3), CNOT(4->5), CNOT(4->6)` onto that of `A_2`.
/// Applied to `|0..0>` this yields the four-ket ground state with amplitudes
/// 1/2 each.
pub fn gd_circuit() -> GdCircuit {
    gd_circuit_with_prefix(&[]).expect("prefix-free circuit is always valid")
}

/// Same circuit with leading CNOTs `(control, target)` prepended.
///
/// A prefix of CNOTs controlled on the labeling qubit reroutes the deviation
/// partner of a labeled pseudo-pure input to spectrally separated output
/// configurations while acting as the identity on `|0..0>`.
pub fn gd_circuit_with_prefix(prefix: &[(usize, usize)]) -> Result<GdCircuit> {
    let n = 7;
    let mut gates: Vec<(String, nalgebra::DMatrix<num_complex::Complex64>)> = Vec::new();
    for &(c, t) in prefix {
        gates.push((format!("CNOT({c}->{t})"), cnot_matrix(n, c, t)));
    }
    for (h, targets) in [(0usize, [1usize, 2, 3]), (4, [3, 5, 6])] {
        gates.push((format!("H({h})"), embed_single(n, h, &hadamard())));
        for t in targets {
            gates.push((format!("CNOT({h}->{t})"), cnot_matrix(n, h, t)));
        }
    }
    let per_gate = GD_DURATION_S / gates.len() as f64;
    let steps = gates
        .into_iter()
        .map(|(label, m)| UnitaryStep::new(label, m, per_gate))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let composite = UnitaryStep::compose(&steps, "GD")?;
    Ok(GdCircuit { steps, composite })
}
