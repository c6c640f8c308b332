//! Measurement basis change that exposes the anyonic phase on diagonals.

use qsim_core::{cnot_matrix, embed_single, hadamard, UnitaryStep};

use crate::Result;

/// Duration of the measurement step, seconds.
pub const MM_DURATION_S: f64 = 0.06;

/// The basis transformation `U_MM` mapping the ground-state doublet to
/// `|0000000> + |0001111>` and the excited doublet to `|1000000> + |1001111>`.
///
/// Implemented as the inverse of the first half of the preparation circuit:
/// temporally `CNOT(0->3), CNOT(0->2), CNOT(0->1), H(0)`. Undoing that half
/// collapses the `A_1` projection back onto qubit 0 while turning the charge
/// string `Z_0` into the population label `X_0`.
pub fn measurement_circuit() -> Result<UnitaryStep> {
    let n = 7;
    let steps = [
        UnitaryStep::new("CNOT(0->3)", cnot_matrix(n, 0, 3), MM_DURATION_S / 4.0)?,
        UnitaryStep::new("CNOT(0->2)", cnot_matrix(n, 0, 2), MM_DURATION_S / 4.0)?,
        UnitaryStep::new("CNOT(0->1)", cnot_matrix(n, 0, 1), MM_DURATION_S / 4.0)?,
        UnitaryStep::new("H(0)", embed_single(n, 0, &hadamard()), MM_DURATION_S / 4.0)?,
    ];
    UnitaryStep::compose(&steps, "MM").map_err(Into::into)
}
