//! Hamiltonian assembly and exact ground-state computation.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qsim_core::{hermitian_eigen, PauliString, StateVector};

use crate::lattice::{Boundary, LatticeSpec};
use crate::{ModelError, Result};

/// Degeneracy tolerance: stabilizer spectra are integers with gap 2.
const DEGENERACY_TOL: f64 = 1e-6;

/// `H = -sum_v A_v - sum_p B_p` as a dense Hermitian matrix.
pub fn build_hamiltonian(lattice: &LatticeSpec) -> Result<DMatrix<Complex64>> {
    lattice.validate()?;
    let dim = 1usize << lattice.n_qubits;
    let mut h = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for s in lattice.stabilizers()? {
        for c in 0..dim {
            let (r, f) = s.apply_to_index(c);
            h[(r, c)] -= f;
        }
    }
    Ok(h)
}

/// Orthonormal basis of the lowest eigenspace of the lattice Hamiltonian.
#[derive(Clone, Debug)]
pub struct GroundSpace {
    pub energy: f64,
    pub degeneracy: usize,
    pub basis: Vec<StateVector>,
}

/// Exact diagonalization of the lattice Hamiltonian, dense, `n <= 12`.
pub fn ground_space(lattice: &LatticeSpec) -> Result<GroundSpace> {
    if lattice.n_qubits > 12 {
        return Err(ModelError::TooLarge(lattice.n_qubits));
    }
    let h = build_hamiltonian(lattice)?;
    let (vals, vecs) = hermitian_eigen(&h);
    let e0 = vals[0];
    let degeneracy = vals.iter().filter(|&&e| e - e0 < DEGENERACY_TOL).count();
    let basis = (0..degeneracy)
        .map(|k| StateVector::new(lattice.n_qubits, vecs.column(k).clone_owned()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(GroundSpace {
        energy: e0,
        degeneracy,
        basis,
    })
}

/// Ground state via `prod_v (I + A_v)/sqrt(2) |0..0>`, normalized.
///
/// Requires `|0..0>` to be a +1 eigenstate of every plaquette operator, which
/// holds for any Z-type plaquette set.
pub fn ground_state_by_projection(lattice: &LatticeSpec) -> Result<StateVector> {
    lattice.validate()?;
    let zero = StateVector::zero_state(lattice.n_qubits);
    for p in 0..lattice.plaquettes.len() {
        let b = lattice.plaquette_operator(p)?;
        let expect = zero.pauli_expectation_c(&b)?;
        if (expect - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(ModelError::ProjectionPrecondition(p));
        }
    }
    let mut psi = zero;
    let scale = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for v in 0..lattice.vertices.len() {
        let a = lattice.vertex_operator(v)?;
        let flipped = psi.apply_pauli(&a)?;
        let sum = StateVector::new(
            lattice.n_qubits,
            (psi.amplitudes() + flipped.amplitudes()) * scale,
        )?;
        psi = sum;
    }
    Ok(psi.normalized()?)
}

use qsim_core::QuantumState;

/// The Fig. 3 seven-qubit rough-boundary model with its exact stabilizer set.
#[derive(Clone, Debug)]
pub struct SevenQubitModel {
    pub lattice: LatticeSpec,
    /// `A_1, A_2, B_1..B_5` in order (0-based qubit labels).
    pub stabilizers: Vec<PauliString>,
}

/// Seven-qubit model: `A_1 = X0X1X2X3`, `A_2 = X3X4X5X6`, `B_1 = Z0Z1`,
/// `B_2 = Z0Z2`, `B_3 = Z1Z3Z4`, `B_4 = Z2Z3Z5`, `B_5 = Z4Z6`.
pub fn seven_qubit_model() -> SevenQubitModel {
    let lattice = LatticeSpec::new(
        7,
        vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]],
        vec![
            vec![0, 1],
            vec![0, 2],
            vec![1, 3, 4],
            vec![2, 3, 5],
            vec![4, 6],
        ],
        Boundary::Rough,
    )
    .expect("seven-qubit lattice is valid by construction");
    let stabilizers = lattice
        .stabilizers()
        .expect("stabilizer construction cannot fail on a validated lattice");
    SevenQubitModel {
        lattice,
        stabilizers,
    }
}
