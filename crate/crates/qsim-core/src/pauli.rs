//! Bit-mask encoded Pauli strings with symplectic commutation checks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{QsimError, Result, I, ONE};

/// Global phase of a Pauli string, one of `{+1, +i, -1, -i}` (stored as `i^k`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_exponent(k: u32) -> Self {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn exponent(self) -> u32 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn as_complex(self) -> Complex64 {
        match self {
            Phase::PlusOne => ONE,
            Phase::PlusI => I,
            Phase::MinusOne => -ONE,
            Phase::MinusI => -I,
        }
    }

    pub fn times(self, other: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + other.exponent())
    }

    pub fn negated(self) -> Phase {
        Phase::from_exponent(self.exponent() + 2)
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::PlusOne | Phase::MinusOne)
    }
}

/// Single-qubit Pauli operator label.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SingleQubitPauli {
    I,
    X,
    Y,
    Z,
}

/// Result of a commutation check between two Pauli strings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CommutationParity {
    Commute,
    Anticommute,
}

/// Signed tensor product of single-qubit Paulis over `n_qubits` qubits.
///
/// Encoded as two bit masks in *qubit space* (bit `q` refers to qubit `q`,
/// independent of the basis-index bit layout): `x_mask` marks X components,
/// `z_mask` marks Z components, and a qubit carrying both is a Y. The dense
/// rendering is `phase * tensor_q sigma(x_q, z_q)` with `sigma(1,1) = Y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliString {
    n_qubits: usize,
    x_mask: u64,
    z_mask: u64,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= 60, "register too wide for u64 masks");
        PauliString {
            n_qubits,
            x_mask: 0,
            z_mask: 0,
            phase: Phase::PlusOne,
        }
    }

    /// Builds a string from explicit per-qubit operators; unlisted qubits are I.
    pub fn from_ops(n_qubits: usize, ops: &[(usize, SingleQubitPauli)]) -> Result<Self> {
        let mut p = PauliString::identity(n_qubits);
        let mut seen = 0u64;
        for &(q, op) in ops {
            if q >= n_qubits {
                return Err(QsimError::InvalidArgument(format!(
                    "qubit index {q} out of range for {n_qubits} qubits"
                )));
            }
            if seen & (1 << q) != 0 {
                return Err(QsimError::InvalidArgument(format!(
                    "qubit {q} listed twice"
                )));
            }
            seen |= 1 << q;
            let bit = 1u64 << q;
            match op {
                SingleQubitPauli::I => {}
                SingleQubitPauli::X => p.x_mask |= bit,
                SingleQubitPauli::Y => {
                    p.x_mask |= bit;
                    p.z_mask |= bit;
                }
                SingleQubitPauli::Z => p.z_mask |= bit,
            }
        }
        Ok(p)
    }

    /// Product of X on each listed qubit.
    pub fn x_string(n_qubits: usize, qubits: &[usize]) -> Result<Self> {
        let ops: Vec<_> = qubits.iter().map(|&q| (q, SingleQubitPauli::X)).collect();
        PauliString::from_ops(n_qubits, &ops)
    }

    /// Product of Z on each listed qubit.
    pub fn z_string(n_qubits: usize, qubits: &[usize]) -> Result<Self> {
        let ops: Vec<_> = qubits.iter().map(|&q| (q, SingleQubitPauli::Z)).collect();
        PauliString::from_ops(n_qubits, &ops)
    }

    pub fn single(n_qubits: usize, qubit: usize, op: SingleQubitPauli) -> Result<Self> {
        PauliString::from_ops(n_qubits, &[(qubit, op)])
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn op_on(&self, qubit: usize) -> SingleQubitPauli {
        let x = self.x_mask >> qubit & 1 != 0;
        let z = self.z_mask >> qubit & 1 != 0;
        match (x, z) {
            (false, false) => SingleQubitPauli::I,
            (true, false) => SingleQubitPauli::X,
            (true, true) => SingleQubitPauli::Y,
            (false, true) => SingleQubitPauli::Z,
        }
    }

    /// Qubits carrying a non-identity operator, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| (self.x_mask | self.z_mask) >> q & 1 != 0)
            .collect()
    }

    pub fn weight(&self) -> usize {
        (self.x_mask | self.z_mask).count_ones() as usize
    }

    pub fn x_support(&self) -> u64 {
        self.x_mask
    }

    pub fn z_support(&self) -> u64 {
        self.z_mask
    }

    /// A string is Hermitian exactly when its phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// Symplectic commutation: even overlap of X-vs-Z parts means commute.
    pub fn commutation_parity(&self, other: &PauliString) -> CommutationParity {
        assert_eq!(
            self.n_qubits, other.n_qubits,
            "commutation check requires equal register widths"
        );
        let overlap = (self.x_mask & other.z_mask).count_ones()
            + (self.z_mask & other.x_mask).count_ones();
        if overlap.is_multiple_of(2) {
            CommutationParity::Commute
        } else {
            CommutationParity::Anticommute
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        self.commutation_parity(other) == CommutationParity::Commute
    }

    /// Operator product `self * other` with exact `i^k` phase tracking.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString> {
        if self.n_qubits != other.n_qubits {
            return Err(QsimError::DimensionMismatch(format!(
                "{} vs {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        let x = self.x_mask ^ other.x_mask;
        let z = self.z_mask ^ other.z_mask;
        // sigma(x,z) = i^{xz} X^x Z^z; collect the i exponents of the rewrite.
        let k = self.phase.exponent()
            + other.phase.exponent()
            + (self.x_mask & self.z_mask).count_ones()
            + (other.x_mask & other.z_mask).count_ones()
            + 2 * (self.z_mask & other.x_mask).count_ones()
            + 3 * (x & z).count_ones();
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x_mask: x,
            z_mask: z,
            phase: Phase::from_exponent(k),
        })
    }

    /// Mask translation from qubit space to basis-index space (qubit 0 = MSB).
    fn basis_mask(&self, qubit_mask: u64) -> usize {
        let mut m = 0usize;
        for q in 0..self.n_qubits {
            if qubit_mask >> q & 1 != 0 {
                m |= 1 << (self.n_qubits - 1 - q);
            }
        }
        m
    }

    /// Action on a basis index: `P|c> = factor * |c ^ flip>`.
    ///
    /// The flip mask comes from the X part; the factor collects the phase, one
    /// `i` per Y, and a sign per Z-or-Y qubit whose bit in `c` is set.
    pub fn apply_to_index(&self, c: usize) -> (usize, Complex64) {
        let flip = self.basis_mask(self.x_mask);
        let zb = self.basis_mask(self.z_mask);
        let y_count = (self.x_mask & self.z_mask).count_ones();
        let sign_bits = (zb & c).count_ones();
        let mut f = self.phase.as_complex() * I.powu(y_count);
        if sign_bits % 2 == 1 {
            f = -f;
        }
        (c ^ flip, f)
    }

    /// Dense `2^n x 2^n` rendering.
    pub fn dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for c in 0..dim {
            let (r, f) = self.apply_to_index(c);
            m[(r, c)] = f;
        }
        m
    }

    /// Recovers the Pauli string a matrix represents, if any.
    ///
    /// Used to recognize Clifford conjugates after a dense sandwich; fails with
    /// the max entry deviation when the matrix is farther than `tol` from every
    /// Pauli string.
    pub fn recognize(m: &DMatrix<Complex64>, tol: f64) -> Result<PauliString> {
        let dim = m.nrows();
        if dim == 0 || !dim.is_power_of_two() || m.ncols() != dim {
            return Err(QsimError::DimensionMismatch(format!(
                "{}x{} is not a 2^n square matrix",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = dim.trailing_zeros() as usize;
        // The image of |0..0> fixes the X mask and the base factor.
        let mut r0 = 0;
        let mut best = 0.0;
        for r in 0..dim {
            let a = m[(r, 0)].norm();
            if a > best {
                best = a;
                r0 = r;
            }
        }
        let base = m[(r0, 0)];
        if (base.norm() - 1.0).abs() > tol {
            return Err(QsimError::NotPauli((base.norm() - 1.0).abs()));
        }
        let mut p = PauliString::identity(n);
        for q in 0..n {
            if r0 >> (n - 1 - q) & 1 != 0 {
                p.x_mask |= 1 << q;
            }
        }
        // Columns of single-bit indices expose the Z mask through sign flips.
        for q in 0..n {
            let c = 1usize << (n - 1 - q);
            let e = m[(c ^ r0, c)];
            let ratio = e / base;
            if (ratio - ONE).norm() < (ratio + ONE).norm() {
                // sign +1: no Z on this qubit
            } else {
                p.z_mask |= 1 << q;
            }
        }
        let y_count = (p.x_mask & p.z_mask).count_ones();
        let phase_c = base / I.powu(y_count);
        let mut phase = Phase::PlusOne;
        let mut dist = f64::MAX;
        for k in 0..4 {
            let cand = Phase::from_exponent(k);
            let d = (phase_c - cand.as_complex()).norm();
            if d < dist {
                dist = d;
                phase = cand;
            }
        }
        p.phase = phase;
        // Verify every entry against the candidate.
        let mut max_dev: f64 = dist;
        for c in 0..dim {
            let (r, f) = p.apply_to_index(c);
            for row in 0..dim {
                let expect = if row == r { f } else { Complex64::new(0.0, 0.0) };
                max_dev = max_dev.max((m[(row, c)] - expect).norm());
            }
        }
        if max_dev > tol {
            return Err(QsimError::NotPauli(max_dev));
        }
        Ok(p)
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = match self.phase {
            Phase::PlusOne => "+",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        };
        write!(f, "{sign}")?;
        for q in 0..self.n_qubits {
            let c = match self.op_on(q) {
                SingleQubitPauli::I => 'I',
                SingleQubitPauli::X => 'X',
                SingleQubitPauli::Y => 'Y',
                SingleQubitPauli::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
