//! Pure states and deviation density operators.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;

use crate::pauli::PauliString;
use crate::{QsimError, Result, ZERO};

/// Common surface of [`StateVector`] and [`DeviationOperator`].
pub trait QuantumState: Sized {
    fn n_qubits(&self) -> usize;
    /// Applies a full-register unitary matrix (`U|psi>` or `U rho U^dag`).
    fn apply_matrix(&self, m: &DMatrix<Complex64>) -> Result<Self>;
    /// Complex expectation value of a Pauli string.
    fn pauli_expectation_c(&self, p: &PauliString) -> Result<Complex64>;
}

/// Dense pure state of `n_qubits` qubits; qubit 0 is the basis-index MSB.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(n_qubits: usize, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << n_qubits {
            return Err(QsimError::DimensionMismatch(format!(
                "amplitude vector of length {} for {} qubits",
                amplitudes.len(),
                n_qubits
            )));
        }
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    /// `|0...0>`.
    pub fn zero_state(n_qubits: usize) -> Self {
        StateVector::basis_state(n_qubits, 0)
    }

    pub fn basis_state(n_qubits: usize, index: usize) -> Self {
        let dim = 1usize << n_qubits;
        assert!(index < dim);
        let mut v = DVector::from_element(dim, ZERO);
        v[index] = Complex64::new(1.0, 0.0);
        StateVector {
            n_qubits,
            amplitudes: v,
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(QsimError::InvalidArgument("cannot normalize zero vector".into()));
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes: &self.amplitudes / Complex64::new(n, 0.0),
        })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<self|other>|`, the overlap magnitude used for global-phase-free comparison.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    /// Rotates the global phase so the largest-magnitude amplitude is real nonnegative.
    pub fn with_canonical_global_phase(&self) -> Self {
        let mut best = 0usize;
        let mut mag = 0.0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm() > mag {
                mag = a.norm();
                best = i;
            }
        }
        if mag < 1e-300 {
            return self.clone();
        }
        let rot = self.amplitudes[best].conj() / Complex64::new(mag, 0.0);
        StateVector {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.map(|a| a * rot),
        }
    }

    /// Applies a single-qubit gate without forming the full matrix.
    pub fn apply_single(&self, qubit: usize, g: &Matrix2<Complex64>) -> Self {
        assert!(qubit < self.n_qubits);
        let stride = 1usize << (self.n_qubits - 1 - qubit);
        let dim = self.dim();
        let mut out = self.amplitudes.clone();
        let mut base = 0;
        while base < dim {
            for i in base..base + stride {
                let a0 = out[i];
                let a1 = out[i + stride];
                out[i] = g[(0, 0)] * a0 + g[(0, 1)] * a1;
                out[i + stride] = g[(1, 0)] * a0 + g[(1, 1)] * a1;
            }
            base += 2 * stride;
        }
        StateVector {
            n_qubits: self.n_qubits,
            amplitudes: out,
        }
    }

    pub fn apply_cnot(&self, control: usize, target: usize) -> Self {
        assert!(control < self.n_qubits && target < self.n_qubits && control != target);
        let cm = 1usize << (self.n_qubits - 1 - control);
        let tm = 1usize << (self.n_qubits - 1 - target);
        let mut out = self.amplitudes.clone();
        for i in 0..self.dim() {
            if i & cm != 0 && i & tm == 0 {
                out.swap_rows(i, i | tm);
            }
        }
        StateVector {
            n_qubits: self.n_qubits,
            amplitudes: out,
        }
    }

    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self> {
        if p.n_qubits() != self.n_qubits {
            return Err(QsimError::DimensionMismatch(format!(
                "pauli on {} qubits applied to {}-qubit state",
                p.n_qubits(),
                self.n_qubits
            )));
        }
        let mut out = DVector::from_element(self.dim(), ZERO);
        for c in 0..self.dim() {
            let (r, f) = p.apply_to_index(c);
            out[r] = f * self.amplitudes[c];
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes: out,
        })
    }

    /// `|psi><psi|` as a dense matrix.
    pub fn projector(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |r, c| {
            self.amplitudes[r] * self.amplitudes[c].conj()
        })
    }
}

impl QuantumState for StateVector {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn apply_matrix(&self, m: &DMatrix<Complex64>) -> Result<Self> {
        if m.ncols() != self.dim() || m.nrows() != self.dim() {
            return Err(QsimError::DimensionMismatch(format!(
                "{}x{} matrix on dimension-{} state",
                m.nrows(),
                m.ncols(),
                self.dim()
            )));
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes: m * &self.amplitudes,
        })
    }

    fn pauli_expectation_c(&self, p: &PauliString) -> Result<Complex64> {
        if p.n_qubits() != self.n_qubits {
            return Err(QsimError::DimensionMismatch(format!(
                "pauli on {} qubits, state on {}",
                p.n_qubits(),
                self.n_qubits
            )));
        }
        let mut acc = ZERO;
        for c in 0..self.dim() {
            let (r, f) = p.apply_to_index(c);
            acc += self.amplitudes[r].conj() * f * self.amplitudes[c];
        }
        Ok(acc)
    }
}

/// Traceless Hermitian deviation density matrix of an NMR ensemble state.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationOperator {
    n_qubits: usize,
    matrix: DMatrix<Complex64>,
}

impl DeviationOperator {
    pub fn new(n_qubits: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(QsimError::DimensionMismatch(format!(
                "{}x{} matrix for {} qubits",
                matrix.nrows(),
                matrix.ncols(),
                n_qubits
            )));
        }
        Ok(DeviationOperator { n_qubits, matrix })
    }

    /// Deviation operator of a Pauli string times a real coefficient.
    pub fn from_pauli(p: &PauliString, scale: f64) -> Self {
        DeviationOperator {
            n_qubits: p.n_qubits(),
            matrix: p.dense() * Complex64::new(scale, 0.0),
        }
    }

    /// Projector difference `a*|u><u| + b*|v><v|`-style construction helper.
    pub fn from_projectors(terms: &[(f64, &StateVector)]) -> Result<Self> {
        let n = terms
            .first()
            .ok_or_else(|| QsimError::InvalidArgument("no terms".into()))?
            .1
            .n_qubits();
        let dim = 1usize << n;
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for (w, s) in terms {
            if s.n_qubits() != n {
                return Err(QsimError::DimensionMismatch("mixed register widths".into()));
            }
            m += s.projector() * Complex64::new(*w, 0.0);
        }
        Ok(DeviationOperator {
            n_qubits: n,
            matrix: m,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Max deviation from Hermiticity.
    pub fn hermiticity_deviation(&self) -> f64 {
        let adj = self.matrix.adjoint();
        let mut max = 0.0f64;
        for (a, b) in self.matrix.iter().zip(adj.iter()) {
            max = max.max((a - b).norm());
        }
        max
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.matrix[(r, c)]
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.matrix.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        DeviationOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix * Complex64::new(s, 0.0),
        }
    }

    pub fn add(&self, other: &DeviationOperator) -> Result<Self> {
        if self.n_qubits != other.n_qubits {
            return Err(QsimError::DimensionMismatch("mixed register widths".into()));
        }
        Ok(DeviationOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn apply_single(&self, qubit: usize, g: &Matrix2<Complex64>) -> Self {
        assert!(qubit < self.n_qubits);
        let stride = 1usize << (self.n_qubits - 1 - qubit);
        let dim = self.dim();
        let mut m = self.matrix.clone();
        // Left-multiply by G on row pairs.
        for col in 0..dim {
            let mut base = 0;
            while base < dim {
                for r in base..base + stride {
                    let a0 = m[(r, col)];
                    let a1 = m[(r + stride, col)];
                    m[(r, col)] = g[(0, 0)] * a0 + g[(0, 1)] * a1;
                    m[(r + stride, col)] = g[(1, 0)] * a0 + g[(1, 1)] * a1;
                }
                base += 2 * stride;
            }
        }
        // Right-multiply by G^dag on column pairs.
        for row in 0..dim {
            let mut base = 0;
            while base < dim {
                for c in base..base + stride {
                    let a0 = m[(row, c)];
                    let a1 = m[(row, c + stride)];
                    m[(row, c)] = a0 * g[(0, 0)].conj() + a1 * g[(0, 1)].conj();
                    m[(row, c + stride)] = a0 * g[(1, 0)].conj() + a1 * g[(1, 1)].conj();
                }
                base += 2 * stride;
            }
        }
        DeviationOperator {
            n_qubits: self.n_qubits,
            matrix: m,
        }
    }

    pub fn apply_cnot(&self, control: usize, target: usize) -> Self {
        assert!(control < self.n_qubits && target < self.n_qubits && control != target);
        let cm = 1usize << (self.n_qubits - 1 - control);
        let tm = 1usize << (self.n_qubits - 1 - target);
        let dim = self.dim();
        let mut m = self.matrix.clone();
        for r in 0..dim {
            if r & cm != 0 && r & tm == 0 {
                m.swap_rows(r, r | tm);
            }
        }
        for c in 0..dim {
            if c & cm != 0 && c & tm == 0 {
                m.swap_columns(c, c | tm);
            }
        }
        DeviationOperator {
            n_qubits: self.n_qubits,
            matrix: m,
        }
    }

    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self> {
        if p.n_qubits() != self.n_qubits {
            return Err(QsimError::DimensionMismatch("pauli width mismatch".into()));
        }
        let dim = self.dim();
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for c in 0..dim {
            let (rc, fc) = p.apply_to_index(c);
            for r in 0..dim {
                let (rr, fr) = p.apply_to_index(r);
                m[(rr, rc)] = fr * self.matrix[(r, c)] * fc.conj();
            }
        }
        Ok(DeviationOperator {
            n_qubits: self.n_qubits,
            matrix: m,
        })
    }
}

impl QuantumState for DeviationOperator {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    fn apply_matrix(&self, m: &DMatrix<Complex64>) -> Result<Self> {
        if m.ncols() != self.dim() || m.nrows() != self.dim() {
            return Err(QsimError::DimensionMismatch(format!(
                "{}x{} matrix on dimension-{} operator",
                m.nrows(),
                m.ncols(),
                self.dim()
            )));
        }
        Ok(DeviationOperator {
            n_qubits: self.n_qubits,
            matrix: m * &self.matrix * m.adjoint(),
        })
    }

    fn pauli_expectation_c(&self, p: &PauliString) -> Result<Complex64> {
        if p.n_qubits() != self.n_qubits {
            return Err(QsimError::DimensionMismatch("pauli width mismatch".into()));
        }
        // Tr(rho P) = sum_r rho[r, r^flip] * factor(r).
        let mut acc = ZERO;
        for r in 0..self.dim() {
            let (rr, f) = p.apply_to_index(r);
            acc += self.matrix[(r, rr)] * f;
        }
        Ok(acc)
    }
}
