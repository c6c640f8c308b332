//! Standard gate matrices, register embedding, and timed unitary steps.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::linalg::unitarity_deviation;
use crate::{QsimError, Result, I, ONE, ZERO};

pub fn hadamard() -> Matrix2<Complex64> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Matrix2::new(h, h, h, -h)
}

pub fn pauli_x_gate() -> Matrix2<Complex64> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y_gate() -> Matrix2<Complex64> {
    Matrix2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z_gate() -> Matrix2<Complex64> {
    Matrix2::new(ONE, ZERO, ZERO, -ONE)
}

/// `sqrt(Z) = diag(1, i)`, equal to `e^{i pi/4}(I - iZ)/sqrt(2)`.
pub fn phase_gate() -> Matrix2<Complex64> {
    Matrix2::new(ONE, ZERO, ZERO, I)
}

/// Inverse of [`phase_gate`]: `diag(1, -i)`.
pub fn phase_gate_inv() -> Matrix2<Complex64> {
    Matrix2::new(ONE, ZERO, ZERO, -I)
}

/// `exp(-i theta X / 2)`.
pub fn rotation_x(theta: f64) -> Matrix2<Complex64> {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = Complex64::new(0.0, -(theta / 2.0).sin());
    Matrix2::new(c, s, s, c)
}

/// `exp(-i theta Y / 2)`.
pub fn rotation_y(theta: f64) -> Matrix2<Complex64> {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = Complex64::new((theta / 2.0).sin(), 0.0);
    Matrix2::new(c, -s, s, c)
}

/// `exp(-i theta (cos(phi) X + sin(phi) Y) / 2)`: rotation about a transverse
/// axis at angle `phi` from x. This is the pulse shape used in phase cycling.
pub fn transverse_rotation(phi: f64, theta: f64) -> Matrix2<Complex64> {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = (theta / 2.0).sin();
    // axis matrix [[0, e^{-i phi}], [e^{i phi}, 0]]
    let off_upper = Complex64::new(0.0, -s) * Complex64::from_polar(1.0, -phi);
    let off_lower = Complex64::new(0.0, -s) * Complex64::from_polar(1.0, phi);
    Matrix2::new(c, off_upper, off_lower, c)
}

/// Embeds a single-qubit gate into the full `2^n` register matrix.
pub fn embed_single(n_qubits: usize, qubit: usize, g: &Matrix2<Complex64>) -> DMatrix<Complex64> {
    assert!(qubit < n_qubits);
    let dim = 1usize << n_qubits;
    let stride = 1usize << (n_qubits - 1 - qubit);
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for c in 0..dim {
        let bit = (c & stride != 0) as usize;
        for (r_bit, row) in [(0usize, c & !stride), (1usize, c | stride)] {
            let v = g[(r_bit, bit)];
            if v != ZERO {
                m[(row, c)] = v;
            }
        }
    }
    m
}

/// Full-register CNOT matrix.
pub fn cnot_matrix(n_qubits: usize, control: usize, target: usize) -> DMatrix<Complex64> {
    assert!(control < n_qubits && target < n_qubits && control != target);
    let dim = 1usize << n_qubits;
    let cm = 1usize << (n_qubits - 1 - control);
    let tm = 1usize << (n_qubits - 1 - target);
    let mut m = DMatrix::from_element(dim, dim, ZERO);
    for c in 0..dim {
        let r = if c & cm != 0 { c ^ tm } else { c };
        m[(r, c)] = ONE;
    }
    m
}

/// A labeled unitary with a physical duration in seconds.
///
/// Construction validates `U U^dag = I` to 1e-10 and a nonnegative duration.
#[derive(Clone, Debug)]
pub struct UnitaryStep {
    pub label: String,
    matrix: DMatrix<Complex64>,
    pub duration: f64,
}

impl UnitaryStep {
    pub fn new(label: impl Into<String>, matrix: DMatrix<Complex64>, duration: f64) -> Result<Self> {
        if duration < 0.0 {
            return Err(QsimError::NegativeDuration(duration));
        }
        if matrix.nrows() != matrix.ncols() {
            return Err(QsimError::DimensionMismatch(format!(
                "{}x{} is not square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dev = unitarity_deviation(&matrix);
        if dev > 1e-10 {
            return Err(QsimError::NotUnitary(dev));
        }
        Ok(UnitaryStep {
            label: label.into(),
            matrix,
            duration,
        })
    }

    pub fn identity(n_qubits: usize, label: impl Into<String>, duration: f64) -> Result<Self> {
        UnitaryStep::new(label, DMatrix::identity(1 << n_qubits, 1 << n_qubits), duration)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// Composes steps given in temporal order (first applied first).
    pub fn compose(steps: &[UnitaryStep], label: impl Into<String>) -> Result<UnitaryStep> {
        let first = steps
            .first()
            .ok_or_else(|| QsimError::InvalidArgument("empty step list".into()))?;
        let mut m = DMatrix::identity(first.dim(), first.dim());
        let mut duration = 0.0;
        for s in steps {
            if s.dim() != first.dim() {
                return Err(QsimError::DimensionMismatch("mixed step dimensions".into()));
            }
            m = s.matrix() * m;
            duration += s.duration;
        }
        UnitaryStep::new(label, m, duration)
    }
}
