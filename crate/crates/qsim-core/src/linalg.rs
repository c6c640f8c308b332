//! Eigendecompositions and fidelity measures on dense complex matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::gates::UnitaryStep;
use crate::{QsimError, Result};

/// Max entry deviation of `M M^dag` from the identity.
pub fn unitarity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let prod = m * m.adjoint();
    let dim = m.nrows();
    let mut max = 0.0f64;
    for r in 0..dim {
        for c in 0..dim {
            let expect = if r == c { 1.0 } else { 0.0 };
            max = max.max((prod[(r, c)] - Complex64::new(expect, 0.0)).norm());
        }
    }
    max
}

/// Max entry-wise absolute difference between two matrices.
pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Returns `(values, vectors)` with eigenvectors as matching columns. The
/// nalgebra solver is used as a fast path but its output is validated: on
/// matrices with highly degenerate spectra it can silently return mismatched
/// pairs, in which case a cyclic Jacobi sweep takes over.
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> (DVector<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let scale = 1.0_f64.max(m.norm());
    let lam = DMatrix::from_diagonal(&se.eigenvalues.map(|x| Complex64::new(x, 0.0)));
    let residual = (m * &se.eigenvectors - &se.eigenvectors * lam).norm();
    let ortho = (se.eigenvectors.adjoint() * &se.eigenvectors
        - DMatrix::<Complex64>::identity(n, n))
    .norm();
    let (raw_values, raw_vectors) = if residual <= 1e-9 * scale && ortho <= 1e-9 * (n as f64).sqrt()
    {
        (se.eigenvalues, se.eigenvectors)
    } else {
        jacobi_hermitian_eigen(m)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        raw_values[a]
            .partial_cmp(&raw_values[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    let values = DVector::from_fn(n, |i, _| raw_values[order[i]]);
    let vectors = DMatrix::from_fn(n, n, |r, c| raw_vectors[(r, order[c])]);
    (values, vectors)
}

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Each rotation zeroes one off-diagonal pair through a phased Givens
/// rotation; sweeps repeat until the off-diagonal mass is at machine level.
/// Slower than a tridiagonalization but accurate regardless of degeneracy.
fn jacobi_hermitian_eigen(m: &DMatrix<Complex64>) -> (DVector<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    let mut h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut v = DMatrix::<Complex64>::identity(n, n);
    let scale = 1.0_f64.max(h.norm());
    let tol = 1e-15 * scale;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += h[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = h[(p, q)];
                let beta = b.norm();
                if beta <= 1e-300 {
                    continue;
                }
                let phase = b / Complex64::new(beta, 0.0);
                let a_pp = h[(p, p)].re;
                let a_qq = h[(q, q)].re;
                let tau = (a_qq - a_pp) / (2.0 * beta);
                // Stable small root of t^2 - 2 tau t - 1 = 0.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Local unitary: diag(1, e^{-i phi}) then the real rotation,
                // columns (c, s e^{-i phi}) and (-s, c e^{-i phi}).
                let cp = Complex64::new(c, 0.0);
                let sp = phase.conj() * s;
                let msp = Complex64::new(-s, 0.0);
                let cpq = phase.conj() * c;
                for k in 0..n {
                    let hkp = h[(k, p)];
                    let hkq = h[(k, q)];
                    h[(k, p)] = hkp * cp + hkq * sp;
                    h[(k, q)] = hkp * msp + hkq * cpq;
                }
                for k in 0..n {
                    let hpk = h[(p, k)];
                    let hqk = h[(q, k)];
                    h[(p, k)] = hpk * cp.conj() + hqk * sp.conj();
                    h[(q, k)] = hpk * msp.conj() + hqk * cpq.conj();
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cp + vkq * sp;
                    v[(k, q)] = vkp * msp + vkq * cpq;
                }
            }
        }
    }
    let values = DVector::from_fn(n, |i, _| h[(i, i)].re);
    (values, v)
}

/// Spectral decomposition `U = Q diag(lambda) Q^dag` of a unitary matrix.
///
/// A unitary is normal, so its Hermitian and anti-Hermitian parts
/// `A = (U + U^dag)/2` and `B = (U - U^dag)/(2i)` commute and can be
/// diagonalized simultaneously: diagonalize `A`, then re-diagonalize `B`
/// restricted to each degenerate eigenspace of `A`. The unit-modulus
/// eigenvalues are recombined as `a + ib`.
pub fn unitary_eigen(u: &DMatrix<Complex64>) -> Result<(Vec<Complex64>, DMatrix<Complex64>)> {
    let dev = unitarity_deviation(u);
    if dev > 1e-8 {
        return Err(QsimError::NotUnitary(dev));
    }
    let dim = u.nrows();
    let half = Complex64::new(0.5, 0.0);
    let a = (u + u.adjoint()) * half;
    let b = (u - u.adjoint()) * Complex64::new(0.0, -0.5);
    let (avals, mut q) = hermitian_eigen(&a);

    let cluster_tol = 1e-7;
    let mut start = 0;
    let mut bvals = vec![0.0f64; dim];
    while start < dim {
        let mut end = start + 1;
        while end < dim && avals[end] - avals[end - 1] < cluster_tol {
            end += 1;
        }
        let width = end - start;
        if width == 1 {
            let col = q.column(start);
            bvals[start] = (col.adjoint() * &b * col)[(0, 0)].re;
        } else {
            let qc = q.columns(start, width).clone_owned();
            let sub = qc.adjoint() * &b * &qc;
            let sub_h = (&sub + sub.adjoint()) * half;
            let (svals, svecs) = hermitian_eigen(&sub_h);
            let rotated = qc * svecs;
            q.columns_mut(start, width).copy_from(&rotated);
            for k in 0..width {
                bvals[start + k] = svals[k];
            }
        }
        start = end;
    }

    let mut values = Vec::with_capacity(dim);
    for k in 0..dim {
        let lam = Complex64::new(avals[k], bvals[k]);
        let n = lam.norm();
        if (n - 1.0).abs() > 1e-6 {
            return Err(QsimError::NotUnitary((n - 1.0).abs()));
        }
        values.push(lam / Complex64::new(n, 0.0));
    }
    Ok((values, q))
}

/// Principal `k`-th root of a unitary step: `V^k = U`, duration divided by `k`.
///
/// Eigenphases are taken in `(-pi, pi]`; an eigenvalue of -1 (up to numerical
/// jitter in its imaginary part) is pinned to the `+pi` branch so the root is
/// deterministic.
pub fn fractional_unitary(u: &UnitaryStep, k: usize) -> Result<UnitaryStep> {
    if k == 0 {
        return Err(QsimError::InvalidArgument("root order k must be positive".into()));
    }
    let (values, q) = unitary_eigen(u.matrix())?;
    let dim = u.dim();
    let roots = DVector::from_fn(dim, |i, _| {
        let lam = values[i];
        let theta = if lam.im.abs() < 1e-12 && lam.re < 0.0 {
            std::f64::consts::PI
        } else {
            lam.im.atan2(lam.re)
        };
        Complex64::from_polar(1.0, theta / k as f64)
    });
    let v = &q * DMatrix::from_diagonal(&roots) * q.adjoint();
    UnitaryStep::new(
        format!("{}^(1/{})", u.label, k),
        v,
        u.duration / k as f64,
    )
}

/// Average gate fidelity `(|Tr(U^dag V)|^2 + d) / (d^2 + d)`.
pub fn average_gate_fidelity(u: &UnitaryStep, v: &UnitaryStep) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(QsimError::DimensionMismatch(format!(
            "{} vs {}",
            u.dim(),
            v.dim()
        )));
    }
    let d = u.dim() as f64;
    let tr = (u.matrix().adjoint() * v.matrix()).trace();
    Ok((tr.norm_sqr() + d) / (d * d + d))
}
