//! Damped Gauss-Newton least squares for fixed-offset Lorentzian combs.

use nalgebra::{DMatrix, DVector};

use crate::{AnalysisError, Result};

const MAX_ITERATIONS: usize = 200;
const RELATIVE_RESIDUAL_TOL: f64 = 1e-10;

/// One fitted line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FittedPeak {
    pub offset_hz: f64,
    pub amplitude: f64,
    pub amplitude_stderr: f64,
}

/// Result of a multi-peak fit: amplitudes, the shared linewidth, and the
/// linearized covariance at the optimum.
#[derive(Clone, Debug)]
pub struct PeakFit {
    pub peaks: Vec<FittedPeak>,
    pub linewidth_hz: f64,
    pub linewidth_stderr: f64,
    pub residual_norm: f64,
    /// Covariance of `[amplitudes.., linewidth]` at the optimum.
    pub covariance: DMatrix<f64>,
}

impl PeakFit {
    /// Fitted amplitude and stderr at a known offset.
    pub fn amplitude_at(&self, offset_hz: f64) -> Result<(f64, f64)> {
        let tol = (self.linewidth_hz * 1e-3).max(1e-6);
        self.peaks
            .iter()
            .find(|p| (p.offset_hz - offset_hz).abs() < tol)
            .map(|p| (p.amplitude, p.amplitude_stderr))
            .ok_or(AnalysisError::MissingPeak(offset_hz))
    }
}

/// Unit-height absorptive Lorentzian with FWHM `w`.
fn shape(f: f64, f0: f64, w: f64) -> f64 {
    let x = (f - f0) / (w / 2.0);
    1.0 / (1.0 + x * x)
}

/// Linear least squares for the amplitudes alone, linewidth held fixed.
///
/// The conditioning of this design is what limits how independently two
/// nearby lines can be read: Lorentzian tails fall off only quadratically, so
/// amplitude estimates of lines ten linewidths apart still correlate at the
/// percent level.
pub fn fit_amplitudes(
    freq_hz: &[f64],
    values: &[f64],
    known_offsets: &[f64],
    linewidth_hz: f64,
) -> Result<PeakFit> {
    if freq_hz.len() != values.len() {
        return Err(AnalysisError::InvalidInput(format!(
            "{} frequencies vs {} samples",
            freq_hz.len(),
            values.len()
        )));
    }
    if !linewidth_hz.is_finite() || linewidth_hz <= 0.0 {
        return Err(AnalysisError::InvalidInput("linewidth must be positive".into()));
    }
    let n = freq_hz.len();
    let m = known_offsets.len();
    let jac = DMatrix::from_fn(n, m, |i, j| shape(freq_hz[i], known_offsets[j], linewidth_hz));
    let y = DVector::from_column_slice(values);
    let jtj = jac.transpose() * &jac;
    let jty = jac.transpose() * &y;
    let amps = jtj
        .clone()
        .lu()
        .solve(&jty)
        .ok_or_else(|| AnalysisError::InvalidInput("singular design matrix".into()))?;
    let rss = (jac * &amps - y).norm_squared();
    let dof = (n as f64 - m as f64).max(1.0);
    let covariance = match jtj.try_inverse() {
        Some(inv) => inv * (rss / dof),
        None => DMatrix::from_element(m, m, f64::NAN),
    };
    let peaks = known_offsets
        .iter()
        .enumerate()
        .map(|(j, &f0)| FittedPeak {
            offset_hz: f0,
            amplitude: amps[j],
            amplitude_stderr: covariance[(j, j)].max(0.0).sqrt(),
        })
        .collect();
    Ok(PeakFit {
        peaks,
        linewidth_hz,
        linewidth_stderr: 0.0,
        residual_norm: rss.sqrt(),
        covariance,
    })
}

fn shape_dw(f: f64, f0: f64, w: f64) -> f64 {
    let h = w / 2.0;
    let d = f - f0;
    let denom = d * d + h * h;
    h * d * d / (denom * denom)
}

/// Fits per-peak amplitudes and one shared FWHM linewidth to a sampled trace.
///
/// Offsets are held fixed. Amplitudes start from the trace value at each
/// offset and the linewidth from `initial_linewidth_hz`; Levenberg-Marquardt
/// damping keeps the Gauss-Newton iteration stable. Standard errors come from
/// the linearized covariance `s^2 (J^T J)^{-1}` at the optimum.
pub fn fit_lorentzians(
    freq_hz: &[f64],
    values: &[f64],
    known_offsets: &[f64],
    initial_linewidth_hz: f64,
) -> Result<PeakFit> {
    if freq_hz.len() != values.len() {
        return Err(AnalysisError::InvalidInput(format!(
            "{} frequencies vs {} samples",
            freq_hz.len(),
            values.len()
        )));
    }
    if known_offsets.is_empty() {
        return Err(AnalysisError::InvalidInput("no peak offsets".into()));
    }
    if !initial_linewidth_hz.is_finite() || initial_linewidth_hz <= 0.0 {
        return Err(AnalysisError::InvalidInput(format!(
            "initial linewidth must be positive, got {initial_linewidth_hz}"
        )));
    }
    let (fmin, fmax) = freq_hz
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &f| (lo.min(f), hi.max(f)));
    for &f0 in known_offsets {
        if f0 < fmin || f0 > fmax {
            return Err(AnalysisError::GridCoverage(f0));
        }
    }

    let n = freq_hz.len();
    let m = known_offsets.len();
    let p = m + 1;

    // Deterministic initialization: trace value at the grid point nearest each offset.
    let mut params = DVector::from_element(p, 0.0);
    for (j, &f0) in known_offsets.iter().enumerate() {
        let nearest = freq_hz
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - f0)
                    .abs()
                    .partial_cmp(&(b.1 - f0).abs())
                    .unwrap()
                    .then(a.0.cmp(&b.0))
            })
            .map(|(i, _)| i)
            .unwrap();
        params[j] = values[nearest];
    }
    params[m] = initial_linewidth_hz;

    let residual = |prm: &DVector<f64>| -> DVector<f64> {
        let w = prm[m];
        DVector::from_fn(n, |i, _| {
            let mut y = 0.0;
            for (j, &f0) in known_offsets.iter().enumerate() {
                y += prm[j] * shape(freq_hz[i], f0, w);
            }
            y - values[i]
        })
    };

    let jacobian = |prm: &DVector<f64>| -> DMatrix<f64> {
        let w = prm[m];
        let mut jac = DMatrix::zeros(n, p);
        for i in 0..n {
            let mut dw = 0.0;
            for (j, &f0) in known_offsets.iter().enumerate() {
                jac[(i, j)] = shape(freq_hz[i], f0, w);
                dw += prm[j] * shape_dw(freq_hz[i], f0, w);
            }
            jac[(i, m)] = dw;
        }
        jac
    };

    let mut r = residual(&params);
    let mut rss = r.norm_squared();
    let mut lambda = 1e-3;
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let jac = jacobian(&params);
        let jtj = jac.transpose() * &jac;
        let jtr = jac.transpose() * &r;
        let mut stepped = false;
        for _ in 0..25 {
            let mut damped = jtj.clone();
            for k in 0..p {
                damped[(k, k)] += lambda * jtj[(k, k)].max(1e-12);
            }
            let Some(delta) = damped.lu().solve(&(-&jtr)) else {
                lambda *= 10.0;
                continue;
            };
            let candidate = &params + &delta;
            if candidate[m] <= 0.0 {
                lambda *= 10.0;
                continue;
            }
            let r_new = residual(&candidate);
            let rss_new = r_new.norm_squared();
            if rss_new <= rss {
                let improvement = (rss - rss_new) / rss.max(1e-300);
                params = candidate;
                r = r_new;
                rss = rss_new;
                lambda = (lambda / 3.0).max(1e-12);
                stepped = true;
                if improvement < RELATIVE_RESIDUAL_TOL || rss < 1e-300 {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if converged {
            break;
        }
        if !stepped {
            // No downhill step found at any damping: stationary point.
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(AnalysisError::NonConvergence(MAX_ITERATIONS));
    }

    // Covariance from the undamped normal equations at the optimum.
    let jac = jacobian(&params);
    let jtj = jac.transpose() * &jac;
    let dof = (n as f64 - p as f64).max(1.0);
    let sigma2 = rss / dof;
    let covariance = match jtj.clone().try_inverse() {
        Some(inv) => inv * sigma2,
        None => DMatrix::from_element(p, p, f64::NAN),
    };
    let peaks = known_offsets
        .iter()
        .enumerate()
        .map(|(j, &f0)| FittedPeak {
            offset_hz: f0,
            amplitude: params[j],
            amplitude_stderr: covariance[(j, j)].max(0.0).sqrt(),
        })
        .collect();
    Ok(PeakFit {
        peaks,
        linewidth_hz: params[m],
        linewidth_stderr: covariance[(m, m)].max(0.0).sqrt(),
        residual_norm: rss.sqrt(),
        covariance,
    })
}
