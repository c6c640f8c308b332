//! Doublet amplitude estimation and anyonic phase extraction.

use crate::fit::PeakFit;
use crate::{AnalysisError, Result};

/// Normalized estimates below this are treated as exactly zero. Keeps the
/// noiseless endpoints exact: fitted zero-amplitude lines carry only
/// numerical residue orders of magnitude below this.
const CLAMP_EPS: f64 = 1e-8;

/// Normalized doublet populations with propagated standard errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaBeta {
    pub alpha_sq: f64,
    pub alpha_err: f64,
    pub beta_sq: f64,
    pub beta_err: f64,
}

/// Full per-scenario estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseResult {
    pub scenario: String,
    pub alpha_sq: f64,
    pub alpha_err: f64,
    pub beta_sq: f64,
    pub beta_err: f64,
    pub theta_deg: f64,
    pub theta_err_deg: f64,
}

/// Estimates `|alpha|^2` and `|beta|^2` from the four analysis lines.
///
/// `freqs` is `[a, b, c, d]`. The `b` and `d` lines read populations of the
/// observe-spin-down member of each doublet, so they enter negated; each
/// doublet average is normalized so the labeled-PPS reference peak maps the
/// noiseless ideal to 1.
pub fn estimate_alpha_beta(
    fit: &PeakFit,
    freqs: &[f64; 4],
    pps_reference: f64,
    pps_reference_stderr: f64,
) -> Result<AlphaBeta> {
    if pps_reference.abs() < 1e-12 {
        return Err(AnalysisError::InvalidInput(
            "labeled-PPS reference peak amplitude is zero".into(),
        ));
    }
    let (amp_a, err_a) = fit.amplitude_at(freqs[0])?;
    let (amp_b, err_b) = fit.amplitude_at(freqs[1])?;
    let (amp_c, err_c) = fit.amplitude_at(freqs[2])?;
    let (amp_d, err_d) = fit.amplitude_at(freqs[3])?;
    let (alpha_sq, alpha_err) = normalize_pair(amp_a, err_a, amp_b, err_b, pps_reference, pps_reference_stderr);
    let (beta_sq, beta_err) = normalize_pair(amp_c, err_c, amp_d, err_d, pps_reference, pps_reference_stderr);
    Ok(AlphaBeta {
        alpha_sq,
        alpha_err,
        beta_sq,
        beta_err,
    })
}

fn normalize_pair(
    up: f64,
    up_err: f64,
    down: f64,
    down_err: f64,
    reference: f64,
    reference_err: f64,
) -> (f64, f64) {
    // Ideal doublet amplitude is a quarter of the PPS reference peak.
    let raw = 0.5 * (up - down);
    let raw_err = 0.5 * (up_err * up_err + down_err * down_err).sqrt();
    let value = 4.0 * raw / reference;
    let err = ((4.0 * raw_err / reference).powi(2)
        + (4.0 * raw * reference_err / (reference * reference)).powi(2))
    .sqrt();
    let clamped = if value.abs() < CLAMP_EPS || value < 0.0 {
        0.0
    } else {
        value
    };
    (clamped, err)
}

/// `theta = 2 atan(sqrt(beta^2 / alpha^2))` in degrees, range [0, 180].
///
/// `alpha_sq = 0` maps to exactly 180; the sign of the phase is unobservable
/// from the two magnitudes.
pub fn anyonic_phase(alpha_sq: f64, beta_sq: f64) -> Result<f64> {
    let a = alpha_sq.max(0.0);
    let b = beta_sq.max(0.0);
    if a == 0.0 && b == 0.0 {
        return Err(AnalysisError::InvalidInput(
            "both doublet populations are zero".into(),
        ));
    }
    if a == 0.0 {
        return Ok(180.0);
    }
    Ok(2.0 * (b / a).sqrt().atan().to_degrees())
}

/// First-order error propagation in the pinned convention
/// `sigma_theta = 2 sigma_r / (sqrt(r) (1 + r))` with `r = beta^2/alpha^2` and
/// relative errors combined in quadrature.
pub fn propagate_phase_error(alpha: (f64, f64), beta: (f64, f64)) -> f64 {
    let (a, sa) = alpha;
    let (b, sb) = beta;
    if sa == 0.0 && sb == 0.0 {
        return 0.0;
    }
    if a <= 0.0 || b <= 0.0 {
        // Endpoint: the first-order expansion degenerates; the phase is pinned.
        return 0.0;
    }
    let r = b / a;
    let sr = r * ((sa / a).powi(2) + (sb / b).powi(2)).sqrt();
    (2.0 * sr / (r.sqrt() * (1.0 + r))).to_degrees()
}
