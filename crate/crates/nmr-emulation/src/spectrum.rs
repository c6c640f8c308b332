//! Observe-spin spectrum synthesis from diagonal populations.

use num_complex::Complex64;
use qsim_core::{rotation_y, DeviationOperator};

use crate::molecule::MoleculeParams;

/// One resolved line of the observe-spin multiplet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    /// Offset from the observe-spin resonance, Hz.
    pub offset_hz: f64,
    pub amplitude: Complex64,
    /// Full width at half maximum, Hz.
    pub linewidth_hz: f64,
}

/// Dense sampled spectrum over a frequency grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub freq_hz: Vec<f64>,
    pub real: Vec<f64>,
    pub imag: Vec<f64>,
}

/// Peak list plus optional dense trace.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub peaks: Vec<Peak>,
    pub trace: Option<Trace>,
}

/// The four offsets carrying the phase information, in Hz.
///
/// `a` and `b` read the ground-doublet populations, `c` and `d` the excited
/// doublet. `a - b = c - d` holds by construction (both equal the sum of the
/// couplings flipped between the two members of a doublet).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisFrequencies {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl AnalysisFrequencies {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// Offset of the observe-spin line for a configuration of the other spins.
///
/// `config` packs the non-observe spins in ascending qubit order, first spin
/// in the most significant bit; a set bit means `z = -1`.
fn line_offset(params: &MoleculeParams, config: usize) -> f64 {
    let obs = params.observe_spin;
    let others: Vec<usize> = (0..params.n_spins).filter(|&q| q != obs).collect();
    let width = others.len();
    let mut f = 0.0;
    for (j, &spin) in others.iter().enumerate() {
        let bit = (config >> (width - 1 - j)) & 1;
        let z = if bit == 0 { 1.0 } else { -1.0 };
        f += 0.5 * params.j[spin][obs] * z;
    }
    f
}

/// Full basis index with the observe spin set to `obs_bit` and the remaining
/// spins taken from `config` (packed as in [`line_offset`]).
fn basis_index(params: &MoleculeParams, config: usize, obs_bit: usize) -> usize {
    let n = params.n_spins;
    let obs = params.observe_spin;
    let others: Vec<usize> = (0..n).filter(|&q| q != obs).collect();
    let width = others.len();
    let mut idx = obs_bit << (n - 1 - obs);
    for (j, &spin) in others.iter().enumerate() {
        let bit = (config >> (width - 1 - j)) & 1;
        idx |= bit << (n - 1 - spin);
    }
    idx
}

/// Applies the pi/2-y readout pulse on the observe spin and emits one peak per
/// configuration of the remaining spins.
///
/// The peak at offset `f(s)` carries the population difference
/// `rho(s, obs=0) - rho(s, obs=1)` of the pre-pulse state: the pulse converts
/// exactly that difference into observable single-quantum coherence.
pub fn readout_spectrum(rho: &DeviationOperator, params: &MoleculeParams) -> Spectrum {
    let diag = rho.diagonal();
    // The rotated state is what a spectrometer would see; the peak amplitudes
    // below are its coherences, read directly from the pre-pulse populations.
    let _rotated = rho.apply_single(params.observe_spin, &rotation_y(std::f64::consts::FRAC_PI_2));
    let width = params.n_spins - 1;
    let linewidth = params.observe_linewidth_hz();
    let peaks = (0..1usize << width)
        .map(|config| {
            let p0 = diag[basis_index(params, config, 0)];
            let p1 = diag[basis_index(params, config, 1)];
            Peak {
                offset_hz: line_offset(params, config),
                amplitude: Complex64::new(p0 - p1, 0.0),
                linewidth_hz: linewidth,
            }
        })
        .collect();
    Spectrum { peaks, trace: None }
}

/// The four analysis offsets `(a, b, c, d)`.
///
/// In doublet terms: `a` = all other spins up; `b` = the last three flipped;
/// `c` = the first flipped; `d` = first and last three flipped.
pub fn analysis_frequencies(params: &MoleculeParams) -> AnalysisFrequencies {
    let width = params.n_spins - 1;
    let low3 = 0b111;
    let top = 1usize << (width - 1);
    AnalysisFrequencies {
        a: line_offset(params, 0),
        b: line_offset(params, low3),
        c: line_offset(params, top),
        d: line_offset(params, top | low3),
    }
}

/// Magnitudes of the four diagonal elements the doublet readout assumes to be
/// zero: the observe-down partner of lines `a`/`c` and the observe-up partner
/// of lines `b`/`d`. Nonzero values mean the deviation partner component (or
/// noise) is bleeding into the population estimates.
pub fn analysis_partner_populations(
    rho: &DeviationOperator,
    params: &MoleculeParams,
) -> [f64; 4] {
    let diag = rho.diagonal();
    let width = params.n_spins - 1;
    let low3 = 0b111;
    let top = 1usize << (width - 1);
    [
        diag[basis_index(params, 0, 1)].abs(),
        diag[basis_index(params, low3, 0)].abs(),
        diag[basis_index(params, top, 1)].abs(),
        diag[basis_index(params, top | low3, 0)].abs(),
    ]
}

/// Sum of complex Lorentzians over a uniform grid.
///
/// Each peak contributes `A / (1 + i x)` with `x = (f - f0) / hwhm`: an
/// absorptive real part and dispersive imaginary part.
pub fn synthesize_trace(peaks: &[Peak], f_min: f64, f_max: f64, step: f64) -> Trace {
    assert!(step > 0.0 && f_max > f_min);
    let count = ((f_max - f_min) / step).round() as usize + 1;
    let freq_hz: Vec<f64> = (0..count).map(|i| f_min + i as f64 * step).collect();
    let mut real = vec![0.0; count];
    let mut imag = vec![0.0; count];
    for p in peaks {
        let hwhm = p.linewidth_hz / 2.0;
        for (i, &f) in freq_hz.iter().enumerate() {
            let x = (f - p.offset_hz) / hwhm;
            let denom = 1.0 + x * x;
            let shape = Complex64::new(1.0 / denom, -x / denom);
            let v = p.amplitude * shape;
            real[i] += v.re;
            imag[i] += v.im;
        }
    }
    Trace {
        freq_hz,
        real,
        imag,
    }
}

/// CSV with columns `frequency_hz,real,imag`.
pub fn trace_csv(trace: &Trace) -> String {
    let mut out = String::from("frequency_hz,real,imag\n");
    for i in 0..trace.freq_hz.len() {
        out.push_str(&format!(
            "{:.6},{:.12e},{:.12e}\n",
            trace.freq_hz[i], trace.real[i], trace.imag[i]
        ));
    }
    out
}

/// CSV with columns `offset_hz,amplitude_re,amplitude_im,linewidth_hz`.
pub fn peaks_csv(peaks: &[Peak]) -> String {
    let mut out = String::from("offset_hz,amplitude_re,amplitude_im,linewidth_hz\n");
    for p in peaks {
        out.push_str(&format!(
            "{:.6},{:.12e},{:.12e},{:.6}\n",
            p.offset_hz, p.amplitude.re, p.amplitude.im, p.linewidth_hz
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pps::labeled_pps;
    use approx::assert_abs_diff_eq;

    #[test]
    fn four_analysis_frequencies_match_the_calibration() {
        let params = MoleculeParams::default_calibration();
        let f = analysis_frequencies(&params);
        assert_abs_diff_eq!(f.a, 61.25, epsilon = 0.02);
        assert_abs_diff_eq!(f.b, 24.09, epsilon = 0.02);
        assert_abs_diff_eq!(f.c, 32.24, epsilon = 0.02);
        assert_abs_diff_eq!(f.d, -4.93, epsilon = 0.02);
        assert_abs_diff_eq!(f.a - f.b, f.c - f.d, epsilon = 0.02);
    }

    #[test]
    fn zero_couplings_put_all_lines_at_zero() {
        let mut params = MoleculeParams::default_calibration();
        params.j = vec![vec![0.0; 7]; 7];
        let f = analysis_frequencies(&params);
        assert_eq!(f.as_array(), [0.0; 4]);
    }

    #[test]
    fn labeled_pps_shows_a_single_reference_peak() {
        let params = MoleculeParams::default_calibration();
        let rho = labeled_pps(&params).unwrap();
        let spec = readout_spectrum(&rho, &params);
        assert_eq!(spec.peaks.len(), 64);
        let f = analysis_frequencies(&params);
        for p in &spec.peaks {
            if (p.offset_hz - f.a).abs() < 1e-9 {
                assert_abs_diff_eq!(p.amplitude.re, 1.0, epsilon = 1e-10);
            } else {
                assert!(p.amplitude.norm() < 1e-10, "stray peak at {}", p.offset_hz);
            }
        }
    }

    #[test]
    fn all_64_lines_are_distinct_and_separated() {
        let params = MoleculeParams::default_calibration();
        let mut offsets: Vec<f64> = (0..64).map(|c| line_offset(&params, c)).collect();
        offsets.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let min_gap = offsets
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::MAX, f64::min);
        assert!(min_gap > 1.0, "minimum line separation {min_gap} Hz");
    }

    #[test]
    fn trace_is_the_sum_of_its_lorentzians() {
        let peaks = vec![
            Peak {
                offset_hz: -3.0,
                amplitude: Complex64::new(0.8, 0.0),
                linewidth_hz: 0.9,
            },
            Peak {
                offset_hz: 4.0,
                amplitude: Complex64::new(-0.3, 0.0),
                linewidth_hz: 0.9,
            },
        ];
        let t = synthesize_trace(&peaks, -10.0, 10.0, 0.05);
        for (i, &f) in t.freq_hz.iter().enumerate() {
            let mut expect = Complex64::new(0.0, 0.0);
            for p in &peaks {
                let x = (f - p.offset_hz) / (p.linewidth_hz / 2.0);
                expect += p.amplitude * Complex64::new(1.0, -x) / (1.0 + x * x);
            }
            assert!((t.real[i] - expect.re).abs() < 1e-9);
            assert!((t.imag[i] - expect.im).abs() < 1e-9);
        }
        // Peak-height convention: amplitude reached at the line center.
        let center = t
            .freq_hz
            .iter()
            .position(|&f| (f + 3.0).abs() < 1e-9)
            .unwrap();
        assert!((t.real[center] - 0.8).abs() < 2e-3);
    }

    #[test]
    fn spectrum_is_linear_in_the_state() {
        let params = MoleculeParams::default_calibration();
        let rho1 = labeled_pps(&params).unwrap();
        let rho2 = rho1.apply_cnot(6, 3);
        let sum = rho1.add(&rho2).unwrap();
        let s1 = readout_spectrum(&rho1, &params);
        let s2 = readout_spectrum(&rho2, &params);
        let s12 = readout_spectrum(&sum, &params);
        for i in 0..s12.peaks.len() {
            let expect = s1.peaks[i].amplitude + s2.peaks[i].amplitude;
            assert!((s12.peaks[i].amplitude - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn csv_headers_and_shape() {
        let params = MoleculeParams::default_calibration();
        let rho = labeled_pps(&params).unwrap();
        let spec = readout_spectrum(&rho, &params);
        let csv = peaks_csv(&spec.peaks);
        assert!(csv.starts_with("offset_hz,amplitude_re,amplitude_im,linewidth_hz\n"));
        assert_eq!(csv.lines().count(), 65);
        let t = synthesize_trace(&spec.peaks, -80.0, 80.0, 0.5);
        let tcsv = trace_csv(&t);
        assert!(tcsv.starts_with("frequency_hz,real,imag\n"));
        assert_eq!(tcsv.lines().count(), t.freq_hz.len() + 1);
    }
}
