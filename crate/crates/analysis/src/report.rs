//! Table-style reporting and SVG rendering of scenario results.

use crate::phase::PhaseResult;

/// Acceptance band for the extracted phase, degrees, inclusive.
///
/// Noiseless runs must reproduce the ideal phases exactly (to 1e-6 deg);
/// dephasing pulls trivial loops up into [10, 30] and nontrivial loops down
/// into [140, 170]; gate imperfection alone keeps nontrivial phases in
/// [170, 180].
pub fn acceptance_band(trivial: bool, noise: &str) -> (f64, f64) {
    match (noise, trivial) {
        ("none", true) => (-1e-6, 1e-6),
        ("none", false) => (180.0 - 1e-6, 180.0 + 1e-6),
        ("dephasing", true) | ("both", true) => (10.0, 30.0),
        ("dephasing", false) | ("both", false) => (140.0, 170.0),
        ("gate_imperfection", true) => (0.0, 15.0),
        ("gate_imperfection", false) => (170.0, 180.0),
        (_, true) => (0.0, 30.0),
        (_, false) => (140.0, 180.0),
    }
}

/// A phase estimate together with the ideal value and its acceptance band.
#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub result: PhaseResult,
    pub theory_theta_deg: f64,
    pub band: (f64, f64),
}

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub scenario: String,
    pub alpha_sq: f64,
    pub alpha_err: f64,
    pub beta_sq: f64,
    pub beta_err: f64,
    pub theta_deg: f64,
    pub theta_err_deg: f64,
    pub theory_theta_deg: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    /// CSV with the per-scenario estimates and pass flags.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("scenario,alpha_sq,alpha_err,beta_sq,beta_err,theta_deg,theta_err,pass\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.9},{:.9},{:.9},{:.9},{:.6},{:.6},{}\n",
                r.scenario,
                r.alpha_sq,
                r.alpha_err,
                r.beta_sq,
                r.beta_err,
                r.theta_deg,
                r.theta_err_deg,
                r.pass
            ));
        }
        out
    }

    /// Fixed-width text table for terminal output.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<6} {:>10} {:>10} {:>10} {:>10} {:>10} {:>9} {:>8} {:>5}\n",
            "case", "alpha^2", "±", "beta^2", "±", "theta", "±", "theory", "pass"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:<6} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>9.3}° {:>8.3}° {:>7.1}° {:>5}\n",
                r.scenario,
                r.alpha_sq,
                r.alpha_err,
                r.beta_sq,
                r.beta_err,
                r.theta_deg,
                r.theta_err_deg,
                r.theory_theta_deg,
                if r.pass { "ok" } else { "FAIL" }
            ));
        }
        out
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Builds the theory-vs-simulation table with pass flags per band.
pub fn scenario_report(outcomes: &[ScenarioOutcome]) -> Report {
    let rows = outcomes
        .iter()
        .map(|o| {
            let (lo, hi) = o.band;
            ReportRow {
                scenario: o.result.scenario.clone(),
                alpha_sq: o.result.alpha_sq,
                alpha_err: o.result.alpha_err,
                beta_sq: o.result.beta_sq,
                beta_err: o.result.beta_err,
                theta_deg: o.result.theta_deg,
                theta_err_deg: o.result.theta_err_deg,
                theory_theta_deg: o.theory_theta_deg,
                pass: o.result.theta_deg >= lo && o.result.theta_deg <= hi,
            }
        })
        .collect();
    Report { rows }
}

/// Standalone SVG with the spectrum trace, the four analysis-line markers and
/// an alpha/beta population bar pair. `provenance` is embedded as a comment so
/// artifacts carry their config checksum and seed.
pub fn render_scenario_svg(
    title: &str,
    freq_hz: &[f64],
    real: &[f64],
    markers: &[f64; 4],
    alpha_sq: f64,
    beta_sq: f64,
    provenance: &str,
) -> String {
    assert_eq!(freq_hz.len(), real.len());
    let width = 800.0;
    let height = 420.0;
    let plot_h = 280.0;
    let margin = 50.0;
    let fmin = freq_hz.first().copied().unwrap_or(0.0);
    let fmax = freq_hz.last().copied().unwrap_or(1.0);
    let ymax = real.iter().fold(1e-12f64, |m, &v| m.max(v.abs()));
    let x_of = |f: f64| margin + (f - fmin) / (fmax - fmin) * (width - 2.0 * margin);
    let y_of = |v: f64| margin + plot_h / 2.0 - v / ymax * (plot_h / 2.0 - 10.0);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!("<!-- {provenance} -->\n"));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"16\">{title}</text>\n",
        margin
    ));
    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{y}\" x2=\"{r}\" y2=\"{y}\" stroke=\"#888\" stroke-width=\"1\"/>\n",
        m = margin,
        r = width - margin,
        y = y_of(0.0)
    ));
    // Analysis-line markers.
    for (i, &f) in markers.iter().enumerate() {
        let x = x_of(f);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{}\" x2=\"{x:.2}\" y2=\"{}\" stroke=\"#d55\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"/>\n",
            margin, margin + plot_h
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" fill=\"#d55\">{}</text>\n",
            x + 2.0,
            margin + 12.0 + 14.0 * i as f64,
            ["a", "b", "c", "d"][i]
        ));
    }
    // Trace polyline.
    let mut points = String::new();
    for (i, &f) in freq_hz.iter().enumerate() {
        points.push_str(&format!("{:.2},{:.2} ", x_of(f), y_of(real[i])));
    }
    svg.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"#225\" stroke-width=\"1.2\"/>\n",
        points.trim_end()
    ));
    // Population bars.
    let bar_y = margin + plot_h + 20.0;
    let bar_h = 40.0;
    for (i, (label, v)) in [("alpha^2", alpha_sq), ("beta^2", beta_sq)].iter().enumerate() {
        let x0 = margin + i as f64 * 260.0;
        let w = v.clamp(0.0, 1.2) * 200.0;
        svg.push_str(&format!(
            "<rect x=\"{x0}\" y=\"{bar_y}\" width=\"{w:.2}\" height=\"{bar_h}\" fill=\"#47a\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{x0}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\">{label} = {v:.4}</text>\n",
            bar_y + bar_h + 16.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(scenario: &str, theta: f64) -> PhaseResult {
        PhaseResult {
            scenario: scenario.into(),
            alpha_sq: 1.0,
            alpha_err: 0.0,
            beta_sq: 0.0,
            beta_err: 0.0,
            theta_deg: theta,
            theta_err_deg: 0.0,
        }
    }

    #[test]
    fn bands_classify_phases() {
        let outcomes = vec![
            ScenarioOutcome {
                result: result("BD0", 18.0),
                theory_theta_deg: 0.0,
                band: acceptance_band(true, "both"),
            },
            ScenarioOutcome {
                result: result("BD1", 157.0),
                theory_theta_deg: 180.0,
                band: acceptance_band(false, "both"),
            },
            ScenarioOutcome {
                result: result("BD2", 120.0),
                theory_theta_deg: 180.0,
                band: acceptance_band(false, "both"),
            },
        ];
        let report = scenario_report(&outcomes);
        assert!(report.rows[0].pass);
        assert!(report.rows[1].pass);
        assert!(!report.rows[2].pass);
        assert!(!report.all_pass());
    }

    #[test]
    fn csv_is_deterministic_and_headed() {
        let outcomes = vec![ScenarioOutcome {
            result: result("noBD", 0.0),
            theory_theta_deg: 0.0,
            band: acceptance_band(true, "none"),
        }];
        let a = scenario_report(&outcomes).to_csv();
        let b = scenario_report(&outcomes).to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("scenario,alpha_sq,"));
        assert!(a.contains("noBD,1.000000000"));
    }

    #[test]
    fn svg_contains_markers_and_provenance() {
        let freq: Vec<f64> = (0..100).map(|i| -10.0 + 0.2 * i as f64).collect();
        let real: Vec<f64> = freq.iter().map(|f| 1.0 / (1.0 + f * f)).collect();
        let svg = render_scenario_svg(
            "BD1",
            &freq,
            &real,
            &[-4.0, -2.0, 2.0, 4.0],
            0.1,
            0.9,
            "config sha256=deadbeef seed=7",
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("deadbeef"));
        assert!(svg.contains("polyline"));
        assert_eq!(svg.matches("stroke-dasharray").count(), 4);
    }
}
