use std::fmt;
use std::fs;
use std::path::Path;

use nakagami_rmt::rmt::sample_spectra;
use nakagami_rmt::{
    beta_from_m, bulk_spacings, fit_report, histogram, ks_test, m_from_beta, omega_unit,
    run_transition_scenario, spacings_2x2, DistanceProfile, EnsembleKind, FitReport, NakagamiParams,
    RandomStream, SpacingSeries, WignerFamily,
};
use serde_json::json;

use crate::args::{
    FitArgs, NnsdArgs, RunConfig, SampleEnsembleArgs, SampleNakagamiArgs, ScenarioArgs, SurmiseArgs,
    VerifyArgs,
};
use crate::output::{emit, Cell, Report};

/// Largest pointwise density difference `verify` accepts.
pub const VERIFY_TOLERANCE: f64 = 1e-10;

/// A run-time failure: numeric, data or I/O. Maps to exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<nakagami_rmt::Error> for Failure {
    fn from(e: nakagami_rmt::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(format!("I/O error: {e}"))
    }
}

type Outcome<T> = Result<T, Failure>;

/// Builds the report for `config` without writing anything.
pub fn build_report(config: &RunConfig) -> Outcome<Report> {
    match config {
        RunConfig::SampleNakagami(a) => sample_nakagami(config, a),
        RunConfig::SampleEnsemble(a) => sample_ensemble(config, a),
        RunConfig::Nnsd(a) => nnsd(config, a),
        RunConfig::Surmise(a) => surmise(config, a),
        RunConfig::Verify(a) => verify(config, a),
        RunConfig::Fit(a) => fit(config, a),
        RunConfig::Scenario(a) => scenario(config, a),
    }
}

/// Runs `config` and writes its output. Returns the process exit code.
pub fn dispatch(config: &RunConfig) -> i32 {
    match run(config) {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn run(config: &RunConfig) -> Outcome<()> {
    let report = build_report(config)?;
    emit(&report, config.resolved_format(), &config.output().out)?;
    if let RunConfig::Verify(_) = config {
        let max = report
            .summary
            .as_ref()
            .and_then(|s| s["max_abs_diff"].as_f64())
            .unwrap_or(f64::NAN);
        if max.is_nan() || max > VERIFY_TOLERANCE {
            return Err(Failure(format!(
                "identity check failed: max |Δpdf| = {max} exceeds {VERIFY_TOLERANCE}"
            )));
        }
    }
    Ok(())
}

fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(move |i| if i + 1 == points { hi } else { lo + step * i as f64 })
}

fn sample_nakagami(config: &RunConfig, a: &SampleNakagamiArgs) -> Outcome<Report> {
    let omega = match a.omega {
        Some(w) => w,
        None => omega_unit(a.m)?,
    };
    let params = NakagamiParams::new(a.m, omega)?;
    let samples = params.sample(&mut RandomStream::new(a.seed, 0), a.n);
    let mut report = Report::new(config.name(), config, vec!["envelope"]);
    for x in samples {
        report.push(vec![x.into()]);
    }
    report.summary = Some(json!({ "m": a.m, "omega": omega, "n": a.n }));
    Ok(report)
}

fn sample_ensemble(config: &RunConfig, a: &SampleEnsembleArgs) -> Outcome<Report> {
    let kind = EnsembleKind::from(a.ensemble);
    let spectra = sample_spectra::<f64>(&RandomStream::new(a.seed, 0), kind, a.size, a.count)?;
    let mut report = Report::new(config.name(), config, vec!["matrix", "level", "eigenvalue"]);
    for (i, spectrum) in spectra.iter().enumerate() {
        for (j, &lambda) in spectrum.eigenvalues.iter().enumerate() {
            report.push(vec![i.into(), j.into(), lambda.into()]);
        }
    }
    report.summary = Some(json!({ "ensemble": kind, "beta": kind.beta(), "size": a.size, "count": a.count }));
    Ok(report)
}

fn nnsd(config: &RunConfig, a: &NnsdArgs) -> Outcome<Report> {
    let kind = EnsembleKind::from(a.ensemble);
    let stream = RandomStream::new(a.seed, 0);
    let series: SpacingSeries<f64> = if a.two_by_two {
        spacings_2x2(&stream, kind, a.count)?
    } else {
        let size = a
            .size
            .ok_or_else(|| Failure("--size is required without --two-by-two".into()))?;
        bulk_spacings(&stream, kind, size, a.count, a.degree, a.trim)?
    };
    let beta = kind.beta_as::<f64>();
    let surmise = WignerFamily::new(beta)?;
    let m = m_from_beta(beta)?;
    let nakagami = NakagamiParams::unit_mean(m)?;
    let hist = histogram(series.spacings(), a.bins, a.range)?;
    let ks = ks_test(series.spacings(), |s| surmise.cdf(s))?;

    let mut report = Report::new(
        config.name(),
        config,
        vec![
            "bin_left",
            "bin_right",
            "density",
            "surmise_density",
            "nakagami_density",
        ],
    );
    for i in 0..hist.bins() {
        let center = hist.bin_center(i);
        report.push(vec![
            hist.bin_edges[i].into(),
            hist.bin_edges[i + 1].into(),
            hist.densities[i].into(),
            surmise.pdf(center).into(),
            nakagami.pdf(center).into(),
        ]);
    }
    report.summary = Some(json!({
        "ensemble": kind,
        "beta": beta,
        "m": m,
        "omega": nakagami.omega(),
        "provenance": series.provenance(),
        "spacing_count": series.len(),
        "histogram_count": hist.sample_count,
        "ks_statistic": ks.statistic,
        "ks_p_value": ks.p_value,
    }));
    Ok(report)
}

fn surmise(config: &RunConfig, a: &SurmiseArgs) -> Outcome<Report> {
    let w = WignerFamily::new(a.beta)?;
    let mut report = Report::new(config.name(), config, vec!["s", "density", "cdf"]);
    for s in grid(a.range.0, a.range.1, a.grid) {
        report.push(vec![s.into(), w.pdf(s).into(), w.cdf(s)?.into()]);
    }
    report.summary = Some(json!({ "beta": a.beta, "a_beta": w.a_beta(), "b_beta": w.b_beta() }));
    Ok(report)
}

fn verify(config: &RunConfig, a: &VerifyArgs) -> Outcome<Report> {
    let beta = beta_from_m(a.m)?;
    let omega = omega_unit(a.m)?;
    let nakagami = NakagamiParams::new(a.m, omega)?;
    let surmise = WignerFamily::new(beta)?;
    let mut report = Report::new(
        config.name(),
        config,
        vec!["x", "nakagami_pdf", "wigner_pdf", "abs_diff"],
    );
    let mut max_abs_diff = 0.0f64;
    for x in grid(a.range.0, a.range.1, a.grid) {
        let (p, q) = (nakagami.pdf(x), surmise.pdf(x));
        let diff = (p - q).abs();
        max_abs_diff = max_abs_diff.max(diff);
        report.push(vec![x.into(), p.into(), q.into(), diff.into()]);
    }
    report.summary = Some(json!({
        "m": a.m,
        "beta": beta,
        "omega": omega,
        "a_beta": surmise.a_beta(),
        "b_beta": surmise.b_beta(),
        "max_abs_diff": max_abs_diff,
        "tolerance": VERIFY_TOLERANCE,
        "passed": max_abs_diff <= VERIFY_TOLERANCE,
    }));
    Ok(report)
}

/// Reads a single-column CSV of reals. A first row that does not parse as a
/// number is taken as a header.
pub fn read_column(path: &Path) -> Outcome<Vec<f64>> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        if record.len() != 1 {
            return Err(Failure(format!(
                "{}: line {} has {} columns, expected 1",
                path.display(),
                i + 1,
                record.len()
            )));
        }
        let field = record[0].trim();
        match field.parse::<f64>() {
            Ok(x) => values.push(x),
            Err(_) if i == 0 => {}
            Err(_) => {
                return Err(Failure(format!(
                    "{}: line {} is not a number: '{field}'",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(values)
}

fn fit_cells(fit: &FitReport<f64>) -> Vec<Cell> {
    vec![
        fit.m_hat_moment.into(),
        fit.m_hat_mle.into(),
        fit.beta_hat.into(),
        fit.omega_hat.into(),
        fit.ks.statistic.into(),
        fit.ks.n.into(),
        fit.ks.p_value.into(),
        fit.classification.name().into(),
    ]
}

const FIT_COLUMNS: [&str; 8] = [
    "m_hat_moment",
    "m_hat_mle",
    "beta_hat",
    "omega_hat",
    "ks_statistic",
    "ks_n",
    "ks_p_value",
    "classification",
];

fn fit(config: &RunConfig, a: &FitArgs) -> Outcome<Report> {
    let samples = read_column(&a.input)?;
    let fit = fit_report(&samples, a.tol)?;
    let mut report = Report::new(config.name(), config, FIT_COLUMNS.to_vec());
    report.push(fit_cells(&fit));
    Ok(report)
}

fn scenario(config: &RunConfig, a: &ScenarioArgs) -> Outcome<Report> {
    let profile: DistanceProfile<f64> = match &a.profile {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Failure(format!("invalid profile {}: {e}", path.display())))?
        }
        None => DistanceProfile::highway(),
    };
    let windows = run_transition_scenario(
        &RandomStream::new(a.seed, 0),
        &profile,
        &a.distances.0,
        a.n,
        a.tol,
    )?;
    let mut columns = vec!["distance", "true_m", "true_beta"];
    columns.extend(FIT_COLUMNS);
    columns.push("error");
    let mut report = Report::new(config.name(), config, columns);
    let mut failed = 0;
    for w in &windows {
        let mut row: Vec<Cell> = vec![w.distance.into(), w.true_m.into(), w.true_beta.into()];
        match &w.fit {
            Ok(fit) => {
                row.extend(fit_cells(fit));
                row.push(Cell::Missing);
            }
            Err(e) => {
                failed += 1;
                row.extend(std::iter::repeat_n(Cell::Missing, FIT_COLUMNS.len()));
                row.push(e.to_string().into());
            }
        }
        report.push(row);
    }
    report.summary = Some(json!({
        "profile": profile,
        "windows": windows.len(),
        "failed_windows": failed,
    }));
    Ok(report)
}
