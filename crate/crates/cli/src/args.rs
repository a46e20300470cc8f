use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nakagami_rmt::{rmt, EnsembleKind};
use serde::Serialize;

/// Nakagami-m fading and Gaussian-ensemble level-spacing experiments.
#[derive(Debug, Parser)]
#[command(name = "nakagami-rmt", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: RunConfig,
}

/// A validated invocation: one subcommand with its flags.
#[derive(Debug, Clone, PartialEq, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum RunConfig {
    /// Draw Nakagami-m envelope samples (one column).
    SampleNakagami(SampleNakagamiArgs),
    /// Sample ensemble matrices and list their distinct eigenvalues.
    SampleEnsemble(SampleEnsembleArgs),
    /// Nearest-neighbor spacing histogram with surmise and Nakagami overlays.
    Nnsd(NnsdArgs),
    /// Tabulate the generalized Wigner surmise on a grid.
    Surmise(SurmiseArgs),
    /// Pointwise check of Nakagami-m against the surmise with β = 2m − 1.
    Verify(VerifyArgs),
    /// Fit m to a column of positive envelope values and classify it.
    Fit(FitArgs),
    /// Distance-driven fading transition across ensemble classes.
    Scenario(ScenarioArgs),
}

impl RunConfig {
    pub fn name(&self) -> &'static str {
        match self {
            RunConfig::SampleNakagami(_) => "sample-nakagami",
            RunConfig::SampleEnsemble(_) => "sample-ensemble",
            RunConfig::Nnsd(_) => "nnsd",
            RunConfig::Surmise(_) => "surmise",
            RunConfig::Verify(_) => "verify",
            RunConfig::Fit(_) => "fit",
            RunConfig::Scenario(_) => "scenario",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            RunConfig::SampleNakagami(a) => &a.output,
            RunConfig::SampleEnsemble(a) => &a.output,
            RunConfig::Nnsd(a) => &a.output,
            RunConfig::Surmise(a) => &a.output,
            RunConfig::Verify(a) => &a.output,
            RunConfig::Fit(a) => &a.output,
            RunConfig::Scenario(a) => &a.output,
        }
    }

    fn default_format(&self) -> Format {
        match self {
            RunConfig::Verify(_) | RunConfig::Fit(_) | RunConfig::Scenario(_) => Format::Json,
            _ => Format::Csv,
        }
    }

    /// Explicit `--format`, else the `--out` extension, else the subcommand
    /// default.
    pub fn resolved_format(&self) -> Format {
        let out = self.output();
        if let Some(f) = out.format {
            return f;
        }
        let ext = std::path::Path::new(&out.out)
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            _ => self.default_format(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleArg {
    Goe,
    Gue,
    Gse,
}

impl From<EnsembleArg> for EnsembleKind {
    fn from(e: EnsembleArg) -> Self {
        match e {
            EnsembleArg::Goe => EnsembleKind::Goe,
            EnsembleArg::Gue => EnsembleKind::Gue,
            EnsembleArg::Gse => EnsembleKind::Gse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct OutputArgs {
    /// Output path, or "-" for standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Output format; defaults to the --out extension, then the subcommand's usual format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct SampleNakagamiArgs {
    /// Fading figure m (>= 0.5).
    #[arg(long, value_parser = parse_m)]
    pub m: f64,
    /// Spread Ω (> 0); defaults to the unit-mean value for m.
    #[arg(long, value_parser = parse_positive)]
    pub omega: Option<f64>,
    /// Number of samples.
    #[arg(long, value_parser = parse_count)]
    pub n: usize,
    /// Random seed.
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct SampleEnsembleArgs {
    /// Ensemble to sample.
    #[arg(long, value_enum)]
    pub ensemble: EnsembleArg,
    /// Number of distinct levels per matrix (>= 2).
    #[arg(long, value_parser = parse_size)]
    pub size: usize,
    /// Number of matrices.
    #[arg(long, value_parser = parse_count, default_value_t = 1)]
    pub count: usize,
    /// Random seed.
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct NnsdArgs {
    /// Ensemble to sample.
    #[arg(long, value_enum)]
    pub ensemble: EnsembleArg,
    /// Levels per matrix for unfolded bulk spacings (>= 2).
    #[arg(long, value_parser = parse_size, required_unless_present = "two_by_two")]
    pub size: Option<usize>,
    /// Number of matrices (with --two-by-two: number of spacings, >= 2).
    #[arg(long, value_parser = parse_count)]
    pub count: usize,
    /// Random seed.
    #[arg(long)]
    pub seed: u64,
    /// Use the gap of independent minimal-size members instead of unfolded spectra.
    #[arg(long)]
    pub two_by_two: bool,
    /// Number of histogram bins.
    #[arg(long, value_parser = parse_count, default_value_t = 40)]
    pub bins: usize,
    /// Histogram range "lo,hi"; defaults to the data range.
    #[arg(long, value_parser = parse_range)]
    pub range: Option<(f64, f64)>,
    /// Degree of the staircase polynomial used for unfolding.
    #[arg(long, value_parser = parse_count, default_value_t = rmt::DEFAULT_UNFOLD_DEGREE)]
    pub degree: usize,
    /// Fraction of levels dropped at each spectral edge, in [0, 0.4].
    #[arg(long, value_parser = parse_trim, default_value_t = rmt::DEFAULT_UNFOLD_TRIM)]
    pub trim: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct SurmiseArgs {
    /// Repulsion exponent β (>= 0).
    #[arg(long, value_parser = parse_nonnegative)]
    pub beta: f64,
    /// Number of grid points (>= 2).
    #[arg(long, value_parser = parse_size, default_value_t = 512)]
    pub grid: usize,
    /// Grid range "lo,hi".
    #[arg(long, value_parser = parse_range, default_value = "0,4")]
    pub range: (f64, f64),
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct VerifyArgs {
    /// Fading figure m (>= 0.5).
    #[arg(long, value_parser = parse_m)]
    pub m: f64,
    /// Number of grid points (>= 2).
    #[arg(long, value_parser = parse_size, default_value_t = 512)]
    pub grid: usize,
    /// Grid range "lo,hi".
    #[arg(long, value_parser = parse_range, default_value = "0,6")]
    pub range: (f64, f64),
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct FitArgs {
    /// Single-column CSV of positive reals; a header row is optional.
    #[arg(long)]
    pub input: PathBuf,
    /// Largest |β̂ − β| accepted for an ensemble classification.
    #[arg(long, value_parser = parse_positive, default_value_t = 0.3)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize)]
pub struct ScenarioArgs {
    /// Strictly descending transmitter–receiver distances in meters, "d1,d2,...".
    #[arg(long, value_parser = parse_distances, default_value = "200,100,25")]
    pub distances: Distances,
    /// Envelope samples per distance window (>= 100).
    #[arg(long, value_parser = parse_window)]
    pub n: usize,
    /// Random seed.
    #[arg(long)]
    pub seed: u64,
    /// Largest |β̂ − β| accepted for an ensemble classification.
    #[arg(long, value_parser = parse_positive, default_value_t = 0.3)]
    pub tol: f64,
    /// JSON distance profile {"segments":[{"above":d,"m":m},...]}; defaults to the highway profile.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Newtype so clap treats the list as one value.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distances(pub Vec<f64>);

fn parse_f64(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn parse_m(s: &str) -> Result<f64, String> {
    let m = parse_f64(s)?;
    if m >= 0.5 {
        Ok(m)
    } else {
        Err(format!("fading figure must be >= 0.5, got {m}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be > 0, got {x}"))
    }
}

fn parse_nonnegative(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("must be >= 0, got {x}"))
    }
}

fn parse_trim(s: &str) -> Result<f64, String> {
    let x = parse_f64(s)?;
    if (0.0..=0.4).contains(&x) {
        Ok(x)
    } else {
        Err(format!("must lie in [0, 0.4], got {x}"))
    }
}

fn parse_count(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        Ok(_) => Err("must be >= 1".into()),
        Err(_) => Err(format!("'{s}' is not a positive integer")),
    }
}

fn parse_size(s: &str) -> Result<usize, String> {
    let n = parse_count(s)?;
    if n >= 2 {
        Ok(n)
    } else {
        Err(format!("must be >= 2, got {n}"))
    }
}

fn parse_window(s: &str) -> Result<usize, String> {
    let n = parse_count(s)?;
    if n >= 100 {
        Ok(n)
    } else {
        Err(format!("must be >= 100, got {n}"))
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"lo,hi\", got '{s}'"))?;
    let (lo, hi) = (parse_f64(lo)?, parse_f64(hi)?);
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(format!("need lo < hi, got {lo},{hi}"))
    }
}

fn parse_distances(s: &str) -> Result<Distances, String> {
    let ds = s.split(',').map(parse_positive).collect::<Result<Vec<_>, _>>()?;
    if ds.windows(2).any(|w| w[0] <= w[1]) {
        return Err("distances must be strictly descending".into());
    }
    Ok(Distances(ds))
}

/// Outcome of argument parsing that does not yield a config.
#[derive(Debug)]
pub enum ParseOutcome {
    /// `--help` or `--version`: print the text and exit 0.
    Info(String),
    /// Bad invocation: print the message and exit 1.
    Usage(String),
}

/// Parses and validates command-line arguments (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::error::ErrorKind;
    match Cli::try_parse_from(argv) {
        Ok(cli) => Ok(cli.command),
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp
            | ErrorKind::DisplayVersion
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                Err(ParseOutcome::Info(e.render().to_string()))
            }
            _ => Err(ParseOutcome::Usage(e.render().to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> Result<RunConfig, ParseOutcome> {
        parse_args(std::iter::once("nakagami-rmt").chain(line.split_whitespace()))
    }

    fn usage_message(line: &str) -> String {
        match parse(line) {
            Err(ParseOutcome::Usage(msg)) => msg,
            other => panic!("expected usage error for {line}, got {other:?}"),
        }
    }

    #[test]
    fn nnsd_example() {
        let cfg = parse("nnsd --ensemble gue --size 100 --count 100 --seed 7 --bins 40 --out x.csv").unwrap();
        let RunConfig::Nnsd(a) = &cfg else { panic!() };
        assert_eq!(a.ensemble, EnsembleArg::Gue);
        assert_eq!(a.size, Some(100));
        assert_eq!(a.degree, 7);
        assert_eq!(a.trim, 0.1);
        assert!(!a.two_by_two);
        assert_eq!(cfg.resolved_format(), Format::Csv);
    }

    #[test]
    fn fit_with_missing_file_parses() {
        let cfg = parse("fit --input does/not/exist.csv").unwrap();
        assert_eq!(cfg.name(), "fit");
        assert_eq!(cfg.resolved_format(), Format::Json);
    }

    #[test]
    fn rejects_small_m_naming_the_flag() {
        let msg = usage_message("sample-nakagami --m 0.3 --n 10 --seed 1");
        assert!(msg.contains("--m"), "{msg}");
    }

    #[test]
    fn usage_errors_name_flags() {
        assert!(usage_message("nnsd --ensemble gue --count 5 --seed 1").contains("--size"));
        assert!(usage_message("nnsd --ensemble gxe --size 5 --count 5 --seed 1").contains("--ensemble"));
        assert!(usage_message("sample-nakagami --m 1 --n 10").contains("--seed"));
        assert!(usage_message("sample-nakagami --m 1 --n 10 --seed 1 --bogus 3").contains("--bogus"));
        assert!(usage_message("scenario --n 1000 --seed 1 --distances 25,100").contains("--distances"));
        assert!(usage_message("surmise --beta 1 --range 3,1").contains("--range"));
        assert!(
            usage_message("nnsd --ensemble goe --size 9 --count 2 --seed 1 --trim 0.5").contains("--trim")
        );
        assert!(usage_message("sample-nakagami --m abc --n 10 --seed 1").contains("--m"));
    }

    #[test]
    fn help_is_info() {
        for sub in [
            "sample-nakagami",
            "sample-ensemble",
            "nnsd",
            "surmise",
            "verify",
            "fit",
            "scenario",
        ] {
            match parse(&format!("{sub} --help")) {
                Err(ParseOutcome::Info(text)) => assert!(text.contains("--out")),
                other => panic!("{sub}: {other:?}"),
            }
        }
    }

    #[test]
    fn two_by_two_needs_no_size() {
        let cfg = parse("nnsd --ensemble goe --two-by-two --count 100000 --seed 1").unwrap();
        let RunConfig::Nnsd(a) = cfg else { panic!() };
        assert!(a.two_by_two && a.size.is_none());
    }

    #[test]
    fn format_resolution() {
        let cfg = parse("surmise --beta 2 --out a.json").unwrap();
        assert_eq!(cfg.resolved_format(), Format::Json);
        let cfg = parse("scenario --n 100 --seed 1 --out t.csv").unwrap();
        assert_eq!(cfg.resolved_format(), Format::Csv);
        let cfg = parse("scenario --n 100 --seed 1 --out t.csv --format json").unwrap();
        assert_eq!(cfg.resolved_format(), Format::Json);
        let cfg = parse("scenario --n 100 --seed 1").unwrap();
        let RunConfig::Scenario(a) = &cfg else { panic!() };
        assert_eq!(a.distances, Distances(vec![200.0, 100.0, 25.0]));
        assert_eq!(cfg.resolved_format(), Format::Json);
    }
}
