//! Command-line front end. Every subcommand is a thin adapter over library
//! calls; [`run`] returns the process exit status.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use paretocheck_core::diagnostics::{
    aggregation_stability, classify_moment_point, me_trend, meplot_series, tail_linearity, verdict,
    zenga_shape, zipf_series, AggregationConfig, FormulaMode, MeTrendConfig, TailFitConfig,
    VerdictConfig, ZengaShapeConfig, DEFAULT_ME_CUT,
};
use paretocheck_core::empirical::{bootstrap_moments, empirical_zenga_curve, moment_stats};
use paretocheck_core::powerstudy::DiscriminationConfig;
use paretocheck_core::{DistributionModel, Ingest, ZengaCurve};

use crate::error::{Error, Result, EXIT_CONFIG};
use crate::figures::{meplot_figure, mrplot_figure, zenga_figure, zipf_figure};
use crate::io::{load_sample, write_file, write_sample_csv, write_series_csv, ColumnSelector};
use crate::json::{
    bootstrap_summary, discrimination_table, power_table, DiscriminationDocument, InputSummary,
    MomentDocument, PowerDocument, VerdictDocument,
};
use crate::parallel;
use crate::render::render_figure;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "paretocheck",
    version,
    about = "Heavy-tail diagnostics for positive samples"
)]
pub struct Cli {
    /// Seed for every random draw (bootstrap, aggregation, power, synth).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Log-log survival plot with a tail fit.
    Zipf(ZipfArgs),
    /// Mean excess plot.
    Meplot(MeplotArgs),
    /// Discriminant moment-ratio plot.
    Mrplot(MrplotArgs),
    /// Zenga inequality curve.
    Zenga(ZengaArgs),
    /// Run every diagnostic and print the verdict as JSON.
    Classify(ClassifyArgs),
    /// Monte Carlo power study.
    Power(PowerArgs),
    /// Draw a sample from a model and write it as CSV.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV file, or `-` for standard input.
    pub input: PathBuf,
    /// Column index (0-based) or header name.
    #[arg(long, default_value = "0")]
    pub column: String,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// SVG output; defaults to `<stem>.<command>.svg` in the working directory.
    #[arg(long)]
    pub figure: Option<PathBuf>,
    /// CSV series output; defaults to `<stem>.<command>.csv`.
    #[arg(long)]
    pub series: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TailArgs {
    /// Log-bin the Zipf plot with this base before fitting.
    #[arg(long)]
    pub bin_base: Option<f64>,
    /// Share of the Zipf points (largest x) used in the tail fit.
    #[arg(long, default_value_t = 0.2)]
    pub tail_fraction: f64,
    /// Minimum r^2 for the tail to count as linear.
    #[arg(long, default_value_t = 0.98)]
    pub min_r2: f64,
}

impl TailArgs {
    fn config(&self) -> TailFitConfig {
        TailFitConfig {
            tail_fraction: self.tail_fraction,
            min_r2: self.min_r2,
        }
    }
}

#[derive(Debug, Args)]
pub struct ZipfArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: FigureArgs,
    #[command(flatten)]
    pub tail: TailArgs,
}

#[derive(Debug, Args)]
pub struct MeArgs {
    /// Number of largest thresholds dropped from the mean excess plot.
    #[arg(long, default_value_t = DEFAULT_ME_CUT)]
    pub cut: usize,
    /// Minimum slope for an upward mean excess trend.
    #[arg(long, default_value_t = 0.1)]
    pub min_me_slope: f64,
}

#[derive(Debug, Args)]
pub struct MeplotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: FigureArgs,
    #[command(flatten)]
    pub me: MeArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormulaArg {
    Corrected,
    #[value(name = "paper_verbatim", alias = "paper-verbatim")]
    PaperVerbatim,
}

impl From<FormulaArg> for FormulaMode {
    fn from(a: FormulaArg) -> Self {
        match a {
            FormulaArg::Corrected => FormulaMode::Corrected,
            FormulaArg::PaperVerbatim => FormulaMode::PaperVerbatim,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveArg {
    #[value(name = "quantile_ratio", alias = "quantile-ratio")]
    QuantileRatio,
    #[value(name = "mean_ratio", alias = "mean-ratio")]
    MeanRatio,
}

impl From<CurveArg> for ZengaCurve {
    fn from(a: CurveArg) -> Self {
        match a {
            CurveArg::QuantileRatio => ZengaCurve::QuantileRatio,
            CurveArg::MeanRatio => ZengaCurve::MeanRatio,
        }
    }
}

#[derive(Debug, Args)]
pub struct MrplotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// SVG output; defaults to `<stem>.mrplot.svg`.
    #[arg(long)]
    pub figure: Option<PathBuf>,
    /// Moment point JSON output; defaults to `<stem>.mrplot.json`.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Add a bootstrap cloud of this many resamples.
    #[arg(long)]
    pub bootstrap: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormulaArg::Corrected)]
    pub formula_mode: FormulaArg,
}

#[derive(Debug, Args)]
pub struct ZengaArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: FigureArgs,
    #[arg(long, value_enum, default_value_t = CurveArg::QuantileRatio)]
    pub zenga_curve: CurveArg,
    /// Keep the raw end points instead of copying their neighbours.
    #[arg(long)]
    pub no_rescale: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub tail: TailArgs,
    #[command(flatten)]
    pub me: MeArgs,
    #[arg(long, value_enum, default_value_t = FormulaArg::Corrected)]
    pub formula_mode: FormulaArg,
    #[arg(long, value_enum, default_value_t = CurveArg::QuantileRatio)]
    pub zenga_curve: CurveArg,
    /// Samples smaller than this are refused.
    #[arg(long, default_value_t = 100)]
    pub min_observations: usize,
    /// Also compare tail slopes before and after pairwise aggregation.
    #[arg(long)]
    pub aggregation: bool,
    /// Largest slope change still counted as stable.
    #[arg(long, default_value_t = 0.2)]
    pub max_delta: f64,
}

impl ClassifyArgs {
    fn config(&self) -> VerdictConfig {
        VerdictConfig {
            tail: self.tail.config(),
            zipf_bin_base: self.tail.bin_base,
            me_cut: self.me.cut,
            me: MeTrendConfig {
                min_slope: self.me.min_me_slope,
            },
            formula_mode: self.formula_mode.into(),
            zenga_curve: self.zenga_curve.into(),
            zenga: ZengaShapeConfig::default(),
            min_observations: self.min_observations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Pareto1,
    Pareto2,
    Gpd,
    Lognormal,
    Exponential,
    Gamma,
}

/// Model family and its parameters; unused parameters are ignored.
#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    /// Pareto I scale.
    #[arg(long, default_value_t = 1.0)]
    pub x0: f64,
    /// Pareto I/II tail index.
    #[arg(long, default_value_t = 2.5)]
    pub alpha: f64,
    /// Pareto II scale.
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// GPD shape.
    #[arg(long, default_value_t = 0.4)]
    pub xi: f64,
    /// GPD scale.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// GPD location.
    #[arg(long, default_value_t = 0.0)]
    pub nu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Exponential rate.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Gamma shape.
    #[arg(long, default_value_t = 2.0)]
    pub k: f64,
    /// Gamma scale.
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
}

impl ModelArgs {
    pub fn model(&self) -> Result<DistributionModel> {
        let m = match self.model {
            ModelName::Pareto1 => DistributionModel::ParetoI {
                x0: self.x0,
                alpha: self.alpha,
            },
            ModelName::Pareto2 => DistributionModel::ParetoII {
                b: self.b,
                alpha: self.alpha,
            },
            ModelName::Gpd => DistributionModel::Gpd {
                xi: self.xi,
                beta: self.beta,
                nu: self.nu,
            },
            ModelName::Lognormal => DistributionModel::Lognormal {
                mu: self.mu,
                sigma: self.sigma,
            },
            ModelName::Exponential => DistributionModel::Exponential {
                lambda: self.lambda,
            },
            ModelName::Gamma => DistributionModel::Gamma {
                k: self.k,
                theta: self.theta,
            },
        };
        m.validate()?;
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Study {
    Classification,
    #[value(name = "me-discrimination")]
    MeDiscrimination,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Study::Classification)]
    pub study: Study,
    /// Sample size per trial.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = FormulaArg::Corrected)]
    pub formula_mode: FormulaArg,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n: usize,
    /// CSV output; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status. Documents go to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_CONFIG
                }
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn default_output(input: &Path, command: &str, ext: &str) -> PathBuf {
    let stem = if input.as_os_str() == "-" {
        "stdin".to_string()
    } else {
        input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "sample".into())
    };
    PathBuf::from(format!("{stem}.{command}.{ext}"))
}

fn ingest(args: &InputArgs) -> Result<(Ingest, InputSummary)> {
    let selector = ColumnSelector::parse(&args.column);
    let ingest = load_sample(&args.input, &selector)?;
    let summary = InputSummary {
        path: args.input.display().to_string(),
        column: selector.to_string(),
        n: ingest.sample.len(),
        dropped_non_positive: ingest.dropped_non_positive,
        dropped_non_finite: ingest.dropped_non_finite,
    };
    Ok((ingest, summary))
}

fn print_json<T: serde::Serialize>(stdout: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *stdout, value)?;
    writeln!(stdout)?;
    Ok(())
}

fn is_short_sample(e: &paretocheck_core::Error) -> bool {
    matches!(
        e,
        paretocheck_core::Error::InsufficientTail { .. }
            | paretocheck_core::Error::InsufficientData { .. }
    )
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let seed = cli.seed;
    match &cli.command {
        Command::Zipf(a) => {
            let (ingest, _) = ingest(&a.input)?;
            let series = zipf_series(&ingest.sample, a.tail.bin_base)?;
            let fit = match tail_linearity(&series, &a.tail.config()) {
                Ok(fit) => Some(fit),
                Err(e) if is_short_sample(&e) => None,
                Err(e) => return Err(e.into()),
            };
            let svg = render_figure(&zipf_figure(&series, fit.as_ref()))?;
            write_outputs(&a.input.input, "zipf", &a.output, &svg, &series)?;
            print_json(stdout, &fit)
        }
        Command::Meplot(a) => {
            let (ingest, _) = ingest(&a.input)?;
            let series = meplot_series(&ingest.sample, a.me.cut)?;
            let cfg = MeTrendConfig {
                min_slope: a.me.min_me_slope,
            };
            let trend = match me_trend(&series, &cfg) {
                Ok(t) => Some(t),
                Err(e) if is_short_sample(&e) => None,
                Err(e) => return Err(e.into()),
            };
            let svg = render_figure(&meplot_figure(&series))?;
            write_outputs(&a.input.input, "meplot", &a.output, &svg, &series)?;
            print_json(stdout, &trend)
        }
        Command::Zenga(a) => {
            let (ingest, _) = ingest(&a.input)?;
            let curve = a.zenga_curve.into();
            let raw = empirical_zenga_curve(&ingest.sample, curve, false)?;
            let shape = zenga_shape(&raw, &ZengaShapeConfig::default())?;
            let shown = if a.no_rescale {
                raw
            } else {
                empirical_zenga_curve(&ingest.sample, curve, true)?
            };
            let svg = render_figure(&zenga_figure(&shown))?;
            write_outputs(&a.input.input, "zenga", &a.output, &svg, &shown.to_series())?;
            print_json(stdout, &shape)
        }
        Command::Mrplot(a) => {
            let (ingest, summary) = ingest(&a.input)?;
            let mode: FormulaMode = a.formula_mode.into();
            let point = moment_stats(ingest.sample.values())?;
            let zone = classify_moment_point(&point, mode)?;
            let mut doc = MomentDocument::new(summary, seed, point, &zone);
            let cloud = match a.bootstrap {
                Some(b) => Some(bootstrap_moments(&ingest.sample, b, seed)?),
                None => None,
            };
            if let (Some(b), Some(cloud)) = (a.bootstrap, &cloud) {
                let zones = cloud
                    .points
                    .iter()
                    .map(|p| classify_moment_point(p, mode).map(|z| z.kind))
                    .collect::<paretocheck_core::Result<Vec<_>>>()?;
                doc.bootstrap = Some(bootstrap_summary(b, cloud, &zones));
            }
            let cloud_points = cloud.as_ref().map_or(&[][..], |c| &c.points[..]);
            let svg = render_figure(&mrplot_figure(&point, cloud_points, mode))?;
            let input = &a.input.input;
            write_file(
                &a.figure
                    .clone()
                    .unwrap_or_else(|| default_output(input, "mrplot", "svg")),
                &svg,
            )?;
            let json = serde_json::to_string_pretty(&doc)? + "\n";
            write_file(
                &a.json
                    .clone()
                    .unwrap_or_else(|| default_output(input, "mrplot", "json")),
                &json,
            )?;
            Ok(())
        }
        Command::Classify(a) => {
            let (ingest, summary) = ingest(&a.input)?;
            let config = a.config();
            let v = verdict(&ingest.sample, &config)?;
            let aggregation = if a.aggregation {
                let cfg = AggregationConfig {
                    tail: config.tail,
                    max_delta: a.max_delta,
                };
                Some(aggregation_stability(&ingest.sample, seed, &cfg)?)
            } else {
                None
            };
            print_json(
                stdout,
                &VerdictDocument::new(summary, seed, config, &v, aggregation),
            )
        }
        Command::Power(a) => {
            let model = a.model.model()?;
            match a.study {
                Study::Classification => {
                    let r = parallel::classification_error_rates(
                        &model,
                        a.n,
                        a.trials,
                        seed,
                        a.formula_mode.into(),
                    )?;
                    match a.format {
                        Format::Json => print_json(
                            stdout,
                            &PowerDocument {
                                schema: 1,
                                report: &r,
                            },
                        ),
                        Format::Table => Ok(write!(stdout, "{}", power_table(&r))?),
                    }
                }
                Study::MeDiscrimination => {
                    let r = parallel::me_discrimination_power(
                        &model,
                        a.n,
                        a.trials,
                        seed,
                        &DiscriminationConfig::default(),
                    )?;
                    match a.format {
                        Format::Json => print_json(
                            stdout,
                            &DiscriminationDocument {
                                schema: 1,
                                report: &r,
                            },
                        ),
                        Format::Table => Ok(write!(stdout, "{}", discrimination_table(&r))?),
                    }
                }
            }
        }
        Command::Synth(a) => {
            let model = a.model.model()?;
            if a.n == 0 {
                return Err(Error::Config("--n must be positive".into()));
            }
            let sample = model.sample(a.n, seed)?;
            match &a.output {
                Some(path) => write_sample_csv(crate::io::create_output(path)?, sample.values()),
                None => write_sample_csv(&mut *stdout, sample.values()),
            }
        }
    }
}

fn write_outputs(
    input: &Path,
    command: &str,
    out: &FigureArgs,
    svg: &str,
    series: &paretocheck_core::PlotSeries,
) -> Result<()> {
    let figure = out
        .figure
        .clone()
        .unwrap_or_else(|| default_output(input, command, "svg"));
    write_file(&figure, svg)?;
    let csv_path = out
        .series
        .clone()
        .unwrap_or_else(|| default_output(input, command, "csv"));
    write_series_csv(crate::io::create_output(&csv_path)?, &[series])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn help_and_errors() {
        assert_eq!(run_capture(&["paretocheck", "--help"]).0, 0);
        assert_eq!(run_capture(&["paretocheck", "frobnicate"]).0, EXIT_CONFIG);
        let (code, _, err) = run_capture(&[
            "paretocheck",
            "synth",
            "--model",
            "pareto1",
            "--alpha",
            "-1",
            "--n",
            "5",
        ]);
        assert_eq!(code, EXIT_CONFIG, "{err}");
    }

    #[test]
    fn synth_to_stdout_matches_library() {
        let (code, out, _) = run_capture(&[
            "paretocheck",
            "synth",
            "--model",
            "exponential",
            "--n",
            "4",
            "--seed",
            "3",
        ]);
        assert_eq!(code, 0);
        let s = DistributionModel::Exponential { lambda: 1.0 }
            .sample(4, 3)
            .unwrap();
        let mut expected = Vec::new();
        write_sample_csv(&mut expected, s.values()).unwrap();
        assert_eq!(out.as_bytes(), &expected[..]);
    }

    #[test]
    fn default_paths_use_the_input_stem() {
        assert_eq!(
            default_output(Path::new("data/incomes.csv"), "zipf", "svg"),
            PathBuf::from("incomes.zipf.svg")
        );
        assert_eq!(
            default_output(Path::new("-"), "meplot", "csv"),
            PathBuf::from("stdin.meplot.csv")
        );
    }
}
