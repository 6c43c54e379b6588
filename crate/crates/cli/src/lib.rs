//! The `fpa` command line tool: count `.fps` project specifications,
//! fit calibration models, produce early estimates, export the built-in
//! dataset, summarize rater consistency and draw scatter figures.
//!
//! Exit codes: 0 on success, 1 on file/parse/validation failures
//! (diagnostics on stderr), 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use fpa_core::count::count_project;
use fpa_core::dataset::{consistency_stats, embedded_dataset, load_csv, save_csv, Dataset, Predictor};
use fpa_core::efpm::{best_estimate, estimate, paper_models, CalibratedModelSet, EstimationInput};
use fpa_core::error::ParseError;
use fpa_core::model::FunctionKind;
use fpa_core::regress::{fit_simple_ols, model_summary, LinearModel};
use fpa_core::report::{scatter_svg, PlotSpec};
use fpa_core::specfile::parse_spec;

#[derive(Parser)]
#[command(
    name = "fpa",
    version,
    about = "Function point counting, calibration and early estimation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count a project specification file and print the breakdown
    Count {
        /// Path to a .fps project specification
        file: PathBuf,
    },
    /// Estimate total function points from early counters
    Estimate {
        /// Number of internal logical files
        #[arg(long)]
        cilf: Option<u32>,
        /// Number of internal logical files plus external interface files
        #[arg(long)]
        cilfeif: Option<u32>,
        /// Number of transactions (inputs + outputs + inquiries)
        #[arg(long)]
        ceieoeq: Option<u32>,
        /// Confidence level in (0,1) for prediction intervals
        #[arg(long, value_name = "LEVEL")]
        interval: Option<f64>,
        /// Model source: "paper" (built-in calibration) or "fit:<file.csv>"
        #[arg(long, default_value = "paper", value_name = "SOURCE")]
        models: String,
    },
    /// Fit a regression of fp against one early counter and print its summary
    Fit {
        /// Predictor counter
        #[arg(long, value_enum)]
        x: PredictorArg,
        /// CSV dataset to fit on (defaults to the built-in dataset)
        #[arg(long, value_name = "FILE")]
        dataset: Option<PathBuf>,
    },
    /// Dataset utilities
    Dataset {
        #[command(subcommand)]
        command: DatasetCommand,
    },
    /// Print per-project relative differences between the two raters
    Consistency {
        /// CSV dataset (defaults to the built-in dataset)
        #[arg(long, value_name = "FILE")]
        dataset: Option<PathBuf>,
    },
    /// Write a scatter figure with the fitted regression line as SVG
    Plot {
        /// Predictor counter
        #[arg(long, value_enum)]
        x: PredictorArg,
        /// Output SVG path
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// CSV dataset (defaults to the built-in dataset)
        #[arg(long, value_name = "FILE")]
        dataset: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DatasetCommand {
    /// Print the built-in dataset as CSV
    Export,
}

#[derive(Clone, Copy, ValueEnum)]
enum PredictorArg {
    Cilf,
    Cilfeif,
    Ceieoeq,
}

impl From<PredictorArg> for Predictor {
    fn from(arg: PredictorArg) -> Self {
        match arg {
            PredictorArg::Cilf => Predictor::Cilf,
            PredictorArg::Cilfeif => Predictor::Cilfeif,
            PredictorArg::Ceieoeq => Predictor::Ceieoeq,
        }
    }
}

struct Failure {
    code: i32,
    diagnostics: Vec<String>,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Self { code: 1, diagnostics: vec![message.into()] }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, diagnostics: vec![message.into()] }
    }

    fn from_parse_errors(path: &Path, errors: &[ParseError]) -> Self {
        Self {
            code: 1,
            diagnostics: errors
                .iter()
                .map(|e| format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message))
                .collect(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(format!("i/o error: {e}"))
    }
}

impl From<fpa_core::error::ValidationError> for Failure {
    fn from(e: fpa_core::error::ValidationError) -> Self {
        Failure::new(e.to_string())
    }
}

impl From<fpa_core::regress::FitError> for Failure {
    fn from(e: fpa_core::regress::FitError) -> Self {
        Failure::new(e.to_string())
    }
}

/// Runs the tool on `argv` (including the program name), writing normal
/// output to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return 2;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(failure) => {
            for line in &failure.diagnostics {
                let _ = writeln!(stderr, "{line}");
            }
            failure.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Count { file } => cmd_count(&file, out),
        Command::Estimate { cilf, cilfeif, ceieoeq, interval, models } => {
            cmd_estimate(cilf, cilfeif, ceieoeq, interval, &models, out)
        }
        Command::Fit { x, dataset } => cmd_fit(x.into(), dataset.as_deref(), out),
        Command::Dataset { command: DatasetCommand::Export } => {
            write!(out, "{}", save_csv(&embedded_dataset()))?;
            Ok(())
        }
        Command::Consistency { dataset } => cmd_consistency(dataset.as_deref(), out),
        Command::Plot { x, out: path, dataset } => cmd_plot(x.into(), &path, dataset.as_deref()),
    }
}

fn cmd_count(path: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let source = fs::read_to_string(path)
        .map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display())))?;
    let project =
        parse_spec(&source).map_err(|errs| Failure::from_parse_errors(path, &errs))?;
    let count = count_project(&project);
    writeln!(out, "project \"{}\"", project.name())?;
    for kind in FunctionKind::ALL {
        let tally = count.per_kind(kind);
        writeln!(out, "{} {} {}", kind.label(), tally.functions, tally.fp)?;
    }
    writeln!(out, "total_ufp {}", count.total_ufp())?;
    writeln!(out, "cilf {}", count.cilf())?;
    writeln!(out, "cilfeif {}", count.cilfeif())?;
    writeln!(out, "ceieoeq {}", count.ceieoeq())?;
    Ok(())
}

fn cmd_estimate(
    cilf: Option<u32>,
    cilfeif: Option<u32>,
    ceieoeq: Option<u32>,
    interval: Option<f64>,
    models: &str,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let models = resolve_models(models)?;
    let input = EstimationInput::new(cilf, cilfeif, ceieoeq)?;
    let estimates = estimate(&input, &models, interval)?;
    for e in &estimates {
        match e.interval {
            Some(iv) => writeln!(
                out,
                "{} {:.3} {:.3} {:.3} {:.3}",
                e.predictor, e.predicted_fp, e.r2, iv.low, iv.high
            )?,
            None => writeln!(out, "{} {:.3} {:.3}", e.predictor, e.predicted_fp, e.r2)?,
        }
    }
    let best = best_estimate(&estimates)?;
    writeln!(out, "best {} {:.3}", best.predictor, best.predicted_fp)?;
    Ok(())
}

fn resolve_models(source: &str) -> Result<CalibratedModelSet, Failure> {
    if source == "paper" {
        return Ok(paper_models());
    }
    if let Some(path) = source.strip_prefix("fit:") {
        let ds = load_dataset(Some(Path::new(path)))?;
        return Ok(CalibratedModelSet::fit_from(&ds)?);
    }
    Err(Failure::usage(format!(
        "invalid --models value \"{source}\"; expected \"paper\" or \"fit:<file.csv>\""
    )))
}

fn load_dataset(path: Option<&Path>) -> Result<Dataset, Failure> {
    match path {
        None => Ok(embedded_dataset()),
        Some(path) => {
            let source = fs::read_to_string(path)
                .map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display())))?;
            load_csv(&source).map_err(|errs| Failure::from_parse_errors(path, &errs))
        }
    }
}

fn fit_on(ds: &Dataset, predictor: Predictor) -> Result<(Vec<(f64, f64)>, LinearModel), Failure> {
    let points = ds.xy_points(predictor);
    let model = fit_simple_ols(&points, predictor.label())?;
    Ok((points, model))
}

fn cmd_fit(predictor: Predictor, dataset: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let ds = load_dataset(dataset)?;
    let (_, model) = fit_on(&ds, predictor)?;
    write!(out, "{}", model_summary(&model))?;
    Ok(())
}

fn cmd_consistency(dataset: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let ds = load_dataset(dataset)?;
    let (stats, mean) = consistency_stats(&ds)?;
    for s in &stats {
        writeln!(out, "{} {:.6}", s.project_id, s.rel_diff)?;
    }
    writeln!(out, "mean {mean:.6}")?;
    Ok(())
}

fn cmd_plot(predictor: Predictor, out_path: &Path, dataset: Option<&Path>) -> Result<(), Failure> {
    let ds = load_dataset(dataset)?;
    let (points, model) = fit_on(&ds, predictor)?;
    let spec = PlotSpec::new(
        points,
        model,
        predictor.label(),
        "FP",
        format!("FP against {}", predictor.label()),
    )?;
    let svg = scatter_svg(&spec)?;
    fs::write(out_path, svg)
        .map_err(|e| Failure::new(format!("cannot write {}: {e}", out_path.display())))?;
    Ok(())
}
