//! Command-line surface for `invpoly`: generate coefficient files, query
//! degrees, measure errors and maxima, and tabulate methods side by side.

pub mod coeff_file;
pub mod compare;
pub mod error;
pub mod recipe;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use invpoly::analysis::{self, DEFAULT_GRID_SIZE, DEFAULT_OVERSAMPLE};
use invpoly::{ChebyshevOddSeries, DomainSpec};
use serde::Serialize;

pub use coeff_file::CoeffFile;
pub use error::CliError;
pub use recipe::{Method, Recipe};

#[derive(Debug, Parser)]
#[command(name = "invpoly", version, about = "Odd polynomial approximations to 1/x on [-1,-1/κ] ∪ [1/κ,1]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a polynomial and write its coefficient file.
    Gen {
        #[command(flatten)]
        recipe: RecipeArgs,
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the odd degree a method needs for a target error.
    Degree {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Measure the uniform error on [1/κ, 1].
    Error {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid_size: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sampled and certified maximum of |p| on [-1, 1].
    Max {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = DEFAULT_OVERSAMPLE)]
        oversample: usize,
        /// Grid for taylor-min's search when building from a recipe.
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid_size: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate degree, error and maximum over methods × κ × ε with a
    /// least-squares fit of degree against κ·log(κ/ε).
    Compare {
        #[arg(long = "method", value_enum, value_delimiter = ',', default_values = ["optimal", "chebiter", "taylor"])]
        methods: Vec<Method>,
        #[arg(long = "kappa", value_delimiter = ',', default_values = ["10", "100", "1000"])]
        kappas: Vec<f64>,
        #[arg(
            long = "eps",
            value_delimiter = ',',
            default_values = ["1e-2", "1e-3", "1e-4", "1e-5", "1e-6", "1e-7", "1e-8", "1e-9", "1e-10", "1e-11", "1e-12"]
        )]
        epss: Vec<f64>,
        /// Use the degree rules only; nothing is generated.
        #[arg(long)]
        degrees_only: bool,
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Best approximation by Remez exchange (small degrees only).
    Remez {
        #[arg(long)]
        kappa: f64,
        /// Odd degree, at most 47.
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct RecipeArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub kappa: f64,
    #[arg(long, conflicts_with = "degree")]
    pub eps: Option<f64>,
    #[arg(long)]
    pub degree: Option<usize>,
}

impl RecipeArgs {
    pub fn recipe(&self) -> Result<Recipe, CliError> {
        Recipe::new(self.method, self.kappa, self.eps, self.degree)
    }
}

/// A polynomial to analyse: a coefficient file or a recipe.
#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Coefficient file written by `gen`.
    #[arg(long, conflicts_with_all = ["method", "kappa", "eps", "degree"])]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long, conflicts_with = "degree")]
    pub eps: Option<f64>,
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
    pub grid_size: usize,
    #[arg(long, default_value_t = DEFAULT_OVERSAMPLE)]
    pub oversample: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
struct ErrorOutput {
    kappa: f64,
    a: f64,
    degree: usize,
    grid_size: usize,
    eps_measured: f64,
    argmax_x: f64,
}

#[derive(Debug, Serialize)]
struct MaxOutput {
    degree: usize,
    samples: usize,
    factor: f64,
    sampled_max: f64,
    certified_max: f64,
}

#[derive(Debug, Serialize)]
struct CompareOutput<'a> {
    rows: &'a [compare::Row],
    fits: &'a [compare::Fit],
}

#[derive(Debug, Serialize)]
struct CoeffRow {
    term: usize,
    coefficient: f64,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { recipe, measure, output } => {
            let file = recipe::generate(&recipe.recipe()?, measure.grid_size, measure.oversample)?;
            write_coeff_file(&file, &output)
        }
        Command::Degree { method, kappa, eps } => {
            println!("{}", recipe::degree_for(method, kappa, eps)?);
            Ok(())
        }
        Command::Error { source, grid_size, output } => {
            let (kappa, series) = load_source(&source, grid_size)?;
            let a = DomainSpec::from_kappa(kappa)?.a;
            let r = analysis::uniform_error(&series, a, grid_size)?;
            let record = ErrorOutput {
                kappa,
                a,
                degree: series.degree(),
                grid_size,
                eps_measured: r.eps_measured,
                argmax_x: r.argmax_x,
            };
            write_record(&record, &output)
        }
        Command::Max { source, oversample, grid_size, output } => {
            let (_, series) = load_source(&source, grid_size)?;
            let m = analysis::max_bound(&series, oversample)?;
            let record = MaxOutput {
                degree: m.degree,
                samples: m.samples,
                factor: m.factor,
                sampled_max: m.sampled_max,
                certified_max: m.certified_max,
            };
            write_record(&record, &output)
        }
        Command::Compare { methods, kappas, epss, degrees_only, measure, output } => {
            if methods.is_empty() || kappas.is_empty() || epss.is_empty() {
                return Err(CliError::Usage("compare needs at least one method, kappa and eps".into()));
            }
            let opts = compare::Options {
                grid_size: measure.grid_size,
                oversample: measure.oversample,
                degrees_only,
            };
            let rows = compare::table(&methods, &kappas, &epss, &opts);
            let fits = compare::fits(&rows);
            write_compare(&rows, &fits, &output)
        }
        Command::Remez { kappa, degree, measure, output } => {
            let r = Recipe::new(Method::Remez, kappa, None, Some(degree))?;
            let file = recipe::generate(&r, measure.grid_size, measure.oversample)?;
            write_coeff_file(&file, &output)
        }
    }
}

fn load_source(source: &SourceArgs, grid_size: usize) -> Result<(f64, ChebyshevOddSeries), CliError> {
    if let Some(path) = &source.input {
        let file = CoeffFile::load(path)?;
        return Ok((file.kappa, file.series()?));
    }
    let (Some(method), Some(kappa)) = (source.method, source.kappa) else {
        return Err(CliError::Usage("give --input, or --method and --kappa with --eps or --degree".into()));
    };
    let r = Recipe::new(method, kappa, source.eps, source.degree)?;
    Ok((kappa, recipe::build(&r, grid_size)?))
}

fn open_sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => {
            let f = File::create(path).map_err(|source| CliError::Io { path: path.into(), source })?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn finish(mut w: Box<dyn Write>, out: &OutputArgs) -> Result<(), CliError> {
    w.flush().map_err(|source| CliError::Io {
        path: out.out.clone().unwrap_or_else(|| "<stdout>".into()),
        source,
    })
}

fn write_json<T: Serialize>(value: &T, out: &OutputArgs) -> Result<(), CliError> {
    let mut w = open_sink(out.out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w).map_err(|e| CliError::Output(e.to_string()))?;
    finish(w, out)
}

fn write_coeff_file(file: &CoeffFile, out: &OutputArgs) -> Result<(), CliError> {
    match out.format.unwrap_or(Format::Json) {
        Format::Json => write_json(file, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open_sink(out.out.as_deref())?);
            for (j, &c) in file.coefficients.iter().enumerate() {
                w.serialize(CoeffRow { term: 2 * j + 1, coefficient: c })?;
            }
            let inner = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
            finish(inner, out)
        }
    }
}

fn write_record<T: Serialize>(record: &T, out: &OutputArgs) -> Result<(), CliError> {
    match out.format.unwrap_or(Format::Json) {
        Format::Json => write_json(record, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open_sink(out.out.as_deref())?);
            w.serialize(record)?;
            let inner = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
            finish(inner, out)
        }
    }
}

fn write_compare(rows: &[compare::Row], fits: &[compare::Fit], out: &OutputArgs) -> Result<(), CliError> {
    match out.format.unwrap_or(Format::Csv) {
        Format::Json => write_json(&CompareOutput { rows, fits }, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open_sink(out.out.as_deref())?);
            for r in rows {
                w.serialize(r)?;
            }
            let inner = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
            finish(inner, out)?;
            // the table stays a single rectangular CSV; fits go to stderr
            for f in fits {
                eprintln!(
                    "fit {}: d = {:.4}·κlog(κ/ε) {:+.1} ({} points)",
                    f.method, f.slope, f.intercept, f.points
                );
            }
            Ok(())
        }
    }
}
