mod bench;
mod output;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use agmb_core::bounds::sharp_constants;
use agmb_core::grid::GridSpec;
use agmb_core::suite::{run_suites, SuiteId, SuiteOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "agmb", version, about = "Sharp bounds for the AGM of the quadratic and contraharmonic means")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exits 1 if any check has violations.
    Verify(VerifyArgs),
    /// Tabulate K, E, their envelopes and the sharp bounds over moduli.
    Table(CommonArgs),
    /// Print the sharp constants at full precision.
    Constants(CommonArgs),
    /// Time the cheap bounds against the AGM-based K.
    Bench(CommonArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated suite ids, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Lower-bound parameter override for the theorem suites.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Upper-bound parameter override for the theorem suites.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Grid as `kind:count:lo:hi` with kind ratio-log, modulus-uniform or
    /// modulus-endpoint.
    #[arg(long)]
    grid: Option<GridSpec>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for random ratio pairs.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] agmb_core::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("AGMB_MAX_THREADS must be a positive integer, got {0:?}")]
    Threads(String),
    #[error("{0}")]
    Usage(String),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("AGMB_MAX_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Threads(raw.clone()))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Fails early on an unwritable path so a long run is not wasted.
fn check_writable(out: Option<&Path>) -> Result<(), CliError> {
    if let Some(path) = out {
        std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|source| CliError::Write {
                path: path.to_path_buf(),
                source,
            })?;
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let ids = SuiteId::parse_list(&args.suite)?;
    let out = args.common.out.as_deref();
    check_writable(out)?;
    let opts = SuiteOptions {
        grid: args.common.grid,
        alpha: args.alpha,
        beta: args.beta,
        seed: args.common.seed,
    };
    let results = run_suites(&ids, &opts)?;
    let format = args
        .common
        .format
        .unwrap_or(if out.is_some() { Format::Json } else { Format::Plain });
    let text = match format {
        Format::Json => output::to_json(&results),
        Format::Csv => output::to_csv(&results),
        Format::Plain => output::to_plain(&results),
    };
    emit(out, &text)?;
    if out.is_some() && format != Format::Plain {
        eprint!("{}", output::to_plain(&results));
    }
    Ok(if results.iter().all(|r| r.passed()) { 0 } else { EXIT_VIOLATIONS })
}

fn constants(args: &CommonArgs) -> Result<u8, CliError> {
    let rows = sharp_constants().rows();
    let text = match args.format.unwrap_or(Format::Plain) {
        Format::Plain => rows
            .iter()
            .map(|(name, v, formula)| format!("{name:<11} = {v:.17}   {formula}\n"))
            .collect(),
        Format::Csv => {
            let mut s = String::from("name,value\n");
            for (name, v, _) in &rows {
                s.push_str(&format!("{name},{}\n", output::num17(*v)));
            }
            s
        }
        Format::Json => {
            let fields: Vec<String> = rows
                .iter()
                .map(|(name, v, _)| format!("{}:{}", serde_json::to_string(name).unwrap(), output::num17(*v)))
                .collect();
            format!("{{{}}}\n", fields.join(","))
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Verify(args) => verify(&args),
        Command::Table(args) => {
            let grid = args.grid.unwrap_or_else(table::default_grid);
            let rows = table::rows(&grid)?;
            let text = match args.format.unwrap_or(Format::Csv) {
                Format::Csv => table::to_csv(&rows),
                Format::Json => table::to_json(&rows),
                Format::Plain => table::to_plain(&rows),
            };
            emit(args.out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Constants(args) => constants(&args),
        Command::Bench(args) => {
            let grid = args.grid.unwrap_or_else(bench::default_grid);
            let report = bench::run(&grid)?;
            let text = match args.format.unwrap_or(Format::Plain) {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Plain => report.to_plain(),
            };
            emit(args.out.as_deref(), &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("agmb: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
