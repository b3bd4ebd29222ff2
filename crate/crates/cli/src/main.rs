//! `fracstep`: benchmark tables, convergence studies and coefficient sweeps.
//!
//! Exit status: 0 when every row passes, 1 when a row fails or a run errors,
//! 2 on invalid arguments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracstep::experiments::{CommandKind, ExperimentConfig, Format};
use fracstep::{Error, Execution};

#[derive(Parser, Debug)]
#[command(name = "fracstep", version, about = "Fractional time-stepping benchmarks and sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pure-diffusion benchmark against the spectral solution (8 published rows)
    Table1(CommonArgs),
    /// Drift-reaction benchmark, main vs comparison scheme (12 published rows)
    Table2(CommonArgs),
    /// Scalar scheme error and empirical order for N = 16, 32, ...
    ScalarConvergence(CommonArgs),
    /// Normalized decay of the scalar scheme solution
    Decay(CommonArgs),
    /// Sum, sign and bound checks on the scheme coefficients
    CoeffSweep(CommonArgs),
    /// Smallest n from which the weighted coefficient inequalities hold
    Lemma41Sweep(CommonArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// TOML file with default settings; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Fractional order in (0, 1)
    #[arg(long)]
    alpha: Option<f64>,
    /// Time steps N (row filter for tables, largest N or n for studies and sweeps)
    #[arg(long)]
    steps: Option<usize>,
    /// Steps of the comparison scheme (table2 row filter)
    #[arg(long)]
    comparison_steps: Option<usize>,
    /// Spatial intervals
    #[arg(long)]
    spatial: Option<usize>,
    /// Time horizon T
    #[arg(long)]
    horizon: Option<f64>,
    /// Rate slack epsilon in (0, 1 - alpha)
    #[arg(long)]
    epsilon: Option<f64>,
    /// Real eigenvalue for the scalar studies
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Initial data: poly, sine, or a file of grid values
    #[arg(long)]
    initial_data: Option<String>,
    /// Output file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Accept computed errors within this factor of the published values
    #[arg(long)]
    tolerance_factor: Option<f64>,
    /// Run every loop on the calling thread
    #[arg(long)]
    sequential: bool,
}

impl CommonArgs {
    fn flags(&self) -> ExperimentConfig {
        ExperimentConfig {
            alpha: self.alpha,
            steps: self.steps,
            comparison_steps: self.comparison_steps,
            spatial: self.spatial,
            horizon: self.horizon,
            epsilon: self.epsilon,
            lambda: self.lambda,
            initial_data: self.initial_data.clone(),
            tolerance_factor: self.tolerance_factor,
            out: self.out.clone(),
            format: self.format.map(|f| match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            }),
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::SectorViolation { .. } | Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn run(kind: CommandKind, args: &CommonArgs) -> Result<bool, Error> {
    let base = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    let config = base.overridden_by(args.flags());
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    log::info!("running {} with {:?}", kind.name(), exec);
    let outcome = kind.run(&config, exec)?;
    outcome
        .report
        .write(config.format.unwrap_or_default(), config.out.as_deref())?;
    if !outcome.all_pass {
        log::warn!("{}: at least one row failed its check", kind.name());
    }
    Ok(outcome.all_pass)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::Table1(a) => (CommandKind::Table1, a),
        Command::Table2(a) => (CommandKind::Table2, a),
        Command::ScalarConvergence(a) => (CommandKind::ScalarConvergence, a),
        Command::Decay(a) => (CommandKind::Decay, a),
        Command::CoeffSweep(a) => (CommandKind::CoeffSweep, a),
        Command::Lemma41Sweep(a) => (CommandKind::Lemma41Sweep, a),
    };
    match run(kind, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("fracstep {}: {e}", kind.name());
            ExitCode::from(exit_code(&e))
        }
    }
}
