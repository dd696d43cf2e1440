use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hilmod::verifier::Tolerances;
use hilmod_cli::compute::{compute, Computation};
use hilmod_cli::config::{apply_tolerance_overrides, parse_algebra};
use hilmod_cli::suites::{run_verify, Suite};
use hilmod_cli::{emit, scan, CliError, Format, RunConfig};

#[derive(Parser)]
#[command(name = "hilmod", version, about = "Closed-range checks for operators on Hilbert C*-modules over finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct RunArgs {
    /// Master seed; trial i uses ChaCha20 stream i of this seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Block dimensions of the algebra, e.g. `1,2` for C ⊕ M_2.
    #[arg(long, default_value = "1")]
    algebra: String,
    /// Rank of the first free module (drawn from 1..=3 per trial if omitted).
    #[arg(long)]
    rank_k: Option<usize>,
    /// Rank of the second free module (drawn from 1..=3 per trial if omitted).
    #[arg(long)]
    rank_m: Option<usize>,
    /// Tolerance override KEY=VALUE; repeatable.
    #[arg(long = "tol", value_name = "KEY=VALUE")]
    tol: Vec<String>,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (results do not depend on this).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites on seeded random instances.
    Verify {
        /// penrose, range-tt, ginv-transfer, koliha, spectral, range-sum,
        /// defect, angle, theorem, commuting, mp-product or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Scan the defect γ(PQ)² + ‖(1−P)QR‖² − 1 over random projection pairs.
    ScanDefect {
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[command(flatten)]
        run: RunArgs,
    },
    /// One-shot computation: c0 M N | gamma T | mpinv T | defect P Q.
    Compute {
        #[arg(value_parser = ["c0", "gamma", "mpinv", "defect"])]
        what: String,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long = "tol", value_name = "KEY=VALUE")]
        tol: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run_config(run: RunArgs, suite: Suite, format: FormatArg) -> Result<RunConfig, CliError> {
    let mut tolerances = Tolerances::default();
    apply_tolerance_overrides(&mut tolerances, &run.tol)?;
    Ok(RunConfig {
        master_seed: run.seed,
        algebra_dims: parse_algebra(&run.algebra)?,
        rank_k: run.rank_k,
        rank_m: run.rank_m,
        trials: run.trials,
        tolerances,
        suite,
        out: run.out,
        format: match format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        threads: run.threads,
    })
}

/// Returns whether everything that was checked passed.
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify { suite, format, run } => {
            let config = run_config(run, Suite::parse(&suite)?, format)?;
            let report = run_verify(&config)?;
            emit(config.out.as_deref(), &report.render(config.format))?;
            for c in &report.checks {
                eprintln!("{}: {}/{} passed, {} degenerate, max residual {:e}", c.check, c.passed, c.trials, c.degenerate, c.max_residual);
            }
            Ok(report.all_passed)
        }
        Command::ScanDefect { format, run } => {
            let config = run_config(run, Suite::Defect, format)?;
            let out = scan::run_defect_scan(&config)?;
            emit(config.out.as_deref(), &out.render(config.format))?;
            Ok(true)
        }
        Command::Compute { what, inputs, tol, out } => {
            let mut tolerances = Tolerances::default();
            apply_tolerance_overrides(&mut tolerances, &tol)?;
            let text = compute(&Computation::parse(&what, &inputs)?, &tolerances)?;
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
