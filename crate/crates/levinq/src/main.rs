//! `levinq`: oscillatory quadrature with a logarithmic endpoint singularity.
//!
//! Exit codes: 0 success, 2 usage error, 3 numeric failure.

use clap::{Args, Parser, Subcommand};
use levinq::cli::{self, CliError, Method};
use levinq::levin::GridKind;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "levinq", version, about = "Levin quadrature for log-singular oscillatory integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one registry problem at a single (w, n).
    Integrate {
        /// Problem name from the registry (see README).
        #[arg(long)]
        problem: String,
        /// Frequency w (nonzero). |w| < 1 is routed to the oracle.
        #[arg(long)]
        w: f64,
        /// Collocation node count.
        #[arg(long)]
        n: usize,
        /// classic | log_linear | log_general | oracle
        #[arg(long)]
        method: String,
        /// Grid for the classic method: lobatto | radau.
        #[arg(long, default_value = "lobatto")]
        grid: String,
        /// Tolerance for oracle evaluations and oracle reference columns.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reproduce a built-in results table as CSV.
    Table {
        /// ta0 | ta1 | ta2 | ta6_levin | fig1
        #[arg(long)]
        id: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep a (w, n) grid; rows in w-major, n-minor order.
    Sweep {
        #[arg(long)]
        problem: String,
        /// Comma-separated frequencies.
        #[arg(long = "w-list", value_delimiter = ',', required = true)]
        w_list: Vec<f64>,
        /// Comma-separated node counts.
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long)]
        method: String,
        #[arg(long, default_value = "lobatto")]
        grid: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_method(s: &str) -> Result<Method, CliError> {
    Method::parse(s).ok_or_else(|| CliError::Usage(format!("unknown method '{s}'")))
}

fn parse_grid(s: &str) -> Result<GridKind, CliError> {
    match s {
        "lobatto" => Ok(GridKind::Lobatto),
        "radau" => Ok(GridKind::Radau),
        other => Err(CliError::Usage(format!("unknown grid '{other}'"))),
    }
}

fn check_grid_method(grid: GridKind, method: Method) -> Result<(), CliError> {
    if grid == GridKind::Radau && !matches!(method, Method::Classic) {
        return Err(CliError::Usage("the radau grid is only available for the classic method".into()));
    }
    Ok(())
}

fn emit(out: &OutputArgs, csv: &str) -> Result<(), CliError> {
    match &out.out {
        None => {
            std::io::stdout()
                .write_all(csv.as_bytes())
                .map_err(|e| CliError::Numeric(format!("write failed: {e}")))?;
        }
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| CliError::Numeric(format!("write {path:?} failed: {e}")))?;
        }
    }
    Ok(())
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Integrate { problem, w, n, method, grid, tol, output } => {
            let method = parse_method(&method)?;
            let grid = parse_grid(&grid)?;
            check_grid_method(grid, method)?;
            let record = cli::run_integrate(&problem, w, n, method, grid, tol)?;
            emit(&output, &cli::render_csv(&[record]))
        }
        Command::Table { id, output } => {
            let table = cli::run_table(&id)?;
            emit(&output, &table.to_csv())
        }
        Command::Sweep { problem, w_list, n_list, method, grid, tol, output } => {
            let method = parse_method(&method)?;
            let grid = parse_grid(&grid)?;
            check_grid_method(grid, method)?;
            let records = cli::run_sweep(&problem, &w_list, &n_list, method, grid, tol)?;
            emit(&output, &cli::render_csv(&records))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("levinq: {e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Numeric(_)) => {
            eprintln!("levinq: {e}");
            ExitCode::from(3)
        }
    }
}
