use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use minterp_cli::{commands, CliError, Report, RunConfig, Tolerances, EXIT_ACCEPTANCE, EXIT_OK};
use minterp_core::rng::DEFAULT_SEED;

#[derive(Parser)]
#[command(
    name = "minterp",
    version,
    about = "Minimal-norm interpolation on the disk and the ball"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Angular grid resolution for sphere scans.
    #[arg(long, global = true, default_value_t = 128)]
    grid: usize,
    /// Truncation degrees for kernel computations.
    #[arg(long, global = true, value_delimiter = ',', default_value = "16,32,48")]
    degrees: Vec<u32>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Relative stopping width of the norm bisection.
    #[arg(long, global = true)]
    tol_norm: Option<f64>,
    /// Relative slack for subproblem sufficiency.
    #[arg(long, global = true)]
    tol_subset: Option<f64>,
    /// Closeness to the sup for max-modulus points.
    #[arg(long, global = true)]
    tol_modulus: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Extremal norm, Blaschke product and certificate for a disk problem.
    SolveDisk { problem: PathBuf },
    /// Sufficient and minimal sufficient subsets of a disk problem.
    Subproblems { problem: PathBuf },
    /// Norm-one extension of ζ^k to the ball.
    Extend { k: u32 },
    /// Sup of a polynomial over the unit sphere.
    Scan {
        poly: PathBuf,
        /// Also dump the grid as CSV (theta, alpha, beta, modulus).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Try to exclude a point from the polynomial hull of a sample set.
    Hull {
        /// Point as re1,im1,re2,im2.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        point: Vec<f64>,
        support: PathBuf,
    },
    /// Reproducing kernels and restricted operator norms.
    Kernels { measure: PathBuf, points: PathBuf },
    /// Run every acceptance criterion.
    #[command(alias = "verify-paper")]
    Verify,
}

fn config(c: &Common) -> RunConfig {
    let d = Tolerances::default();
    RunConfig {
        seed: c.seed,
        grid_n: c.grid,
        degrees: c.degrees.clone(),
        tolerances: Tolerances {
            norm: c.tol_norm.unwrap_or(d.norm),
            subset: c.tol_subset.unwrap_or(d.subset),
            modulus: c.tol_modulus.unwrap_or(d.modulus),
        },
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        Command::SolveDisk { problem } => commands::solve_disk(problem, cfg),
        Command::Subproblems { problem } => commands::subproblems(problem, cfg),
        Command::Extend { k } => commands::extend(*k, cfg),
        Command::Scan { poly, csv } => commands::scan(poly, cfg, csv.as_deref()),
        Command::Hull { point, support } => {
            let p: [f64; 4] = point
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Input("--point needs four numbers".into()))?;
            commands::hull(p, support, cfg)
        }
        Command::Kernels { measure, points } => commands::kernels(measure, points, cfg),
        Command::Verify => Ok(commands::verify(cfg)),
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let cfg = config(&cli.common);
    cfg.validate()?;
    let start = Instant::now();
    let report = dispatch(&cli.command, &cfg)?;
    eprintln!("{} finished in {:.2?}", report.command, start.elapsed());
    let text = report.to_json();
    match &cli.common.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(minterp_cli::EXIT_INPUT as u8);
        }
    }
    let code = match run(&cli) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_ACCEPTANCE,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
