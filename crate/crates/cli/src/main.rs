//! moebius-floquet: classify and visualize two-level non-hermitian dynamics.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 partial sweep (some grid cells unresolved).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod cnum;
mod commands;
mod config;
mod svg;

use commands::{CmdError, Ctx, Outcome};
use config::FileConfig;
use moebius_floquet_core::IntegratorOptions64;

#[derive(Parser)]
#[command(
    name = "moebius-floquet",
    version,
    about = "Static and Floquet analysis of two-level non-hermitian Hamiltonians"
)]
struct Cli {
    /// TOML configuration file; flags override file values
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (default "out")
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Seed for every random sampling step
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Integrator relative tolerance
    #[arg(long = "rel-tol", global = true)]
    rel_tol: Option<f64>,
    /// Integrator stage budget per solve
    #[arg(long = "max-steps", global = true)]
    max_steps: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a static Hamiltonian or the monodromy of a modulation curve
    Classify(commands::ClassifyArgs),
    /// Evolve random polarisations and render the projected Poincare-sphere portrait
    Portrait(commands::PortraitArgs),
    /// Evolve a state under a periodic modulation curve and render its components
    Trajectory(commands::TrajectoryArgs),
    /// Classify monodromy over a (delta, rho) grid and render the stability diagram
    Stability(commands::StabilityArgs),
}

fn run(cli: Cli) -> Result<Outcome, CmdError> {
    let file = FileConfig::load(cli.config.as_deref()).map_err(CmdError::Config)?;
    let output = file.output();
    let integ_file = file.integrator();

    let mut integrator = IntegratorOptions64::default();
    if let Some(r) = cli.rel_tol.or(integ_file.rel_tol) {
        if r.is_nan() || r <= 0.0 {
            return Err(CmdError::Config("rel-tol must be positive".into()));
        }
        integrator.rel_tol = r;
    }
    if let Some(a) = integ_file.abs_tol {
        integrator.abs_tol = a;
    }
    integrator.initial_step = integ_file.initial_step;
    integrator.max_step = integ_file.max_step;
    if let Some(n) = cli.max_steps.or(integ_file.max_steps) {
        integrator.max_steps = n;
    }

    let ctx = Ctx {
        out_dir: cli.out.or(output.dir).unwrap_or_else(|| PathBuf::from("out")),
        seed: cli.seed.or(output.seed).unwrap_or(0),
        integrator,
        file,
    };

    let workers = cli.workers.or(output.workers);
    let dispatch = || match &cli.command {
        Command::Classify(args) => commands::cmd_classify(args, &ctx),
        Command::Portrait(args) => commands::cmd_portrait(args, &ctx),
        Command::Trajectory(args) => commands::cmd_trajectory(args, &ctx),
        Command::Stability(args) => commands::cmd_stability(args, &ctx),
    };
    match workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CmdError::Config(format!("cannot build worker pool: {}", e)))?;
            pool.install(dispatch)
        }
        None => dispatch(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Full) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => {
            eprintln!("warning: sweep completed with unresolved cells");
            ExitCode::from(4)
        }
        Err(CmdError::Config(msg)) => {
            eprintln!("configuration error: {}", msg);
            ExitCode::from(2)
        }
        Err(CmdError::Numerical(msg)) => {
            eprintln!("numerical failure: {}", msg);
            ExitCode::from(3)
        }
    }
}
