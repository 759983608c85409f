//! `hlhodge`: batch computation of Hall-Littlewood expansions and Euler tables.
//!
//! Exit codes: 0 on success, 1 when a computation or verification fails,
//! 2 on bad usage or configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hlhodge_core::{cmd_compute, cmd_table, cmd_verify, Coweight, Error, Family, Format, JobSpec, Suite};

#[derive(Parser)]
#[command(name = "hlhodge", version, about = "Hall-Littlewood polynomials and Hodge-Euler tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// P_lambda in the m-basis and its Euler table, per --lambda (or per --bound)
    Compute(Common),
    /// Combined table over every dominant lambda with <lambda, 2 rho> <= --bound
    Table(Common),
    /// Run a verification suite; exits 1 if any instance fails
    Verify {
        /// typeA-charge, weyl-char, specializations, positivity or lattice-count
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// A, B, C, D, G2 or GL
    #[arg(long)]
    family: String,
    #[arg(long)]
    rank: usize,
    /// Coweight coordinates, comma-separated; repeat for several
    #[arg(long = "lambda", value_name = "COORDS")]
    lambdas: Vec<String>,
    /// Upper bound on <lambda, 2 rho>
    #[arg(long)]
    bound: Option<i64>,
    /// Field sizes for point counts; repeatable
    #[arg(long = "q0")]
    q0s: Vec<u64>,
    /// json, csv, latex or text
    #[arg(long, default_value = "text")]
    format: String,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: available cores)
    #[arg(long)]
    threads: Option<usize>,
}

impl Common {
    fn spec(&self) -> Result<JobSpec, Error> {
        let family: Family = self.family.parse()?;
        let mut spec = JobSpec::new(family, self.rank);
        spec.lambdas = self
            .lambdas
            .iter()
            .map(|s| s.parse::<Coweight>())
            .collect::<Result<_, _>>()?;
        spec.bound = self.bound;
        spec.q0s = self.q0s.clone();
        spec.format = self.format.parse::<Format>()?;
        spec.out = self.out.clone();
        Ok(spec)
    }
}

fn init_pool(threads: Option<usize>) -> Result<(), Error> {
    // always explicit, so RAYON_NUM_THREADS is never consulted
    let n = match threads {
        Some(0) => return Err(Error::Config("--threads must be positive".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

fn write_out(spec: &JobSpec, text: &str) -> Result<(), Error> {
    match &spec.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let common = match &cli.command {
        Command::Compute(c) | Command::Table(c) => c,
        Command::Verify { common, .. } => common,
    };
    let spec = common.spec()?;
    init_pool(common.threads)?;
    match &cli.command {
        Command::Compute(_) => {
            write_out(&spec, &cmd_compute(&spec)?.emit(spec.format)?)?;
            Ok(true)
        }
        Command::Table(_) => {
            write_out(&spec, &cmd_table(&spec)?.emit(spec.format)?)?;
            Ok(true)
        }
        Command::Verify { suite, .. } => {
            let suite: Suite = suite.parse()?;
            let report = cmd_verify(suite, &spec)?;
            write_out(&spec, &report.emit(spec.format)?)?;
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hlhodge: {e}");
            match e {
                Error::Usage(_) | Error::Config(_) | Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
