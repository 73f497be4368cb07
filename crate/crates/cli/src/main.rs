//! `dqc1`: reproducible experiments on the one non-clean qubit model.
//!
//! Exit codes: 0 when the requested check passes, 1 when it is certified to
//! fail, 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "dqc1",
    version,
    about = "Exact one non-clean qubit simulation and analysis"
)]
struct Cli {
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (defaults to the machine's parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact output distribution as JSON.
    Simulate(SimulateArgs),
    /// Seeded samples from the exact distribution.
    Sample(SampleArgs),
    /// Check the uniform approximation against the eps/(1-eps) bound.
    CheckUniform(CheckUniformArgs),
    /// Build the circuit that defeats a claimed sampler.
    Adversary(AdversaryArgs),
    /// Gap certificate for the sampling reduction, optionally on a promise circuit.
    Reduction(ReductionArgs),
    /// Rescale SBP acceptance bounds by filtering and repetition.
    Amplify(AmplifyArgs),
    /// CSV sweep of polarization and error grids over a corpus.
    Sweep(SweepArgs),
    /// Generate a seeded random circuit in `.qc` format.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long, value_parser = commands::parse_epsilon)]
    epsilon: f64,
    #[arg(long, default_value_t = dqc1_core::model::DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long, value_parser = commands::parse_epsilon)]
    epsilon: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[arg(long, default_value_t = dqc1_core::sampling::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct CheckUniformArgs {
    /// A `.qc` file or a directory of them.
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long, value_parser = commands::parse_epsilon)]
    epsilon: f64,
    /// Check the first-qubit marginal instead of the full distribution.
    #[arg(long)]
    marginal: bool,
}

#[derive(Args, Debug)]
struct AdversaryArgs {
    /// Distribution JSON of the claimed sampler.
    #[arg(long)]
    dist: PathBuf,
    #[arg(long, value_parser = commands::parse_epsilon)]
    epsilon: f64,
    #[arg(long)]
    c: f64,
    /// Also write the constructed circuit here.
    #[arg(long)]
    circuit_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReductionArgs {
    #[arg(long, value_parser = commands::parse_epsilon)]
    epsilon: f64,
    #[arg(long)]
    delta: f64,
    /// Multiplicative error of the sampler at 0^n.
    #[arg(long, conflicts_with = "eta", required_unless_present = "eta")]
    c: Option<f64>,
    /// Additive error of the sampler at 0^n.
    #[arg(long)]
    eta: Option<f64>,
    /// Qubit count; taken from `--circuit` when given.
    #[arg(long)]
    n: Option<usize>,
    /// Override the least admissible r.
    #[arg(long)]
    r: Option<u32>,
    /// Promise circuit V; the model runs U = V^dagger.
    #[arg(long)]
    circuit: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AmplifyArgs {
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    qpoly: f64,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    reps: Option<u32>,
    #[arg(long)]
    pacc: f64,
    /// Monte-Carlo trials of the filter-and-repeat process (0 skips it).
    #[arg(long, default_value_t = 0)]
    trials: u64,
    #[arg(long, default_value_t = dqc1_core::sampling::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Polarization grid `start:stop:step` (or a single value).
    #[arg(long)]
    epsilon: String,
    /// Error grid `start:stop:step`, or `auto` for fractions of eps/(1-eps).
    #[arg(long, default_value = "auto")]
    c: String,
    #[arg(long, default_value_t = 4.0)]
    delta: f64,
    /// Directory of `.qc` files.
    #[arg(long, conflicts_with = "gen_n", required_unless_present = "gen_n")]
    corpus: Option<PathBuf>,
    /// Generated corpus qubit range `min:max`.
    #[arg(long)]
    gen_n: Option<String>,
    #[arg(long, default_value_t = 50)]
    gen_depth: usize,
    #[arg(long, default_value_t = 10)]
    gen_count: usize,
    #[arg(long, default_value_t = 1)]
    gen_seed: u64,
    #[arg(long, default_value = "default")]
    gen_mix: String,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    seed: u64,
    /// `default`, `clifford-t`, `rotations`, or weights like `h=2,cx=1`.
    #[arg(long, default_value = "default")]
    mix: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = cli.out.as_deref();
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(a, out),
        Command::Sample(a) => commands::sample(a, out),
        Command::CheckUniform(a) => commands::check_uniform(a, out),
        Command::Adversary(a) => commands::adversary(a, out),
        Command::Reduction(a) => commands::reduction(a, out),
        Command::Amplify(a) => commands::amplify(a, out),
        Command::Sweep(a) => commands::sweep(a, out),
        Command::Gen(a) => commands::gen(a, out),
    };
    match result {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
