mod commands;
mod grid;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grid::{Grid, IntRange};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "hyperchord", version, about = "Chord lengths between random points on n-spheres")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Record the wall-clock time in the provenance block.
    #[arg(long, global = true)]
    timestamp: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate pdf, cdf or quantile on a grid.
    Dist(DistArgs),
    /// Draw chord lengths with one of the samplers.
    Sample(SampleArgs),
    /// Estimate the radius from simulated or stored samples.
    Estimate(EstimateArgs),
    /// Gap, Fisher information and sphere volume tables.
    Analyze(AnalyzeArgs),
    /// Characteristic function on a grid of frequencies.
    Charfun(CharfunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Pdf,
    Cdf,
    Quantile,
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, value_enum, default_value_t = Which::Pdf)]
    which: Which,
    /// lo:hi:step, endpoints included.
    #[arg(long)]
    grid: Grid,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, default_value_t = 10_000)]
    count: usize,
    #[arg(long, default_value = "beta_transform")]
    sampler: hyperchord::SamplerKind,
    #[arg(long, env = "HYPERCHORD_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Draw a second batch with this sampler and report a two-sample KS test.
    #[arg(long)]
    compare: Option<hyperchord::SamplerKind>,
    /// Write the batch here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long, required_unless_present = "input")]
    n: Option<u32>,
    /// True radius; without it (and with --input) variances are plug-in.
    #[arg(long)]
    r_true: Option<f64>,
    /// Samples per replication.
    #[arg(long, default_value_t = 10_000)]
    m: usize,
    #[arg(long, default_value_t = 50)]
    replications: usize,
    #[arg(long, env = "HYPERCHORD_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "beta_transform")]
    sampler: hyperchord::SamplerKind,
    /// Estimate from a batch file written by `sample` instead of simulating.
    #[arg(long, conflicts_with_all = ["n", "m", "replications"])]
    input: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Analysis {
    Gap,
    Fisher,
    Volume,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long, value_enum)]
    which: Analysis,
    /// Inclusive dimension range a:b.
    #[arg(long)]
    range: IntRange,
    /// Saturation threshold for the gap analysis.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Closed form where one exists (n = 2, 3), checked against quadrature.
    Auto,
    Quadrature,
}

#[derive(Debug, Args)]
struct CharfunArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Frequency grid lo:hi:step.
    #[arg(long, default_value = "-20:20:0.1", allow_hyphen_values = true)]
    t: Grid,
    #[arg(long, value_enum, default_value_t = Source::Auto)]
    source: Source,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hyperchord: {e}");
            e.exit_code()
        }
    }
}
