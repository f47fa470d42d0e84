use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "spacer", version, about = "Spacer-qubit compiler and crosstalk simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode a logical circuit with spacer qubits and report its resources.
    Compile(CompileArgs),
    /// Simulate a circuit under the coupling error and score the outcome.
    Run(RunArgs),
    /// Sweep a benchmark over (m, L, P, delta) and fit scaling exponents.
    Sweep(SweepArgs),
    /// Resource and dispersion estimates for a workload.
    Estimate(EstimateArgs),
    /// Distance scaling of the dual-rail nonadditive Coulomb energy.
    Dualrail(DualrailArgs),
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Logical circuit JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Physical circuit JSON; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Physical qubits per logical qubit.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ErrorsArg {
    /// Error after every basic step.
    Every,
    /// Error only during wait steps.
    Idle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    /// Full register when it fits, data qubits only otherwise.
    Auto,
    Full,
    Compressed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpacerPhases {
    /// Keep the single-qubit phases spacers induce on data qubits.
    Raw,
    /// Remove them as a known frame rotation.
    Compensate,
}

#[derive(Debug, Args)]
pub struct ErrorArgs {
    /// Coupling at unit distance.
    #[arg(long = "delta", default_value_t = 0.0)]
    pub delta1: f64,
    /// Decay power of the coupling with distance.
    #[arg(long, default_value_t = 3)]
    pub exponent: u32,
    /// Leave out the coupling of the pair a two-qubit gate acts on.
    #[arg(long)]
    pub compensate: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Logical circuit JSON, or a physical circuit written by `compile`.
    #[arg(long)]
    pub input: PathBuf,
    /// Physical qubits per logical qubit, for logical input.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[command(flatten)]
    pub error: ErrorArgs,
    /// Bitstrings counted as correct, one per line; `#` starts a comment.
    /// Logical-length strings are encoded, register-length ones used as is.
    #[arg(long)]
    pub solutions: PathBuf,
    /// Logical initial basis state; all zeros when absent.
    #[arg(long)]
    pub initial: Option<String>,
    #[arg(long, value_enum, default_value_t = ErrorsArg::Every)]
    pub errors: ErrorsArg,
    #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
    pub engine: EngineArg,
    #[arg(long, value_enum, default_value_t = SpacerPhases::Raw)]
    pub spacer_phases: SpacerPhases,
    /// Write the final data-qubit amplitudes as JSON.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchmarkArg {
    /// H layer, wait, H layer; ideal outcome all zeros.
    Sandwich,
    /// Random circuit, wait, inverse circuit; ideal outcome all zeros.
    Echo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepEngine {
    Full,
    Compressed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Comma-separated counts; `a..b` expands to the inclusive range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts(pub Vec<usize>);

pub fn parse_counts(s: &str) -> Result<Counts, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|e| format!("{part:?}: {e}"))?;
            let b: usize = b.trim().parse().map_err(|e| format!("{part:?}: {e}"))?;
            if a > b {
                return Err(format!("{part:?}: empty range"));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|e| format!("{part:?}: {e}"))?);
        }
    }
    Ok(Counts(out))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reals(pub Vec<f64>);

pub fn parse_reals(s: &str) -> Result<Reals, String> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Reals)
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Spacer multiplicities, e.g. `1..6` or `1,2,4`.
    #[arg(long, value_parser = parse_counts, default_value = "1")]
    pub m: Counts,
    /// Logical register sizes.
    #[arg(long, value_parser = parse_counts, default_value = "2")]
    pub qubits: Counts,
    /// Idle steps between the benchmark halves.
    #[arg(long, value_parser = parse_counts, default_value = "10")]
    pub steps: Counts,
    /// Couplings at unit distance, comma-separated.
    #[arg(long = "delta", value_parser = parse_reals, default_value = "0.01")]
    pub deltas: Reals,
    #[arg(long, default_value_t = 3)]
    pub exponent: u32,
    #[arg(long)]
    pub compensate: bool,
    #[arg(long, value_enum, default_value_t = SpacerPhases::Compensate)]
    pub spacer_phases: SpacerPhases,
    #[arg(long, value_enum, default_value_t = BenchmarkArg::Sandwich)]
    pub benchmark: BenchmarkArg,
    /// Gates in each half of the echo benchmark.
    #[arg(long, default_value_t = 6)]
    pub gates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SweepEngine::Compressed)]
    pub engine: SweepEngine,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Rows (CSV) or full report (JSON); stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Non-negative integer, also accepted in exponent notation such as `5e6`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|e| format!("{s:?}: {e}"))?;
    if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(53) {
        Ok(x as u64)
    } else {
        Err(format!("{s:?} is not a non-negative integer"))
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Logical qubits L.
    #[arg(long, value_parser = parse_count)]
    pub qubits: u64,
    /// Logical steps P.
    #[arg(long, value_parser = parse_count)]
    pub steps: u64,
    /// Dimensionless coupling per step.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 1)]
    pub m: u64,
    /// Algorithm-dependent constant in the dispersion.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct DualrailArgs {
    /// Smallest pair separation D.
    #[arg(long, default_value_t = 10.0)]
    pub d_min: f64,
    /// Largest pair separation D.
    #[arg(long, default_value_t = 100.0)]
    pub d_max: f64,
    /// Evenly spaced separations between the two ends.
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    /// Rail spacing within a pair.
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Coulomb strength.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}
