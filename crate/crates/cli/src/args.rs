use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "rangeavoid",
    version,
    about = "Find points outside the range of local circuits and low-degree maps over GF(2)"
)]
pub struct Cli {
    /// Worker threads for branching and enumeration; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a point outside the range of a `.nc0` or `.poly` instance.
    Solve(SolveArgs),
    /// Generate an instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Encode a degree-2 `.poly` map as a three-local `.nc0` circuit.
    Encode(EncodeArgs),
    /// Decode a point of an encoded circuit back to the original map.
    Decode(DecodeArgs),
    /// Check by exhaustive enumeration that a point lies outside the range.
    Verify(VerifyArgs),
    /// Avoid the low-rank-plus-sparse map and certify the matrix as rigid.
    RigidPipeline(PipelineArgs),
    /// Run a solver over a seeded family of random circuits and record a CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveAlg {
    Brute,
    Nc02,
    SubspaceUnion,
    OneSubspace,
    /// Encode a degree-2 map and run `--inner` on the encoding.
    Degree2,
}

/// Solvers that run on a `.nc0` circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CircuitAlg {
    Brute,
    Nc02,
    SubspaceUnion,
    OneSubspace,
}

impl From<CircuitAlg> for rangeavoid::solvers::Algorithm {
    fn from(a: CircuitAlg) -> Self {
        use rangeavoid::solvers::Algorithm;
        match a {
            CircuitAlg::Brute => Algorithm::Brute,
            CircuitAlg::Nc02 => Algorithm::Nc02,
            CircuitAlg::SubspaceUnion => Algorithm::SubspaceUnion,
            CircuitAlg::OneSubspace => Algorithm::OneSubspace,
        }
    }
}

/// Overrides for the resource limits; unset flags fall back to
/// `RANGEAVOID_ENUM_LIMIT` / `RANGEAVOID_MAX_BRANCHES`, then the defaults.
#[derive(Clone, Debug, Default, Args)]
pub struct LimitArgs {
    /// Largest number of points an exhaustive enumeration may visit.
    #[arg(long)]
    pub limit: Option<u64>,
    /// Largest number of inputs `subspace-union` may branch on.
    #[arg(long)]
    pub max_branches: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub alg: SolveAlg,
    /// Solver applied to the encoding when `--alg degree2`.
    #[arg(long, value_enum, default_value = "brute")]
    pub inner: CircuitAlg,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Confirm by exhaustive enumeration that the answer is outside the range.
    #[arg(long)]
    pub verify: bool,
    /// Echo the generator header of the input file into the report.
    #[arg(long)]
    pub seed_report: bool,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Uniform read sets and truth tables.
    RandomNc0 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Each monomial of degree at most `d` kept with probability `density`.
    RandomPoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree-`d` encoder whose range holds every vector of weight at most `s`.
    SparseEncoder {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The map `L·R + S` over `n × n` matrices.
    Rigid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub layout: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub layout: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub circuit: PathBuf,
    #[arg(long)]
    pub point: PathBuf,
    /// Largest number of inputs to enumerate.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    /// `brute` searches the map's own inputs; the others run on its encoding.
    #[arg(long, value_enum, default_value = "brute")]
    pub alg: CircuitAlg,
    #[arg(long)]
    pub cert: Option<PathBuf>,
    /// Largest number of steps the rigidity search may take.
    #[arg(long)]
    pub budget: Option<u128>,
    #[command(flatten)]
    pub limits: LimitArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Locality of the generated circuits.
    #[arg(long)]
    pub k: usize,
    /// Input counts: `12`, or an inclusive range `4..14`.
    #[arg(long)]
    pub n_range: String,
    /// Comma-separated expressions in `n` giving the output counts, e.g. `3*n,6*n,12*n`.
    #[arg(long)]
    pub m_rule: String,
    /// Instances per `(n, m)`, seeded `0..seeds`.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// Comma-separated solver names.
    #[arg(long, default_value = "subspace-union")]
    pub alg: String,
    /// Confirm every answer by exhaustive enumeration where `2^n` is within the limit.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub limits: LimitArgs,
}
