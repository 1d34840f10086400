use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "polyrecon",
    version,
    about = "Reconstruct convex polytopes from their moments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Random simple polytope from integer halfspaces.
    Generate(GenerateArgs),
    /// Axial moments of a polytope along one direction or a whole frame.
    Moments(MomentsArgs),
    /// Recover vertices from moments.
    Reconstruct(ReconstructArgs),
    /// Reconstruction error against precision for random polytopes.
    Sweep(SweepArgs),
    /// Write an OFF mesh for a 3D polytope or report.
    Export(ExportArgs),
    /// Check the vertex formula against exact integration.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Rational,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Prony,
    Pade,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub dim: usize,
    /// Number of random halfspaces.
    #[arg(
        long,
        required_unless_present = "vertices",
        conflicts_with = "vertices"
    )]
    pub facets: Option<usize>,
    /// Retry until the polytope has exactly this many vertices.
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Where a polytope comes from.
#[derive(Args)]
pub struct PolytopeSource {
    /// Built-in polytope: square, cube, simplex3, pyramid, poly8 or poly20.
    #[arg(long, conflicts_with = "polytope")]
    pub fixture: Option<String>,
    /// Polytope file written by `generate`.
    #[arg(long)]
    pub polytope: Option<PathBuf>,
}

#[derive(Args)]
pub struct ArithmeticArgs {
    /// Arithmetic model; defaults to float when --bits is given.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Mantissa bits in float mode.
    #[arg(long)]
    pub bits: Option<usize>,
}

#[derive(Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub source: PolytopeSource,
    /// Real part of the direction, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "frame_seed")]
    pub z: Option<String>,
    /// Imaginary part of the direction.
    #[arg(long, allow_hyphen_values = true, requires = "z")]
    pub zim: Option<String>,
    /// Emit every plane of the frame chosen by this seed instead of one direction.
    #[arg(long)]
    pub frame_seed: Option<u64>,
    /// Number of moments μ_0 … μ_{count−1}.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[command(flatten)]
    pub arithmetic: ArithmeticArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub source: PolytopeSource,
    /// Moment files written by `moments`; replaces the polytope as input.
    #[arg(long = "moments", conflicts_with_all = ["fixture", "polytope"])]
    pub moment_files: Vec<PathBuf>,
    #[command(flatten)]
    pub arithmetic: ArithmeticArgs,
    /// Upper bound on the vertex count.
    #[arg(long, conflicts_with = "n")]
    pub nmax: Option<usize>,
    /// Exact vertex count.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Pade)]
    pub method: MethodArg,
    /// Seed for the direction frame.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Frames to try before giving up.
    #[arg(long, default_value_t = 20)]
    pub budget: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Vertex counts, comma separated.
    #[arg(long, default_value = "4,8,12")]
    pub n: String,
    /// Bit counts: a list such as `20,30,40` or a range `15-70` in steps of --step.
    #[arg(long)]
    pub bits: String,
    #[arg(long, default_value_t = 5)]
    pub step: usize,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Pade)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 5)]
    pub budget: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: PolytopeSource,
    /// Reconstruction report instead of a polytope.
    #[arg(long, conflicts_with_all = ["fixture", "polytope"])]
    pub report: Option<PathBuf>,
    /// Output OFF file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: PolytopeSource,
    /// Random complex directions to test.
    #[arg(long, default_value_t = 3)]
    pub directions: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
