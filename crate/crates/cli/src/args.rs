use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "gzernike",
    version,
    about = "Generalized Zernike functions on the disk and the ball"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single function or coefficient.
    Eval(EvalArgs),
    /// Tabulate functions, coefficient rows, matrices or expansions.
    Table(TableArgs),
    /// Run the conformance suites and print a JSON report.
    Verify(VerifyArgs),
    /// Curves of the all-scale profile and its flattened version.
    Fig2(Fig2Args),
    /// Normalized multi-scale S-profiles and their sum.
    Fig3(Fig3Args),
    /// Build a wavelet design from a JSON spec.
    Design(DesignArgs),
    /// Sample a wavelet design on a Cartesian grid.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalKind {
    /// R_n^{l,α}(ρ)
    Radial3,
    /// disk R_n^{m,α}(ρ)
    Radial2,
    /// N_{nl}^α
    Norm3,
    /// disk norm
    Norm2,
    /// Y_l^m(θ, φ)
    Ylm,
    /// 2π P_l(0)
    FunkMult,
    /// ∫ R j_l(qρ) ρ² dρ
    FourierMoment,
    /// Fourier transform of Z at (x, y, z)
    Fourier,
    /// Radon transform of Z over {ω·η = τ}, η from (θ, φ)
    Radon,
    /// ball connection row C_{ps}
    ConnectionRow,
    /// disk connection row
    ConnectionRow2d,
    /// ε placing the S-profile peak at ρ
    EpsilonForPeak,
    /// (ρ(1), ρ(0))
    PeakRange,
    /// (ρ_max, B_max)
    Allscale,
    /// S-profile value at ρ
    SProfile,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    pub what: EvalKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub x: f64,
    #[arg(long, default_value_t = 0.0)]
    pub y: f64,
    #[arg(long, default_value_t = 0.0)]
    pub z: f64,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub beta: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long)]
    pub eta: Option<usize>,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    /// R_n^{l,α}(ρ) for n = l, l+2, ..., nmax on a ρ grid
    Radial3,
    /// disk radial functions for |m| = l
    Radial2,
    /// ball connection rows p = 0..=pmax
    Connection,
    /// disk connection rows
    Connection2d,
    /// E^r (ρ^{2r} multiplication)
    Moment,
    /// disk E^r
    Moment2d,
    /// F^δ ((1-ρ²)^δ multiplication)
    Weight,
    /// disk F^δ
    Weight2d,
    /// scaling matrix C_{nn'}^{l,α}(ε)
    Scaling,
    /// expansion of ρ^β(1-ρ²)^α at order l
    Monomial,
    /// expansion of ρ^l(1-ρ²)^{η+δ} against R^{l,δ}
    PureEdge,
    /// expansions of the S-profile for l = 0, 2, ..., lmax
    SProfile,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    pub kind: TableKind,
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Largest radial degree, row index or p.
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
    /// Power r of ρ^{2r} for moment matrices.
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, default_value_t = 0)]
    pub beta: usize,
    #[arg(long, default_value_t = 0)]
    pub delta: usize,
    #[arg(long, default_value_t = 0)]
    pub eta: usize,
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 24)]
    pub smax: usize,
    #[arg(long, default_value_t = 16)]
    pub lmax: usize,
    /// Number of ρ samples for function tables.
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Run only this suite.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 15)]
    pub pmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct Fig2Args {
    #[arg(long, default_value_t = 2)]
    pub beta: usize,
    #[arg(long, default_value_t = 6.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct Fig3Args {
    #[arg(long, default_value_t = 16)]
    pub beta: usize,
    #[arg(long, default_value_t = 4)]
    pub delta: usize,
    #[arg(long, default_value_t = 150)]
    pub eta: usize,
    /// Target peak positions of the calibrated curves.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0 / 3.0, 0.5, 0.75])]
    pub peaks: Vec<f64>,
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
    /// Grid size used to find each curve's normalizing maximum.
    #[arg(long, default_value_t = 4096)]
    pub norm_points: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DesignArgs {
    /// Design spec JSON file.
    pub spec: PathBuf,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SynthArgs {
    /// Design JSON (output of `design`) or a design spec.
    pub input: PathBuf,
    /// Samples per axis.
    #[arg(long, default_value_t = 17)]
    pub grid: usize,
    /// Axes span [-extent, extent].
    #[arg(long, default_value_t = 2.0)]
    pub extent: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (overrides GZERNIKE_THREADS).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
