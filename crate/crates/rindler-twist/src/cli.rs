use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rindler_twist_core::{Chart, TwistCase, TwistKind};

#[derive(Debug, Parser)]
#[command(
    name = "rindler-twist",
    version,
    about = "Twist-deformed Minkowski/Rindler star products and corrected thermal spectra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coordinate commutator table of one twist case.
    Commutators(CommutatorsArgs),
    /// Base and twist-corrected thermal spectrum on a frequency grid.
    Spectrum(SpectrumArgs),
    /// Twist logarithm, factor and inverse as bidifferential operators.
    DumpTwist(DumpTwistArgs),
    /// Minkowski metric pulled back to Rindler coordinates.
    Metric(MetricArgs),
    /// Cocycle, normalization, limit and consistency battery.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    I,
    Ii,
    Iii,
}

impl From<KindArg> for TwistKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::I => TwistKind::I,
            KindArg::Ii => TwistKind::II,
            KindArg::Iii => TwistKind::III,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    Minkowski,
    Rindler,
}

impl From<ChartArg> for Chart {
    fn from(c: ChartArg) -> Self {
        match c {
            ChartArg::Minkowski => Chart::Minkowski,
            ChartArg::Rindler => Chart::Rindler,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CaseArgs {
    /// Twist family.
    #[arg(long = "case", value_enum)]
    pub kind: KindArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub i: u8,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub k: u8,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub l: u8,
}

impl CaseArgs {
    pub fn case(&self) -> Result<TwistCase, String> {
        TwistCase::new(self.kind.into(), self.i, self.k, self.l).map_err(|_| {
            format!(
                "--i {} --k {} --l {} is not a valid index triple: i, k, l must be distinct, \
                 i.e. a permutation of 1 2 3 (for example --i 1 --k 2 --l 3)",
                self.i, self.k, self.l
            )
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CommutatorsArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    #[arg(long, value_enum, default_value_t = ChartArg::Minkowski)]
    pub chart: ChartArg,
    /// Truncation order N in the deformation symbols.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=6))]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    pub format: TableFormat,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DeformArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta01: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta02: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta03: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta12: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta13: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta23: f64,
    /// 1/κ
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub inv_kappa: f64,
    /// 1/κ̂
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub inv_kappa_hat: f64,
    /// 1/κ̄
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub inv_kappa_bar: f64,
}

impl DeformArgs {
    /// Values in the canonical symbol order.
    pub fn values(&self) -> [f64; 9] {
        [
            self.theta01,
            self.theta02,
            self.theta03,
            self.theta12,
            self.theta13,
            self.theta23,
            self.inv_kappa,
            self.inv_kappa_hat,
            self.inv_kappa_bar,
        ]
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Acceleration a (temperature T = a/2π).
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega_hat: f64,
    /// Detector coordinate z = z1 > 0.
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub z2: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub z3: f64,
    #[command(flatten)]
    pub deform: DeformArgs,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub omega_max: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = DataFormat::Json)]
    pub format: DataFormat,
    /// Also write an SVG plot of base and corrected spectra.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DumpTwistArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    #[arg(long, value_enum, default_value_t = ChartArg::Minkowski)]
    pub chart: ChartArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=4))]
    pub order: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MetricArgs {
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Truncation order N (cocycle checks also run at N + 1 in Minkowski).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=4))]
    pub order: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check this many seeded triples per cocycle instead of all of them.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Emit the JSON report instead of one line per check.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}
