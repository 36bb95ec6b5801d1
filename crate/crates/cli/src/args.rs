use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "suilab", version, about = "Joint amplitude/phase measurement with SU(1,1) interferometers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a built-in scheme or a .qnd circuit at one parameter point.
    Eval(EvalArgs),
    /// Write the CSV and SVG files of a figure.
    Figure(FigureArgs),
    /// Evaluate over a one-parameter grid and write CSV.
    Sweep(SweepArgs),
    /// Parse .qnd files and report diagnostics.
    ParseCheck(ParseCheckArgs),
}

/// Physical parameters; unset values fall back to the config file, then defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Seed photon number |alpha|^2.
    #[arg(long)]
    pub alpha_sq: Option<f64>,
    #[arg(long)]
    pub g1: Option<f64>,
    #[arg(long)]
    pub g2: Option<f64>,
    /// Gain of single-amplifier schemes.
    #[arg(long)]
    pub g: Option<f64>,
    /// Beam-splitter transmissivity.
    #[arg(long)]
    pub t: Option<f64>,
    /// Amplitude modulation depth.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Phase modulation depth.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Polar modulation depth (use with --theta instead of --eps/--delta).
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    /// Post-detection idler weight (default G2/g2).
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub loss_internal: Option<f64>,
    #[arg(long)]
    pub loss_detect: Option<f64>,
    /// Interferometer phase on the idler arm (default pi).
    #[arg(long)]
    pub phase: Option<f64>,
    /// Decoded angles of the three split-scheme detectors, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub split_angles: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Analytic,
    Numeric,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(long, required_unless_present_any = ["circuit", "config"], conflicts_with = "circuit")]
    pub scheme: Option<String>,
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    /// Closed form or Gaussian propagation (built-in schemes only).
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Fig4,
    Fig7,
    Fig8,
    Fig10,
    All,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub name: FigureName,
    /// Output directory.
    #[arg(long, default_value = "figures")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long, conflicts_with = "circuit")]
    pub scheme: Option<String>,
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    /// Swept parameter, e.g. g2, alpha-sq, loss-detect.
    #[arg(long)]
    pub param: Option<String>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, value_enum)]
    pub scale: Option<Scale>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct ParseCheckArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Print the canonical form of each file.
    #[arg(long)]
    pub render: bool,
}
