//! `gaitlab`: gait identification from motion-capture data.

mod commands;
mod failure;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use failure::Failure;

#[derive(Parser)]
#[command(
    name = "gaitlab",
    version,
    about = "Walker-independent gait identification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cut gait cycles out of an ASF/AMC corpus into a dataset file.
    Extract(ExtractArgs),
    /// Generate a synthetic walker dataset.
    Synth(SynthArgs),
    /// Learn a feature transform from a dataset.
    Learn(LearnArgs),
    /// Project a dataset into templates.
    Transform(TransformArgs),
    /// Classify probes against a gallery.
    Classify(ClassifyArgs),
    /// Run one of the experiments A-D and write a report.
    Evaluate(EvaluateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Direct,
    MmcSvd,
}

impl From<RouteArg> for gaitlab_core::Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Direct => gaitlab_core::Route::Direct,
            RouteArg::MmcSvd => gaitlab_core::Route::MmcSvd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricFitArg {
    Gallery,
    Learning,
}

impl From<MetricFitArg> for gaitlab_core::MetricFit {
    fn from(m: MetricFitArg) -> Self {
        match m {
            MetricFitArg::Gallery => gaitlab_core::MetricFit::Gallery,
            MetricFitArg::Learning => gaitlab_core::MetricFit::Learning,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum ExperimentArg {
    A,
    B,
    C,
    D,
}

impl From<ExperimentArg> for gaitlab_core::ExperimentId {
    fn from(e: ExperimentArg) -> Self {
        match e {
            ExperimentArg::A => gaitlab_core::ExperimentId::A,
            ExperimentArg::B => gaitlab_core::ExperimentId::B,
            ExperimentArg::C => gaitlab_core::ExperimentId::C,
            ExperimentArg::D => gaitlab_core::ExperimentId::D,
        }
    }
}

#[derive(Args)]
struct ExtractArgs {
    /// Directory holding one `<subject>.asf` per subject.
    #[arg(long)]
    asf_dir: PathBuf,
    /// Directory holding `<subject>_<trial>.amc` motions.
    #[arg(long)]
    amc_dir: PathBuf,
    /// AMC file containing a clean gait cycle.
    #[arg(long)]
    exemplar: PathBuf,
    /// Frames `START:END` (0-based, end exclusive) of the exemplar file to use.
    #[arg(long, value_name = "START:END")]
    exemplar_frames: Option<String>,
    /// Largest DTW distance to the exemplar accepted as a cycle.
    #[arg(long)]
    threshold: f64,
    #[arg(long, default_value_t = 60)]
    min_len: usize,
    #[arg(long, default_value_t = 180)]
    max_len: usize,
    /// Start-frame step after a rejected window.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Comma-separated joint names to keep (default: all, root first).
    #[arg(long, value_delimiter = ',')]
    joints: Option<Vec<String>>,
    /// Drop subjects with fewer cycles than this.
    #[arg(long, default_value_t = 10)]
    min_samples: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 10)]
    classes: usize,
    #[arg(long, default_value_t = 20)]
    per_class: usize,
    /// Joints per frame.
    #[arg(long = "J", default_value_t = 5)]
    joints: usize,
    /// Frames per cycle.
    #[arg(long = "T", default_value_t = 10)]
    frames: usize,
    /// Class-mean spread in units of the noise deviation.
    #[arg(long, default_value_t = 10.0)]
    separation: f64,
    /// Identity-bearing subspace dimension [default: min(12, 3·J·T)].
    #[arg(long)]
    subspace_dim: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LearnArgs {
    dataset: PathBuf,
    #[arg(long, value_enum, default_value = "mmc-svd")]
    route: RouteArg,
    /// Seed recorded in the transform metadata.
    #[arg(long)]
    seed: Option<u64>,
    /// Accept datasets whose D is not 3·J·T.
    #[arg(long)]
    raw_d: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TransformArgs {
    dataset: PathBuf,
    #[arg(long)]
    transform: PathBuf,
    #[arg(long)]
    raw_d: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    transform: PathBuf,
    #[arg(long)]
    gallery: PathBuf,
    /// Probe dataset; rows labeled `?` are unlabeled.
    #[arg(long)]
    probes: PathBuf,
    #[arg(long, value_enum, default_value = "gallery")]
    metric_fit: MetricFitArg,
    /// Learning dataset, needed with `--metric-fit learning`.
    #[arg(long)]
    learning: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-8)]
    ridge: f64,
    #[arg(long)]
    raw_d: bool,
    /// Write predictions here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    dataset: PathBuf,
    #[arg(long, value_enum, ignore_case = true)]
    experiment: ExperimentArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "mmc-svd")]
    route: RouteArg,
    #[arg(long, value_enum, default_value = "gallery")]
    metric_fit: MetricFitArg,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 10)]
    folds: usize,
    #[arg(long)]
    raw_d: bool,
    #[arg(long)]
    out: PathBuf,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Extract(a) => commands::extract::run(a),
        Command::Synth(a) => commands::synth::run(a),
        Command::Learn(a) => commands::learn::run(a),
        Command::Transform(a) => commands::classify::transform(a),
        Command::Classify(a) => commands::classify::classify(a),
        Command::Evaluate(a) => commands::evaluate::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gaitlab: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
