//! Data separation, identification metrics and the experiment runner.

mod experiment;
mod metrics;
mod split;
mod synth;

pub use experiment::{
    evaluate_split, run_configuration, run_experiment, Configuration, EvalReport, ExperimentId,
    ExperimentSpec, MetricFit, Outcome, ReportRow, RunOptions, SetupKind, CCR_SEED_INDEX,
};
pub use metrics::{ccr_crossval, davies_bouldin, fold_assignment};
pub use split::{split_heterogeneous, split_homogeneous};
pub use synth::{synth_dataset, SynthParams};
