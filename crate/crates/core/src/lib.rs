//! Gait identification from motion-capture data.
//!
//! The crate covers the whole path from Acclaim ASF/AMC files to evaluated
//! identification results:
//!
//! * [`mocap`] parses skeletons and motions, averages skeletons into a
//!   prototype and reconstructs joint coordinates by forward kinematics.
//! * [`prep`] cuts walking sequences into gait cycles with dynamic time
//!   warping, resamples them to a common length and flattens each cycle into
//!   a [`GaitSample`].
//! * [`mmc`] learns a linear feature transform that maximizes the Maximum
//!   Margin Criterion `tr(Σb − Σw)`, either by a dense eigendecomposition or by
//!   the two-step SVD simultaneous diagonalization.
//! * [`matching`] fits a Mahalanobis metric over templates and classifies
//!   probes by nearest neighbour.
//! * [`eval`] implements homogeneous and heterogeneous data separation,
//!   Davies-Bouldin index, cross-validated correct classification rate and
//!   the experiment runner, plus a synthetic walker generator.
//! * [`io`] holds the on-disk dataset, transform and report formats.

pub mod dataset;
pub mod error;
pub mod eval;
pub mod io;
pub mod matching;
pub mod mmc;
pub mod mocap;
pub mod prep;
pub mod seed;

pub use dataset::{Class, LabeledDataset, Layout};
pub use error::{Error, Result};
pub use eval::{
    ccr_crossval, davies_bouldin, run_experiment, split_heterogeneous, split_homogeneous,
    synth_dataset, Configuration, EvalReport, ExperimentId, ExperimentSpec, MetricFit, ReportRow,
    RunOptions, SetupKind, SynthParams,
};
pub use matching::{
    classify, fit_metric, mahalanobis, MetricConfig, MetricModel, MetricSource, ScatterForm,
    TemplateGallery,
};
pub use mmc::{
    apply_transform, apply_transform_all, criterion_in_feature_space, learn_transform_direct,
    learn_transform_mmc, mmc_pairwise, mmc_trace, scatter_matrices, FeatureTransform, GaitTemplate,
    MmcDecomposition, Route, ScatterSet,
};
pub use mocap::{
    forward_kinematics, parse_amc, parse_asf, prototypical_skeleton, write_amc, zero_root,
    JointPose, MotionFrame, MotionSequence, Skeleton,
};
pub use prep::{
    assemble_sample, average_cycle_length, detect_gait_cycles, dtw_distance, resample_to_length,
    CycleDetectionConfig, GaitSample, JointTrack,
};
