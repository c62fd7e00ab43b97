//! Gait-cycle extraction and sample assembly.

mod cycles;
mod dtw;
mod track;

pub use cycles::{detect_cycle_windows, detect_gait_cycles, CycleDetectionConfig, CycleWindow};
pub use dtw::{dtw_distance, dtw_prefix_costs, euclidean};
pub use track::{
    assemble_sample, average_cycle_length, center_on_root, resample_to_length, GaitSample,
    JointTrack,
};
