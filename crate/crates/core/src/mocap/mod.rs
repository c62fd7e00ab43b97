//! Acclaim ASF/AMC motion capture: parsing, skeleton averaging, root zeroing
//! and forward kinematics.

mod amc;
mod asf;
mod kinematics;
mod skeleton;

pub use amc::{parse_amc, write_amc, zero_root, MotionFrame, MotionSequence, DEFAULT_FRAME_RATE};
pub use asf::parse_asf;
pub use kinematics::{forward_kinematics, JointPose};
pub use skeleton::{
    prototypical_skeleton, AngleUnit, Axis, Bone, Channel, Root, RotationOrder, Skeleton, Units,
};
