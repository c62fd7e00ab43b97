use crate::error::{Error, Result};
use crate::mocap::{forward_kinematics, JointPose, MotionSequence, Skeleton};

/// Joint positions over time.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTrack {
    pub frames: Vec<JointPose>,
    pub frame_rate: f64,
}

impl JointTrack {
    pub fn new(frames: Vec<JointPose>, frame_rate: f64) -> Result<JointTrack> {
        let first = frames
            .first()
            .ok_or_else(|| Error::invalid("a joint track needs at least one frame"))?;
        let joints = first.joint_count();
        if let Some(bad) = frames.iter().find(|f| f.joint_count() != joints) {
            return Err(Error::DimensionMismatch {
                expected: joints,
                found: bad.joint_count(),
            });
        }
        Ok(JointTrack { frames, frame_rate })
    }

    /// Runs forward kinematics over every frame of `seq`. `joints` selects a
    /// subset of the skeleton's joint enumeration (root = 0); `None` keeps all.
    pub fn from_motion(
        skeleton: &Skeleton,
        seq: &MotionSequence,
        joints: Option<&[usize]>,
    ) -> Result<JointTrack> {
        let frames = seq
            .frames
            .iter()
            .map(|f| {
                let pose = forward_kinematics(skeleton, f)?;
                Ok(match joints {
                    Some(sel) => pose.select(sel),
                    None => pose,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        JointTrack::new(frames, seq.frame_rate)
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn joint_count(&self) -> usize {
        self.frames[0].joint_count()
    }
}

/// Moves the coordinate origin to joint `root` in every frame.
pub fn center_on_root(track: &JointTrack, root: usize) -> JointTrack {
    let frames = track
        .frames
        .iter()
        .map(|pose| {
            let r = pose.positions[root];
            JointPose {
                positions: pose
                    .positions
                    .iter()
                    .map(|p| [p[0] - r[0], p[1] - r[1], p[2] - r[2]])
                    .collect(),
            }
        })
        .collect();
    JointTrack {
        frames,
        frame_rate: track.frame_rate,
    }
}

/// Linear time normalization to `length` frames. Output frame `k` (0-based)
/// samples the input at `k·(T_raw − 1)/(length − 1)`; both endpoints are
/// copied bit-exactly and `length == T_raw` returns the input unchanged.
pub fn resample_to_length(track: &JointTrack, length: usize) -> Result<JointTrack> {
    if length < 2 {
        return Err(Error::invalid("target cycle length must be at least 2"));
    }
    let raw = track.len();
    if raw == length {
        return Ok(track.clone());
    }
    if raw == 1 {
        return Ok(JointTrack {
            frames: vec![track.frames[0].clone(); length],
            frame_rate: track.frame_rate,
        });
    }
    let span = length - 1;
    let frames = (0..length)
        .map(|k| {
            let num = k * (raw - 1);
            let (i, rem) = (num / span, num % span);
            if rem == 0 {
                return track.frames[i].clone();
            }
            let f = rem as f64 / span as f64;
            let (a, b) = (&track.frames[i], &track.frames[i + 1]);
            JointPose {
                positions: a
                    .positions
                    .iter()
                    .zip(&b.positions)
                    .map(|(p, q)| std::array::from_fn(|c| p[c] + f * (q[c] - p[c])))
                    .collect(),
            }
        })
        .collect();
    Ok(JointTrack {
        frames,
        frame_rate: track.frame_rate * span as f64 / (raw - 1) as f64,
    })
}

/// Mean cycle length in frames, rounded half up, at least 2.
pub fn average_cycle_length(cycles: &[JointTrack]) -> Result<usize> {
    if cycles.is_empty() {
        return Err(Error::invalid("cannot average the length of zero cycles"));
    }
    let n = cycles.len();
    let total: usize = cycles.iter().map(JointTrack::len).sum();
    // round(total / n) with halves going up, in integer arithmetic
    Ok(((2 * total + n) / (2 * n)).max(2))
}

/// One gait cycle flattened time-major, then joint, then coordinate:
/// `[x₁₁ y₁₁ z₁₁ … x_J1 y_J1 z_J1 | … | x_JT y_JT z_JT]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaitSample {
    pub values: Vec<f64>,
    pub joints: usize,
    pub frames: usize,
}

impl GaitSample {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Inverse of [`assemble_sample`].
    pub fn to_track(&self, frame_rate: f64) -> JointTrack {
        let frames = self
            .values
            .chunks_exact(3 * self.joints)
            .map(|frame| JointPose {
                positions: frame.chunks_exact(3).map(|p| [p[0], p[1], p[2]]).collect(),
            })
            .collect();
        JointTrack { frames, frame_rate }
    }
}

/// Flattens a root-centered, length-normalized track into a sample of
/// dimension `3·J·T`.
pub fn assemble_sample(track: &JointTrack) -> Result<GaitSample> {
    let joints = track.joint_count();
    let values: Vec<f64> = track
        .frames
        .iter()
        .flat_map(|pose| pose.positions.iter().flatten().copied())
        .collect();
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::invalid(format!(
            "non-finite coordinate at index {i}"
        )));
    }
    Ok(GaitSample {
        values,
        joints,
        frames: track.len(),
    })
}
