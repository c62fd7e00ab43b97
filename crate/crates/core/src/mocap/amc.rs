use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::skeleton::{AngleUnit, Channel, Skeleton};

/// CMU captures at 120 Hz; AMC files do not record the rate.
pub const DEFAULT_FRAME_RATE: f64 = 120.0;

/// One AMC frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionFrame {
    pub root_translation: [f64; 3],
    /// Root rotation angles about x, y, z, in the skeleton's angle unit.
    pub root_rotation: [f64; 3],
    /// Per-bone channel values indexed like `Skeleton::bones`, in `dof` order.
    /// Bones without degrees of freedom hold an empty vector.
    pub bones: Vec<Vec<f64>>,
}

impl MotionFrame {
    /// A frame with every channel at zero.
    pub fn rest(skeleton: &Skeleton) -> MotionFrame {
        MotionFrame {
            root_translation: [0.0; 3],
            root_rotation: [0.0; 3],
            bones: skeleton
                .bones
                .iter()
                .map(|b| vec![0.0; b.dof.len()])
                .collect(),
        }
    }

    pub fn matches(&self, skeleton: &Skeleton) -> bool {
        self.bones.len() == skeleton.bones.len()
            && self
                .bones
                .iter()
                .zip(&skeleton.bones)
                .all(|(v, b)| v.len() == b.dof.len())
    }

    /// Concatenated bone rotation values (root excluded).
    pub fn rotation_vector(&self) -> Vec<f64> {
        self.bones.iter().flatten().copied().collect()
    }
}

/// A parsed AMC motion bound to its skeleton.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionSequence {
    pub skeleton: Arc<Skeleton>,
    /// Index of the first frame as numbered in the source document.
    pub first_frame: usize,
    pub frames: Vec<MotionFrame>,
    pub frame_rate: f64,
}

impl MotionSequence {
    pub fn new(skeleton: Arc<Skeleton>, frames: Vec<MotionFrame>) -> Result<MotionSequence> {
        if let Some(i) = frames.iter().position(|f| !f.matches(&skeleton)) {
            return Err(Error::invalid(format!(
                "frame {i} does not match the skeleton's channels"
            )));
        }
        Ok(MotionSequence {
            skeleton,
            first_frame: 1,
            frames,
            frame_rate: DEFAULT_FRAME_RATE,
        })
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Frames `start..start + len`, renumbered from the source numbering.
    pub fn slice(&self, start: usize, len: usize) -> MotionSequence {
        MotionSequence {
            skeleton: Arc::clone(&self.skeleton),
            first_frame: self.first_frame + start,
            frames: self.frames[start..start + len].to_vec(),
            frame_rate: self.frame_rate,
        }
    }

    /// Bone rotation vectors, one per frame.
    pub fn rotation_features(&self) -> Vec<Vec<f64>> {
        self.frames
            .iter()
            .map(MotionFrame::rotation_vector)
            .collect()
    }
}

/// Parses an AMC document against the skeleton it was recorded with.
pub fn parse_amc(text: &str, skeleton: Arc<Skeleton>) -> Result<MotionSequence> {
    let mut frames: Vec<MotionFrame> = Vec::new();
    let mut first_frame = None;
    let mut last_index: Option<usize> = None;
    let mut current: Option<(MotionFrame, Vec<bool>, bool, usize)> = None;

    let finish = |frame: Option<(MotionFrame, Vec<bool>, bool, usize)>,
                  frames: &mut Vec<MotionFrame>|
     -> Result<()> {
        if let Some((frame, seen, root_seen, line_no)) = frame {
            if !root_seen && !skeleton.root.order.is_empty() {
                return Err(Error::parse(line_no, "frame has no root line"));
            }
            if let Some(b) =
                (0..seen.len()).find(|&b| !seen[b] && !skeleton.bones[b].dof.is_empty())
            {
                return Err(Error::parse(
                    line_no,
                    format!("frame is missing bone '{}'", skeleton.bones[b].name),
                ));
            }
            frames.push(frame);
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with(':') {
            if first_frame.is_some() {
                return Err(Error::parse(
                    line_no,
                    "header keyword after the first frame",
                ));
            }
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() == 1 && tokens[0].bytes().all(|b| b.is_ascii_digit()) {
            let index: usize = tokens[0]
                .parse()
                .map_err(|_| Error::parse(line_no, "frame index out of range"))?;
            if let Some(prev) = last_index {
                if index <= prev {
                    return Err(Error::parse(
                        line_no,
                        format!("frame index {index} out of order"),
                    ));
                }
                if index != prev + 1 {
                    return Err(Error::parse(
                        line_no,
                        format!("frame index gap at {}", prev + 1),
                    ));
                }
            } else {
                first_frame = Some(index);
            }
            last_index = Some(index);
            finish(current.take(), &mut frames)?;
            current = Some((
                MotionFrame::rest(&skeleton),
                vec![false; skeleton.bones.len()],
                false,
                line_no,
            ));
            continue;
        }

        let Some((frame, seen, root_seen, _)) = current.as_mut() else {
            return Err(Error::parse(
                line_no,
                "channel data before the first frame index",
            ));
        };
        let values = tokens[1..]
            .iter()
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::parse(line_no, format!("expected a number, found '{t}'")))
            })
            .collect::<Result<Vec<f64>>>()?;

        if tokens[0] == "root" {
            if *root_seen {
                return Err(Error::parse(line_no, "root appears twice in one frame"));
            }
            if values.len() != skeleton.root.order.len() {
                return Err(Error::parse(
                    line_no,
                    format!(
                        "wrong value count for root: expected {}, found {}",
                        skeleton.root.order.len(),
                        values.len()
                    ),
                ));
            }
            for (channel, v) in skeleton.root.order.iter().zip(&values) {
                let axis = channel.axis().index();
                if channel.is_rotation() {
                    frame.root_rotation[axis] = *v;
                } else {
                    frame.root_translation[axis] = *v;
                }
            }
            *root_seen = true;
        } else {
            let b = skeleton.bone_index(tokens[0]).ok_or_else(|| {
                Error::parse(
                    line_no,
                    format!("bone '{}' is absent from the skeleton", tokens[0]),
                )
            })?;
            if seen[b] {
                return Err(Error::parse(
                    line_no,
                    format!("bone '{}' appears twice in one frame", tokens[0]),
                ));
            }
            let expected = skeleton.bones[b].dof.len();
            if values.len() != expected {
                return Err(Error::parse(
                    line_no,
                    format!(
                        "wrong value count for bone '{}': expected {expected}, found {}",
                        tokens[0],
                        values.len()
                    ),
                ));
            }
            frame.bones[b] = values;
            seen[b] = true;
        }
    }
    finish(current.take(), &mut frames)?;

    Ok(MotionSequence {
        skeleton,
        first_frame: first_frame.unwrap_or(1),
        frames,
        frame_rate: DEFAULT_FRAME_RATE,
    })
}

/// Serializes a motion as AMC text. Values are written in shortest
/// round-trip form, so `parse_amc(write_amc(s))` reproduces `s` exactly.
pub fn write_amc(seq: &MotionSequence) -> String {
    let skel = &seq.skeleton;
    let mut out = String::from(":FULLY-SPECIFIED\n");
    out.push_str(match skel.units.angle {
        AngleUnit::Degrees => ":DEGREES\n",
        AngleUnit::Radians => ":RADIANS\n",
    });
    for (k, frame) in seq.frames.iter().enumerate() {
        let _ = writeln!(out, "{}", seq.first_frame + k);
        if !skel.root.order.is_empty() {
            out.push_str("root");
            for channel in &skel.root.order {
                let v = match channel {
                    Channel::Tx | Channel::Ty | Channel::Tz => {
                        frame.root_translation[channel.axis().index()]
                    }
                    _ => frame.root_rotation[channel.axis().index()],
                };
                let _ = write!(out, " {v:?}");
            }
            out.push('\n');
        }
        for (bone, values) in skel.bones.iter().zip(&frame.bones) {
            if bone.dof.is_empty() {
                continue;
            }
            out.push_str(&bone.name);
            for v in values {
                let _ = write!(out, " {v:?}");
            }
            out.push('\n');
        }
    }
    out
}

/// Zeroes root translation and rotation in every frame, leaving bone
/// channels untouched.
pub fn zero_root(seq: &MotionSequence) -> MotionSequence {
    let mut out = seq.clone();
    for frame in &mut out.frames {
        frame.root_translation = [0.0; 3];
        frame.root_rotation = [0.0; 3];
    }
    out
}
