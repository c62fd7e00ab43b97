//! Deterministic inputs shared by the benchmarks.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::sync::Arc;

use gaitlab_core::eval::{synth_dataset, SynthParams};
use gaitlab_core::mocap::{parse_asf, MotionFrame, MotionSequence, Skeleton};
use gaitlab_core::LabeledDataset;

/// Synthetic walkers with the default shape (`J = 5`, `T = 10`).
pub fn walkers(classes: usize, per_class: usize) -> LabeledDataset {
    let params = SynthParams {
        classes,
        per_class,
        ..SynthParams::default()
    };
    synth_dataset(&params, 7).expect("valid synthetic parameters")
}

/// A lower-body skeleton: a spine of three bones and two legs of four.
pub fn skeleton() -> Skeleton {
    let mut text = String::from(
        ":version 1.10\n:name bench\n:units\n  mass 1.0\n  length 1.0\n  angle deg\n\
         :root\n  order TX TY TZ RX RY RZ\n  axis XYZ\n  position 0 0 0\n  orientation 0 0 0\n:bonedata\n",
    );
    let chains: [(&str, [f64; 3], usize); 3] = [
        ("spine", [0.0, 1.0, 0.0], 3),
        ("lleg", [0.2, -1.0, 0.0], 4),
        ("rleg", [-0.2, -1.0, 0.0], 4),
    ];
    let mut id = 1;
    let mut hierarchy = String::from(":hierarchy\n  begin\n");
    let mut roots = Vec::new();
    for (name, dir, len) in chains {
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        for k in 0..len {
            let _ = write!(
                text,
                "  begin\n    id {id}\n    name {name}{k}\n    direction {} {} {}\n    length {}\n    axis 0 0 0 XYZ\n    dof rx ry rz\n  end\n",
                dir[0] / norm,
                dir[1] / norm,
                dir[2] / norm,
                2.0 + k as f64
            );
            id += 1;
            if k > 0 {
                let _ = writeln!(hierarchy, "    {name}{} {name}{k}", k - 1);
            }
        }
        roots.push(format!("{name}0"));
    }
    let _ = writeln!(hierarchy, "    root {}\n  end", roots.join(" "));
    text.push_str(&hierarchy);
    parse_asf(&text).expect("bench skeleton parses")
}

/// `frames` frames of a periodic walk with the given period.
pub fn walk(skeleton: Arc<Skeleton>, frames: usize, period: usize) -> MotionSequence {
    let motion: Vec<MotionFrame> = (0..frames)
        .map(|f| {
            let phase = TAU * f as f64 / period as f64;
            MotionFrame {
                root_translation: [0.5 * f as f64, 0.0, 0.0],
                root_rotation: [0.0, 0.0, 0.0],
                bones: skeleton
                    .bones
                    .iter()
                    .enumerate()
                    .map(|(b, bone)| {
                        (0..bone.dof.len())
                            .map(|c| 25.0 * (phase + 0.4 * b as f64 + c as f64).sin())
                            .collect()
                    })
                    .collect(),
            }
        })
        .collect();
    MotionSequence::new(skeleton, motion).expect("frames match the skeleton")
}
