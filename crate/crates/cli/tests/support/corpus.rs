//! A small walking corpus in ASF/AMC form: several subjects sharing one
//! skeleton layout, each walking with a perfectly periodic gait.

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use gaitlab_core::mocap::{write_amc, MotionFrame, MotionSequence, Skeleton};

use super::oracles::{asf_text, random_skeleton, rng};

pub const PERIOD: usize = 30;

pub struct Corpus {
    pub asf_dir: PathBuf,
    pub amc_dir: PathBuf,
    pub exemplar: PathBuf,
    pub skeleton: Skeleton,
}

fn gait_frame(skel: &Skeleton, f: usize, walker: usize) -> MotionFrame {
    let phase = TAU * f as f64 / PERIOD as f64;
    MotionFrame {
        // the root wanders; extraction zeroes it
        root_translation: [0.7 * f as f64, 1.0 + (phase * 2.0).sin(), -0.2 * f as f64],
        root_rotation: [5.0 * phase.sin(), 3.0 * f as f64, 0.0],
        bones: skel
            .bones
            .iter()
            .enumerate()
            .map(|(b, bone)| {
                (0..bone.dof.len())
                    .map(|c| {
                        let amp = 20.0 + 4.0 * b as f64 + 2.0 * walker as f64;
                        amp * (phase + 0.6 * b as f64 + 1.1 * c as f64).sin()
                    })
                    .collect()
            })
            .collect(),
    }
}

fn motion(skel: &Arc<Skeleton>, frames: usize, walker: usize) -> MotionSequence {
    let frames = (0..frames).map(|f| gait_frame(skel, f, walker)).collect();
    MotionSequence::new(Arc::clone(skel), frames).unwrap()
}

/// Writes `subjects[i]` cycles per trial file for subject `i + 1`, split into
/// trials of at most five cycles, plus an exemplar file holding one cycle.
pub fn write_corpus(root: &Path, subjects: &[usize]) -> Corpus {
    let asf_dir = root.join("asf");
    let amc_dir = root.join("amc");
    fs::create_dir_all(&asf_dir).unwrap();
    fs::create_dir_all(&amc_dir).unwrap();
    let base = random_skeleton(&mut rng(77), 6);
    for (i, &cycles) in subjects.iter().enumerate() {
        let id = format!("{:02}", i + 1);
        let mut skel = base.clone();
        for bone in &mut skel.bones {
            bone.length *= 1.0 + 0.05 * i as f64;
        }
        fs::write(asf_dir.join(format!("{id}.asf")), asf_text(&skel)).unwrap();
        let skel = Arc::new(skel);
        let mut left = cycles;
        let mut trial = 1;
        while left > 0 {
            let n = left.min(5);
            // a few trailing frames that do not complete a cycle
            let m = motion(&skel, n * PERIOD + 7, i);
            fs::write(amc_dir.join(format!("{id}_{trial:02}.amc")), write_amc(&m)).unwrap();
            left -= n;
            trial += 1;
        }
    }
    let exemplar = root.join("exemplar.amc");
    let skel = Arc::new(base.clone());
    fs::write(&exemplar, write_amc(&motion(&skel, PERIOD, 0))).unwrap();
    Corpus {
        asf_dir,
        amc_dir,
        exemplar,
        skeleton: base,
    }
}
