use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use gaitlab_core::io::write_dataset;
use gaitlab_core::mocap::{parse_amc, parse_asf, prototypical_skeleton, zero_root, Skeleton};
use gaitlab_core::prep::{
    assemble_sample, average_cycle_length, center_on_root, detect_gait_cycles, resample_to_length,
    CycleDetectionConfig, JointTrack,
};
use gaitlab_core::{Error, LabeledDataset};
use rayon::prelude::*;

use crate::failure::Failure;
use crate::files::{read_text, write_atomic};
use crate::ExtractArgs;

/// Files in `dir` with extension `ext`, sorted by name.
fn list(dir: &Path, ext: &str) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::in_file(dir, e.into()))?;
    let mut out = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Failure::in_file(dir, e.into()))?.path();
        if path
            .extension()
            .is_some_and(|x| x.eq_ignore_ascii_case(ext))
        {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// `NN_MM.amc` belongs to subject `NN`.
fn subject_of(path: &Path) -> Result<String, Failure> {
    let name = stem(path);
    match name.split_once('_') {
        Some((subject, trial)) if !subject.is_empty() && !trial.is_empty() => {
            Ok(subject.to_string())
        }
        _ => Err(Failure::in_file(
            path,
            Error::InvalidInput("motion file name must look like <subject>_<trial>.amc".into()),
        )),
    }
}

fn parse_range(spec: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("--exemplar-frames expects START:END, got '{spec}'"));
    let (a, b) = spec.split_once(':').ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a >= b {
        return Err(bad());
    }
    Ok((a, b))
}

fn joint_selection(
    skel: &Skeleton,
    names: &Option<Vec<String>>,
) -> Result<Option<Vec<usize>>, Failure> {
    let Some(names) = names else {
        return Ok(None);
    };
    let all = skel.joint_names();
    names
        .iter()
        .map(|n| {
            all.iter()
                .position(|j| j == n)
                .ok_or_else(|| Failure::Usage(format!("unknown joint '{n}'")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

pub fn run(a: ExtractArgs) -> Result<(), Failure> {
    if a.threshold.is_nan() || a.threshold <= 0.0 {
        return Err(Failure::Usage("--threshold must be positive".into()));
    }

    let mut skeletons = BTreeMap::new();
    for path in list(&a.asf_dir, "asf")? {
        let skel = parse_asf(&read_text(&path)?).map_err(|e| Failure::in_file(&path, e))?;
        skeletons.insert(stem(&path), Arc::new(skel));
    }
    if skeletons.is_empty() {
        return Err(Failure::in_file(
            &a.asf_dir,
            Error::InvalidInput("no .asf files found".into()),
        ));
    }
    let all: Vec<Skeleton> = skeletons.values().map(|s| (**s).clone()).collect();
    let prototype = prototypical_skeleton(&all)?;
    let joints = joint_selection(&prototype, &a.joints)?;

    let exemplar_seq = parse_amc(&read_text(&a.exemplar)?, Arc::new(prototype.clone()))
        .map_err(|e| Failure::in_file(&a.exemplar, e))?;
    let mut exemplar = zero_root(&exemplar_seq).rotation_features();
    if let Some(spec) = &a.exemplar_frames {
        let (start, end) = parse_range(spec)?;
        if end > exemplar.len() {
            return Err(Failure::Usage(format!(
                "--exemplar-frames {spec} exceeds the {} frames of the exemplar",
                exemplar.len()
            )));
        }
        exemplar = exemplar[start..end].to_vec();
    }
    let config = CycleDetectionConfig::new(exemplar, a.threshold, a.min_len, a.max_len)
        .map_err(|e| Failure::Usage(e.to_string()))?
        .with_stride(a.stride);

    let motions = list(&a.amc_dir, "amc")?;
    let jobs = motions
        .iter()
        .map(|path| {
            let subject = subject_of(path)?;
            let skel = skeletons.get(&subject).ok_or_else(|| {
                Failure::in_file(
                    path,
                    Error::InvalidInput(format!("no skeleton {subject}.asf for this motion")),
                )
            })?;
            Ok((path, subject, Arc::clone(skel)))
        })
        .collect::<Result<Vec<_>, Failure>>()?;

    let per_file = jobs
        .par_iter()
        .map(|(path, subject, skel)| {
            let in_file = |e| Failure::in_file(path, e);
            let seq = parse_amc(&read_text(path)?, Arc::clone(skel)).map_err(in_file)?;
            let cycles = detect_gait_cycles(&zero_root(&seq), &config).map_err(in_file)?;
            let tracks = cycles
                .iter()
                .map(|c| {
                    let track = JointTrack::from_motion(&prototype, c, joints.as_deref())?;
                    let root_kept = joints
                        .as_ref()
                        .map_or(Some(0), |j| j.iter().position(|&i| i == 0));
                    Ok(match root_kept {
                        Some(r) => center_on_root(&track, r),
                        None => track,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()
                .map_err(in_file)?;
            Ok((subject.clone(), tracks))
        })
        .collect::<Result<Vec<_>, Failure>>()?;

    let (labels, tracks): (Vec<String>, Vec<JointTrack>) = per_file
        .into_iter()
        .flat_map(|(s, ts)| ts.into_iter().map(move |t| (s.clone(), t)))
        .unzip();
    if tracks.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no gait cycles found in {} motion files",
            motions.len()
        ))
        .into());
    }
    let length = average_cycle_length(&tracks)?;
    let samples = tracks
        .par_iter()
        .map(|t| assemble_sample(&resample_to_length(t, length)?))
        .collect::<Result<Vec<_>, Error>>()?;
    let data = LabeledDataset::from_samples(&samples, labels)?;
    let (kept, dropped) = data.filter_min_samples(a.min_samples);

    for class in kept.classes() {
        eprintln!("subject {}: {} samples", class.label, class.members.len());
    }
    for (subject, n) in &dropped {
        eprintln!(
            "subject {subject}: {n} samples, below --min-samples {}, dropped",
            a.min_samples
        );
    }
    if kept.is_empty() {
        return Err(Error::InvalidInput(format!(
            "every subject has fewer than {} samples",
            a.min_samples
        ))
        .into());
    }
    write_atomic(&a.out, &write_dataset(&kept))?;
    eprintln!(
        "wrote {} samples of {} subjects, T = {length}, D = {}",
        kept.len(),
        kept.class_count(),
        kept.dim()
    );
    Ok(())
}
