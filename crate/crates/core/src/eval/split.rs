use rand::seq::SliceRandom;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::seed::rng;

fn shuffled_classes(data: &LabeledDataset, rng: &mut impl rand::Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..data.class_count()).collect();
    order.shuffle(rng);
    order
}

/// Learns on a third of each identity's samples and evaluates on the rest,
/// over `classes` identities drawn by `seed`.
///
/// Each drawn identity gives `⌊N_c/3⌋` (at least one) random samples to the
/// learning part. Both parts keep the original sample order.
pub fn split_homogeneous(
    data: &LabeledDataset,
    classes: usize,
    seed: u64,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if classes == 0 || classes > data.class_count() {
        return Err(Error::invalid(format!(
            "homogeneous split needs {classes} identities, dataset has {}",
            data.class_count()
        )));
    }
    let mut rng = rng(seed);
    let order = shuffled_classes(data, &mut rng);
    let mut learn = Vec::new();
    let mut eval = Vec::new();
    for &c in &order[..classes] {
        let class = &data.classes()[c];
        let n = class.members.len();
        if n < 3 {
            return Err(Error::invalid(format!(
                "identity '{}' has {n} samples, a homogeneous split needs at least 3",
                class.label
            )));
        }
        let mut members = class.members.clone();
        members.shuffle(&mut rng);
        let k = (n / 3).max(1);
        learn.extend_from_slice(&members[..k]);
        eval.extend_from_slice(&members[k..]);
    }
    learn.sort_unstable();
    eval.sort_unstable();
    Ok((data.subset(&learn), data.subset(&eval)))
}

/// Draws `c_learn + c_eval` distinct identities by `seed`; the first
/// `c_learn` with all their samples form the learning part, the next
/// `c_eval` the evaluation part.
pub fn split_heterogeneous(
    data: &LabeledDataset,
    c_learn: usize,
    c_eval: usize,
    seed: u64,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if c_learn == 0 || c_eval == 0 || c_learn + c_eval > data.class_count() {
        return Err(Error::invalid(format!(
            "heterogeneous split needs {c_learn} + {c_eval} identities, dataset has {}",
            data.class_count()
        )));
    }
    let mut rng = rng(seed);
    let order = shuffled_classes(data, &mut rng);
    let pick = |classes: &[usize]| {
        let mut idx: Vec<usize> = classes
            .iter()
            .flat_map(|&c| data.classes()[c].members.iter().copied())
            .collect();
        idx.sort_unstable();
        data.subset(&idx)
    };
    Ok((
        pick(&order[..c_learn]),
        pick(&order[c_learn..c_learn + c_eval]),
    ))
}
