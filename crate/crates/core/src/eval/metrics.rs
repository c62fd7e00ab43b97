use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matching::{nearest, MetricModel, TemplateGallery};
use crate::mmc::GaitTemplate;
use crate::seed::rng;

/// Davies-Bouldin index of the gallery's identity clusters under `m`.
///
/// `σ_c` is the mean distance of class `c`'s templates to their centroid and
/// `DBI = (1/C) Σ_c max_{c'≠c} (σ_c + σ_c') / δ(m_c, m_c')`.
pub fn davies_bouldin(gallery: &TemplateGallery, m: &MetricModel) -> Result<f64> {
    let c = gallery.class_count();
    if c < 2 {
        return Err(Error::invalid(format!(
            "Davies-Bouldin index needs at least 2 classes, got {c}"
        )));
    }
    let centroids = gallery
        .centroids()
        .iter()
        .map(|v| m.whiten(v))
        .collect::<Result<Vec<_>>>()?;
    let spread = (0..c)
        .map(|k| {
            let members = gallery.members(k);
            let mut total = 0.0;
            for &i in members {
                total += (m.whiten(&gallery.templates()[i].values)? - &centroids[k]).norm();
            }
            Ok(total / members.len() as f64)
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut sum = 0.0;
    for a in 0..c {
        let mut worst = f64::NEG_INFINITY;
        for b in (0..c).filter(|&b| b != a) {
            let gap = (&centroids[a] - &centroids[b]).norm();
            if gap == 0.0 {
                let (x, y) = (a.min(b), a.max(b));
                return Err(Error::degenerate(format!(
                    "centroids of identities '{}' and '{}' coincide",
                    gallery.class_label(x),
                    gallery.class_label(y)
                )));
            }
            worst = worst.max((spread[a] + spread[b]) / gap);
        }
        sum += worst;
    }
    Ok(sum / c as f64)
}

/// Stratified fold index for every label: the samples are shuffled by
/// `seed`, grouped by class in order of first appearance, and dealt to the
/// folds round-robin.
pub fn fold_assignment<S: AsRef<str>>(labels: &[S], folds: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.shuffle(&mut rng(seed));
    let mut groups: Vec<(&str, Vec<usize>)> = Vec::new();
    for i in order {
        let label = labels[i].as_ref();
        match groups.iter_mut().find(|(l, _)| *l == label) {
            Some((_, members)) => members.push(i),
            None => groups.push((label, vec![i])),
        }
    }
    let mut fold = vec![0; labels.len()];
    let mut next = 0;
    for (_, members) in groups {
        for i in members {
            fold[i] = next % folds;
            next += 1;
        }
    }
    fold
}

/// Correct classification rate under `folds`-fold cross-validation: each
/// fold in turn is classified against the union of the others.
pub fn ccr_crossval(
    templates: &[GaitTemplate],
    m: &MetricModel,
    folds: usize,
    seed: u64,
) -> Result<f64> {
    if folds < 2 {
        return Err(Error::invalid("cross-validation needs at least 2 folds"));
    }
    if templates.len() < folds {
        return Err(Error::invalid(format!(
            "{} templates cannot fill {folds} folds",
            templates.len()
        )));
    }
    let labels = templates
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.label
                .as_deref()
                .ok_or_else(|| Error::invalid(format!("template {i} has no label")))
        })
        .collect::<Result<Vec<&str>>>()?;
    let dim = m.dim();
    let mut raw = DMatrix::zeros(dim, templates.len());
    for (i, t) in templates.iter().enumerate() {
        if t.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: t.dim(),
            });
        }
        raw.set_column(i, &t.values);
    }
    let white = m.whiten_columns(&raw)?;
    let fold = fold_assignment(&labels, folds, seed);

    let correct: usize = (0..folds)
        .into_par_iter()
        .map(|f| {
            let gallery: Vec<usize> = (0..templates.len()).filter(|&i| fold[i] != f).collect();
            let g = white.select_columns(&gallery);
            (0..templates.len())
                .filter(|&i| fold[i] == f)
                .filter(|&i| {
                    let j = nearest(&g, &white.column(i).into_owned());
                    labels[gallery[j]] == labels[i]
                })
                .count()
        })
        .sum();
    Ok(correct as f64 / templates.len() as f64)
}
