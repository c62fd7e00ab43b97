//! Labeled sample collections.

use nalgebra::{DMatrix, DVectorView};

use crate::error::{Error, Result};
use crate::prep::GaitSample;

/// How a sample vector is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `D = 3·joints·frames`, ordered as produced by [`crate::prep::assemble_sample`].
    Gait { joints: usize, frames: usize },
    /// Any dimension; used for templates and algebra-only data.
    Raw,
}

/// One identity class: its label and the sample indices carrying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub label: String,
    pub members: Vec<usize>,
}

/// Samples stored column-wise (`D × N`) with one identity label each.
///
/// Classes are listed in order of first appearance. Every sample also keeps a
/// stable id (its row in the originating dataset) so subsets can be checked
/// for disjointness.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    layout: Layout,
    samples: DMatrix<f64>,
    labels: Vec<String>,
    ids: Vec<usize>,
    classes: Vec<Class>,
}

pub(crate) fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() || label.contains([',', '\n', '\r']) {
        return Err(Error::invalid(format!(
            "label {label:?} must be non-empty and free of commas and line breaks"
        )));
    }
    Ok(())
}

impl LabeledDataset {
    pub fn new(layout: Layout, samples: DMatrix<f64>, labels: Vec<String>) -> Result<Self> {
        let ids = (0..labels.len()).collect();
        Self::with_ids(layout, samples, labels, ids)
    }

    fn with_ids(
        layout: Layout,
        samples: DMatrix<f64>,
        labels: Vec<String>,
        ids: Vec<usize>,
    ) -> Result<Self> {
        if samples.ncols() != labels.len() {
            return Err(Error::invalid(format!(
                "{} samples but {} labels",
                samples.ncols(),
                labels.len()
            )));
        }
        if let Layout::Gait { joints, frames } = layout {
            let expected = 3 * joints * frames;
            if samples.nrows() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: samples.nrows(),
                });
            }
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("samples must be finite"));
        }
        let mut classes: Vec<Class> = Vec::new();
        for (i, label) in labels.iter().enumerate() {
            validate_label(label)?;
            match classes.iter_mut().find(|c| &c.label == label) {
                Some(c) => c.members.push(i),
                None => classes.push(Class {
                    label: label.clone(),
                    members: vec![i],
                }),
            }
        }
        Ok(LabeledDataset {
            layout,
            samples,
            labels,
            ids,
            classes,
        })
    }

    /// Builds a dataset from row vectors; every row must have length `dim`.
    pub fn from_rows(
        layout: Layout,
        dim: usize,
        rows: &[Vec<f64>],
        labels: Vec<String>,
    ) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let samples = DMatrix::from_fn(dim, rows.len(), |r, c| rows[c][r]);
        Self::new(layout, samples, labels)
    }

    pub fn from_samples(samples: &[GaitSample], labels: Vec<String>) -> Result<Self> {
        let first = samples
            .first()
            .ok_or_else(|| Error::invalid("no samples to build a dataset from"))?;
        let layout = Layout::Gait {
            joints: first.joints,
            frames: first.frames,
        };
        if let Some(bad) = samples
            .iter()
            .find(|s| (s.joints, s.frames) != (first.joints, first.frames))
        {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: bad.dim(),
            });
        }
        let rows: Vec<Vec<f64>> = samples.iter().map(|s| s.values.clone()).collect();
        Self::from_rows(layout, first.dim(), &rows, labels)
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.samples.nrows()
    }

    pub fn len(&self) -> usize {
        self.samples.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `D × N` sample matrix.
    pub fn samples(&self) -> &DMatrix<f64> {
        &self.samples
    }

    pub fn sample(&self, i: usize) -> DVectorView<'_, f64> {
        self.samples.column(i)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The samples at `indices`, in that order, keeping their ids.
    pub fn subset(&self, indices: &[usize]) -> LabeledDataset {
        let samples = self.samples.select_columns(indices);
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let ids = indices.iter().map(|&i| self.ids[i]).collect();
        Self::with_ids(self.layout, samples, labels, ids).expect("subset of a valid dataset")
    }

    /// Drops classes with fewer than `min_samples` samples. Returns the kept
    /// dataset and the dropped `(label, count)` pairs.
    pub fn filter_min_samples(&self, min_samples: usize) -> (LabeledDataset, Vec<(String, usize)>) {
        let mut keep = Vec::new();
        let mut dropped = Vec::new();
        for c in &self.classes {
            if c.members.len() >= min_samples {
                keep.extend(&c.members);
            } else {
                dropped.push((c.label.clone(), c.members.len()));
            }
        }
        keep.sort_unstable();
        (self.subset(&keep), dropped)
    }
}
