use nalgebra::DVector;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::prep::GaitSample;

use super::learn::FeatureTransform;

/// A sample projected into the feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct GaitTemplate {
    pub values: DVector<f64>,
    pub label: Option<String>,
}

impl GaitTemplate {
    pub fn new(values: DVector<f64>) -> Self {
        GaitTemplate {
            values,
            label: None,
        }
    }

    pub fn labeled(values: DVector<f64>, label: impl Into<String>) -> Self {
        GaitTemplate {
            values,
            label: Some(label.into()),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// `ĝ = Φᵀ g`.
pub fn apply_transform(ft: &FeatureTransform, sample: &GaitSample) -> Result<GaitTemplate> {
    if sample.dim() != ft.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: ft.input_dim(),
            found: sample.dim(),
        });
    }
    let g = DVector::from_column_slice(&sample.values);
    Ok(GaitTemplate::new(ft.phi.tr_mul(&g)))
}

/// Projects every sample of `data`, carrying labels over.
pub fn apply_transform_all(
    ft: &FeatureTransform,
    data: &LabeledDataset,
) -> Result<Vec<GaitTemplate>> {
    if data.dim() != ft.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: ft.input_dim(),
            found: data.dim(),
        });
    }
    let projected = ft.phi.tr_mul(data.samples());
    Ok(projected
        .column_iter()
        .zip(data.labels())
        .map(|(col, label)| GaitTemplate::labeled(col.into_owned(), label.clone()))
        .collect())
}
