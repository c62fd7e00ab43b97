use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dataset::{LabeledDataset, Layout};
use crate::error::{Error, Result};

pub const DATASET_VERSION: u32 = 1;

/// First line of a dataset file. `J` and `T` are 0 for raw layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetHeader {
    pub version: u32,
    #[serde(rename = "J")]
    pub joints: usize,
    #[serde(rename = "T")]
    pub frames: usize,
    #[serde(rename = "D")]
    pub dim: usize,
    pub identities: usize,
}

/// Header line, then one `label,v1,…,vD` line per sample.
pub fn write_dataset(data: &LabeledDataset) -> String {
    let (joints, frames) = match data.layout() {
        Layout::Gait { joints, frames } => (joints, frames),
        Layout::Raw => (0, 0),
    };
    let header = DatasetHeader {
        version: DATASET_VERSION,
        joints,
        frames,
        dim: data.dim(),
        identities: data.class_count(),
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for (i, col) in data.samples().column_iter().enumerate() {
        out.push_str(data.label(i));
        for v in col.iter() {
            write!(out, ",{v:?}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// Parses a dataset file. Unless `raw_d` is set, `D` must equal `3·J·T`.
pub fn read_dataset(text: &str, raw_d: bool) -> Result<LabeledDataset> {
    let mut lines = text.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing dataset header"))?;
    let header: DatasetHeader =
        serde_json::from_str(first).map_err(|e| Error::parse(1, format!("bad header: {e}")))?;
    if header.version != DATASET_VERSION {
        return Err(Error::parse(
            1,
            format!("unsupported dataset version {}", header.version),
        ));
    }
    let gait = header.joints > 0 && header.frames > 0;
    let layout = if gait && header.dim == 3 * header.joints * header.frames {
        Layout::Gait {
            joints: header.joints,
            frames: header.frames,
        }
    } else if raw_d {
        Layout::Raw
    } else {
        return Err(Error::parse(
            1,
            format!(
                "D = {} is not 3·J·T = 3·{}·{} (use --raw-d for algebra-only data)",
                header.dim, header.joints, header.frames
            ),
        ));
    };

    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (k, line) in lines.enumerate() {
        let n = k + 2;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let label = fields.next().unwrap_or_default();
        if label.is_empty() {
            return Err(Error::parse(n, "empty label"));
        }
        let before = values.len();
        for field in fields {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| Error::parse(n, format!("bad number '{field}'")))?;
            if !v.is_finite() {
                return Err(Error::parse(n, format!("non-finite value '{field}'")));
            }
            values.push(v);
        }
        let found = values.len() - before;
        if found != header.dim {
            return Err(Error::parse(
                n,
                format!("expected {} values, found {found}", header.dim),
            ));
        }
        labels.push(label.to_string());
    }
    let samples = DMatrix::from_vec(header.dim, labels.len(), values);
    let data = LabeledDataset::new(layout, samples, labels)?;
    if data.class_count() != header.identities {
        return Err(Error::parse(
            1,
            format!(
                "header declares {} identities, rows carry {}",
                header.identities,
                data.class_count()
            ),
        ));
    }
    Ok(data)
}
