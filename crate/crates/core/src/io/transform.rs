use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dataset::Layout;
use crate::error::{Error, Result};
use crate::mmc::{FeatureTransform, Route};

pub const TRANSFORM_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformFile {
    version: u32,
    route: String,
    #[serde(rename = "J")]
    joints: usize,
    #[serde(rename = "T")]
    frames: usize,
    #[serde(rename = "D")]
    dim: usize,
    #[serde(rename = "D_hat")]
    d_hat: usize,
    eigenvalues: Vec<f64>,
    /// Row-major `D × D̂`.
    phi: Vec<f64>,
    learning: Learning,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Learning {
    #[serde(rename = "C_L")]
    classes: usize,
    #[serde(rename = "N_L")]
    samples: usize,
    seed: Option<u64>,
}

pub fn write_transform(ft: &FeatureTransform) -> String {
    let (joints, frames) = match ft.layout {
        Layout::Gait { joints, frames } => (joints, frames),
        Layout::Raw => (0, 0),
    };
    let file = TransformFile {
        version: TRANSFORM_VERSION,
        route: ft.route.as_str().to_string(),
        joints,
        frames,
        dim: ft.input_dim(),
        d_hat: ft.output_dim(),
        eigenvalues: ft.eigenvalues.clone(),
        phi: ft.phi.transpose().as_slice().to_vec(),
        learning: Learning {
            classes: ft.classes,
            samples: ft.samples,
            seed: ft.seed,
        },
    };
    let mut out = serde_json::to_string_pretty(&file).expect("transform serializes");
    out.push('\n');
    out
}

pub fn read_transform(text: &str) -> Result<FeatureTransform> {
    let file: TransformFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    if file.version != TRANSFORM_VERSION {
        return Err(Error::invalid(format!(
            "unsupported transform version {}",
            file.version
        )));
    }
    let route: Route = file.route.parse()?;
    if file.eigenvalues.len() != file.d_hat {
        return Err(Error::DimensionMismatch {
            expected: file.d_hat,
            found: file.eigenvalues.len(),
        });
    }
    if file.phi.len() != file.dim * file.d_hat {
        return Err(Error::DimensionMismatch {
            expected: file.dim * file.d_hat,
            found: file.phi.len(),
        });
    }
    if file.d_hat == 0 {
        return Err(Error::invalid("transform has no output dimensions"));
    }
    let layout = if file.joints > 0 && file.frames > 0 {
        if file.dim != 3 * file.joints * file.frames {
            return Err(Error::DimensionMismatch {
                expected: 3 * file.joints * file.frames,
                found: file.dim,
            });
        }
        Layout::Gait {
            joints: file.joints,
            frames: file.frames,
        }
    } else {
        Layout::Raw
    };
    Ok(FeatureTransform {
        phi: DMatrix::from_row_slice(file.dim, file.d_hat, &file.phi),
        eigenvalues: file.eigenvalues,
        route,
        layout,
        classes: file.learning.classes,
        samples: file.learning.samples,
        seed: file.learning.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transform() -> FeatureTransform {
        FeatureTransform {
            phi: DMatrix::from_row_slice(3, 2, &[0.1, 1.0 / 3.0, -2.0, 1e-17, 5.5, -0.0]),
            eigenvalues: vec![2.0, 0.7000000000000001],
            route: Route::MmcSvd,
            layout: Layout::Gait {
                joints: 1,
                frames: 1,
            },
            classes: 3,
            samples: 30,
            seed: Some(u64::MAX),
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let ft = transform();
        let text = write_transform(&ft);
        let back = read_transform(&text).unwrap();
        assert_eq!(back.route, ft.route);
        assert_eq!(back.layout, ft.layout);
        assert_eq!(back.seed, ft.seed);
        for (a, b) in ft.phi.iter().zip(back.phi.iter()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.eigenvalues, ft.eigenvalues);
        assert_eq!(write_transform(&back), text);
    }

    #[test]
    fn phi_is_row_major() {
        let text = write_transform(&transform());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["phi"][1], serde_json::json!(1.0 / 3.0));
        assert_eq!(v["D_hat"], 2);
        assert_eq!(v["learning"]["C_L"], 3);
    }

    #[test]
    fn inconsistent_lengths_are_rejected() {
        let text = write_transform(&transform()).replace("\"D_hat\": 2", "\"D_hat\": 3");
        assert!(read_transform(&text).is_err());
        assert!(read_transform("{}").is_err());
    }
}
