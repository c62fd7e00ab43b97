use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};

use crate::dataset::{LabeledDataset, Layout};
use crate::error::{Error, Result};
use crate::seed::rng;

/// Parameters of the synthetic walker family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthParams {
    pub classes: usize,
    pub per_class: usize,
    pub joints: usize,
    pub frames: usize,
    /// Spread of the class means, in units of `noise`.
    pub separation: f64,
    /// Dimension of the subspace carrying identity information.
    pub subspace_dim: usize,
    /// Standard deviation of the per-sample isotropic noise.
    pub noise: f64,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            classes: 10,
            per_class: 20,
            joints: 5,
            frames: 10,
            separation: 10.0,
            subspace_dim: 12,
            noise: 1.0,
        }
    }
}

impl SynthParams {
    pub fn dim(&self) -> usize {
        3 * self.joints * self.frames
    }

    fn validate(&self) -> Result<()> {
        let counts = [
            ("classes", self.classes),
            ("per-class", self.per_class),
            ("joints", self.joints),
            ("frames", self.frames),
            ("subspace dimension", self.subspace_dim),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(Error::invalid(format!("{name} must be at least 1")));
        }
        if self.subspace_dim > self.dim() {
            return Err(Error::invalid(format!(
                "subspace dimension {} exceeds sample dimension {}",
                self.subspace_dim,
                self.dim()
            )));
        }
        if !(self.separation >= 0.0 && self.separation.is_finite()) {
            return Err(Error::invalid("separation must be finite and non-negative"));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(Error::invalid("noise must be finite and non-negative"));
        }
        Ok(())
    }
}

/// A smooth periodic walk shared by every synthetic identity.
fn base_gait(joints: usize, frames: usize) -> DVector<f64> {
    DVector::from_fn(3 * joints * frames, |i, _| {
        let (t, rest) = (i / (3 * joints), i % (3 * joints));
        let (j, axis) = (rest / 3, rest % 3);
        let phase = TAU * t as f64 / frames as f64 + 0.7 * j as f64 + 1.3 * axis as f64;
        let amplitude = 3.0 * (axis + 1) as f64;
        let offset = if axis == 1 { -10.0 * j as f64 } else { 0.0 };
        offset + amplitude * phase.sin()
    })
}

/// Generates `classes × per_class` samples of dimension `3·J·T`.
///
/// All class means lie in `base + span(B)` for one random orthonormal basis
/// `B` of `subspace_dim` columns: `μ_c = base + separation·noise·B z_c` with
/// `z_c ~ N(0, I)`. Each sample adds isotropic Gaussian noise of deviation
/// `noise`. Labels are `s01`, `s02`, ....
pub fn synth_dataset(p: &SynthParams, seed: u64) -> Result<LabeledDataset> {
    p.validate()?;
    let d = p.dim();
    let mut rng = rng(seed);
    let mut normal = |rows: usize, cols: usize| {
        DMatrix::<f64>::from_fn(rows, cols, |_, _| StandardNormal.sample(&mut rng))
    };

    let basis = normal(d, p.subspace_dim).qr().q();
    let z = normal(p.subspace_dim, p.classes);
    let means = &basis * z * (p.separation * p.noise);
    let eps = normal(d, p.classes * p.per_class) * p.noise;
    let base = base_gait(p.joints, p.frames);

    let mut samples = eps;
    for (n, mut col) in samples.column_iter_mut().enumerate() {
        col += &base;
        col += means.column(n / p.per_class);
    }
    let width = p.classes.to_string().len().max(2);
    let labels = (0..p.classes * p.per_class)
        .map(|n| format!("s{:0width$}", n / p.per_class + 1))
        .collect();
    LabeledDataset::new(
        Layout::Gait {
            joints: p.joints,
            frames: p.frames,
        },
        samples,
        labels,
    )
}
