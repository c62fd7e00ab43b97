use crate::error::{Error, Result};
use crate::mocap::MotionSequence;

use super::dtw::{dtw_prefix_costs, euclidean};

/// Settings for cutting a walking sequence into gait cycles.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleDetectionConfig {
    /// Bone-rotation vectors of one clean gait cycle.
    pub exemplar: Vec<Vec<f64>>,
    /// Largest DTW distance to the exemplar that still counts as a cycle.
    pub threshold: f64,
    pub min_len: usize,
    pub max_len: usize,
    /// Start-frame step after a rejected position.
    pub stride: usize,
}

impl CycleDetectionConfig {
    pub fn new(
        exemplar: Vec<Vec<f64>>,
        threshold: f64,
        min_len: usize,
        max_len: usize,
    ) -> Result<Self> {
        if exemplar.is_empty() {
            return Err(Error::invalid("exemplar cycle is empty"));
        }
        if threshold.is_nan() || threshold <= 0.0 {
            return Err(Error::invalid("cycle threshold must be positive"));
        }
        if min_len == 0 || min_len > max_len {
            return Err(Error::invalid(format!(
                "invalid cycle length bounds {min_len}..={max_len}"
            )));
        }
        Ok(CycleDetectionConfig {
            exemplar,
            threshold,
            min_len,
            max_len,
            stride: 1,
        })
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride.max(1);
        self
    }
}

/// An accepted cycle: frames `start..start + len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleWindow {
    pub start: usize,
    pub len: usize,
    pub distance: f64,
}

/// Scans start positions in order. At each start the best-matching length in
/// the window bounds is found; if its DTW distance to the exemplar is within
/// the threshold the cycle is accepted and scanning resumes right after it,
/// otherwise the start advances by `stride`. Equal distances prefer the
/// shorter candidate.
pub fn detect_cycle_windows(
    features: &[Vec<f64>],
    cfg: &CycleDetectionConfig,
) -> Result<Vec<CycleWindow>> {
    let dim = cfg.exemplar[0].len();
    if let Some(bad) = cfg.exemplar.iter().chain(features).find(|f| f.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let n = features.len();
    let mut out = Vec::new();
    let mut start = 0;
    while start + cfg.min_len <= n {
        let longest = cfg.max_len.min(n - start);
        let costs = dtw_prefix_costs(&cfg.exemplar, &features[start..start + longest], |a, b| {
            euclidean(a, b)
        });
        let (len, distance) = (cfg.min_len..=longest)
            .map(|len| (len, costs[len - 1]))
            .fold((0, f64::INFINITY), |best, cand| {
                if cand.1 < best.1 {
                    cand
                } else {
                    best
                }
            });
        if distance <= cfg.threshold {
            out.push(CycleWindow {
                start,
                len,
                distance,
            });
            start += len;
        } else {
            start += cfg.stride;
        }
    }
    Ok(out)
}

/// Extracts gait cycles from a (zero-rooted) motion, matching on bone
/// rotations. Returns the cycles in temporal order; none found is not an error.
pub fn detect_gait_cycles(
    seq: &MotionSequence,
    cfg: &CycleDetectionConfig,
) -> Result<Vec<MotionSequence>> {
    let windows = detect_cycle_windows(&seq.rotation_features(), cfg)?;
    Ok(windows.iter().map(|w| seq.slice(w.start, w.len)).collect())
}
