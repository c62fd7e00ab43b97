use nalgebra::{DMatrix, DVector};

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};

/// Between-class, within-class and total scatter of a labeled dataset.
///
/// `Σb = Σ_c (m_c − m)(m_c − m)ᵀ`, `Σw = Σ_c (1/N_c) Σ_{n∈c} (g − m_c)(g − m_c)ᵀ`
/// and `Σt = Σ_c (1/N_c) Σ_{n∈c} (g − m)(g − m)ᵀ`. `Σt` is accumulated on
/// its own, so `Σt = Σb + Σw` is a checkable identity rather than a definition.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSet {
    pub between: DMatrix<f64>,
    pub within: DMatrix<f64>,
    pub total: DMatrix<f64>,
    pub mean: DVector<f64>,
    pub class_means: Vec<DVector<f64>>,
    pub class_sizes: Vec<usize>,
}

pub(crate) fn means(data: &LabeledDataset) -> (DVector<f64>, Vec<DVector<f64>>) {
    let g = data.samples();
    let mean = g.column_mean();
    let class_means = data
        .classes()
        .iter()
        .map(|c| {
            let mut acc = DVector::zeros(data.dim());
            for &i in &c.members {
                acc += g.column(i);
            }
            acc / c.members.len() as f64
        })
        .collect();
    (mean, class_means)
}

pub fn scatter_matrices(data: &LabeledDataset) -> Result<ScatterSet> {
    if data.is_empty() {
        return Err(Error::invalid("cannot compute scatter of an empty dataset"));
    }
    let d = data.dim();
    let g = data.samples();
    let (mean, class_means) = means(data);

    let mut between = DMatrix::zeros(d, d);
    let mut within = DMatrix::zeros(d, d);
    let mut total = DMatrix::zeros(d, d);
    for (class, m_c) in data.classes().iter().zip(&class_means) {
        let diff = m_c - &mean;
        between.ger(1.0, &diff, &diff, 1.0);

        let n_c = class.members.len();
        let mut about_class = DMatrix::zeros(d, n_c);
        let mut about_all = DMatrix::zeros(d, n_c);
        for (k, &i) in class.members.iter().enumerate() {
            about_class.set_column(k, &(g.column(i) - m_c));
            about_all.set_column(k, &(g.column(i) - &mean));
        }
        let w = 1.0 / n_c as f64;
        within.gemm(w, &about_class, &about_class.transpose(), 1.0);
        total.gemm(w, &about_all, &about_all.transpose(), 1.0);
    }
    Ok(ScatterSet {
        between,
        within,
        total,
        mean,
        class_means,
        class_sizes: data.classes().iter().map(|c| c.members.len()).collect(),
    })
}

/// The pairwise margin sum
/// `½ Σ_{c,c'} [(m_c − m_c')ᵀ(m_c − m_c') − tr(S_c + S_c')]` over all ordered
/// class pairs, `c = c'` included.
pub fn mmc_pairwise(data: &LabeledDataset) -> Result<f64> {
    if data.class_count() < 2 {
        return Err(Error::invalid(
            "the pairwise margin needs at least two classes",
        ));
    }
    let g = data.samples();
    let (_, class_means) = means(data);
    let traces: Vec<f64> = data
        .classes()
        .iter()
        .zip(&class_means)
        .map(|(c, m_c)| {
            c.members
                .iter()
                .map(|&i| (g.column(i) - m_c).norm_squared())
                .sum::<f64>()
                / c.members.len() as f64
        })
        .collect();
    let mut sum = 0.0;
    for (a, m_a) in class_means.iter().enumerate() {
        for (b, m_b) in class_means.iter().enumerate() {
            sum += (m_a - m_b).norm_squared() - (traces[a] + traces[b]);
        }
    }
    Ok(0.5 * sum)
}

/// `tr(Σb) − tr(Σw)`.
pub fn mmc_trace(s: &ScatterSet) -> f64 {
    s.between.trace() - s.within.trace()
}

/// `tr(Φᵀ(Σb − Σw)Φ)` for a `D × D̂` matrix `phi`.
pub fn criterion_in_feature_space(phi: &DMatrix<f64>, s: &ScatterSet) -> Result<f64> {
    if phi.nrows() != s.between.nrows() {
        return Err(Error::DimensionMismatch {
            expected: s.between.nrows(),
            found: phi.nrows(),
        });
    }
    let diff = &s.between - &s.within;
    Ok((phi.transpose() * diff * phi).trace())
}
