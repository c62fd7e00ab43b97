use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::dataset::{LabeledDataset, Layout};
use crate::error::{Error, Result};

use super::linalg::{canonicalize_sign, descending_order, left_singular};
use super::scatter::{means, scatter_matrices};

/// Singular values of the centered data at or below this fraction of the
/// largest one are treated as zero.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Directions whose between-class eigenvalue reaches this value are kept by
/// the SVD route (they have non-negative eigenvalue `2δ − 1` in `2Σb − Σt`).
const RETAIN_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Leading eigenvectors of `Σb − Σw`.
    Direct,
    /// Two-step SVD simultaneous diagonalization.
    MmcSvd,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::MmcSvd => "mmc-svd",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Route> {
        match s {
            "direct" => Ok(Route::Direct),
            "mmc-svd" => Ok(Route::MmcSvd),
            other => Err(Error::invalid(format!("unknown route '{other}'"))),
        }
    }
}

/// A learned linear feature extractor `ĝ = Φᵀ g`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTransform {
    /// `D × D̂`.
    pub phi: DMatrix<f64>,
    /// One value per retained column: `Δ` entries for the SVD route,
    /// eigenvalues of `Σb − Σw` for the direct route.
    pub eigenvalues: Vec<f64>,
    pub route: Route,
    pub layout: Layout,
    /// Identity classes in the learning data.
    pub classes: usize,
    /// Samples in the learning data.
    pub samples: usize,
    pub seed: Option<u64>,
}

impl FeatureTransform {
    pub fn input_dim(&self) -> usize {
        self.phi.nrows()
    }

    pub fn output_dim(&self) -> usize {
        self.phi.ncols()
    }
}

/// Every intermediate of the SVD route, kept for inspection.
///
/// With `X = (1/√N)[g_n − m]` and `Υ = [m_c − m]`: `X = Ω Θ^{1/2} Vᵀ` (rank
/// truncated), `Θ^{-1/2} Ωᵀ Υ = Ξ S Wᵀ`, `Ψ = Ω Θ^{-1/2} Ξ` and
/// `Δ = Ψᵀ Υ Υᵀ Ψ`. Then `Ψᵀ X Xᵀ Ψ = I` and `Δ` is diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct MmcDecomposition {
    /// `D × r` eigenvectors of `XXᵀ`.
    pub omega: DMatrix<f64>,
    /// The `r` non-zero eigenvalues of `XXᵀ`, decreasing.
    pub theta: DVector<f64>,
    /// `r × r`.
    pub xi: DMatrix<f64>,
    /// `D × r`.
    pub psi: DMatrix<f64>,
    /// `r × r`, diagonal up to rounding.
    pub delta: DMatrix<f64>,
    /// `D × N` centered, scaled data.
    pub x: DMatrix<f64>,
    /// `D × C` centered class means.
    pub upsilon: DMatrix<f64>,
}

impl MmcDecomposition {
    pub fn rank(&self) -> usize {
        self.theta.len()
    }

    /// `XXᵀ`, the total scatter the SVD route diagonalizes.
    pub fn total_scatter(&self) -> DMatrix<f64> {
        &self.x * self.x.transpose()
    }

    /// `ΥΥᵀ`, the between-class scatter.
    pub fn between_scatter(&self) -> DMatrix<f64> {
        &self.upsilon * self.upsilon.transpose()
    }
}

fn require_two_classes(data: &LabeledDataset) -> Result<()> {
    if data.class_count() < 2 {
        return Err(Error::invalid(format!(
            "learning needs at least two identities, found {}",
            data.class_count()
        )));
    }
    Ok(())
}

/// Learns `Φ` from the eigendecomposition of `Σb − Σw`: the orthonormal
/// eigenvectors of positive eigenvalues, largest first, at most `C − 1` of
/// them. When no eigenvalue is positive the single leading eigenvector is
/// kept.
pub fn learn_transform_direct(data: &LabeledDataset) -> Result<FeatureTransform> {
    require_two_classes(data)?;
    let s = scatter_matrices(data)?;
    let diff = &s.between - &s.within;
    let sym = (&diff + diff.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let order = descending_order(&eig.eigenvalues);

    let scale = eig.eigenvalues.amax();
    let tol = RANK_TOLERANCE * scale;
    let mut keep: Vec<usize> = order
        .iter()
        .copied()
        .take_while(|&i| eig.eigenvalues[i] > tol)
        .take(data.class_count() - 1)
        .collect();
    if keep.is_empty() {
        keep.push(order[0]);
    }

    let mut phi = DMatrix::zeros(data.dim(), keep.len());
    for (k, &i) in keep.iter().enumerate() {
        let mut col: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
        canonicalize_sign(&mut col);
        phi.set_column(k, &DVector::from_vec(col));
    }
    Ok(FeatureTransform {
        phi,
        eigenvalues: keep.iter().map(|&i| eig.eigenvalues[i]).collect(),
        route: Route::Direct,
        layout: data.layout(),
        classes: data.class_count(),
        samples: data.len(),
        seed: None,
    })
}

/// Learns `Φ` with the two-step SVD algorithm.
///
/// 1. `m`, `m_c` are the overall and class means.
/// 2. `X = (1/√N)[g_1 − m … g_N − m]`, `Υ = [m_1 − m … m_C − m]`.
/// 3. The SVD of `X` gives `Ω` and `Θ` (squared singular values), truncated
///    to the numerical rank.
/// 4. The full SVD of `Θ^{-1/2} Ωᵀ Υ` gives the square `Ξ`.
/// 5. `Ψ = Ω Θ^{-1/2} Ξ`, `Δ = Ψᵀ Σb Ψ`.
/// 6. `Φ` is the columns of `Ψ` with `Δ` entry at least 1/2 (at most `C − 1`,
///    or the leading column alone when none qualifies).
///
/// Columns of `Ψ` are sign-normalized so that their largest entry is positive.
pub fn learn_transform_mmc(data: &LabeledDataset) -> Result<(FeatureTransform, MmcDecomposition)> {
    require_two_classes(data)?;
    let n = data.len();
    let (mean, class_means) = means(data);

    let mut x = data.samples().clone();
    for mut col in x.column_iter_mut() {
        col -= &mean;
    }
    x /= (n as f64).sqrt();
    let mut upsilon = DMatrix::zeros(data.dim(), class_means.len());
    for (c, m_c) in class_means.iter().enumerate() {
        upsilon.set_column(c, &(m_c - &mean));
    }

    let (u, sigma) = left_singular(&x, false)?;
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    if sigma_max == 0.0 {
        return Err(Error::degenerate(
            "total scatter has rank zero: all learning samples are identical",
        ));
    }
    let rank = sigma
        .iter()
        .filter(|&&s| s > RANK_TOLERANCE * sigma_max)
        .count();
    let omega = u.columns(0, rank).into_owned();
    let inv_sqrt_theta = DVector::from_iterator(rank, sigma.iter().take(rank).map(|s| 1.0 / s));
    let theta = DVector::from_iterator(rank, sigma.iter().take(rank).map(|s| s * s));

    // Θ^{-1/2} Ωᵀ Υ
    let mut reduced = omega.transpose() * &upsilon;
    for (i, mut row) in reduced.row_iter_mut().enumerate() {
        row *= inv_sqrt_theta[i];
    }
    let (mut xi, _) = left_singular(&reduced, true)?;

    let mut whitened = omega.clone();
    for (j, mut col) in whitened.column_iter_mut().enumerate() {
        col *= inv_sqrt_theta[j];
    }
    let mut psi = &whitened * &xi;
    for j in 0..rank {
        let mut col: Vec<f64> = psi.column(j).iter().copied().collect();
        if canonicalize_sign(&mut col) {
            psi.set_column(j, &DVector::from_vec(col));
            xi.column_mut(j).neg_mut();
        }
    }

    let projected = psi.transpose() * &upsilon;
    let delta = &projected * projected.transpose();

    let diag = delta.diagonal();
    let mut keep: Vec<usize> = (0..rank)
        .filter(|&j| diag[j] >= RETAIN_THRESHOLD)
        .take(data.class_count() - 1)
        .collect();
    if keep.is_empty() {
        keep.push(descending_order(&diag)[0]);
    }
    let phi = psi.select_columns(&keep);
    let transform = FeatureTransform {
        phi,
        eigenvalues: keep.iter().map(|&j| diag[j]).collect(),
        route: Route::MmcSvd,
        layout: data.layout(),
        classes: data.class_count(),
        samples: n,
        seed: None,
    };
    let decomposition = MmcDecomposition {
        omega,
        theta,
        xi,
        psi,
        delta,
        x,
        upsilon,
    };
    Ok((transform, decomposition))
}
