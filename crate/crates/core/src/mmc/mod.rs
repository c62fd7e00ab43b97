//! Maximum Margin Criterion feature learning.
//!
//! The criterion `J(Φ) = tr(Φᵀ(Σb − Σw)Φ)` is maximized either directly, by
//! the leading eigenvectors of `Σb − Σw` ([`learn_transform_direct`]), or by
//! simultaneously diagonalizing `Σb` and `Σt` through two SVDs and keeping
//! the directions whose between-class eigenvalue is at least 1/2
//! ([`learn_transform_mmc`]).

mod learn;
mod linalg;
mod scatter;
mod template;

pub use learn::{
    learn_transform_direct, learn_transform_mmc, FeatureTransform, MmcDecomposition, Route,
    RANK_TOLERANCE,
};
pub use linalg::canonicalize_sign;
pub use scatter::{
    criterion_in_feature_space, mmc_pairwise, mmc_trace, scatter_matrices, ScatterSet,
};
pub use template::{apply_transform, apply_transform_all, GaitTemplate};
