//! Mahalanobis matching of gait templates.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mmc::GaitTemplate;

/// Relative eigenvalue floor below which the scatter counts as singular.
const SINGULAR_TOLERANCE: f64 = 1e-10;

/// How the feature-space scatter is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScatterForm {
    /// `(1/N) Σ (ĝ − m̂)(ĝ − m̂)ᵀ`.
    #[default]
    Plain,
    /// Between-class plus size-normalized within-class scatter, using the
    /// template labels.
    ClassWeighted,
}

/// Which template set a metric was estimated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricSource {
    #[default]
    Gallery,
    Learning,
    /// Supplied directly rather than estimated.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricConfig {
    /// Relative ridge added when the scatter is (near) singular.
    pub ridge: f64,
    pub scatter: ScatterForm,
    pub source: MetricSource,
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig {
            ridge: 1e-8,
            scatter: ScatterForm::Plain,
            source: MetricSource::Gallery,
        }
    }
}

/// An inverse scatter matrix `Σ̂t⁻¹` defining `√((a−b)ᵀ Σ̂t⁻¹ (a−b))`.
///
/// The model also keeps a whitening map `W` with `WᵀW = Σ̂t⁻¹`, so distances
/// are Euclidean distances between whitened templates.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricModel {
    inverse: DMatrix<f64>,
    whitener: DMatrix<f64>,
    source: MetricSource,
    /// Absolute amount added to the scatter diagonal, zero when none was needed.
    ridge_added: f64,
}

impl MetricModel {
    /// The Euclidean metric.
    pub fn identity(dim: usize) -> MetricModel {
        MetricModel {
            inverse: DMatrix::identity(dim, dim),
            whitener: DMatrix::identity(dim, dim),
            source: MetricSource::Fixed,
            ridge_added: 0.0,
        }
    }

    /// Wraps a given symmetric positive-definite inverse scatter.
    pub fn from_inverse(inverse: DMatrix<f64>) -> Result<MetricModel> {
        if !inverse.is_square() {
            return Err(Error::invalid("metric matrix must be square"));
        }
        let asym = (&inverse - inverse.transpose()).amax();
        if asym > 1e-10 * inverse.amax().max(1.0) {
            return Err(Error::invalid("metric matrix must be symmetric"));
        }
        let chol = Cholesky::new(inverse.clone())
            .ok_or_else(|| Error::degenerate("metric matrix is not positive definite"))?;
        Ok(MetricModel {
            whitener: chol.l().transpose(),
            inverse,
            source: MetricSource::Fixed,
            ridge_added: 0.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.inverse.nrows()
    }

    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn whitener(&self) -> &DMatrix<f64> {
        &self.whitener
    }

    pub fn source(&self) -> MetricSource {
        self.source
    }

    pub fn ridge_added(&self) -> f64 {
        self.ridge_added
    }

    pub fn whiten(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.dim(), v.len())?;
        Ok(&self.whitener * v)
    }

    /// Whitens a `D̂ × N` matrix of templates at once.
    pub fn whiten_columns(&self, m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        check_dim(self.dim(), m.nrows())?;
        Ok(&self.whitener * m)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn template_matrix(templates: &[GaitTemplate]) -> Result<DMatrix<f64>> {
    let dim = templates
        .first()
        .ok_or_else(|| Error::invalid("no templates"))?
        .dim();
    let mut m = DMatrix::zeros(dim, templates.len());
    for (i, t) in templates.iter().enumerate() {
        check_dim(dim, t.dim())?;
        m.set_column(i, &t.values);
    }
    Ok(m)
}

fn plain_scatter(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.ncols() as f64;
    let mean = m.column_mean();
    let mut centered = m.clone();
    for mut col in centered.column_iter_mut() {
        col -= &mean;
    }
    &centered * centered.transpose() / n
}

fn class_weighted_scatter(m: &DMatrix<f64>, templates: &[GaitTemplate]) -> Result<DMatrix<f64>> {
    let mut groups: Vec<(&str, Vec<usize>)> = Vec::new();
    for (i, t) in templates.iter().enumerate() {
        let label = t
            .label
            .as_deref()
            .ok_or_else(|| Error::invalid("class-weighted scatter needs labeled templates"))?;
        match groups.iter_mut().find(|(l, _)| *l == label) {
            Some((_, members)) => members.push(i),
            None => groups.push((label, vec![i])),
        }
    }
    let dim = m.nrows();
    let mean = m.column_mean();
    let mut scatter = DMatrix::zeros(dim, dim);
    for (_, members) in &groups {
        let sub = m.select_columns(members);
        let class_mean = sub.column_mean();
        let d = &class_mean - &mean;
        scatter += &d * d.transpose();
        scatter += plain_scatter(&sub);
    }
    Ok(scatter)
}

/// Estimates `Σ̂t` over `templates` and inverts it.
///
/// When the smallest eigenvalue is at most `1e-10·tr(Σ̂t)`, the ridge
/// `config.ridge · tr(Σ̂t)/D̂ · I` is added first (with `tr/D̂` replaced by 1
/// for an all-zero scatter).
pub fn fit_metric(templates: &[GaitTemplate], config: &MetricConfig) -> Result<MetricModel> {
    if templates.len() < 2 {
        return Err(Error::invalid(format!(
            "a metric needs at least 2 templates, got {}",
            templates.len()
        )));
    }
    if !(config.ridge >= 0.0 && config.ridge.is_finite()) {
        return Err(Error::invalid("ridge must be a finite non-negative number"));
    }
    let m = template_matrix(templates)?;
    let dim = m.nrows();
    let scatter = match config.scatter {
        ScatterForm::Plain => plain_scatter(&m),
        ScatterForm::ClassWeighted => class_weighted_scatter(&m, templates)?,
    };
    let mut scatter = (&scatter + scatter.transpose()) * 0.5;

    let trace = scatter.trace();
    let min_eig = SymmetricEigen::new(scatter.clone()).eigenvalues.min();
    let mut ridge_added = 0.0;
    if min_eig <= SINGULAR_TOLERANCE * trace {
        if config.ridge == 0.0 {
            return Err(Error::degenerate(format!(
                "template scatter is singular (smallest eigenvalue {min_eig:e}, trace {trace:e}) and no ridge was requested"
            )));
        }
        let scale = if trace > 0.0 { trace / dim as f64 } else { 1.0 };
        ridge_added = config.ridge * scale;
        for i in 0..dim {
            scatter[(i, i)] += ridge_added;
        }
    }

    let chol = Cholesky::new(scatter)
        .ok_or_else(|| Error::degenerate("template scatter is not positive definite"))?;
    let whitener = chol
        .l()
        .solve_lower_triangular(&DMatrix::identity(dim, dim))
        .ok_or_else(|| Error::degenerate("template scatter factor is singular"))?;
    let inverse = whitener.tr_mul(&whitener);
    let inverse = (&inverse + inverse.transpose()) * 0.5;
    Ok(MetricModel {
        inverse,
        whitener,
        source: config.source,
        ridge_added,
    })
}

/// `√((a−b)ᵀ Σ̂t⁻¹ (a−b))`.
pub fn mahalanobis(m: &MetricModel, a: &GaitTemplate, b: &GaitTemplate) -> Result<f64> {
    check_dim(m.dim(), a.dim())?;
    check_dim(m.dim(), b.dim())?;
    let d = &a.values - &b.values;
    Ok((&m.whitener * d).norm())
}

/// Labeled templates grouped by identity.
#[derive(Debug, Clone, PartialEq)]
pub struct TemplateGallery {
    templates: Vec<GaitTemplate>,
    labels: Vec<String>,
    classes: Vec<(String, Vec<usize>)>,
    centroids: Vec<DVector<f64>>,
}

impl TemplateGallery {
    /// Every template must carry a label and share one dimension.
    pub fn new(templates: Vec<GaitTemplate>) -> Result<TemplateGallery> {
        let matrix = template_matrix(&templates)?;
        let mut labels = Vec::with_capacity(templates.len());
        let mut classes: Vec<(String, Vec<usize>)> = Vec::new();
        for (i, t) in templates.iter().enumerate() {
            let label = t
                .label
                .clone()
                .ok_or_else(|| Error::invalid(format!("gallery template {i} has no label")))?;
            match classes.iter_mut().find(|(l, _)| *l == label) {
                Some((_, members)) => members.push(i),
                None => classes.push((label.clone(), vec![i])),
            }
            labels.push(label);
        }
        let centroids = classes
            .iter()
            .map(|(_, members)| matrix.select_columns(members).column_mean())
            .collect();
        Ok(TemplateGallery {
            templates,
            labels,
            classes,
            centroids,
        })
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.templates[0].dim()
    }

    pub fn templates(&self) -> &[GaitTemplate] {
        &self.templates
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_label(&self, c: usize) -> &str {
        &self.classes[c].0
    }

    /// Template indices of class `c`, in insertion order.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.classes[c].1
    }

    pub fn centroids(&self) -> &[DVector<f64>] {
        &self.centroids
    }
}

/// Index of the column of `gallery` nearest to `probe` in Euclidean distance,
/// the first one on ties.
pub(crate) fn nearest(gallery: &DMatrix<f64>, probe: &DVector<f64>) -> usize {
    let mut best = (0, f64::INFINITY);
    for (i, col) in gallery.column_iter().enumerate() {
        let d = (col - probe).norm_squared();
        if d < best.1 {
            best = (i, d);
        }
    }
    best.0
}

fn whitened_gallery(gallery: &TemplateGallery, m: &MetricModel) -> Result<DMatrix<f64>> {
    let matrix = template_matrix(gallery.templates())?;
    m.whiten_columns(&matrix)
}

/// Winner-takes-all: the label of the gallery template closest to `probe`.
pub fn classify(
    gallery: &TemplateGallery,
    probe: &GaitTemplate,
    m: &MetricModel,
) -> Result<String> {
    check_dim(gallery.dim(), probe.dim())?;
    let w = whitened_gallery(gallery, m)?;
    let i = nearest(&w, &m.whiten(&probe.values)?);
    Ok(gallery.labels[i].clone())
}

/// [`classify`] for many probes, in parallel.
pub fn classify_all(
    gallery: &TemplateGallery,
    probes: &[GaitTemplate],
    m: &MetricModel,
) -> Result<Vec<String>> {
    let w = whitened_gallery(gallery, m)?;
    probes
        .par_iter()
        .map(|p| {
            check_dim(gallery.dim(), p.dim())?;
            let i = nearest(&w, &m.whiten(&p.values)?);
            Ok(gallery.labels[i].clone())
        })
        .collect()
}
