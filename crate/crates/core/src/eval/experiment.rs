use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::matching::{fit_metric, MetricConfig, MetricSource, TemplateGallery};
use crate::mmc::{apply_transform_all, learn_transform_direct, learn_transform_mmc, Route};
use crate::seed::derive_seed;

use super::metrics::{ccr_crossval, davies_bouldin};
use super::split::{split_heterogeneous, split_homogeneous};

/// Child index of a repeat seed that seeds its cross-validation folds.
pub const CCR_SEED_INDEX: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExperimentId {
    A,
    B,
    C,
    D,
}

impl ExperimentId {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentId::A => "A",
            ExperimentId::B => "B",
            ExperimentId::C => "C",
            ExperimentId::D => "D",
        }
    }

    pub fn setup(self) -> SetupKind {
        match self {
            ExperimentId::A => SetupKind::Homogeneous,
            _ => SetupKind::Heterogeneous,
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(ExperimentId::A),
            "B" | "b" => Ok(ExperimentId::B),
            "C" | "c" => Ok(ExperimentId::C),
            "D" | "d" => Ok(ExperimentId::D),
            other => Err(Error::invalid(format!("unknown experiment '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetupKind {
    /// Learn and evaluate on the same identities, disjoint samples.
    Homogeneous,
    /// Learn and evaluate on disjoint identities.
    Heterogeneous,
}

impl SetupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SetupKind::Homogeneous => "homogeneous",
            SetupKind::Heterogeneous => "heterogeneous",
        }
    }
}

impl fmt::Display for SetupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SetupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homogeneous" => Ok(SetupKind::Homogeneous),
            "heterogeneous" => Ok(SetupKind::Heterogeneous),
            other => Err(Error::invalid(format!("unknown setup '{other}'"))),
        }
    }
}

/// One `(C_L, C_E)` point of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub setup: SetupKind,
    pub c_learn: usize,
    pub c_eval: usize,
}

impl Configuration {
    pub fn homogeneous(classes: usize) -> Self {
        Configuration {
            setup: SetupKind::Homogeneous,
            c_learn: classes,
            c_eval: classes,
        }
    }

    pub fn heterogeneous(c_learn: usize, c_eval: usize) -> Self {
        Configuration {
            setup: SetupKind::Heterogeneous,
            c_learn,
            c_eval,
        }
    }
}

/// The configurations of one experiment, fitted to a dataset's identity count.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub id: ExperimentId,
    pub configurations: Vec<Configuration>,
    /// How the ranges were reduced to fit the data.
    pub warnings: Vec<String>,
}

/// Identity count of the corpus the full ranges were designed for.
const FULL_IDENTITIES: usize = 54;
const MAX_CLASSES: usize = 27;

impl ExperimentSpec {
    /// The experiment's ranges for a dataset with `identities` identities.
    ///
    /// * A: homogeneous, `C ∈ {2, …, min(27, K−1)}`
    /// * B: heterogeneous, `C_L = C_E ∈ {2, …, min(27, ⌊K/2⌋)}`
    /// * C: heterogeneous, `C_E = min(27, ⌊K/2⌋)`, `C_L ∈ {2, …, min(27, K−C_E)}`
    /// * D: heterogeneous, `C_L ∈ {2, …, min(52, K−2)}`, `C_E = K − C_L`
    ///
    /// With 54 identities these are exactly the full ranges; any reduction is
    /// reported in `warnings`.
    pub fn for_identities(id: ExperimentId, identities: usize) -> Result<ExperimentSpec> {
        let k = identities;
        let mut warnings = Vec::new();
        let mut clip = |what: &str, full: usize, got: usize| {
            if got < full {
                warnings.push(format!(
                    "experiment {id}: {what} clipped from {full} to {got} for {k} identities"
                ));
            }
            got
        };
        let configurations: Vec<Configuration> = match id {
            ExperimentId::A => {
                let hi = clip("C", MAX_CLASSES, MAX_CLASSES.min(k.saturating_sub(1)));
                (2..=hi).map(Configuration::homogeneous).collect()
            }
            ExperimentId::B => {
                let hi = clip("C_L = C_E", MAX_CLASSES, MAX_CLASSES.min(k / 2));
                (2..=hi)
                    .map(|c| Configuration::heterogeneous(c, c))
                    .collect()
            }
            ExperimentId::C => {
                let c_eval = clip("C_E", MAX_CLASSES, MAX_CLASSES.min(k / 2));
                let hi = clip("C_L", MAX_CLASSES, MAX_CLASSES.min(k - c_eval));
                if c_eval < 2 {
                    Vec::new()
                } else {
                    (2..=hi)
                        .map(|c| Configuration::heterogeneous(c, c_eval))
                        .collect()
                }
            }
            ExperimentId::D => {
                let hi = clip(
                    "C_L",
                    FULL_IDENTITIES - 2,
                    (FULL_IDENTITIES - 2).min(k.saturating_sub(2)),
                );
                if k != FULL_IDENTITIES {
                    warnings.push(format!("experiment {id}: C_E = {k} − C_L"));
                }
                (2..=hi)
                    .map(|c| Configuration::heterogeneous(c, k - c))
                    .collect()
            }
        };
        if configurations.is_empty() {
            return Err(Error::invalid(format!(
                "experiment {id} has no feasible configuration for {k} identities"
            )));
        }
        Ok(ExperimentSpec {
            id,
            configurations,
            warnings,
        })
    }
}

/// Which templates estimate the matching metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricFit {
    /// The evaluation templates themselves.
    #[default]
    Gallery,
    /// The learning-part templates.
    Learning,
}

impl MetricFit {
    pub fn as_str(self) -> &'static str {
        match self {
            MetricFit::Gallery => "gallery",
            MetricFit::Learning => "learning",
        }
    }
}

impl FromStr for MetricFit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gallery" => Ok(MetricFit::Gallery),
            "learning" => Ok(MetricFit::Learning),
            other => Err(Error::invalid(format!("unknown metric fit '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub repeats: usize,
    pub folds: usize,
    pub route: Route,
    pub metric_fit: MetricFit,
    pub metric: MetricConfig,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            repeats: 3,
            folds: 10,
            route: Route::MmcSvd,
            metric_fit: MetricFit::Gallery,
            metric: MetricConfig::default(),
        }
    }
}

/// Result of one learn/evaluate cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub d_hat: usize,
    pub dbi: f64,
    pub ccr: f64,
}

/// Learns on `learn`, projects `eval`, fits the metric and scores the
/// evaluation templates. Fold assignment uses `derive_seed(seed, CCR_SEED_INDEX)`.
pub fn evaluate_split(
    learn: &LabeledDataset,
    eval: &LabeledDataset,
    seed: u64,
    opts: &RunOptions,
) -> Result<Outcome> {
    let transform = match opts.route {
        Route::MmcSvd => learn_transform_mmc(learn)?.0,
        Route::Direct => learn_transform_direct(learn)?,
    };
    let templates = apply_transform_all(&transform, eval)?;
    let metric = match opts.metric_fit {
        MetricFit::Gallery => fit_metric(
            &templates,
            &MetricConfig {
                source: MetricSource::Gallery,
                ..opts.metric
            },
        )?,
        MetricFit::Learning => fit_metric(
            &apply_transform_all(&transform, learn)?,
            &MetricConfig {
                source: MetricSource::Learning,
                ..opts.metric
            },
        )?,
    };
    let ccr = ccr_crossval(
        &templates,
        &metric,
        opts.folds,
        derive_seed(seed, CCR_SEED_INDEX),
    )?;
    let gallery = TemplateGallery::new(templates)?;
    let dbi = davies_bouldin(&gallery, &metric)?;
    Ok(Outcome {
        d_hat: transform.output_dim(),
        dbi,
        ccr,
    })
}

/// Splits `data` per `config` with `seed` and runs [`evaluate_split`].
pub fn run_configuration(
    data: &LabeledDataset,
    config: &Configuration,
    seed: u64,
    opts: &RunOptions,
) -> Result<Outcome> {
    let (learn, eval) = match config.setup {
        SetupKind::Homogeneous => split_homogeneous(data, config.c_learn, seed)?,
        SetupKind::Heterogeneous => split_heterogeneous(data, config.c_learn, config.c_eval, seed)?,
    };
    evaluate_split(&learn, &eval, seed, opts)
}

/// One report line; `repeat` is `None` for a configuration mean.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub experiment: ExperimentId,
    pub setup: SetupKind,
    pub c_learn: usize,
    pub c_eval: usize,
    pub repeat: Option<usize>,
    /// The repeat seed, or the master seed on mean rows.
    pub seed: u64,
    pub d_hat: f64,
    pub dbi: f64,
    pub ccr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub experiment: ExperimentId,
    pub master_seed: u64,
    /// Per configuration: its repeats in order, then the mean row.
    pub rows: Vec<ReportRow>,
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn repeat_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.repeat.is_some())
    }

    pub fn mean_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.repeat.is_none())
    }
}

/// Runs every configuration of `spec` `opts.repeats` times.
///
/// Repeat `i` uses seed `derive_seed(master_seed, i)` for its identity draw and
/// sample split, whatever the configuration. Jobs run in parallel; rows come
/// out in configuration order regardless.
pub fn run_experiment(
    data: &LabeledDataset,
    spec: &ExperimentSpec,
    master_seed: u64,
    opts: &RunOptions,
) -> Result<EvalReport> {
    if opts.repeats == 0 {
        return Err(Error::invalid("at least one repeat is required"));
    }
    let jobs: Vec<(Configuration, usize)> = spec
        .configurations
        .iter()
        .flat_map(|&c| (0..opts.repeats).map(move |r| (c, r)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(config, repeat)| {
            let seed = derive_seed(master_seed, repeat as u64);
            let outcome = run_configuration(data, &config, seed, opts)?;
            Ok(ReportRow {
                experiment: spec.id,
                setup: config.setup,
                c_learn: config.c_learn,
                c_eval: config.c_eval,
                repeat: Some(repeat),
                seed,
                d_hat: outcome.d_hat as f64,
                dbi: outcome.dbi,
                ccr: outcome.ccr,
            })
        })
        .collect::<Result<Vec<ReportRow>>>()?;

    let mut rows = Vec::with_capacity(results.len() + spec.configurations.len());
    for chunk in results.chunks(opts.repeats) {
        let n = chunk.len() as f64;
        let mean = |f: fn(&ReportRow) -> f64| chunk.iter().map(f).sum::<f64>() / n;
        let first = &chunk[0];
        let summary = ReportRow {
            repeat: None,
            seed: master_seed,
            d_hat: mean(|r| r.d_hat),
            dbi: mean(|r| r.dbi),
            ccr: mean(|r| r.ccr),
            ..first.clone()
        };
        rows.extend_from_slice(chunk);
        rows.push(summary);
    }
    Ok(EvalReport {
        experiment: spec.id,
        master_seed,
        rows,
        warnings: spec.warnings.clone(),
    })
}
