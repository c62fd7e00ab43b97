use std::fmt::Write as _;

use gaitlab_core::io::write_dataset;
use gaitlab_core::matching::classify_all;
use gaitlab_core::{
    fit_metric, FeatureTransform, LabeledDataset, Layout, MetricConfig, MetricFit, MetricSource,
    TemplateGallery,
};

use crate::failure::Failure;
use crate::files::{load_dataset, load_transform, write_atomic};
use crate::{ClassifyArgs, TransformArgs};

/// Label marking a probe of unknown identity.
const UNLABELED: &str = "?";

fn project(ft: &FeatureTransform, data: &LabeledDataset) -> Result<LabeledDataset, Failure> {
    if data.dim() != ft.input_dim() {
        return Err(gaitlab_core::Error::DimensionMismatch {
            expected: ft.input_dim(),
            found: data.dim(),
        }
        .into());
    }
    let templates = ft.phi.tr_mul(data.samples());
    Ok(LabeledDataset::new(
        Layout::Raw,
        templates,
        data.labels().to_vec(),
    )?)
}

pub fn transform(a: TransformArgs) -> Result<(), Failure> {
    let ft = load_transform(&a.transform)?;
    let data = load_dataset(&a.dataset, a.raw_d)?;
    let templates = project(&ft, &data)?;
    write_atomic(&a.out, &write_dataset(&templates))?;
    eprintln!(
        "wrote {} templates, D_hat = {}",
        templates.len(),
        ft.output_dim()
    );
    Ok(())
}

pub fn classify(a: ClassifyArgs) -> Result<(), Failure> {
    let ft = load_transform(&a.transform)?;
    let fit = MetricFit::from(a.metric_fit);
    let learning = match (fit, &a.learning) {
        (MetricFit::Learning, None) => {
            return Err(Failure::Usage(
                "--metric-fit learning needs --learning <DATASET>".into(),
            ))
        }
        (MetricFit::Learning, Some(p)) => Some(load_dataset(p, a.raw_d)?),
        (MetricFit::Gallery, _) => None,
    };
    let gallery_data = load_dataset(&a.gallery, a.raw_d)?;
    let probe_data = load_dataset(&a.probes, a.raw_d)?;

    let gallery = gaitlab_core::apply_transform_all(&ft, &gallery_data)?;
    let probes = gaitlab_core::apply_transform_all(&ft, &probe_data)?;
    let (fit_set, source) = match &learning {
        Some(l) => (
            gaitlab_core::apply_transform_all(&ft, l)?,
            MetricSource::Learning,
        ),
        None => (gallery.clone(), MetricSource::Gallery),
    };
    let config = MetricConfig {
        ridge: a.ridge,
        source,
        ..MetricConfig::default()
    };
    let metric = fit_metric(&fit_set, &config)?;
    let gallery = TemplateGallery::new(gallery)?;
    let predicted = classify_all(&gallery, &probes, &metric)?;

    let mut out = String::new();
    if !predicted.is_empty() {
        out.push_str("probe,label,predicted\n");
    }
    let (mut labeled, mut correct) = (0usize, 0usize);
    for (i, (truth, guess)) in probe_data.labels().iter().zip(&predicted).enumerate() {
        writeln!(out, "{i},{truth},{guess}").expect("writing to a String");
        if truth != UNLABELED {
            labeled += 1;
            correct += usize::from(truth == guess);
        }
    }
    match &a.out {
        Some(path) => write_atomic(path, &out)?,
        None => print!("{out}"),
    }
    if labeled > 0 {
        eprintln!(
            "CCR {:.4} ({correct}/{labeled})",
            correct as f64 / labeled as f64
        );
    }
    Ok(())
}
