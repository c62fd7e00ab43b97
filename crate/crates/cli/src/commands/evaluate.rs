use gaitlab_core::io::write_report;
use gaitlab_core::{run_experiment, ExperimentSpec, RunOptions};

use crate::failure::Failure;
use crate::files::{load_dataset, write_atomic};
use crate::EvaluateArgs;

pub fn run(a: EvaluateArgs) -> Result<(), Failure> {
    let data = load_dataset(&a.dataset, a.raw_d)?;
    let spec = ExperimentSpec::for_identities(a.experiment.into(), data.class_count())?;
    for w in &spec.warnings {
        eprintln!("warning: {w}");
    }
    let opts = RunOptions {
        repeats: a.repeats,
        folds: a.folds,
        route: a.route.into(),
        metric_fit: a.metric_fit.into(),
        ..RunOptions::default()
    };
    let report = run_experiment(&data, &spec, a.seed, &opts)?;
    write_atomic(&a.out, &write_report(&report))?;
    for row in report.mean_rows() {
        eprintln!(
            "C_L = {:>2}, C_E = {:>2}: DBI {:.4}, CCR {:.4}, D_hat {:.2}",
            row.c_learn, row.c_eval, row.dbi, row.ccr, row.d_hat
        );
    }
    Ok(())
}
