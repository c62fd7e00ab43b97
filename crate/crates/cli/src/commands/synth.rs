use gaitlab_core::io::write_dataset;
use gaitlab_core::{synth_dataset, SynthParams};

use crate::failure::Failure;
use crate::files::write_atomic;
use crate::SynthArgs;

pub fn run(a: SynthArgs) -> Result<(), Failure> {
    let dim = 3 * a.joints * a.frames;
    let params = SynthParams {
        classes: a.classes,
        per_class: a.per_class,
        joints: a.joints,
        frames: a.frames,
        separation: a.separation,
        subspace_dim: a
            .subspace_dim
            .unwrap_or(SynthParams::default().subspace_dim.min(dim.max(1))),
        noise: a.noise,
    };
    let data = synth_dataset(&params, a.seed)?;
    write_atomic(&a.out, &write_dataset(&data))?;
    eprintln!(
        "wrote {} samples of {} identities, D = {}",
        data.len(),
        data.class_count(),
        data.dim()
    );
    Ok(())
}
