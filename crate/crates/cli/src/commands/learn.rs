use gaitlab_core::io::write_transform;
use gaitlab_core::{learn_transform_direct, learn_transform_mmc, Route};

use crate::failure::Failure;
use crate::files::{load_dataset, write_atomic};
use crate::LearnArgs;

pub fn run(a: LearnArgs) -> Result<(), Failure> {
    let data = load_dataset(&a.dataset, a.raw_d)?;
    let mut ft = match Route::from(a.route) {
        Route::MmcSvd => learn_transform_mmc(&data)?.0,
        Route::Direct => learn_transform_direct(&data)?,
    };
    ft.seed = a.seed;
    write_atomic(&a.out, &write_transform(&ft))?;
    let values: Vec<String> = ft.eigenvalues.iter().map(|v| format!("{v:.6}")).collect();
    eprintln!(
        "route {}: D = {}, D_hat = {}, eigenvalues [{}]",
        ft.route,
        ft.input_dim(),
        ft.output_dim(),
        values.join(", ")
    );
    Ok(())
}
