//! Text formats for datasets, transforms and evaluation reports.
//!
//! All three round-trip bit-exactly: floats are written in the shortest form
//! that parses back to the same double.

mod dataset;
mod report;
mod transform;

pub use dataset::{read_dataset, write_dataset, DatasetHeader, DATASET_VERSION};
pub use report::{read_report, write_report, REPORT_HEADER};
pub use transform::{read_transform, write_transform, TRANSFORM_VERSION};
