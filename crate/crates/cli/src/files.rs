use std::fs;
use std::io::Write;
use std::path::Path;

use gaitlab_core::io::{read_dataset, read_transform};
use gaitlab_core::{FeatureTransform, LabeledDataset};

use crate::failure::Failure;

pub fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::in_file(path, e.into()))
}

pub fn load_dataset(path: &Path, raw_d: bool) -> Result<LabeledDataset, Failure> {
    read_dataset(&read_text(path)?, raw_d).map_err(|e| Failure::in_file(path, e))
}

pub fn load_transform(path: &Path) -> Result<FeatureTransform, Failure> {
    read_transform(&read_text(path)?).map_err(|e| Failure::in_file(path, e))
}

/// Writes `contents` to a temporary file next to `path`, then renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::in_file(path, e.into());
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
