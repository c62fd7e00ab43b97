use std::fmt;
use std::path::{Path, PathBuf};

use gaitlab_core::Error;

/// Why a command failed, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flag combination (exit 1).
    Usage(String),
    /// Core error, optionally tied to the file it came from (exit 2, or 3 for
    /// numeric degeneracy).
    Core { path: Option<PathBuf>, error: Error },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core {
                error: Error::Degenerate(_),
                ..
            } => 3,
            Failure::Core { .. } => 2,
        }
    }

    pub fn in_file(path: &Path, error: Error) -> Failure {
        Failure::Core {
            path: Some(path.to_path_buf()),
            error,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Core {
                path: Some(p),
                error,
            } => write!(f, "{}: {error}", p.display()),
            Failure::Core { path: None, error } => write!(f, "{error}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure::Core { path: None, error }
    }
}
