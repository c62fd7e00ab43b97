#![allow(dead_code)]

#[path = "../../../core/tests/support/oracles.rs"]
pub mod oracles;

pub mod corpus;

use std::path::Path;
use std::process::{Command, Output};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn gaitlab<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Run {
    let Output {
        status,
        stdout,
        stderr,
    } = Command::new(env!("CARGO_BIN_EXE_gaitlab"))
        .args(args)
        .output()
        .expect("gaitlab binary runs");
    Run {
        code: status.code().unwrap_or(-1),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

/// Runs `gaitlab` and panics with its diagnostics unless it exits 0.
pub fn ok<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Run {
    let run = gaitlab(args);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    run
}

pub fn p(path: &Path) -> String {
    path.to_str().unwrap().to_string()
}
