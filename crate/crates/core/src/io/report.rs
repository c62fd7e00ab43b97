use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::eval::{EvalReport, ReportRow};

pub const REPORT_HEADER: &str = "experiment,setup,c_learn,c_eval,repeat,seed,d_hat,dbi,ccr";

/// CSV with one line per repeat and a `mean` line closing each configuration.
pub fn write_report(report: &EvalReport) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in &report.rows {
        let repeat = r.repeat.map_or("mean".to_string(), |i| i.to_string());
        let d_hat = match r.repeat {
            Some(_) if r.d_hat.fract() == 0.0 => format!("{}", r.d_hat as u64),
            _ => format!("{:?}", r.d_hat),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:?},{:?}",
            r.experiment, r.setup, r.c_learn, r.c_eval, repeat, r.seed, d_hat, r.dbi, r.ccr
        )
        .expect("writing to a String");
    }
    out
}

pub fn read_report(text: &str) -> Result<Vec<ReportRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == REPORT_HEADER => {}
        _ => return Err(Error::parse(1, "missing report header")),
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let n = k + 2;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 9 {
            return Err(Error::parse(
                n,
                format!("expected 9 fields, found {}", f.len()),
            ));
        }
        let int = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(n, format!("bad count '{s}'")))
        };
        let float = |s: &str| -> Result<f64> {
            match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Error::parse(n, format!("bad number '{s}'"))),
            }
        };
        rows.push(ReportRow {
            experiment: f[0].parse().map_err(|e| Error::parse(n, e))?,
            setup: f[1].parse().map_err(|e| Error::parse(n, e))?,
            c_learn: int(f[2])?,
            c_eval: int(f[3])?,
            repeat: if f[4] == "mean" {
                None
            } else {
                Some(int(f[4])?)
            },
            seed: f[5]
                .parse()
                .map_err(|_| Error::parse(n, format!("bad seed '{}'", f[5])))?,
            d_hat: float(f[6])?,
            dbi: float(f[7])?,
            ccr: float(f[8])?,
        });
    }
    Ok(rows)
}
