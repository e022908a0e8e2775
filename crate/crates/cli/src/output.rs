//! CSV and JSON artifacts for one experiment run.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::experiment::{DecoratedTrajectory, ExperimentOutput};

fn write_file(path: PathBuf, contents: &str) -> Result<PathBuf, CliError> {
    fs::write(&path, contents).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Decorated state values, one row per `(step, j, n)`.
pub fn trajectory_csv(out: &ExperimentOutput) -> String {
    let n = out.base_group.order();
    let mut csv = String::from("step,j,n,value\n");
    let mut row = |step: usize, id: usize, value: &dyn std::fmt::Display| {
        let _ = writeln!(csv, "{step},{},{},{value}", id / n, id % n);
    };
    match &out.trajectory {
        DecoratedTrajectory::Exact(states) => {
            for (step, s) in states.iter().enumerate() {
                for (id, v) in s.values().iter().enumerate() {
                    row(step, id, v);
                }
            }
        }
        DecoratedTrajectory::Chip { states, .. } => {
            for (step, s) in states.iter().enumerate() {
                for (id, v) in s.values().iter().enumerate() {
                    row(step, id, v);
                }
            }
        }
    }
    csv
}

pub fn projection_csv(out: &ExperimentOutput) -> String {
    let mut csv = String::from("step,n,re,im\n");
    for r in &out.reports {
        for (n, v) in r.projection.iter().enumerate() {
            let _ = writeln!(csv, "{},{n},{},{}", r.step, v.re, v.im);
        }
    }
    csv
}

/// Coefficientwise ratios between consecutive steps. Vertices where the
/// previous value vanishes are skipped.
pub fn ratios_csv(out: &ExperimentOutput) -> String {
    let eps = out.expected_epsilon.unwrap_or(f64::NAN);
    let mut csv = String::from("step,n,ratio_abs,expected_epsilon,ratio_re,ratio_im\n");
    for r in &out.reports {
        for (n, ratio) in r.ratios.iter().enumerate() {
            if let Some(q) = ratio {
                let _ = writeln!(csv, "{},{n},{},{eps},{},{}", r.step, q.norm(), q.re, q.im);
            }
        }
    }
    csv
}

pub fn loss_csv(out: &ExperimentOutput) -> Option<String> {
    let ledger = out.trajectory.ledger()?;
    let mut csv = String::from("step,chips_lost,total_remaining\n");
    for e in &ledger.entries {
        let _ = writeln!(csv, "{},{},{}", e.step, e.chips_lost, e.total_remaining);
    }
    Some(csv)
}

/// Writes every artifact into `dir`, creating it if needed. Returns the
/// paths written, in a fixed order.
pub fn emit_outputs(
    cfg: &ExperimentConfig,
    out: &ExperimentOutput,
    dir: &Path,
    with_dot: bool,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = vec![
        write_file(dir.join("config.json"), &(cfg.to_json() + "\n"))?,
        write_file(dir.join("trajectory.csv"), &trajectory_csv(out))?,
        write_file(dir.join("projection.csv"), &projection_csv(out))?,
    ];
    if out.expected_epsilon.is_some() {
        written.push(write_file(dir.join("ratios.csv"), &ratios_csv(out))?);
    }
    if let Some(csv) = loss_csv(out) {
        written.push(write_file(dir.join("loss.csv"), &csv)?);
    }
    if let Some(f) = &out.fidelity {
        let json = serde_json::to_string_pretty(f).expect("fidelity serializes");
        written.push(write_file(dir.join("fidelity.json"), &(json + "\n"))?);
    }
    if with_dot {
        written.push(write_file(
            dir.join("graph.dot"),
            &out.digraph.to_dot(|g| out.matrix.group().label(g)),
        )?);
    }
    Ok(written)
}
