//! CSV emission for plotting: per-run histograms, per-run cost traces and
//! the per-circuit accuracy table.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::targets::{target_pmf, TargetSpec};

use super::records::ResultRecord;
use super::sweep::summarize;

pub const ACCURACY_FILE: &str = "accuracy.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// `outcome, model, target` per run.
    Histogram,
    /// `circuit_id, family, n_qubits, target, median_final_cost, ...`.
    Accuracy,
    /// `iteration, cost` per run.
    Trace,
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "histogram" => Ok(PlotKind::Histogram),
            "accuracy" => Ok(PlotKind::Accuracy),
            "trace" => Ok(PlotKind::Trace),
            other => Err(Error::Config(format!(
                "unknown plot kind {other:?} (expected histogram, accuracy or trace)"
            ))),
        }
    }
}

#[derive(Serialize)]
struct HistogramRow {
    outcome: usize,
    model: f64,
    target: f64,
}

#[derive(Serialize)]
struct TraceRow {
    iteration: usize,
    cost: f64,
}

fn write_rows<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes the requested plot data into `out_dir` and returns the files
/// written. `histories` maps run keys to cost histories and is only needed
/// for [`PlotKind::Trace`].
pub fn emit_plotdata(
    records: &[ResultRecord],
    histories: &HashMap<String, Vec<f64>>,
    kind: PlotKind,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        return Err(Error::Config("no records to emit plot data from".into()));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    match kind {
        PlotKind::Accuracy => {
            let path = out_dir.join(ACCURACY_FILE);
            super::sweep::write_summary_csv(&summarize(records), &path)?;
            written.push(path);
        }
        PlotKind::Histogram => {
            for r in records {
                let target = target_pmf(&TargetSpec::new(r.target, r.n_qubits))?;
                let path = out_dir.join(format!("histogram_{}.csv", r.run_key));
                write_rows(
                    &path,
                    r.final_dist
                        .iter()
                        .zip(target.iter())
                        .enumerate()
                        .map(|(outcome, (&model, &target))| HistogramRow { outcome, model, target }),
                )?;
                written.push(path);
            }
        }
        PlotKind::Trace => {
            for r in records {
                let history = histories.get(&r.run_key).ok_or_else(|| {
                    Error::Config(format!("no cost history stored for run {}", r.run_key))
                })?;
                let path = out_dir.join(format!("trace_{}.csv", r.run_key));
                write_rows(
                    &path,
                    history
                        .iter()
                        .enumerate()
                        .map(|(iteration, &cost)| TraceRow { iteration, cost }),
                )?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
