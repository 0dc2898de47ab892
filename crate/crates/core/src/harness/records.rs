//! Newline-delimited JSON persistence for sweep results.
//!
//! A sweep directory holds `records.ndjson` (one [`ResultRecord`] per
//! completed run), `histories.ndjson` (the matching cost histories, keyed by
//! `run_key`) and `failures.ndjson`. A history line is always written and
//! flushed before its record line.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::circuit::Family;
use crate::costs::CostKind;
use crate::error::{Error, Result};
use crate::targets::TargetKind;

pub const RECORDS_FILE: &str = "records.ndjson";
pub const HISTORIES_FILE: &str = "histories.ndjson";
pub const FAILURES_FILE: &str = "failures.ndjson";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub run_key: String,
    pub circuit_id: String,
    /// Position of the circuit in the sweep config.
    pub circuit_index: usize,
    pub family: Family,
    pub n_qubits: usize,
    pub target: TargetKind,
    /// Position of the target in the sweep config.
    pub target_index: usize,
    pub seed: u64,
    pub cost: CostKind,
    pub initial_cost: f64,
    /// Equal to the last entry of the run's cost history.
    pub final_cost: f64,
    pub iterations: usize,
    pub converged_at: Option<usize>,
    pub wall_time_s: f64,
    pub final_params: Vec<f64>,
    pub final_dist: Vec<f64>,
}

impl ResultRecord {
    /// Sort key normalizing output order across serial and parallel sweeps.
    pub fn order_key(&self) -> (usize, usize, u64) {
        (self.circuit_index, self.target_index, self.seed)
    }

    /// Field-by-field equality ignoring wall-clock time.
    pub fn same_outcome(&self, other: &ResultRecord) -> bool {
        let mut a = self.clone();
        a.wall_time_s = other.wall_time_s;
        &a == other
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryRecord {
    pub run_key: String,
    pub cost_history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub run_key: String,
    pub circuit_id: String,
    pub target: TargetKind,
    pub seed: u64,
    pub numerical: bool,
    pub error: String,
}

pub(crate) fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

pub fn run_key(circuit_id: &str, target_index: usize, target: &TargetKind, seed: u64) -> String {
    format!("c{}_t{}-{}_s{}", sanitize(circuit_id), target_index, target.name(), seed)
}

fn to_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("records serialize");
    s.push('\n');
    s
}

/// Append-only writer shared by the sweep workers.
pub struct RecordSink {
    inner: Mutex<SinkFiles>,
    dir: PathBuf,
}

struct SinkFiles {
    records: File,
    histories: File,
    failures: File,
}

fn open_truncated(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::io(path, e))
}

impl RecordSink {
    /// Creates `dir` if needed and starts fresh record files in it.
    pub fn create(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        Ok(RecordSink {
            inner: Mutex::new(SinkFiles {
                records: open_truncated(&dir.join(RECORDS_FILE))?,
                histories: open_truncated(&dir.join(HISTORIES_FILE))?,
                failures: open_truncated(&dir.join(FAILURES_FILE))?,
            }),
            dir: dir.to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn append(&self, record: &ResultRecord, history: &HistoryRecord) -> Result<()> {
        let mut files = self.inner.lock().expect("sink lock poisoned");
        let hpath = self.dir.join(HISTORIES_FILE);
        files
            .histories
            .write_all(to_line(history).as_bytes())
            .and_then(|_| files.histories.flush())
            .map_err(|e| Error::io(&hpath, e))?;
        let rpath = self.dir.join(RECORDS_FILE);
        files
            .records
            .write_all(to_line(record).as_bytes())
            .and_then(|_| files.records.flush())
            .map_err(|e| Error::io(&rpath, e))
    }

    pub fn append_failure(&self, failure: &FailureRecord) -> Result<()> {
        let mut files = self.inner.lock().expect("sink lock poisoned");
        let path = self.dir.join(FAILURES_FILE);
        files
            .failures
            .write_all(to_line(failure).as_bytes())
            .and_then(|_| files.failures.flush())
            .map_err(|e| Error::io(&path, e))
    }
}

/// Reads an NDJSON file. A final line without a terminating newline is an
/// interrupted write and is skipped.
pub fn read_ndjson<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = BufReader::new(file);
    let mut out = Vec::new();
    let mut line = String::new();
    let mut lineno = 0;
    loop {
        line.clear();
        let n = reader.read_line(&mut line).map_err(|e| Error::io(path, e))?;
        if n == 0 || !line.ends_with('\n') {
            break;
        }
        lineno += 1;
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(&line).map_err(|e| Error::Parse {
            what: path.display().to_string(),
            line: lineno,
            column: e.column(),
            message: e.to_string(),
        })?;
        out.push(value);
    }
    Ok(out)
}

pub fn read_records(dir: &Path) -> Result<Vec<ResultRecord>> {
    read_ndjson(&dir.join(RECORDS_FILE))
}

pub fn read_histories(dir: &Path) -> Result<HashMap<String, Vec<f64>>> {
    Ok(read_ndjson::<HistoryRecord>(&dir.join(HISTORIES_FILE))?
        .into_iter()
        .map(|h| (h.run_key, h.cost_history))
        .collect())
}

pub fn read_failures(dir: &Path) -> Result<Vec<FailureRecord>> {
    read_ndjson(&dir.join(FAILURES_FILE))
}

/// Replaces `path` with the given lines via a temporary file and rename.
pub(crate) fn rewrite_ndjson<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let tmp = path.with_extension("ndjson.tmp");
    let mut body = String::new();
    for item in items {
        body.push_str(&to_line(item));
    }
    std::fs::write(&tmp, body).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Appends to an existing NDJSON file, creating it if absent.
pub(crate) fn append_ndjson<T: Serialize>(path: &Path, item: &T) -> Result<()> {
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    f.write_all(to_line(item).as_bytes()).map_err(|e| Error::io(path, e))
}

/// Appends one run to the record files in `dir` without truncating them.
pub fn append_run(dir: &Path, record: &ResultRecord, history: &HistoryRecord) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    append_ndjson(&dir.join(HISTORIES_FILE), history)?;
    append_ndjson(&dir.join(RECORDS_FILE), record)
}
