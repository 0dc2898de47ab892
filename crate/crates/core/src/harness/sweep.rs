//! Seeded sweeps over (circuit x target x seed).

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::{CircuitTemplate, Family};
use crate::error::{Error, Result};
use crate::optimizer::{train, TrainConfig, TrainTrace};
use crate::targets::{target_pmf, TargetKind, TargetSpec};

use super::config::ExperimentConfig;
use super::records::{
    rewrite_ndjson, run_key, FailureRecord, HistoryRecord, RecordSink, ResultRecord,
    FAILURES_FILE, HISTORIES_FILE, RECORDS_FILE,
};

pub const SUMMARY_FILE: &str = "summary.csv";

/// Median and minimum final cost over seeds for one (circuit, target) pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub circuit_id: String,
    pub family: Family,
    pub n_qubits: usize,
    pub target: String,
    pub runs: usize,
    pub median_final_cost: f64,
    pub min_final_cost: f64,
    #[serde(skip)]
    pub circuit_index: usize,
    #[serde(skip)]
    pub target_index: usize,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    /// Completed runs, sorted by [`ResultRecord::order_key`].
    pub records: Vec<ResultRecord>,
    pub histories: Vec<HistoryRecord>,
    pub failures: Vec<FailureRecord>,
    pub summary: Vec<SummaryRow>,
}

impl SweepOutcome {
    pub fn summary_for(&self, circuit_id: &str, target: &TargetKind) -> Option<&SummaryRow> {
        let label = target.to_string();
        self.summary
            .iter()
            .find(|r| r.circuit_id == circuit_id && r.target == label)
    }
}

/// Median by total order; mean of the two middle values for even counts.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    assert!(n > 0, "median of empty set");
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

pub fn summarize(records: &[ResultRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, usize), Vec<&ResultRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.circuit_index, r.target_index)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((ci, ti), rs)| {
            let costs: Vec<f64> = rs.iter().map(|r| r.final_cost).collect();
            SummaryRow {
                circuit_id: rs[0].circuit_id.clone(),
                family: rs[0].family,
                n_qubits: rs[0].n_qubits,
                target: rs[0].target.to_string(),
                runs: rs.len(),
                median_final_cost: median(&costs),
                min_final_cost: costs.iter().copied().fold(f64::INFINITY, f64::min),
                circuit_index: ci,
                target_index: ti,
            }
        })
        .collect()
}

pub fn write_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

struct Job<'a> {
    circuit_index: usize,
    template: &'a CircuitTemplate,
    target_index: usize,
    target: TargetKind,
    seed: u64,
}

/// Trains one (circuit, target, seed) combination.
pub fn run_single(
    template: &CircuitTemplate,
    target: TargetKind,
    train_config: &TrainConfig,
) -> Result<(TrainTrace, f64)> {
    let dist = target_pmf(&TargetSpec::new(target, template.n_qubits()))?;
    let start = Instant::now();
    let trace = train(template, &dist, train_config)?;
    Ok((trace, start.elapsed().as_secs_f64()))
}

fn make_record(job: &Job<'_>, train_config: &TrainConfig, trace: TrainTrace, wall: f64) -> (ResultRecord, HistoryRecord) {
    let key = run_key(job.template.id(), job.target_index, &job.target, job.seed);
    let record = ResultRecord {
        run_key: key.clone(),
        circuit_id: job.template.id().to_string(),
        circuit_index: job.circuit_index,
        family: job.template.family(),
        n_qubits: job.template.n_qubits(),
        target: job.target,
        target_index: job.target_index,
        seed: job.seed,
        cost: train_config.cost,
        initial_cost: trace.initial_cost(),
        final_cost: trace.final_cost(),
        iterations: trace.iterations_run(),
        converged_at: trace.converged_at,
        wall_time_s: wall,
        final_params: trace.final_params,
        final_dist: trace.final_dist.into_vec(),
    };
    let history = HistoryRecord {
        run_key: key,
        cost_history: trace.cost_history,
    };
    (record, history)
}

/// Runs every (circuit, target, seed) combination of `config` on a pool of
/// `workers` threads.
///
/// Config and circuit errors abort before any run starts. Runs are
/// persisted as they complete; when the sweep finishes the record and
/// history files are rewritten in sorted order and `summary.csv` is
/// written. Training failures are recorded in `failures.ndjson` and do not
/// stop the sweep.
pub fn run_sweep(config: &ExperimentConfig, workers: usize) -> Result<SweepOutcome> {
    let templates = config.resolve_circuits()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let sink = RecordSink::create(&config.output_dir)?;

    let mut jobs = Vec::new();
    for (circuit_index, template) in templates.iter().enumerate() {
        for (target_index, target) in config.targets.iter().enumerate() {
            for &seed in &config.seeds {
                jobs.push(Job {
                    circuit_index,
                    template,
                    target_index,
                    target: *target,
                    seed,
                });
            }
        }
    }

    enum Done {
        Ok(Box<(ResultRecord, HistoryRecord)>),
        Failed(FailureRecord),
    }

    let results: Vec<Result<Done>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let train_config = TrainConfig {
                    seed: job.seed,
                    ..config.train.clone()
                };
                match run_single(job.template, job.target, &train_config) {
                    Ok((trace, wall)) => {
                        let (record, history) = make_record(job, &train_config, trace, wall);
                        sink.append(&record, &history)?;
                        Ok(Done::Ok(Box::new((record, history))))
                    }
                    Err(e) => {
                        let failure = FailureRecord {
                            run_key: run_key(job.template.id(), job.target_index, &job.target, job.seed),
                            circuit_id: job.template.id().to_string(),
                            target: job.target,
                            seed: job.seed,
                            numerical: e.is_numerical(),
                            error: e.to_string(),
                        };
                        sink.append_failure(&failure)?;
                        Ok(Done::Failed(failure))
                    }
                }
            })
            .collect()
    });

    let mut records = Vec::new();
    let mut histories = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r? {
            Done::Ok(pair) => {
                let (record, history) = *pair;
                records.push(record);
                histories.push(history);
            }
            Done::Failed(f) => failures.push(f),
        }
    }
    drop(sink);

    records.sort_by_key(|r| r.order_key());
    let order: BTreeMap<&str, (usize, usize, u64)> =
        records.iter().map(|r| (r.run_key.as_str(), r.order_key())).collect();
    histories.sort_by_key(|h| order[h.run_key.as_str()]);
    failures.sort_by(|a, b| a.run_key.cmp(&b.run_key));

    let dir = &config.output_dir;
    rewrite_ndjson(&dir.join(RECORDS_FILE), &records)?;
    rewrite_ndjson(&dir.join(HISTORIES_FILE), &histories)?;
    rewrite_ndjson(&dir.join(FAILURES_FILE), &failures)?;
    let summary = summarize(&records);
    write_summary_csv(&summary, &dir.join(SUMMARY_FILE))?;

    Ok(SweepOutcome {
        records,
        histories,
        failures,
        summary,
    })
}
