//! Batch orchestration: experiment configs, sweeps, result persistence,
//! gradient checks and plot-data emission.

pub mod config;
pub mod gradcheck;
pub mod plotdata;
pub mod records;
pub mod sweep;

pub use config::{CircuitRef, ExperimentConfig};
pub use gradcheck::{gradcheck, GradcheckOptions, GradcheckReport};
pub use plotdata::{emit_plotdata, PlotKind};
pub use records::{read_failures, read_histories, read_records, FailureRecord, HistoryRecord, ResultRecord};
pub use sweep::{run_single, run_sweep, summarize, SummaryRow, SweepOutcome};
