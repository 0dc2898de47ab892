use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..={max}", max = crate::statevec::MAX_QUBITS)]
    QubitCount(usize),

    #[error("qubit index {index} out of range for {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("gate {kind} needs an angle but none was supplied")]
    MissingAngle { kind: &'static str },

    #[error("invalid template at {field}: {message}")]
    InvalidTemplate { field: String, message: String },

    #[error("parameter vector has length {got}, template expects {expected}")]
    ParamLength { expected: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("unknown catalog circuit id {0} (valid ids are 1..=22)")]
    UnknownCircuit(u32),

    #[error(
        "KL divergence undefined: P({outcome}) = {p:e} > 0 while Q({outcome}) = 0; use the JS cost for targets with zero-probability outcomes"
    )]
    KlDomain { outcome: usize, p: f64 },

    #[error("non-finite cost at iteration {iteration}: {value}")]
    NonFiniteCost { iteration: usize, value: f64 },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("failed to parse {what} (line {line}, column {column}): {message}")]
    Parse {
        what: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn template(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidTemplate {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn parse(what: impl Into<String>, err: &serde_json::Error) -> Self {
        Error::Parse {
            what: what.into(),
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }

    /// True for failures of the numerics (NaN costs, divergence domain
    /// violations) as opposed to bad input or I/O.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::KlDomain { .. } | Error::NonFiniteCost { .. })
    }
}
