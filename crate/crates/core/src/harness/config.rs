use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::{catalog_get, CATALOG_SIZE};
use crate::circuit::CircuitTemplate;
use crate::error::{Error, Result};
use crate::optimizer::TrainConfig;
use crate::targets::TargetKind;
use crate::template_io::load_template_file;

/// A catalog id or a path to an ansatz document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CircuitRef {
    Catalog(u32),
    File(PathBuf),
}

impl CircuitRef {
    /// Parses a CLI argument: an integer is a catalog id, anything else a path.
    pub fn parse_arg(s: &str) -> Self {
        match s.parse::<u32>() {
            Ok(id) => CircuitRef::Catalog(id),
            Err(_) => CircuitRef::File(PathBuf::from(s)),
        }
    }

    pub fn resolve(&self) -> Result<CircuitTemplate> {
        match self {
            CircuitRef::Catalog(id) => catalog_get(*id),
            CircuitRef::File(path) => load_template_file(path),
        }
    }
}

pub const DEFAULT_SEEDS: [u64; 5] = [0, 1, 2, 3, 4];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "all_catalog")]
    pub circuits: Vec<CircuitRef>,
    #[serde(default = "default_targets")]
    pub targets: Vec<TargetKind>,
    #[serde(default)]
    pub train: TrainConfig,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
}

fn all_catalog() -> Vec<CircuitRef> {
    (1..=CATALOG_SIZE).map(CircuitRef::Catalog).collect()
}

fn default_targets() -> Vec<TargetKind> {
    TargetKind::defaults().to_vec()
}

fn default_seeds() -> Vec<u64> {
    DEFAULT_SEEDS.to_vec()
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

impl Default for ExperimentConfig {
    /// The full sweep: every catalog circuit against the four default
    /// targets with five seeds.
    fn default() -> Self {
        ExperimentConfig {
            circuits: all_catalog(),
            targets: default_targets(),
            train: TrainConfig::default(),
            seeds: default_seeds(),
            output_dir: default_output(),
        }
    }
}

impl ExperimentConfig {
    /// Reads a JSON config. Relative template paths are resolved against
    /// the config file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| Error::parse(path.display().to_string(), &e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for c in &mut config.circuits {
            if let CircuitRef::File(p) = c {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.circuits.is_empty() {
            return Err(Error::Config("circuits must not be empty".into()));
        }
        if self.targets.is_empty() {
            return Err(Error::Config("targets must not be empty".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("seeds must not be empty".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = self.seeds.iter().find(|s| !seen.insert(**s)) {
            return Err(Error::Config(format!("seed {dup} listed twice")));
        }
        for t in &self.targets {
            t.validate()?;
        }
        self.train.validate()
    }

    /// Validates the config and loads every circuit, failing before any
    /// training starts.
    pub fn resolve_circuits(&self) -> Result<Vec<CircuitTemplate>> {
        self.validate()?;
        self.circuits
            .iter()
            .map(|c| {
                c.resolve()
                    .map_err(|e| Error::Config(format!("circuit {c:?}: {e}")))
            })
            .collect()
    }
}
