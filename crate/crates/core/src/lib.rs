//! Statevector simulation and parameter-shift training of variational
//! circuits whose measurement probabilities are fitted to target
//! distributions.

pub mod catalog;
pub mod circuit;
pub mod costs;
pub mod error;
pub mod gradients;
pub mod harness;
pub mod optimizer;
pub mod statevec;
pub mod targets;
pub mod template_io;

pub use catalog::{catalog_all, catalog_get, CATALOG_SIZE};
pub use circuit::{classify_family, evaluate, CircuitTemplate, Family, ParamVector, ProbDist};
pub use costs::{cost, CostKind};
pub use error::{Error, Result};
pub use gradients::{cost_gradient, finite_diff_gradient, prob_jacobian, ProbJacobian, ShiftSpec};
pub use optimizer::{init_params, step, train, train_from, InitScheme, TrainConfig, TrainTrace};
pub use statevec::{AngleSource, GateKind, GateOp, Statevector};
pub use targets::{target_pmf, TargetKind, TargetSpec};
pub use template_io::{load_template, load_template_file, template_to_json};
