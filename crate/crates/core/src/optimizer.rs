//! Gradient descent with optional Polyak momentum.
//!
//! The update is `v' = beta * v + g`, `theta' = theta - eta * v'`; with
//! `beta = 0` this is plain gradient descent.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitTemplate, ParamVector, ProbDist};
use crate::costs::CostKind;
use crate::error::{Error, Result};
use crate::gradients::cost_and_gradient;

pub const DEFAULT_STEPSIZE: f64 = 0.1;
pub const DEFAULT_ITERATIONS: usize = 1000;
/// Momentum coefficient used when the momentum variant is requested
/// without an explicit value.
pub const DEFAULT_MOMENTUM: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitScheme {
    Zeros,
    /// I.i.d. uniform angles on `[0, 2 pi)` from a ChaCha8 stream seeded
    /// with the run seed.
    #[default]
    UniformAngles,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub stepsize: f64,
    pub iterations: usize,
    pub momentum: f64,
    pub cost: CostKind,
    pub init: InitScheme,
    pub seed: u64,
    /// Records the first iteration whose cost drops below this value.
    pub convergence_threshold: Option<f64>,
    /// Stop as soon as `convergence_threshold` is reached.
    pub stop_at_convergence: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            stepsize: DEFAULT_STEPSIZE,
            iterations: DEFAULT_ITERATIONS,
            momentum: 0.0,
            cost: CostKind::Js,
            init: InitScheme::UniformAngles,
            seed: 0,
            convergence_threshold: None,
            stop_at_convergence: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.stepsize > 0.0 && self.stepsize.is_finite()) {
            return Err(Error::Config(format!("stepsize must be positive, got {}", self.stepsize)));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::Config(format!("momentum must lie in [0, 1), got {}", self.momentum)));
        }
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be positive".into()));
        }
        if self.stop_at_convergence && self.convergence_threshold.is_none() {
            return Err(Error::Config(
                "stop_at_convergence needs a convergence_threshold".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainTrace {
    /// Cost before each update, followed by the cost at the final
    /// parameters (`iterations + 1` entries for a full run).
    pub cost_history: Vec<f64>,
    pub final_params: ParamVector,
    pub final_dist: ProbDist,
    pub converged_at: Option<usize>,
}

impl TrainTrace {
    pub fn final_cost(&self) -> f64 {
        *self.cost_history.last().expect("history is never empty")
    }

    pub fn initial_cost(&self) -> f64 {
        self.cost_history[0]
    }

    /// Number of parameter updates performed.
    pub fn iterations_run(&self) -> usize {
        self.cost_history.len() - 1
    }
}

pub fn init_params(template: &CircuitTemplate, scheme: InitScheme, seed: u64) -> ParamVector {
    match scheme {
        InitScheme::Zeros => vec![0.0; template.n_params()],
        InitScheme::UniformAngles => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..template.n_params())
                .map(|_| rng.random_range(0.0..TAU))
                .collect()
        }
    }
}

/// One momentum update. Returns `(params', velocity')`.
pub fn step(
    params: &[f64],
    gradient: &[f64],
    velocity: &[f64],
    stepsize: f64,
    momentum: f64,
) -> (Vec<f64>, Vec<f64>) {
    debug_assert!(params.len() == gradient.len() && params.len() == velocity.len());
    let velocity: Vec<f64> = velocity
        .iter()
        .zip(gradient)
        .map(|(v, g)| momentum * v + g)
        .collect();
    let params = params
        .iter()
        .zip(&velocity)
        .map(|(p, v)| p - stepsize * v)
        .collect();
    (params, velocity)
}

fn check_cost(iteration: usize, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteCost { iteration, value })
    }
}

/// Trains from the configured initialization.
pub fn train(template: &CircuitTemplate, target: &ProbDist, config: &TrainConfig) -> Result<TrainTrace> {
    let initial = init_params(template, config.init, config.seed);
    train_from(template, target, config, initial)
}

/// Trains from explicit starting parameters.
pub fn train_from(
    template: &CircuitTemplate,
    target: &ProbDist,
    config: &TrainConfig,
    initial: ParamVector,
) -> Result<TrainTrace> {
    config.validate()?;
    if target.n_outcomes() != template.n_outcomes() {
        return Err(Error::LengthMismatch {
            left: template.n_outcomes(),
            right: target.n_outcomes(),
        });
    }
    let mut params = initial;
    let mut velocity = vec![0.0; params.len()];
    let mut history = Vec::with_capacity(config.iterations + 1);
    let mut converged_at = None;

    for iteration in 0..config.iterations {
        let eval = cost_and_gradient(template, &params, config.cost, target)?;
        history.push(check_cost(iteration, eval.cost)?);
        if converged_at.is_none() && config.convergence_threshold.is_some_and(|t| eval.cost < t) {
            converged_at = Some(iteration);
            if config.stop_at_convergence {
                return Ok(TrainTrace {
                    cost_history: history,
                    final_params: params,
                    final_dist: eval.dist,
                    converged_at,
                });
            }
        }
        (params, velocity) = step(&params, &eval.gradient, &velocity, config.stepsize, config.momentum);
    }

    let final_dist = crate::circuit::evaluate(template, &params)?;
    let final_cost = check_cost(config.iterations, crate::costs::cost(config.cost, &final_dist, target)?)?;
    history.push(final_cost);
    if converged_at.is_none() && config.convergence_threshold.is_some_and(|t| final_cost < t) {
        converged_at = Some(config.iterations);
    }
    Ok(TrainTrace {
        cost_history: history,
        final_params: params,
        final_dist,
        converged_at,
    })
}
