//! Parameter-shift gradients checked against central finite differences.

use serde::Serialize;

use crate::circuit::CircuitTemplate;
use crate::costs::CostKind;
use crate::error::Result;
use crate::gradients::{cost_gradient, finite_diff_gradient};
use crate::optimizer::{init_params, InitScheme};
use crate::targets::{target_pmf, TargetKind, TargetSpec};

pub const DEFAULT_STEP: f64 = 1e-5;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct GradcheckOptions {
    /// One random parameter point per seed.
    pub seeds: Vec<u64>,
    pub h: f64,
    pub tolerance: f64,
    pub costs: Vec<CostKind>,
    pub targets: Vec<TargetKind>,
}

impl Default for GradcheckOptions {
    fn default() -> Self {
        GradcheckOptions {
            seeds: super::config::DEFAULT_SEEDS.to_vec(),
            h: DEFAULT_STEP,
            tolerance: DEFAULT_TOLERANCE,
            costs: CostKind::ALL.to_vec(),
            targets: TargetKind::defaults().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradcheckRow {
    pub circuit_id: String,
    pub n_params: usize,
    pub comparisons: usize,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradcheckReport {
    pub h: f64,
    pub tolerance: f64,
    pub rows: Vec<GradcheckRow>,
}

impl GradcheckReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.rows.iter().map(|r| r.max_deviation).fold(0.0, f64::max)
    }
}

/// Largest `|shift - fd|` over every parameter of `template` at one point.
pub fn max_gradient_deviation(
    template: &CircuitTemplate,
    params: &[f64],
    kind: CostKind,
    target: &crate::circuit::ProbDist,
    h: f64,
) -> Result<f64> {
    let shift = cost_gradient(template, params, kind, target)?;
    let fd = finite_diff_gradient(template, params, kind, target, h)?;
    Ok(shift
        .iter()
        .zip(&fd)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Compares shift-rule and finite-difference gradients for every circuit,
/// seed, cost and target. KL is only checked against strictly positive
/// targets.
pub fn gradcheck(templates: &[CircuitTemplate], options: &GradcheckOptions) -> Result<GradcheckReport> {
    if options.h.is_nan() || options.h <= 0.0 {
        return Err(crate::error::Error::Config(format!(
            "finite-difference step must be positive, got {}",
            options.h
        )));
    }
    let mut rows = Vec::with_capacity(templates.len());
    for template in templates {
        let mut worst = 0.0f64;
        let mut comparisons = 0;
        for target in &options.targets {
            let dist = target_pmf(&TargetSpec::new(*target, template.n_qubits()))?;
            for &kind in &options.costs {
                if kind == CostKind::Kl && dist.iter().any(|&q| q <= 0.0) {
                    continue;
                }
                for &seed in &options.seeds {
                    let params = init_params(template, InitScheme::UniformAngles, seed);
                    worst = worst.max(max_gradient_deviation(template, &params, kind, &dist, options.h)?);
                    comparisons += 1;
                }
            }
        }
        rows.push(GradcheckRow {
            circuit_id: template.id().to_string(),
            n_params: template.n_params(),
            comparisons,
            max_deviation: worst,
            passed: worst <= options.tolerance,
        });
    }
    Ok(GradcheckReport {
        h: options.h,
        tolerance: options.tolerance,
        rows,
    })
}
