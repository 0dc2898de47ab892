//! Exact gradients of circuit output probabilities via the parameter-shift
//! rule, composed with analytic cost derivatives by the chain rule.
//!
//! For a gate `exp(-i theta G)` whose generator has eigenvalues `+-r`,
//!
//! ```text
//! d f / d theta = r * ( f(theta + s) - f(theta - s) ),   s = pi / (4 r)
//! ```
//!
//! holds exactly for every output probability `f = P(x)`. The half-angle
//! rotations RX/RY/RZ have `r = 1/2`, so `s = pi/2` and the prefactor is
//! `1/2`. The shift must be applied to the probabilities, not to the cost:
//! the cost is nonlinear in `P`, so `(C(theta + s) - C(theta - s)) / 2` is
//! not its derivative (see [`cost_level_shift_gradient`]).

use std::f64::consts::PI;

use crate::circuit::{CircuitTemplate, ProbDist};
use crate::costs::{cost, cost_derivative, CostKind};
use crate::error::{Error, Result};
use crate::statevec::GateKind;

/// Shift parameters for a generator with eigenvalues `+-r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftSpec {
    pub r: f64,
}

impl ShiftSpec {
    /// Half-angle Pauli rotations.
    pub const PAULI_ROTATION: ShiftSpec = ShiftSpec { r: 0.5 };

    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidGate(format!(
                "generator eigenvalue magnitude must be positive, got {r}"
            )));
        }
        Ok(ShiftSpec { r })
    }

    pub fn for_gate(kind: GateKind) -> Option<ShiftSpec> {
        kind.is_rotation().then_some(Self::PAULI_ROTATION)
    }

    pub fn shift(&self) -> f64 {
        PI / (4.0 * self.r)
    }

    pub fn scale(&self) -> f64 {
        self.r
    }

    /// Exact derivative at `theta` of a vector-valued `f` that depends on
    /// `theta` only through one gate `exp(-i theta G)`.
    pub fn differentiate<F>(&self, f: F, theta: f64) -> Vec<f64>
    where
        F: Fn(f64) -> Vec<f64>,
    {
        let s = self.shift();
        let plus = f(theta + s);
        let minus = f(theta - s);
        plus.iter()
            .zip(&minus)
            .map(|(a, b)| self.r * (a - b))
            .collect()
    }
}

/// `entries[x][j] = dP(x)/d theta_j`, a `2^n x n_params` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbJacobian {
    n_outcomes: usize,
    n_params: usize,
    /// Column-major: column `j` is contiguous.
    data: Vec<f64>,
}

impl ProbJacobian {
    pub fn n_outcomes(&self) -> usize {
        self.n_outcomes
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn get(&self, outcome: usize, param: usize) -> f64 {
        self.data[param * self.n_outcomes + outcome]
    }

    pub fn column(&self, param: usize) -> &[f64] {
        &self.data[param * self.n_outcomes..(param + 1) * self.n_outcomes]
    }

    /// `v^T J`, summed over outcomes in index order.
    pub fn vector_product(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n_params)
            .map(|j| {
                self.column(j)
                    .iter()
                    .zip(v)
                    .fold(0.0, |acc, (jac, dv)| acc + dv * jac)
            })
            .collect()
    }
}

/// Probability Jacobian by the parameter-shift rule.
///
/// Each gate bound to slot `j` is shifted separately and the contributions
/// summed, so shared slots are handled. Costs two circuit runs per gate
/// occurrence.
pub fn prob_jacobian(template: &CircuitTemplate, params: &[f64]) -> Result<ProbJacobian> {
    template.check_params(params)?;
    let n_outcomes = template.n_outcomes();
    let n_params = template.n_params();
    let mut data = vec![0.0; n_outcomes * n_params];
    for j in 0..n_params {
        let column = &mut data[j * n_outcomes..(j + 1) * n_outcomes];
        for gate in template.gates_for_slot(j) {
            let spec = ShiftSpec::for_gate(template.ops()[gate].kind)
                .expect("slot-bound gates are rotations");
            let theta = params[j];
            let d = spec.differentiate(
                |t| template.probs_shifted(params, Some((gate, t - theta))).into_vec(),
                theta,
            );
            for (c, v) in column.iter_mut().zip(d) {
                *c += v;
            }
        }
    }
    Ok(ProbJacobian {
        n_outcomes,
        n_params,
        data,
    })
}

fn check_target(template: &CircuitTemplate, target: &ProbDist) -> Result<()> {
    if target.n_outcomes() != template.n_outcomes() {
        return Err(Error::LengthMismatch {
            left: template.n_outcomes(),
            right: target.n_outcomes(),
        });
    }
    Ok(())
}

/// Cost value, model distribution, and gradient at `params`.
#[derive(Debug, Clone)]
pub struct CostEval {
    pub cost: f64,
    pub dist: ProbDist,
    pub gradient: Vec<f64>,
}

/// Evaluates the cost and its gradient `sum_x dC/dP(x) * dP(x)/d theta_j`.
pub fn cost_and_gradient(
    template: &CircuitTemplate,
    params: &[f64],
    kind: CostKind,
    target: &ProbDist,
) -> Result<CostEval> {
    check_target(template, target)?;
    template.check_params(params)?;
    let dist = template.probs_shifted(params, None);
    let value = cost(kind, &dist, target)?;
    let dc_dp = cost_derivative(kind, &dist, target)?;
    let gradient = prob_jacobian(template, params)?.vector_product(&dc_dp);
    Ok(CostEval {
        cost: value,
        dist,
        gradient,
    })
}

/// Gradient of the cost with respect to each parameter slot.
pub fn cost_gradient(
    template: &CircuitTemplate,
    params: &[f64],
    kind: CostKind,
    target: &ProbDist,
) -> Result<Vec<f64>> {
    Ok(cost_and_gradient(template, params, kind, target)?.gradient)
}

fn cost_at(
    template: &CircuitTemplate,
    params: &[f64],
    kind: CostKind,
    target: &ProbDist,
) -> Result<f64> {
    let p = template.probs_shifted(params, None);
    cost(kind, &p, target)
}

/// Central finite differences `(C(theta_j + h) - C(theta_j - h)) / 2h`.
pub fn finite_diff_gradient(
    template: &CircuitTemplate,
    params: &[f64],
    kind: CostKind,
    target: &ProbDist,
    h: f64,
) -> Result<Vec<f64>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Config(format!("finite-difference step must be positive, got {h}")));
    }
    check_target(template, target)?;
    template.check_params(params)?;
    let mut shifted = params.to_vec();
    (0..params.len())
        .map(|j| {
            shifted[j] = params[j] + h;
            let hi = cost_at(template, &shifted, kind, target)?;
            shifted[j] = params[j] - h;
            let lo = cost_at(template, &shifted, kind, target)?;
            shifted[j] = params[j];
            Ok((hi - lo) / (2.0 * h))
        })
        .collect()
}

/// `(C(theta_j + pi/2) - C(theta_j - pi/2)) / 2`, shifting the cost rather
/// than the probabilities. Only exact when the cost is linear in `P`; kept
/// as a reference point for checks.
pub fn cost_level_shift_gradient(
    template: &CircuitTemplate,
    params: &[f64],
    kind: CostKind,
    target: &ProbDist,
) -> Result<Vec<f64>> {
    check_target(template, target)?;
    template.check_params(params)?;
    let spec = ShiftSpec::PAULI_ROTATION;
    let mut shifted = params.to_vec();
    (0..params.len())
        .map(|j| {
            shifted[j] = params[j] + spec.shift();
            let hi = cost_at(template, &shifted, kind, target)?;
            shifted[j] = params[j] - spec.shift();
            let lo = cost_at(template, &shifted, kind, target)?;
            shifted[j] = params[j];
            Ok(spec.scale() * (hi - lo))
        })
        .collect()
}
