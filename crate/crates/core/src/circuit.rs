//! Parameterized circuit templates and their evaluation to output
//! probability distributions.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{AngleSource, GateKind, GateOp, Statevector, MAX_QUBITS};

/// Trainable angles in radians, indexed by parameter slot.
pub type ParamVector = Vec<f64>;

/// Tolerance on the total mass of externally supplied distributions.
pub const INGEST_TOLERANCE: f64 = 1e-9;

/// A probability distribution over the `2^n` computational basis outcomes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbDist(Vec<f64>);

impl ProbDist {
    /// Validates an externally supplied distribution: power-of-two length,
    /// finite nonnegative entries, mass 1 within [`INGEST_TOLERANCE`].
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 || !values.len().is_power_of_two() {
            return Err(Error::InvalidDistribution(format!(
                "length {} is not 2^n with n >= 1",
                values.len()
            )));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "entry {i} is {v}, expected a finite nonnegative value"
            )));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > INGEST_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, expected 1"
            )));
        }
        Ok(ProbDist(values))
    }

    pub(crate) fn from_raw(values: Vec<f64>) -> Self {
        ProbDist(values)
    }

    pub fn n_outcomes(&self) -> usize {
        self.0.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ProbDist {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ProbDist {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        ProbDist::new(values)
    }
}

impl From<ProbDist> for Vec<f64> {
    fn from(p: ProbDist) -> Self {
        p.0
    }
}

/// Architectural family of an ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Parameterized layer only.
    P,
    /// Parameterized layer followed by an entangling layer.
    PE,
    /// Parameterized, entangling, parameterized.
    PEP,
    /// Hadamard on every qubit first, RZ rotations after.
    HZ,
    #[serde(rename = "unclassified")]
    Unclassified,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::P => "P",
            Family::PE => "PE",
            Family::PEP => "PEP",
            Family::HZ => "HZ",
            Family::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" => Ok(Family::P),
            "PE" => Ok(Family::PE),
            "PEP" => Ok(Family::PEP),
            "HZ" => Ok(Family::HZ),
            "unclassified" => Ok(Family::Unclassified),
            other => Err(Error::template("family", format!("unknown family {other:?}"))),
        }
    }
}

/// An ordered gate list with trainable parameter slots.
///
/// Construct through [`CircuitTemplate::new`], which enforces the template
/// invariants: every op fits the register, and slot indices are exactly
/// `0..n_params`, each used at least once.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitTemplate {
    id: String,
    n_qubits: usize,
    ops: Vec<GateOp>,
    n_params: usize,
    family: Family,
}

impl CircuitTemplate {
    pub fn new(id: impl Into<String>, n_qubits: usize, ops: Vec<GateOp>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::template(
                "n_qubits",
                format!("{n_qubits} outside supported range 1..={MAX_QUBITS}"),
            ));
        }
        let mut slots = BTreeSet::new();
        for (i, op) in ops.iter().enumerate() {
            op.validate(n_qubits)
                .map_err(|e| Error::template(format!("ops[{i}]"), e.to_string()))?;
            if let Some(s) = op.slot() {
                slots.insert(s);
            }
        }
        let n_params = slots.len();
        if let Some(&max) = slots.last() {
            if max + 1 != n_params {
                let missing: Vec<usize> = (0..=max).filter(|s| !slots.contains(s)).collect();
                return Err(Error::template(
                    "ops",
                    format!("non-contiguous parameter slots: slots {missing:?} are never used"),
                ));
            }
        }
        let mut template = CircuitTemplate {
            id: id.into(),
            n_qubits,
            ops,
            n_params,
            family: Family::Unclassified,
        };
        template.family = classify_family(&template);
        Ok(template)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n_outcomes(&self) -> usize {
        1 << self.n_qubits
    }

    /// Indices into [`ops`](Self::ops) of the gates bound to `slot`.
    pub fn gates_for_slot(&self, slot: usize) -> impl Iterator<Item = usize> + '_ {
        self.ops
            .iter()
            .enumerate()
            .filter(move |(_, op)| op.slot() == Some(slot))
            .map(|(i, _)| i)
    }

    pub(crate) fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_params {
            return Err(Error::ParamLength {
                expected: self.n_params,
                got: params.len(),
            });
        }
        if let Some(bad) = params.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidGate(format!("non-finite parameter value {bad}")));
        }
        Ok(())
    }

    /// Runs the circuit from `|0...0>` and returns the final statevector.
    pub fn run(&self, params: &[f64]) -> Result<Statevector> {
        self.check_params(params)?;
        Ok(self.run_shifted(params, None))
    }

    /// Runs the circuit with the angle of gate `ops[gate]` offset by `delta`.
    /// Inputs must already be validated.
    pub(crate) fn run_shifted(&self, params: &[f64], shift: Option<(usize, f64)>) -> Statevector {
        let mut state = Statevector::zero(self.n_qubits).expect("validated qubit count");
        for (i, op) in self.ops.iter().enumerate() {
            let mut angle = match op.angle {
                Some(AngleSource::Slot(s)) => Some(params[s]),
                Some(AngleSource::Fixed(a)) => Some(a),
                None => None,
            };
            if let (Some((g, delta)), Some(a)) = (shift, angle.as_mut()) {
                if g == i {
                    *a += delta;
                }
            }
            state.apply(op, angle).expect("validated op");
        }
        state
    }

    pub(crate) fn probs_shifted(&self, params: &[f64], shift: Option<(usize, f64)>) -> ProbDist {
        ProbDist::from_raw(self.run_shifted(params, shift).probabilities())
    }
}

/// Output distribution of `template` at `params`.
pub fn evaluate(template: &CircuitTemplate, params: &[f64]) -> Result<ProbDist> {
    template.check_params(params)?;
    Ok(template.probs_shifted(params, None))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Rotations,
    Entangling,
}

/// Structural family of a template.
///
/// A leading Hadamard on every qubit (before any other gate) marks HZ.
/// Otherwise the op list is split into maximal runs of rotations and of
/// entangling gates: `[R]` is P, `[R, E]` is PE, `[R, E, R]` is PEP.
/// Anything else, including stray Hadamards, is unclassified.
pub fn classify_family(template: &CircuitTemplate) -> Family {
    let ops = template.ops();
    let n = template.n_qubits();

    let wall: BTreeSet<usize> = ops
        .iter()
        .take_while(|op| op.kind == GateKind::H)
        .map(|op| op.target)
        .collect();
    if wall.len() == n {
        return Family::HZ;
    }

    let mut blocks = Vec::new();
    for op in ops {
        let block = match op.kind {
            k if k.is_rotation() => Block::Rotations,
            k if k.is_entangling() => Block::Entangling,
            _ => return Family::Unclassified,
        };
        if blocks.last() != Some(&block) {
            blocks.push(block);
        }
    }
    use Block::*;
    match blocks.as_slice() {
        [Rotations] => Family::P,
        [Rotations, Entangling] => Family::PE,
        [Rotations, Entangling, Rotations] => Family::PEP,
        _ => Family::Unclassified,
    }
}
