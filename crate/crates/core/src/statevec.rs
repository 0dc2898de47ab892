//! Dense statevector simulation.
//!
//! Basis states are indexed lexicographically with qubit 0 as the most
//! significant bit, so on 3 qubits `|q0 q1 q2> = |100>` is index 4.
//! Rotations use the half-angle convention `R_P(theta) = exp(-i theta P / 2)`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    RX,
    RY,
    RZ,
    H,
    CNOT,
    CZ,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::RX => "RX",
            GateKind::RY => "RY",
            GateKind::RZ => "RZ",
            GateKind::H => "H",
            GateKind::CNOT => "CNOT",
            GateKind::CZ => "CZ",
        }
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::RX | GateKind::RY | GateKind::RZ)
    }

    pub fn is_entangling(self) -> bool {
        matches!(self, GateKind::CNOT | GateKind::CZ)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a rotation gets its angle from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AngleSource {
    /// A constant angle in radians baked into the circuit.
    Fixed(f64),
    /// Index into the trainable parameter vector.
    Slot(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub target: usize,
    pub control: Option<usize>,
    pub angle: Option<AngleSource>,
}

impl GateOp {
    pub fn rotation(kind: GateKind, target: usize, slot: usize) -> Self {
        debug_assert!(kind.is_rotation());
        GateOp {
            kind,
            target,
            control: None,
            angle: Some(AngleSource::Slot(slot)),
        }
    }

    pub fn fixed_rotation(kind: GateKind, target: usize, angle: f64) -> Self {
        debug_assert!(kind.is_rotation());
        GateOp {
            kind,
            target,
            control: None,
            angle: Some(AngleSource::Fixed(angle)),
        }
    }

    pub fn h(target: usize) -> Self {
        GateOp {
            kind: GateKind::H,
            target,
            control: None,
            angle: None,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        GateOp {
            kind: GateKind::CNOT,
            target,
            control: Some(control),
            angle: None,
        }
    }

    pub fn cz(control: usize, target: usize) -> Self {
        GateOp {
            kind: GateKind::CZ,
            target,
            control: Some(control),
            angle: None,
        }
    }

    pub fn slot(&self) -> Option<usize> {
        match self.angle {
            Some(AngleSource::Slot(s)) => Some(s),
            _ => None,
        }
    }

    /// Checks the op's shape and qubit indices against an `n_qubits` register.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.target >= n_qubits {
            return Err(Error::QubitOutOfRange {
                index: self.target,
                n_qubits,
            });
        }
        match (self.kind.is_entangling(), self.control) {
            (true, None) => {
                return Err(Error::InvalidGate(format!("{} requires a control qubit", self.kind)))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidGate(format!("{} takes no control qubit", self.kind)))
            }
            (true, Some(c)) if c >= n_qubits => {
                return Err(Error::QubitOutOfRange { index: c, n_qubits })
            }
            (true, Some(c)) if c == self.target => {
                return Err(Error::InvalidGate(format!(
                    "{} control and target are both qubit {c}",
                    self.kind
                )))
            }
            _ => {}
        }
        match (self.kind.is_rotation(), self.angle) {
            (true, None) => Err(Error::InvalidGate(format!("{} requires an angle", self.kind))),
            (false, Some(_)) => Err(Error::InvalidGate(format!("{} takes no angle", self.kind))),
            (true, Some(AngleSource::Fixed(a))) if !a.is_finite() => {
                Err(Error::InvalidGate(format!("{} has non-finite angle {a}", self.kind)))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// The all-zeros computational basis state `|00...0>`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    /// Normalization is the caller's responsibility.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::InvalidDistribution(format!(
                "amplitude vector length {len} is not 2^n with n >= 1"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits));
        }
        Ok(Statevector {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies `op`. `angle` supplies the value for a slot-bound rotation;
    /// fixed-angle rotations use their own angle when `angle` is `None`.
    pub fn apply(&mut self, op: &GateOp, angle: Option<f64>) -> Result<()> {
        op.validate(self.n_qubits)?;
        let theta = match (op.angle, angle) {
            (_, Some(a)) if op.kind.is_rotation() => a,
            (Some(AngleSource::Fixed(a)), None) => a,
            (Some(AngleSource::Slot(_)), None) => {
                return Err(Error::MissingAngle {
                    kind: op.kind.name(),
                })
            }
            _ => 0.0,
        };
        let target = self.mask(op.target);
        match op.kind {
            GateKind::RX => {
                let (c, s) = half_angle(theta);
                let m = [
                    [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                    [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
                ];
                self.apply_1q(target, &m);
            }
            GateKind::RY => {
                let (c, s) = half_angle(theta);
                let m = [
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ];
                self.apply_1q(target, &m);
            }
            GateKind::RZ => {
                let (c, s) = half_angle(theta);
                let lo = Complex64::new(c, -s);
                let hi = Complex64::new(c, s);
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    *a *= if i & target == 0 { lo } else { hi };
                }
            }
            GateKind::H => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                let m = [
                    [Complex64::new(r, 0.0), Complex64::new(r, 0.0)],
                    [Complex64::new(r, 0.0), Complex64::new(-r, 0.0)],
                ];
                self.apply_1q(target, &m);
            }
            GateKind::CNOT => {
                let control = self.mask(op.control.expect("validated"));
                for i in 0..self.amplitudes.len() {
                    if i & control != 0 && i & target == 0 {
                        self.amplitudes.swap(i, i | target);
                    }
                }
            }
            GateKind::CZ => {
                let both = self.mask(op.control.expect("validated")) | target;
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & both == both {
                        *a = -*a;
                    }
                }
            }
        }
        Ok(())
    }

    /// `|amplitude(x)|^2` for every basis state, in index order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    fn apply_1q(&mut self, mask: usize, m: &[[Complex64; 2]; 2]) {
        for i in 0..self.amplitudes.len() {
            if i & mask == 0 {
                let j = i | mask;
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[j];
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[j] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }
}

fn half_angle(theta: f64) -> (f64, f64) {
    let (s, c) = (theta / 2.0).sin_cos();
    (c, s)
}
