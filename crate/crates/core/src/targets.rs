//! Target distributions over the `2^n` basis outcomes.
//!
//! Binomial targets use `N = 2^n - 1` trials so the support `0..=N` fills
//! the outcome space exactly. The discrete "normal" target is the binomial
//! with `p = 1/2`. Poisson targets are evaluated on `0..2^n` and
//! renormalized.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::ProbDist;
use crate::error::{Error, Result};
use crate::statevec::MAX_QUBITS;

pub const DEFAULT_BINOMIAL_P: f64 = 0.1;
pub const DEFAULT_POISSON_LAMBDA: f64 = 1.0;

fn default_p() -> f64 {
    DEFAULT_BINOMIAL_P
}

fn default_lambda() -> f64 {
    DEFAULT_POISSON_LAMBDA
}

/// Shape of a target distribution, independent of register size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TargetKind {
    Uniform,
    Normal,
    Binomial {
        #[serde(default = "default_p")]
        p: f64,
    },
    Poisson {
        #[serde(default = "default_lambda")]
        lambda: f64,
    },
}

impl TargetKind {
    pub fn binomial() -> Self {
        TargetKind::Binomial {
            p: DEFAULT_BINOMIAL_P,
        }
    }

    pub fn poisson() -> Self {
        TargetKind::Poisson {
            lambda: DEFAULT_POISSON_LAMBDA,
        }
    }

    /// The four default targets: uniform, normal, binomial(0.1), Poisson(1).
    pub fn defaults() -> [TargetKind; 4] {
        [
            TargetKind::Uniform,
            TargetKind::Normal,
            TargetKind::binomial(),
            TargetKind::poisson(),
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            TargetKind::Uniform => "uniform",
            TargetKind::Normal => "normal",
            TargetKind::Binomial { .. } => "binomial",
            TargetKind::Poisson { .. } => "poisson",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TargetKind::Binomial { p } if !(p > 0.0 && p < 1.0) => {
                Err(Error::InvalidTarget(format!("binomial p must lie in (0, 1), got {p}")))
            }
            TargetKind::Poisson { lambda } if !(lambda > 0.0 && lambda.is_finite()) => Err(
                Error::InvalidTarget(format!("poisson lambda must be positive, got {lambda}")),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetKind::Binomial { p } => write!(f, "binomial(p={p})"),
            TargetKind::Poisson { lambda } => write!(f, "poisson(lambda={lambda})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetSpec {
    #[serde(flatten)]
    pub kind: TargetKind,
    pub n_qubits: usize,
}

impl TargetSpec {
    pub fn new(kind: TargetKind, n_qubits: usize) -> Self {
        TargetSpec { kind, n_qubits }
    }
}

/// `ln C(n, k)`, computed from the smaller of `k` and `n - k` so that
/// `ln C(n, k) == ln C(n, n - k)` exactly.
fn ln_binomial_coefficients(n: usize) -> Vec<f64> {
    let mut half = Vec::with_capacity(n / 2 + 1);
    let mut acc = 0.0f64;
    half.push(0.0);
    for k in 1..=n / 2 {
        acc += ((n - k + 1) as f64).ln() - (k as f64).ln();
        half.push(acc);
    }
    (0..=n).map(|k| half[k.min(n - k)]).collect()
}

fn binomial_pmf(trials: usize, p: f64) -> Vec<f64> {
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let ln_c = ln_binomial_coefficients(trials);
    (0..=trials)
        .map(|k| (ln_c[k] + k as f64 * lp + (trials - k) as f64 * lq).exp())
        .collect()
}

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    v
}

/// Probability mass function of `spec` on outcomes `0..2^n`.
pub fn target_pmf(spec: &TargetSpec) -> Result<ProbDist> {
    spec.kind.validate()?;
    if spec.n_qubits == 0 || spec.n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(spec.n_qubits));
    }
    let outcomes = 1usize << spec.n_qubits;
    let values = match spec.kind {
        TargetKind::Uniform => vec![1.0 / outcomes as f64; outcomes],
        TargetKind::Normal => binomial_pmf(outcomes - 1, 0.5),
        TargetKind::Binomial { p } => binomial_pmf(outcomes - 1, p),
        TargetKind::Poisson { lambda } => {
            // ln(lambda^k / k!); the e^-lambda factor cancels on renormalizing.
            let ll = lambda.ln();
            let mut ln_fact = 0.0;
            let logs: Vec<f64> = (0..outcomes)
                .map(|k| {
                    if k > 0 {
                        ln_fact += (k as f64).ln();
                    }
                    k as f64 * ll - ln_fact
                })
                .collect();
            let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            normalize(logs.iter().map(|l| (l - peak).exp()).collect())
        }
    };
    Ok(ProbDist::from_raw(values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pmf(kind: TargetKind, n: usize) -> Vec<f64> {
        target_pmf(&TargetSpec::new(kind, n)).unwrap().into_vec()
    }

    #[test]
    fn uniform() {
        assert_eq!(pmf(TargetKind::Uniform, 2), vec![0.25; 4]);
    }

    #[test]
    fn binomial_values() {
        let b = pmf(TargetKind::binomial(), 4);
        assert!((b[0] - 0.9f64.powi(15)).abs() < 1e-15);
        assert!((b[0] - 0.205891).abs() < 1e-6);
        let nrm = pmf(TargetKind::Normal, 4);
        assert!((nrm[7] - 6435.0 / 32768.0).abs() < 1e-15);
        assert!((nrm[7] - 0.196381).abs() < 1e-6);
    }

    #[test]
    fn poisson_small() {
        let e = (-1.0f64).exp();
        let raw = [e, e, e / 2.0, e / 6.0];
        let total: f64 = raw.iter().sum();
        let got = pmf(TargetKind::poisson(), 2);
        for (g, r) in got.iter().zip(raw) {
            assert!((g - r / total).abs() < 1e-15);
        }
    }

    #[test]
    fn normal_is_symmetric() {
        for n in [2, 3, 4, 6] {
            let v = pmf(TargetKind::Normal, n);
            let last = v.len() - 1;
            for k in 0..v.len() {
                assert!((v[k] - v[last - k]).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn all_targets_normalized() {
        for n in [2, 3, 4] {
            for kind in TargetKind::defaults() {
                let v = pmf(kind, n);
                let s: f64 = v.iter().sum();
                assert!((s - 1.0).abs() <= 1e-12, "{kind} n={n}: {s}");
                assert!(v.iter().all(|x| *x >= 0.0));
            }
        }
    }

    #[test]
    fn large_registers_do_not_underflow_to_nan() {
        let v = pmf(TargetKind::Binomial { p: 0.3 }, 16);
        let s: f64 = v.iter().sum();
        assert!((s - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_parameters() {
        for kind in [
            TargetKind::Binomial { p: 0.0 },
            TargetKind::Binomial { p: 1.0 },
            TargetKind::Binomial { p: f64::NAN },
            TargetKind::Poisson { lambda: 0.0 },
            TargetKind::Poisson { lambda: -1.0 },
        ] {
            assert!(target_pmf(&TargetSpec::new(kind, 2)).is_err(), "{kind}");
        }
    }

    #[test]
    fn serde_shape() {
        let k: TargetKind = serde_json::from_str(r#"{"kind": "binomial"}"#).unwrap();
        assert_eq!(k, TargetKind::binomial());
        let k: TargetKind = serde_json::from_str(r#"{"kind": "poisson", "lambda": 2.5}"#).unwrap();
        assert_eq!(k, TargetKind::Poisson { lambda: 2.5 });
        assert!(serde_json::from_str::<TargetKind>(r#"{"kind": "cauchy"}"#).is_err());
    }
}
