//! Divergences between a model distribution `P` and a target `Q`.
//!
//! All logarithms are natural. The JS cost is the unhalved form
//! `KL(P || M) + KL(Q || M)` with `M = (P + Q) / 2`, so it lies in
//! `[0, 2 ln 2]`. Terms of the form `0 * ln 0` are taken as 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Floor applied to `P(x)` inside logarithms of cost derivatives only.
pub const LOG_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostKind {
    Lse,
    Kl,
    #[default]
    Js,
}

impl CostKind {
    pub const ALL: [CostKind; 3] = [CostKind::Lse, CostKind::Kl, CostKind::Js];

    pub fn as_str(self) -> &'static str {
        match self {
            CostKind::Lse => "lse",
            CostKind::Kl => "kl",
            CostKind::Js => "js",
        }
    }
}

impl fmt::Display for CostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CostKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lse" => Ok(CostKind::Lse),
            "kl" => Ok(CostKind::Kl),
            "js" => Ok(CostKind::Js),
            other => Err(Error::Config(format!("unknown cost {other:?} (expected lse, kl or js)"))),
        }
    }
}

fn check_lengths(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

fn xlogy_ratio(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x / y).ln()
    }
}

/// Per-outcome JS term. Symmetric in its arguments bit for bit.
fn js_term(p: f64, q: f64) -> f64 {
    let m = (p + q) / 2.0;
    xlogy_ratio(p, m) + xlogy_ratio(q, m)
}

/// `cost(kind, P, Q)`.
///
/// KL requires `Q(x) > 0` wherever `P(x) > 0`.
pub fn cost(kind: CostKind, p: &[f64], q: &[f64]) -> Result<f64> {
    check_lengths(p, q)?;
    let total = match kind {
        CostKind::Lse => p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum(),
        CostKind::Kl => {
            let mut acc = 0.0;
            for (x, (&a, &b)) in p.iter().zip(q).enumerate() {
                if a > 0.0 && b == 0.0 {
                    return Err(Error::KlDomain { outcome: x, p: a });
                }
                acc += xlogy_ratio(a, b);
            }
            acc
        }
        CostKind::Js => p.iter().zip(q).map(|(&a, &b)| js_term(a, b)).sum(),
    };
    Ok(total)
}

/// Analytic `dC/dP(x)` for every outcome.
///
/// `P(x)` is floored at [`LOG_CLAMP`] inside logarithms so that boundary
/// points such as point masses yield finite gradients.
pub fn cost_derivative(kind: CostKind, p: &[f64], q: &[f64]) -> Result<Vec<f64>> {
    check_lengths(p, q)?;
    match kind {
        CostKind::Lse => Ok(p.iter().zip(q).map(|(a, b)| 2.0 * (a - b)).collect()),
        CostKind::Kl => p
            .iter()
            .zip(q)
            .enumerate()
            .map(|(x, (&a, &b))| {
                if b == 0.0 {
                    if a > 0.0 {
                        Err(Error::KlDomain { outcome: x, p: a })
                    } else {
                        Ok(0.0)
                    }
                } else {
                    Ok((a.max(LOG_CLAMP) / b).ln() + 1.0)
                }
            })
            .collect(),
        CostKind::Js => Ok(p
            .iter()
            .zip(q)
            .map(|(&a, &b)| {
                let a = a.max(LOG_CLAMP);
                (2.0 * a / (a + b)).ln()
            })
            .collect()),
    }
}
