//! Reference implementations used as test oracles. These deliberately avoid
//! the library's kernels: gates are built as explicit 2^n x 2^n matrices from
//! Kronecker products and costs are written out from their definitions.

#![allow(dead_code)]

use num_complex::Complex64;
use vqdist::{AngleSource, CircuitTemplate, CostKind, GateKind};

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn matvec(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// exp(-i theta sigma / 2) for the Pauli matching `kind`.
pub fn single_qubit(kind: GateKind, theta: f64) -> Matrix {
    let (co, si) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::RX => vec![vec![c(co, 0.0), c(0.0, -si)], vec![c(0.0, -si), c(co, 0.0)]],
        GateKind::RY => vec![vec![c(co, 0.0), c(-si, 0.0)], vec![c(si, 0.0), c(co, 0.0)]],
        GateKind::RZ => vec![vec![c(co, -si), c(0.0, 0.0)], vec![c(0.0, 0.0), c(co, si)]],
        GateKind::H => vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]],
        _ => panic!("not a single-qubit gate"),
    }
}

/// Embeds a 2x2 matrix on qubit `q` (qubit 0 is the leftmost factor).
pub fn embed(n: usize, q: usize, m: &Matrix) -> Matrix {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for k in 0..n {
        let factor = if k == q { m.clone() } else { identity(2) };
        out = kron(&out, &factor);
    }
    out
}

fn projector(bit: usize) -> Matrix {
    let mut m = vec![vec![c(0.0, 0.0); 2]; 2];
    m[bit][bit] = c(1.0, 0.0);
    m
}

/// |0><0|_c (x) I + |1><1|_c (x) U_t.
pub fn controlled(n: usize, control: usize, target: usize, u: &Matrix) -> Matrix {
    let off = embed(n, control, &projector(0));
    let on = matmul(&embed(n, control, &projector(1)), &embed(n, target, u));
    add(&off, &on)
}

pub fn pauli_x() -> Matrix {
    vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn pauli_z() -> Matrix {
    vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]
}

/// Full circuit unitary as an ordered matrix product.
pub fn circuit_unitary(t: &CircuitTemplate, params: &[f64]) -> Matrix {
    let n = t.n_qubits();
    let mut u = identity(1 << n);
    for op in t.ops() {
        let gate = match op.kind {
            GateKind::CNOT => controlled(n, op.control.unwrap(), op.target, &pauli_x()),
            GateKind::CZ => controlled(n, op.control.unwrap(), op.target, &pauli_z()),
            GateKind::H => embed(n, op.target, &single_qubit(GateKind::H, 0.0)),
            kind => {
                let theta = match op.angle.unwrap() {
                    AngleSource::Fixed(a) => a,
                    AngleSource::Slot(s) => params[s],
                };
                embed(n, op.target, &single_qubit(kind, theta))
            }
        };
        u = matmul(&gate, &u);
    }
    u
}

pub fn oracle_amplitudes(t: &CircuitTemplate, params: &[f64]) -> Vec<Complex64> {
    let u = circuit_unitary(t, params);
    u.iter().map(|row| row[0]).collect()
}

pub fn oracle_probs(t: &CircuitTemplate, params: &[f64]) -> Vec<f64> {
    oracle_amplitudes(t, params).iter().map(|a| a.norm_sqr()).collect()
}

fn kl(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(pi, _)| **pi > 0.0)
        .map(|(pi, qi)| pi * (pi / qi).ln())
        .sum()
}

/// Costs from their textbook definitions, exact (no clamping) on strictly
/// positive inputs.
pub fn oracle_cost(kind: CostKind, p: &[f64], q: &[f64]) -> f64 {
    match kind {
        CostKind::Lse => p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum(),
        CostKind::Kl => kl(p, q),
        CostKind::Js => {
            let m: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
            kl(p, &m) + kl(q, &m)
        }
    }
}

/// Central finite differences of the oracle cost through the dense-matrix
/// simulator.
pub fn oracle_fd_gradient(t: &CircuitTemplate, params: &[f64], kind: CostKind, q: &[f64], h: f64) -> Vec<f64> {
    let mut x = params.to_vec();
    (0..params.len())
        .map(|j| {
            x[j] = params[j] + h;
            let hi = oracle_cost(kind, &oracle_probs(t, &x), q);
            x[j] = params[j] - h;
            let lo = oracle_cost(kind, &oracle_probs(t, &x), q);
            x[j] = params[j];
            (hi - lo) / (2.0 * h)
        })
        .collect()
}

/// Deterministic pseudo-random angles in [0, 2 pi), independent of the
/// library's initializer.
pub fn angles(count: usize, seed: u64) -> Vec<f64> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03);
    (0..count)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU
        })
        .collect()
}

pub fn binomial_pmf(trials: u64, p: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(trials as usize + 1);
    let mut coeff = 1.0f64;
    for k in 0..=trials {
        if k > 0 {
            coeff = coeff * (trials - k + 1) as f64 / k as f64;
        }
        out.push(coeff * p.powi(k as i32) * (1.0 - p).powi((trials - k) as i32));
    }
    out
}
