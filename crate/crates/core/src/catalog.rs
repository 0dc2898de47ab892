//! The built-in 22-circuit ansatz catalog.
//!
//! Ids 1-11 act on 4 qubits, 12-18 on 3 qubits and 19-22 on 2 qubits.
//! Gate layouts are built from four family shapes:
//!
//! | family | ids                      | layout                                   |
//! |--------|--------------------------|------------------------------------------|
//! | P      | 1, 2, 12, 14, 19, 20     | one rotation per qubit                   |
//! | PE     | 3, 4, 5, 13, 15, 21, 22  | rotation layer, entangling chain         |
//! | PEP    | 8, 9, 10, 11, 18         | rotation layer, chain, rotation layer    |
//! | HZ     | 6, 7, 16, 17             | Hadamard wall, RZ layer, optional chain  |
//!
//! Odd ids rotate about X and even ids about Y. Circuits 2 and 12 apply each
//! rotation twice on the same qubit. Entangling layers are nearest-neighbour
//! chains with control `q` and target `q + 1`; circuits 5, 11 and 15 apply
//! the chain in reverse time order (last pair first), and circuits 10 and 17
//! use CZ instead of CNOT. Every rotation owns its own parameter slot.

use crate::circuit::CircuitTemplate;
use crate::error::{Error, Result};
use crate::statevec::{GateKind, GateOp};

pub const CATALOG_SIZE: u32 = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chain {
    Cnot,
    CnotReversed,
    Cz,
}

struct Builder {
    n: usize,
    ops: Vec<GateOp>,
    next_slot: usize,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            ops: Vec::new(),
            next_slot: 0,
        }
    }

    fn rotations(mut self, kind: GateKind, repeat: usize) -> Self {
        for q in 0..self.n {
            for _ in 0..repeat {
                self.ops.push(GateOp::rotation(kind, q, self.next_slot));
                self.next_slot += 1;
            }
        }
        self
    }

    fn hadamards(mut self) -> Self {
        self.ops.extend((0..self.n).map(GateOp::h));
        self
    }

    fn chain(mut self, chain: Chain) -> Self {
        let pairs: Vec<usize> = match chain {
            Chain::CnotReversed => (0..self.n - 1).rev().collect(),
            _ => (0..self.n - 1).collect(),
        };
        for q in pairs {
            self.ops.push(match chain {
                Chain::Cz => GateOp::cz(q, q + 1),
                _ => GateOp::cnot(q, q + 1),
            });
        }
        self
    }

    fn build(self, id: u32) -> CircuitTemplate {
        CircuitTemplate::new(id.to_string(), self.n, self.ops).expect("catalog circuits are valid")
    }
}

fn axis(id: u32) -> GateKind {
    if id % 2 == 1 {
        GateKind::RX
    } else {
        GateKind::RY
    }
}

/// Qubit count of catalog circuit `id`.
pub fn catalog_qubits(id: u32) -> Result<usize> {
    match id {
        1..=11 => Ok(4),
        12..=18 => Ok(3),
        19..=22 => Ok(2),
        _ => Err(Error::UnknownCircuit(id)),
    }
}

/// Catalog circuit `id` (1..=22).
pub fn catalog_get(id: u32) -> Result<CircuitTemplate> {
    use Chain::*;
    let b = Builder::new(catalog_qubits(id)?);
    let rot = axis(id);
    let t = match id {
        // P
        2 | 12 => b.rotations(rot, 2),
        1 | 14 | 19 | 20 => b.rotations(rot, 1),
        // PE
        3 | 4 | 13 | 21 | 22 => b.rotations(rot, 1).chain(Cnot),
        5 | 15 => b.rotations(rot, 1).chain(CnotReversed),
        // HZ
        6 | 16 => b.hadamards().rotations(GateKind::RZ, 1),
        7 => b.hadamards().rotations(GateKind::RZ, 1).chain(Cnot),
        17 => b.hadamards().rotations(GateKind::RZ, 1).chain(Cz),
        // PEP
        8 | 9 | 18 => b.rotations(rot, 1).chain(Cnot).rotations(rot, 1),
        10 => b.rotations(rot, 1).chain(Cz).rotations(rot, 1),
        11 => b.rotations(rot, 1).chain(CnotReversed).rotations(rot, 1),
        _ => unreachable!("id range checked by catalog_qubits"),
    };
    Ok(t.build(id))
}

/// All 22 catalog circuits in id order.
pub fn catalog_all() -> Vec<CircuitTemplate> {
    (1..=CATALOG_SIZE)
        .map(|id| catalog_get(id).expect("id in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{classify_family, evaluate, Family};

    fn expected_family(id: u32) -> Family {
        match id {
            1 | 2 | 12 | 14 | 19 | 20 => Family::P,
            3 | 4 | 5 | 13 | 15 | 21 | 22 => Family::PE,
            6 | 7 | 16 | 17 => Family::HZ,
            8 | 9 | 10 | 11 | 18 => Family::PEP,
            _ => unreachable!(),
        }
    }

    #[test]
    fn named_examples() {
        let c8 = catalog_get(8).unwrap();
        assert_eq!((c8.n_qubits(), c8.family()), (4, Family::PEP));
        let c16 = catalog_get(16).unwrap();
        assert_eq!((c16.n_qubits(), c16.family()), (3, Family::HZ));
        let c1 = catalog_get(1).unwrap();
        assert_eq!((c1.n_qubits(), c1.family()), (4, Family::P));
    }

    #[test]
    fn families_and_sizes() {
        for t in catalog_all() {
            let id: u32 = t.id().parse().unwrap();
            assert_eq!(t.family(), expected_family(id), "circuit {id}");
            assert_eq!(classify_family(&t), t.family(), "circuit {id}");
            assert_eq!(t.n_qubits(), catalog_qubits(id).unwrap());
            assert!(t.n_params() > 0);
        }
    }

    #[test]
    fn unknown_ids() {
        assert!(matches!(catalog_get(0), Err(Error::UnknownCircuit(0))));
        assert!(matches!(catalog_get(23), Err(Error::UnknownCircuit(23))));
    }

    #[test]
    fn doubled_rotations() {
        assert_eq!(catalog_get(2).unwrap().n_params(), 8);
        assert_eq!(catalog_get(12).unwrap().n_params(), 6);
        assert_eq!(catalog_get(1).unwrap().n_params(), 4);
    }

    #[test]
    fn p_family_at_zero_is_point_mass() {
        for t in catalog_all().iter().filter(|t| t.family() == Family::P) {
            let p = evaluate(t, &vec![0.0; t.n_params()]).unwrap();
            assert!((p[0] - 1.0).abs() <= 1e-12, "circuit {}", t.id());
            assert!(p[1..].iter().all(|v| v.abs() <= 1e-12));
        }
    }

    #[test]
    fn evaluation_is_deterministic() {
        let t = catalog_get(9).unwrap();
        let params: Vec<f64> = (0..t.n_params()).map(|i| 0.37 * i as f64 - 1.1).collect();
        let a = evaluate(&t, &params).unwrap();
        let b = evaluate(&t, &params).unwrap();
        assert!(a.iter().zip(b.iter()).all(|(x, y)| x.to_bits() == y.to_bits()));
    }
}
