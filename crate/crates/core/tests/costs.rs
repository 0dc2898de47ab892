mod common;

use proptest::prelude::*;
use vqdist::costs::cost_derivative;
use vqdist::{cost, target_pmf, CostKind, TargetKind, TargetSpec};

const LN2: f64 = std::f64::consts::LN_2;

fn dist(raw: &[f64]) -> Vec<f64> {
    let s: f64 = raw.iter().sum();
    raw.iter().map(|x| x / s).collect()
}

fn positive_dist(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-6f64..1.0, 1 << n).prop_map(|v| dist(&v))
}

fn sparse_dist(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), 1e-6f64..1.0], 1 << n)
        .prop_filter("needs mass", |v| v.iter().sum::<f64>() > 0.0)
        .prop_map(|v| dist(&v))
}

#[test]
fn js_of_disjoint_point_masses_is_two_ln_two() {
    let v = cost(CostKind::Js, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
    assert!((v - 2.0 * LN2).abs() < 1e-15);
}

#[test]
fn kl_asymmetry_witness() {
    let p = [0.9, 0.1];
    let q = [0.5, 0.5];
    let pq = cost(CostKind::Kl, &p, &q).unwrap();
    let qp = cost(CostKind::Kl, &q, &p).unwrap();
    assert!((pq - common::oracle_cost(CostKind::Kl, &p, &q)).abs() < 1e-15);
    assert!((qp - common::oracle_cost(CostKind::Kl, &q, &p)).abs() < 1e-15);
    assert!((pq - qp).abs() > 0.1);
}

#[test]
fn kl_rejects_support_mismatch() {
    let err = cost(CostKind::Kl, &[0.5, 0.5], &[1.0, 0.0]).unwrap_err();
    assert!(err.is_numerical());
    assert!(cost(CostKind::Kl, &[1.0, 0.0], &[0.5, 0.5]).is_ok());
}

#[test]
fn length_mismatch_is_an_error() {
    for kind in CostKind::ALL {
        assert!(cost(kind, &[0.5, 0.5], &[0.25; 4]).is_err());
    }
}

#[test]
fn targets_match_reference_pmfs() {
    for n in 1..=5usize {
        let outcomes = 1u64 << n;
        let normal = target_pmf(&TargetSpec::new(TargetKind::Normal, n)).unwrap();
        let binom = target_pmf(&TargetSpec::new(TargetKind::binomial(), n)).unwrap();
        let want_normal = common::binomial_pmf(outcomes - 1, 0.5);
        let want_binom = common::binomial_pmf(outcomes - 1, 0.1);
        for k in 0..outcomes as usize {
            assert!((normal[k] - want_normal[k]).abs() < 1e-14);
            assert!((binom[k] - want_binom[k]).abs() < 1e-14);
        }
        let poisson = target_pmf(&TargetSpec::new(TargetKind::poisson(), n)).unwrap();
        let mut raw = Vec::new();
        let mut fact = 1.0;
        for k in 0..outcomes {
            if k > 0 {
                fact *= k as f64;
            }
            raw.push((-1.0f64).exp() / fact);
        }
        let want = dist(&raw);
        for k in 0..outcomes as usize {
            assert!((poisson[k] - want[k]).abs() < 1e-14, "poisson n={n} k={k}");
        }
        let uniform = target_pmf(&TargetSpec::new(TargetKind::Uniform, n)).unwrap();
        assert!(uniform.iter().all(|&u| u == 1.0 / outcomes as f64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn divergence_axioms((p, q) in (1usize..=4).prop_flat_map(|n| (sparse_dist(n), sparse_dist(n)))) {
        let js_pq = cost(CostKind::Js, &p, &q).unwrap();
        let js_qp = cost(CostKind::Js, &q, &p).unwrap();
        prop_assert!((js_pq - js_qp).abs() <= 1e-15);
        prop_assert!(js_pq >= 0.0);
        prop_assert!(js_pq <= 2.0 * LN2 + 1e-15);
        prop_assert!(cost(CostKind::Lse, &p, &q).unwrap() >= 0.0);
        for kind in CostKind::ALL {
            prop_assert!(cost(kind, &p, &p).unwrap().abs() <= 1e-15);
        }
        if q.iter().all(|&x| x > 0.0) {
            prop_assert!(cost(CostKind::Kl, &p, &q).unwrap() >= -1e-15);
        }
    }

    #[test]
    fn costs_match_oracle_on_positive_pairs(p in positive_dist(3), q in positive_dist(3)) {
        for kind in CostKind::ALL {
            let got = cost(kind, &p, &q).unwrap();
            let want = common::oracle_cost(kind, &p, &q);
            prop_assert!((got - want).abs() <= 1e-13, "{kind:?}: {got} vs {want}");
            prop_assert!(got >= -1e-15);
        }
    }

    #[test]
    fn derivative_matches_finite_differences(p in positive_dist(2), q in positive_dist(2)) {
        let p: Vec<f64> = p.iter().map(|x| x.max(1e-3)).collect();
        for kind in CostKind::ALL {
            let d = cost_derivative(kind, &p, &q).unwrap();
            for x in 0..p.len() {
                let h = 1e-6;
                let mut hi = p.clone();
                hi[x] += h;
                let mut lo = p.clone();
                lo[x] -= h;
                let fd = (common::oracle_cost(kind, &hi, &q) - common::oracle_cost(kind, &lo, &q)) / (2.0 * h);
                prop_assert!((d[x] - fd).abs() <= 1e-6 * (1.0 + fd.abs()), "{kind:?} x={x}: {} vs {fd}", d[x]);
            }
        }
    }
}
