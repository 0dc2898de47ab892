mod common;

use vqdist::gradients::cost_and_gradient;
use vqdist::{
    catalog_all, catalog_get, init_params, prob_jacobian, step, target_pmf, train, train_from, CostKind, Family,
    InitScheme, ProbDist, TargetKind, TargetSpec, TrainConfig,
};

fn target(kind: TargetKind, n: usize) -> ProbDist {
    target_pmf(&TargetSpec::new(kind, n)).unwrap()
}

fn config(iterations: usize, seed: u64) -> TrainConfig {
    TrainConfig {
        iterations,
        seed,
        ..Default::default()
    }
}

#[test]
fn plain_descent_matches_hand_rolled_loop() {
    let t = catalog_get(9).unwrap();
    let q = target(TargetKind::Normal, 4);
    let cfg = config(50, 2);
    let trace = train(&t, &q, &cfg).unwrap();

    let mut theta = init_params(&t, InitScheme::UniformAngles, 2);
    let mut costs = Vec::new();
    for _ in 0..50 {
        let eval = cost_and_gradient(&t, &theta, CostKind::Js, &q).unwrap();
        costs.push(eval.cost);
        for (th, g) in theta.iter_mut().zip(&eval.gradient) {
            *th -= 0.1 * g;
        }
    }
    assert_eq!(trace.final_params, theta);
    assert_eq!(&trace.cost_history[..50], &costs[..]);
    assert_eq!(trace.cost_history.len(), 51);
}

#[test]
fn momentum_matches_hand_rolled_loop() {
    let t = catalog_get(13).unwrap();
    let q = target(TargetKind::poisson(), 3);
    let cfg = TrainConfig {
        momentum: 0.9,
        ..config(40, 4)
    };
    let trace = train(&t, &q, &cfg).unwrap();

    let mut theta = init_params(&t, InitScheme::UniformAngles, 4);
    let mut v = vec![0.0; theta.len()];
    for _ in 0..40 {
        let g = cost_and_gradient(&t, &theta, CostKind::Js, &q).unwrap().gradient;
        for j in 0..theta.len() {
            v[j] = 0.9 * v[j] + g[j];
            theta[j] -= 0.1 * v[j];
        }
    }
    assert_eq!(trace.final_params, theta);
}

#[test]
fn step_is_the_documented_update() {
    let (p, v) = step(&[1.0, 2.0], &[0.5, -1.0], &[0.2, 0.0], 0.1, 0.5);
    assert_eq!(v, vec![0.5 * 0.2 + 0.5, -1.0]);
    assert_eq!(p, vec![1.0 - 0.1 * 0.6, 2.0 + 0.1]);
}

#[test]
fn training_never_ends_worse_than_it_starts() {
    for t in catalog_all() {
        for kind in TargetKind::defaults() {
            let q = target(kind, t.n_qubits());
            for seed in 0..5 {
                let trace = train(&t, &q, &config(200, seed)).unwrap();
                assert!(
                    trace.final_cost() <= trace.initial_cost() + 1e-12,
                    "circuit {} {kind} seed {seed}: {} -> {}",
                    t.id(),
                    trace.initial_cost(),
                    trace.final_cost()
                );
            }
        }
    }
}

#[test]
fn zero_initialization_trains_without_nan() {
    for t in catalog_all() {
        for cost in CostKind::ALL {
            let q = target(TargetKind::Normal, t.n_qubits());
            let cfg = TrainConfig {
                init: InitScheme::Zeros,
                cost,
                ..config(20, 0)
            };
            let trace = train(&t, &q, &cfg).unwrap();
            assert!(trace.cost_history.iter().all(|c| c.is_finite()));
            assert!(trace.final_params.iter().all(|p| p.is_finite()));
        }
    }
}

#[test]
fn pep_circuit_learns_uniform() {
    let t = catalog_get(8).unwrap();
    let trace = train(&t, &target(TargetKind::Uniform, 4), &TrainConfig::default()).unwrap();
    assert!(trace.final_cost() <= 1e-3, "{}", trace.final_cost());
    let total: f64 = trace.final_dist.iter().sum();
    assert!((total - 1.0).abs() <= 1e-12);
}

#[test]
fn initialization_is_seeded() {
    let t = catalog_get(10).unwrap();
    let a = init_params(&t, InitScheme::UniformAngles, 7);
    assert_eq!(a, init_params(&t, InitScheme::UniformAngles, 7));
    assert_ne!(a, init_params(&t, InitScheme::UniformAngles, 8));
    assert!(a.iter().all(|&x| (0.0..std::f64::consts::TAU).contains(&x)));
    assert_eq!(init_params(&t, InitScheme::Zeros, 7), vec![0.0; t.n_params()]);
}

#[test]
fn convergence_is_reported_and_can_stop_early() {
    let t = catalog_get(20).unwrap();
    let q = target(TargetKind::Uniform, 2);
    let cfg = TrainConfig {
        convergence_threshold: Some(1e-4),
        ..config(1000, 0)
    };
    let full = train(&t, &q, &cfg).unwrap();
    let at = full.converged_at.expect("converges");
    assert!(full.cost_history[at] < 1e-4);
    assert!(full.cost_history[..at].iter().all(|&c| c >= 1e-4));

    let stopped = train(&t, &q, &TrainConfig { stop_at_convergence: true, ..cfg }).unwrap();
    assert_eq!(stopped.converged_at, Some(at));
    assert_eq!(stopped.cost_history.len(), at + 1);
}

#[test]
fn invalid_configs_are_rejected() {
    let t = catalog_get(19).unwrap();
    let q = target(TargetKind::Uniform, 2);
    for bad in [
        TrainConfig { stepsize: 0.0, ..Default::default() },
        TrainConfig { stepsize: f64::NAN, ..Default::default() },
        TrainConfig { momentum: 1.0, ..Default::default() },
        TrainConfig { iterations: 0, ..Default::default() },
        TrainConfig { stop_at_convergence: true, ..Default::default() },
    ] {
        assert!(train(&t, &q, &bad).is_err());
    }
    assert!(train_from(&t, &q, &TrainConfig::default(), vec![0.0; 5]).is_err());
    assert!(train(&t, &target(TargetKind::Uniform, 3), &TrainConfig::default()).is_err());
}

#[test]
fn rz_parameters_of_hz_circuits_are_inert() {
    let hz: Vec<_> = catalog_all().into_iter().filter(|t| t.family() == Family::HZ).collect();
    assert!(hz.len() >= 4);
    for t in hz {
        let base = vqdist::evaluate(&t, &vec![0.0; t.n_params()]).unwrap();
        for seed in 0..5 {
            let params = common::angles(t.n_params(), seed);
            let jac = prob_jacobian(&t, &params).unwrap();
            for j in 0..t.n_params() {
                assert!(jac.column(j).iter().all(|d| d.abs() <= 1e-12), "circuit {}", t.id());
            }
            let p = vqdist::evaluate(&t, &params).unwrap();
            let oracle = common::oracle_probs(&t, &params);
            for x in 0..p.len() {
                assert!((p[x] - base[x]).abs() <= 1e-12);
                assert!((oracle[x] - base[x]).abs() <= 1e-12);
            }
        }
        let trace = train(&t, &target(TargetKind::Normal, t.n_qubits()), &config(50, 1)).unwrap();
        let start = init_params(&t, InitScheme::UniformAngles, 1);
        let drift = trace.final_params.iter().zip(&start).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(drift <= 1e-10, "circuit {} moved by {drift:e}", t.id());
    }
}
