mod common;

use common::{max_abs_diff, random_connected_graph, random_counts, random_m, random_perm};
use paircomp::graphs::{canonical_code, enumerate_connected, properties, single_edge_extensions};
use paircomp::simulation::{draw_initial_weights, run, Measure};
use paircomp::{
    bt_mle, bt_mle_with, data_consistency, em, exact_probabilities, llsm, log_likelihood,
    log_likelihood_gradient, pcm_consistency, pcm_from_data, weights_from_m, ComparisonGraph, Ipcm,
    MleOptions, ModelKind, SimulationConfig, WeightVector,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_probabilities_are_recovered(seed in any::<u64>(), n in 4usize..=6) {
        let mut rng = rng(seed);
        let m0 = random_m(&mut rng, n, 1.5);
        let g = random_connected_graph(&mut rng, n);
        for model in [ModelKind::Logistic, ModelKind::Normal] {
            let d = exact_probabilities(&m0, &g, model).unwrap();
            let fit = bt_mle(&d, model).unwrap();
            prop_assert!(fit.m.max_abs_diff(&m0) < 1e-6, "{model}: {:?} vs {:?}", fit.m, m0);
        }
    }

    #[test]
    fn methods_agree_on_consistent_data(seed in any::<u64>(), n in 4usize..=6) {
        let mut rng = rng(seed);
        let m0 = random_m(&mut rng, n, 1.5);
        let g = random_connected_graph(&mut rng, n);
        let d = exact_probabilities(&m0, &g, ModelKind::Logistic).unwrap();
        prop_assert!(data_consistency(&d, 1e-9).unwrap().consistent);
        let w_bt = weights_from_m(&bt_mle(&d, ModelKind::Logistic).unwrap().m);
        let a = pcm_from_data(&d);
        let w_llsm = llsm(&a).unwrap();
        let w_em = em(&a).unwrap().weights;
        prop_assert!(max_abs_diff(w_bt.as_slice(), w_llsm.as_slice()) < 1e-6);
        prop_assert!(max_abs_diff(w_bt.as_slice(), w_em.as_slice()) < 1e-6);
    }

    #[test]
    fn mle_is_scale_invariant(seed in any::<u64>(), n in 3usize..=6, c in 0.01f64..1000.0) {
        let mut rng = rng(seed);
        let g = random_connected_graph(&mut rng, n);
        let d = random_counts(&mut rng, &g, 20);
        for model in [ModelKind::Logistic, ModelKind::Normal] {
            let a = bt_mle(&d, model).unwrap().m;
            let b = bt_mle(&d.scaled(c), model).unwrap().m;
            prop_assert!(a.max_abs_diff(&b) < 1e-9);
        }
    }

    #[test]
    fn mm_ascends(seed in any::<u64>(), n in 3usize..=6) {
        let mut rng = rng(seed);
        let g = random_connected_graph(&mut rng, n);
        let d = random_counts(&mut rng, &g, 20);
        let opts = MleOptions { track_loglik: true, ..MleOptions::default() };
        let fit = bt_mle_with(&d, ModelKind::Logistic, &opts).unwrap();
        prop_assert!(fit.trace.len() >= 2);
        for step in fit.trace.windows(2) {
            prop_assert!(step[1] >= step[0] - 1e-12 * step[0].abs(), "{} then {}", step[0], step[1]);
        }
    }

    #[test]
    fn estimators_are_permutation_equivariant(seed in any::<u64>(), n in 3usize..=6) {
        let mut rng = rng(seed);
        let g = random_connected_graph(&mut rng, n);
        let d = random_counts(&mut rng, &g, 20);
        let perm = random_perm(&mut rng, n);
        let dp = d.permuted(&perm);
        for model in [ModelKind::Logistic, ModelKind::Normal] {
            let w = weights_from_m(&bt_mle(&d, model).unwrap().m).permuted(&perm);
            let wp = weights_from_m(&bt_mle(&dp, model).unwrap().m);
            prop_assert!(max_abs_diff(w.as_slice(), wp.as_slice()) < 1e-8);
        }
        let (a, ap) = (pcm_from_data(&d), pcm_from_data(&dp));
        let (rows, rows_p) = (a.permuted(&perm).rows(), ap.rows());
        for (x, y) in rows.iter().flatten().zip(rows_p.iter().flatten()) {
            match (x, y) {
                (Some(x), Some(y)) => prop_assert!((x - y).abs() <= 1e-12 * x.abs()),
                (None, None) => {}
                _ => prop_assert!(false, "missing cells differ"),
            }
        }
        let w = llsm(&a).unwrap().permuted(&perm);
        prop_assert!(max_abs_diff(w.as_slice(), llsm(&ap).unwrap().as_slice()) < 1e-10);
        let w = em(&a).unwrap().weights.permuted(&perm);
        prop_assert!(max_abs_diff(w.as_slice(), em(&ap).unwrap().weights.as_slice()) < 1e-9);
    }

    #[test]
    fn complete_consistent_pcm_is_reproduced(seed in any::<u64>(), n in 2usize..=8) {
        let mut rng = rng(seed);
        let w = WeightVector::normalized((0..n).map(|_| rng.random_range(0.1..10.0)).collect()).unwrap();
        let a = Ipcm::from_weights(&w);
        prop_assert!(max_abs_diff(llsm(&a).unwrap().as_slice(), w.as_slice()) < 1e-9);
        let fit = em(&a).unwrap();
        prop_assert!(max_abs_diff(fit.weights.as_slice(), w.as_slice()) < 1e-9);
        prop_assert!((fit.lambda_max - n as f64).abs() < 1e-9);
    }

    #[test]
    fn normal_gradient_matches_finite_differences(seed in any::<u64>(), n in 3usize..=6) {
        let mut rng = rng(seed);
        let g = random_connected_graph(&mut rng, n);
        let d = random_counts(&mut rng, &g, 20);
        let m = random_m(&mut rng, n, 2.0).into_vec();
        let grad = log_likelihood_gradient(&d, &m, ModelKind::Normal);
        let h = 1e-6;
        for k in 0..n {
            let (mut up, mut down) = (m.clone(), m.clone());
            up[k] += h;
            down[k] -= h;
            let fd = (log_likelihood(&d, &up, ModelKind::Normal)
                - log_likelihood(&d, &down, ModelKind::Normal)) / (2.0 * h);
            prop_assert!((fd - grad[k]).abs() <= 1e-5 * grad[k].abs().max(1.0), "{fd} vs {}", grad[k]);
        }
    }

    #[test]
    fn data_and_pcm_consistency_agree(seed in any::<u64>(), n in 3usize..=6, c in 0.01f64..100.0) {
        let mut rng = rng(seed);
        let g = random_connected_graph(&mut rng, n);
        let d = random_counts(&mut rng, &g, 5);
        let by_data = data_consistency(&d, 1e-9).unwrap();
        let by_pcm = pcm_consistency(&pcm_from_data(&d), 1e-9).unwrap();
        prop_assert_eq!(by_data.consistent, by_pcm.consistent);
        prop_assert!((by_data.max_cycle_deviation - by_pcm.max_cycle_deviation).abs() < 1e-12);

        let scaled = data_consistency(&d.scaled(c), 1e-9).unwrap();
        prop_assert_eq!(scaled.consistent, by_data.consistent);
        prop_assert!((scaled.max_cycle_deviation - by_data.max_cycle_deviation).abs() < 1e-12);

        let perm = random_perm(&mut rng, n);
        let permuted = data_consistency(&d.permuted(&perm), 1e-9).unwrap();
        prop_assert_eq!(permuted.consistent, by_data.consistent);
        if let Some(cycle) = permuted.witness {
            prop_assert_eq!(cycle.first(), cycle.last());
            let relabelled = d.permuted(&perm);
            for step in cycle.windows(2) {
                prop_assert!(relabelled.get(step[0], step[1]).is_some());
            }
        }
    }

    #[test]
    fn exact_probabilities_are_consistent(seed in any::<u64>(), n in 3usize..=6) {
        let mut rng = rng(seed);
        let g = random_connected_graph(&mut rng, n);
        let m = random_m(&mut rng, n, 3.0);
        for model in [ModelKind::Logistic, ModelKind::Normal] {
            let d = exact_probabilities(&m, &g, model).unwrap();
            for (_, p) in d.pairs() {
                prop_assert!((p.worse + p.better - 1.0).abs() < 1e-12);
            }
            if model == ModelKind::Logistic {
                prop_assert!(data_consistency(&d, 1e-9).unwrap().consistent);
            }
        }
    }
}

#[test]
fn canonical_code_ignores_labels() {
    let mut rng = rng(11);
    for n in 4..=6 {
        for class in enumerate_connected(n).unwrap() {
            let g = class.graph();
            for _ in 0..100 {
                let perm = random_perm(&mut rng, n);
                assert_eq!(canonical_code(&g.permuted(&perm)).unwrap(), class.code);
            }
        }
    }
}

#[test]
fn catalog_lattice_is_upward_connected() {
    for n in 4..=6 {
        let classes = enumerate_connected(n).unwrap();
        let full = n * (n - 1) / 2;
        for a in classes.iter().filter(|c| c.edge_count < full) {
            assert!(
                classes.iter().any(|b| single_edge_extensions(a, b)),
                "{} has no extension",
                a.label()
            );
        }
        let stars = classes
            .iter()
            .filter(|c| properties(&c.graph()).unwrap().is_star)
            .count();
        assert_eq!(stars, 1);
    }
}

#[test]
fn initial_weights_are_exchangeable() {
    let mut rng = rng(5);
    let (n, draws) = (5, 100_000);
    let mut sum = vec![0.0; n];
    let mut sum_sq = vec![0.0; n];
    for _ in 0..draws {
        let w = draw_initial_weights(&mut rng, n);
        for (k, v) in w.as_slice().iter().enumerate() {
            sum[k] += v;
            sum_sq[k] += v * v;
        }
    }
    for k in 0..n {
        let mean = sum[k] / draws as f64;
        let var = sum_sq[k] / draws as f64 - mean * mean;
        let se = (var / draws as f64).sqrt();
        assert!(
            (mean - 1.0 / n as f64).abs() < 3.0 * se,
            "coordinate {k}: {mean}"
        );
    }
}

#[test]
fn simulation_ignores_thread_count() {
    let config = SimulationConfig::new(5, 0.1, 1500, 99);
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = one.install(|| run(&config)).unwrap();
    let b = four.install(|| run(&config)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn unperturbed_data_is_recovered_on_every_graph() {
    let summary = run(&SimulationConfig::new(4, 0.0, 500, 3)).unwrap();
    let complete = summary.graphs.last().unwrap();
    assert!(complete.class.is_complete());
    for g in &summary.graphs {
        assert!(g.mean(Measure::EuM) < 1e-6);
        assert!(g.mean(Measure::EuW) < 1e-6);
        // tied draws make the rank correlations of the complete row itself
        // fall below 1; every other structure must match it exactly
        for measure in [Measure::Rho, Measure::Tau, Measure::PeM, Measure::PeW] {
            assert!(
                (g.mean(measure) - complete.mean(measure)).abs() < 1e-9,
                "{measure}"
            );
            assert_eq!(g.stat(measure).count, complete.stat(measure).count);
        }
    }
}

#[test]
fn complete_row_is_perfect() {
    let summary = run(&SimulationConfig::new(5, 0.1, 300, 8)).unwrap();
    let complete = summary.graphs.last().unwrap();
    assert!(complete.class.is_complete());
    assert_eq!(complete.mean(Measure::EuM), 0.0);
    assert_eq!(complete.mean(Measure::EuW), 0.0);
    for measure in [Measure::PeM, Measure::PeW, Measure::Rho, Measure::Tau] {
        assert_eq!(complete.mean(measure), 1.0, "{measure}");
    }
}

#[test]
fn star_degrades_with_perturbation() {
    let star_id = enumerate_connected(4)
        .unwrap()
        .into_iter()
        .find(|c| properties(&c.graph()).unwrap().is_star)
        .unwrap()
        .id;
    let runs: Vec<_> = [0.05, 0.10, 0.15, 0.20]
        .iter()
        .map(|&p| run(&SimulationConfig::new(4, p, 10_000, 2024)).unwrap())
        .collect();
    for pair in runs.windows(2) {
        let (lo, hi) = (
            pair[0].graph(star_id).unwrap(),
            pair[1].graph(star_id).unwrap(),
        );
        for measure in Measure::ALL {
            let (a, b) = (lo.mean(measure), hi.mean(measure));
            if measure.lower_is_better() {
                assert!(b >= a, "{measure}: {a} then {b}");
            } else {
                assert!(b <= a, "{measure}: {a} then {b}");
            }
        }
    }
}

#[test]
fn catalog_members_are_connected() {
    for n in 2..=6 {
        for class in enumerate_connected(n).unwrap() {
            let g: ComparisonGraph = class.graph();
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), class.edge_count);
        }
    }
}
