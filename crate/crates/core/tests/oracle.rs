mod common;

use common::{gauss_pagerank, max_rel};
use proptest::prelude::*;
use pushrank::engine::{ifp1_run, ifp2_run, sync_simulate, sync_simulate_detailed, EngineOptions, SyncVariant};
use pushrank::graph::{classify, load_edge_list, preprocess_ifp2};
use pushrank::solver::{forward_push_state, power_method, series_pagerank, DanglingMode};
use pushrank::{Graph, SolverConfig};

const C: f64 = 0.85;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..30).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..(n * 4)).prop_map(move |edges| Graph::from_edges(n, &edges).unwrap())
    })
}

fn opts(k: usize) -> EngineOptions {
    EngineOptions::with_workers(k)
}

#[test]
fn three_chain_closed_form() {
    // 0 -> 1 -> 2: pi is proportional to [1, 1 + c, 1 + c + c^2].
    let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let z = 3.0 + 2.0 * C + C * C;
    let expected = [1.0 / z, (1.0 + C) / z, (1.0 + C + C * C) / z];
    assert!(max_rel(&gauss_pagerank(&g, C), &expected) < 1e-14);
    let cls = classify(&g);
    let cfg = SolverConfig::with_xi(1e-13);
    let (ifp1, _) = ifp1_run(&g, &cls, &cfg, opts(2)).unwrap();
    let (ifp2, trace) = ifp2_run(&preprocess_ifp2(&g, &cls), &cfg, opts(2)).unwrap();
    assert!(max_rel(&ifp1.values, &expected) < 1e-10);
    assert!(max_rel(&ifp2.values, &expected) < 1e-10);
    assert_eq!(trace.push_ops_to_dangling, 1);
    assert_eq!(ifp1.ranking()[0], 2);
}

#[test]
fn two_cycle_is_uniform() {
    let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
    let cls = classify(&g);
    let (r, _) = ifp1_run(&g, &cls, &SolverConfig::with_xi(1e-12), opts(2)).unwrap();
    assert!((r.values[0] - 0.5).abs() < 1e-12 && (r.values[1] - 0.5).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solvers_agree_with_gaussian_elimination(g in arb_graph(), k in 1usize..5) {
        let oracle = gauss_pagerank(&g, C);
        let cfg = SolverConfig::with_xi(1e-12);
        let cls = classify(&g);
        let candidates = [
            power_method(&g, &cfg, k).unwrap().0.values,
            series_pagerank(&g, &cfg, 200).unwrap().values,
            ifp1_run(&g, &cls, &cfg, opts(k)).unwrap().0.values,
            ifp2_run(&preprocess_ifp2(&g, &cls), &cfg, opts(k)).unwrap().0.values,
            sync_simulate(&g, &cls, &cfg, SyncVariant::Ifp1).unwrap().0.values,
            sync_simulate(&g, &cls, &cfg, SyncVariant::Ifp2).unwrap().0.values,
        ];
        for v in &candidates {
            prop_assert!(max_rel(v, &oracle) <= 1e-8);
            prop_assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn redistributing_push_conserves_mass(g in arb_graph(), xi_exp in 4i32..13) {
        let cfg = SolverConfig::with_xi(10f64.powi(-xi_exp));
        let s = forward_push_state(&g, &cfg, DanglingMode::Redistribute).unwrap();
        let total: f64 = s.reserved.iter().chain(&s.pending).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(s.pending.iter().all(|&h| h <= cfg.xi));
    }

    #[test]
    fn ifp2_touches_each_dangling_edge_once(g in arb_graph(), k in 1usize..5) {
        let cls = classify(&g);
        let cfg = SolverConfig::with_xi(1e-9);
        let (_, t2) = ifp2_run(&preprocess_ifp2(&g, &cls), &cfg, opts(k)).unwrap();
        let (_, t1) = ifp1_run(&g, &cls, &cfg, opts(k)).unwrap();
        prop_assert_eq!(t2.push_ops_to_dangling, cls.dangling_edge_count as u64);
        prop_assert!(t1.push_ops_to_dangling >= cls.dangling_edge_count as u64);
    }

    #[test]
    fn reserved_mass_is_monotone(g in arb_graph()) {
        let cls = classify(&g);
        for variant in [SyncVariant::Ifp1, SyncVariant::Ifp2, SyncVariant::FpFull] {
            let r = sync_simulate_detailed(&g, &cls, &SolverConfig::with_xi(1e-8), variant, true).unwrap();
            for w in r.reserved_history.windows(2) {
                prop_assert!(w[0].iter().zip(&w[1]).all(|(a, b)| a <= b));
            }
        }
    }

    #[test]
    fn classification_is_consistent(g in arb_graph()) {
        let cls = classify(&g);
        let n = g.vertex_count();
        let rev = g.transpose();
        for v in 0..n {
            prop_assert_eq!(cls.is_dangling(v), g.out_degree(v) == 0);
        }
        prop_assert_eq!(cls.unreferenced.to_vec(),
            (0..n).filter(|&v| rev.in_degree(v) == 0).collect::<Vec<_>>());
        let m_d = g.edges().filter(|&(_, t)| g.out_degree(t) == 0).count();
        prop_assert_eq!(cls.dangling_edge_count, m_d);
        for &v in &cls.weak_dangling {
            prop_assert!(!cls.is_dangling(v) && !cls.unreferenced.contains(&v));
        }
    }

    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let text: String = g.edges().map(|(s, t)| format!("{s} {t}\n")).collect();
        prop_assume!(!text.is_empty());
        let (h, _) = load_edge_list(text.as_bytes()).unwrap();
        let mut a: Vec<(u64, u64)> = g.edges().map(|(s, t)| (s as u64, t as u64)).collect();
        let mut b: Vec<(u64, u64)> = h.edges().map(|(s, t)| (h.original_id(s), h.original_id(t))).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }
}
