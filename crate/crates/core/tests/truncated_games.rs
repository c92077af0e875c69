use std::sync::Arc;

use apsn_core::centrality::{Measure, WeightTable};
use apsn_core::game::{apsn_verdict, Verdict};
use apsn_core::graph::{pair_count, Graph};
use apsn_core::truncated::{
    greedy_linear_apsn, is_maximal_member, maximal_member, pareto_check, truncated_game, universality_thresholds,
};
use apsn_core::value::ExtRational;
use proptest::prelude::*;

fn weights(n: usize) -> impl Strategy<Value = WeightTable> {
    proptest::collection::vec(1u64..=6, pair_count(n)).prop_map(move |ws| {
        let mut t = WeightTable::zeros(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                t.set(i, j, ws[k]).unwrap();
                k += 1;
            }
        }
        t
    })
}

fn weighted_instance() -> impl Strategy<Value = (WeightTable, Vec<ExtRational>)> {
    (2usize..=6).prop_flat_map(weights).prop_flat_map(|w| {
        let caps: Vec<_> = (0..w.n()).map(|i| 0..=w.row_sum(i) as i64).collect();
        (Just(w), caps).prop_map(|(w, t)| (w, t.into_iter().map(ExtRational::int).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_output_is_stable((w, theta) in weighted_instance()) {
        let g = greedy_linear_apsn(&w, &theta).unwrap();
        let measures = vec![Measure::Linear(Arc::new(w)); g.n()];
        prop_assert!(pareto_check(&g, &measures, &theta).unwrap());
        let spec = truncated_game(&measures, &theta).unwrap();
        prop_assert_eq!(apsn_verdict(&spec, &g).unwrap(), Verdict::Stable);
    }

    #[test]
    fn every_graph_is_stable_at_its_own_values(n in 2usize..=6, mask in any::<u128>()) {
        let g = Graph::from_pair_mask(n, mask & ((1u128 << pair_count(n)) - 1)).unwrap();
        let measures = vec![Measure::Harmonic; n];
        let theta = universality_thresholds(&g, &measures).unwrap();
        let spec = truncated_game(&measures, &theta).unwrap();
        prop_assert_eq!(apsn_verdict(&spec, &g).unwrap(), Verdict::Stable);
    }
}

#[test]
fn maximal_member_under_degree_bounds() {
    for n in 2..=5 {
        for t in 0..n as i64 {
            let measures = vec![Measure::Degree; n];
            let theta = vec![ExtRational::int(t); n];
            let m = maximal_member(n, &measures, &theta, None).unwrap();
            assert!(is_maximal_member(&m.graph, &measures, &m.bounds).unwrap());
            assert!(m.graph.vertices().all(|v| m.graph.degree(v) as i64 <= t));
            let spec = truncated_game(&measures, &theta).unwrap();
            assert_eq!(apsn_verdict(&spec, &m.graph).unwrap(), Verdict::Stable, "n={n} θ={t}");
        }
    }
}
