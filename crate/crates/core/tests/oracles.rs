//! Closed forms against independent brute-force or simulation routes.

use apsn_core::centrality::{
    brute_betweenness, brute_shapley, centralities, centrality, eigenvector_scores, hitting_times,
    rw_betweenness_absorbing, Measure,
};
use apsn_core::graph::{enumerate_labeled_graphs, write_graph6, Graph};
use apsn_core::value::{ExtRational, Value};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_graphs(n_max: usize) -> impl Iterator<Item = Graph> {
    (1..=n_max).flat_map(|n| enumerate_labeled_graphs(n).unwrap().iter().collect::<Vec<_>>())
}

#[test]
fn brandes_matches_path_enumeration() {
    for g in all_graphs(5) {
        let fast = centralities(&Measure::Betweenness, &g).unwrap();
        for i in g.vertices() {
            assert_eq!(fast[i], Value::rational(brute_betweenness(&g, i).unwrap()), "{} vertex {i}", write_graph6(&g));
        }
    }
}

#[test]
fn current_flow_matches_absorbing_walk() {
    for g in all_graphs(5) {
        for i in g.vertices() {
            let direct = centrality(&Measure::RwBetweenness, &g, i).unwrap();
            assert_eq!(direct, Value::rational(rw_betweenness_absorbing(&g, i).unwrap()), "{} vertex {i}", write_graph6(&g));
        }
    }
}

#[test]
fn shapley_closed_form_at_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let all: Vec<Graph> = enumerate_labeled_graphs(6).unwrap().iter().collect();
    for _ in 0..200 {
        let g = all[rng.gen_range(0..all.len())];
        for i in g.vertices() {
            assert_eq!(centrality(&Measure::GameTheoretic, &g, i).unwrap(), Value::rational(brute_shapley(&g, i).unwrap()));
        }
    }
}

fn simulated_hitting_time(g: &Graph, from: usize, target: usize, walks: usize, rng: &mut impl Rng) -> f64 {
    let mut total = 0u64;
    for _ in 0..walks {
        let mut v = from;
        while v != target {
            let nb: Vec<usize> = g.neighbor_iter(v).collect();
            v = nb[rng.gen_range(0..nb.len())];
            total += 1;
        }
    }
    total as f64 / walks as f64
}

#[test]
fn hitting_times_agree_with_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let graphs = [
        Graph::path(4).unwrap(),
        Graph::cycle(5).unwrap(),
        Graph::star(3).unwrap(),
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap(),
    ];
    for g in graphs {
        let exact = hitting_times(&g, 0);
        for v in 1..g.n() {
            let want = exact[v].to_f64();
            let got = simulated_hitting_time(&g, v, 0, 20_000, &mut rng);
            assert!((got - want).abs() / want < 0.05, "{} from {v}: {got} vs {want}", write_graph6(&g));
        }
    }
    let split = Graph::path(2).unwrap().with_isolated(1).unwrap();
    assert_eq!(hitting_times(&split, 0)[2], ExtRational::PosInf);
}

#[test]
fn path_measures_by_hand() {
    let p4 = Graph::path(4).unwrap();
    assert_eq!(centrality(&Measure::Closeness, &p4, 0).unwrap(), Value::ratio(1, 6));
    assert_eq!(centrality(&Measure::Harmonic, &p4, 1).unwrap(), Value::ratio(5, 2));
    assert_eq!(centrality(&Measure::decay(1, 2).unwrap(), &p4, 0).unwrap(), Value::ratio(7, 8));
    assert_eq!(centrality(&Measure::Eccentricity, &p4, 1).unwrap(), Value::ratio(3, 2));
    assert_eq!(centrality(&Measure::Betweenness, &p4, 1).unwrap(), Value::int(2));
}

#[test]
fn eigenvector_is_a_fixed_point() {
    for g in [Graph::path(5).unwrap(), Graph::star(4).unwrap(), Graph::complete_bipartite(2, 3).unwrap()] {
        let s = eigenvector_scores(&g).unwrap().scores;
        let ax: Vec<f64> = g.vertices().map(|i| g.neighbor_iter(i).map(|j| s[j]).sum()).collect();
        let lambda = ax.iter().zip(&s).map(|(a, b)| a * b).sum::<f64>();
        for i in g.vertices() {
            assert!((ax[i] - lambda * s[i]).abs() < 1e-6, "{} vertex {i}", write_graph6(&g));
        }
    }
}
