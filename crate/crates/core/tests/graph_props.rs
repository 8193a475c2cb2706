mod common;

use proptest::prelude::*;
use strongmatch::graph::{
    format_rational, normalize_weights, parse_rational, rational, symmetric_difference_decompose, AltKind, Graph,
    Matching, Rational,
};
use strongmatch::oracle;

#[test]
fn decomposition_covers_the_symmetric_difference() {
    let mut rng = common::rng(11);
    for _ in 0..300 {
        let g = common::random_graph(&mut rng, 8, 0.5);
        let m = common::random_matching(&mut rng, &g, 0.7);
        let n = common::random_matching(&mut rng, &g, 0.7);
        let parts = symmetric_difference_decompose(&g, &m, &n);
        let mut seen: Vec<_> = parts.iter().flat_map(|c| c.edges.iter().copied()).collect();
        seen.sort();
        assert_eq!(seen, m.symmetric_difference(&n).into_iter().collect::<Vec<_>>());
        for c in &parts {
            for pair in c.edges.windows(2) {
                assert_ne!(m.contains(pair[0]), m.contains(pair[1]), "components alternate");
            }
            match c.kind {
                AltKind::Cycle => {
                    assert_eq!(c.edges.len() % 2, 0);
                    assert_eq!(c.vertices.len(), c.edges.len());
                }
                AltKind::Path => assert_eq!(c.vertices.len(), c.edges.len() + 1),
            }
        }
    }
}

#[test]
fn normalization_keeps_the_best_perfect_matching() {
    let mut rng = common::rng(12);
    for n in [4, 6] {
        for _ in 0..40 {
            let g = common::random_complete(&mut rng, n, -7, 7).map_weights(|e, w| w / rational(1 + (e.0 % 3) as i64, 1));
            let norm = normalize_weights(&g);
            assert!(norm.graph.edges().iter().all(|e| e.weight.is_integer() && e.weight >= rational(1, 1)));
            let (w, edges) = oracle::min_weight_perfect(&g).unwrap();
            let m = Matching::from_edges(&norm.graph, edges).unwrap();
            let (wn, _) = oracle::min_weight_perfect(&norm.graph).unwrap();
            assert_eq!(m.weight(&norm.graph), wn);
            let shift = Rational::from_integer(norm.shift.clone()) * rational(n as i64 / 2, 1);
            assert_eq!((wn - shift) / Rational::from_integer(norm.scale.clone()), w);
            assert_eq!(Matching::from_edges(&g, m.edges()).unwrap().weight(&g), w);
        }
    }
}

proptest! {
    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
        let r = rational(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }

    #[test]
    fn complete_graphs_are_complete(n in 0usize..9) {
        let g = Graph::complete(n, |_, _| rational(1, 1));
        prop_assert!(g.is_complete());
        prop_assert_eq!(g.edge_count(), n * n.saturating_sub(1) / 2);
    }
}
