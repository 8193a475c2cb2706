mod common;

use rand::Rng;
use strongmatch::alternating::is_strongly_w_maximal;
use strongmatch::graph::{integer, rational, Graph, Matching, VertexId};
use strongmatch::oracle;
use strongmatch::primal_dual::{verify_certificate, RunOptions};
use strongmatch::reduction::{lift_competitor, solve, strongly_w_maximal, strongly_w_maximal_certified, EdgeOrigin};

#[test]
fn reduction_reaches_maximum_weight() {
    let mut rng = common::rng(51);
    for _ in 0..150 {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.9);
        let g = common::random_weighted_graph(&mut rng, n, p);
        let m = strongly_w_maximal(&g).unwrap();
        assert_eq!(m.weight(&g), oracle::max_weight_matching(&g).0, "{}", strongmatch::io::format_edge_list(&g));
        assert!(is_strongly_w_maximal(&g, &m).is_certified());
    }
}

#[test]
fn mixed_sign_weights() {
    let mut rng = common::rng(52);
    for _ in 0..80 {
        let n = rng.gen_range(2..=6);
        let g = common::random_graph(&mut rng, n, 0.7).map_weights(|_, _| rational(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        let m = strongly_w_maximal_certified(&g).unwrap();
        assert_eq!(m.weight(&g), oracle::max_weight_matching(&g).0);
    }
}

#[test]
fn completed_instance_carries_a_valid_certificate() {
    let mut rng = common::rng(53);
    for _ in 0..60 {
        let g = common::random_weighted_graph(&mut rng, 6, 0.5);
        let r = solve(&g, RunOptions::default()).unwrap();
        assert!(r.completed.is_complete());
        assert!(verify_certificate(&r.completed, &r.solution.matching, &r.solution.certificate).passed());
    }
}

#[test]
fn lifted_competitors_never_beat_the_answer() {
    // a competitor lifted with fill edges only has the same weight on both
    // sides, so the completed optimum bounds it
    let mut rng = common::rng(54);
    for _ in 0..60 {
        let g = common::random_weighted_graph(&mut rng, 6, 0.5);
        let r = solve(&g, RunOptions::default()).unwrap();
        for n in oracle::enumerate_matchings(&g, 1 << 16).unwrap() {
            let n = Matching::from_edges(&g, n).unwrap();
            let Some((lifted, added)) = lift_competitor(&r, &n) else { continue };
            if added.iter().all(|e| r.origin[e.0] == EdgeOrigin::Fill) {
                assert_eq!(-lifted.weight(&r.completed), n.weight(&g));
                assert!(n.weight(&g) <= r.matching.weight(&g));
            }
        }
    }
}

#[test]
fn heavy_middle_edge_beats_two_light_ones() {
    let mut g = Graph::with_vertices(4);
    g.add_edge(VertexId(0), VertexId(1), integer(1)).unwrap();
    let mid = g.add_edge(VertexId(1), VertexId(2), integer(3)).unwrap();
    g.add_edge(VertexId(2), VertexId(3), integer(1)).unwrap();
    let m = strongly_w_maximal_certified(&g).unwrap();
    assert_eq!(m.edges().collect::<Vec<_>>(), vec![mid]);
}
