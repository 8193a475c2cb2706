mod common;

use rand::Rng;
use strongmatch::alternating::{
    classify_path, find_finitely_improving_path, is_strongly_maximal, is_strongly_w_maximal, PathClass, PathError,
    WeightVerdict,
};
use strongmatch::graph::{integer, EdgeId, Graph, Matching, VertexId};
use strongmatch::oracle;

fn brute_force_grows(g: &Graph, m: &Matching) -> bool {
    oracle::enumerate_matchings(g, 1 << 20)
        .unwrap()
        .iter()
        .any(|n| n.iter().filter(|e| !m.contains(**e)).count() > m.edges().filter(|e| !n.contains(e)).count())
}

#[test]
fn improving_path_exists_exactly_when_some_matching_grows() {
    let mut rng = common::rng(21);
    for _ in 0..400 {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.2..0.9);
        let g = common::random_graph(&mut rng, n, p);
        for _ in 0..5 {
            let keep = rng.gen_range(0.3..1.0);
            let m = common::random_matching(&mut rng, &g, keep);
            let found = find_finitely_improving_path(&g, &m);
            assert_eq!(found.is_some(), brute_force_grows(&g, &m));
            if let Some(p) = found {
                assert_eq!(classify_path(&g, &m, &p.vertices), Ok(PathClass::FinitelyImproving));
                let mut bigger = m.clone();
                bigger.switch(&g, &p.edges).unwrap();
                assert_eq!(bigger.len(), m.len() + 1);
            }
        }
    }
}

#[test]
fn weighted_verdict_matches_enumeration() {
    let mut rng = common::rng(22);
    for _ in 0..400 {
        let n = rng.gen_range(2..=6);
        let mut g = common::random_graph(&mut rng, n, 0.6);
        g = g.map_weights(|_, _| integer(rng.gen_range(-2..=2)));
        let m = common::random_matching(&mut rng, &g, 0.8);
        let brute = oracle::weighted_improvement(&g, &m, 1 << 20).unwrap();
        match is_strongly_w_maximal(&g, &m) {
            WeightVerdict::Certified => assert!(brute.is_none(), "missed improvement {brute:?}"),
            WeightVerdict::Improvable(imp) => {
                assert!(brute.is_some());
                let added = imp.matching.edges().filter(|e| !m.contains(*e)).map(|e| g.weight(e).clone());
                let removed = m.edges().filter(|e| !imp.matching.contains(*e)).map(|e| g.weight(e).clone());
                assert_eq!(added.sum::<strongmatch::Rational>() - removed.sum::<strongmatch::Rational>(), imp.gain);
            }
        }
    }
}

#[test]
fn maximum_matchings_are_strongly_maximal() {
    let mut rng = common::rng(23);
    for _ in 0..200 {
        let g = common::random_graph(&mut rng, 9, 0.35);
        let m = strongmatch::gallai_edmonds::maximum_matching(&g);
        assert!(is_strongly_maximal(&g, &m));
        assert_eq!(m.len(), oracle::max_matching_size(&g));
    }
}

fn path_graph(n: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for i in 0..n - 1 {
        g.add_edge(VertexId(i), VertexId(i + 1), integer(1)).unwrap();
    }
    g
}

#[test]
fn path_classes() {
    let g = path_graph(5);
    let m = Matching::from_edges(&g, [EdgeId(1)]).unwrap();
    let vs = |xs: &[usize]| xs.iter().map(|&x| VertexId(x)).collect::<Vec<_>>();
    assert_eq!(classify_path(&g, &m, &vs(&[0, 1, 2, 3])), Ok(PathClass::FinitelyImproving));
    assert_eq!(classify_path(&g, &m, &vs(&[0, 1, 2])), Ok(PathClass::Indifferent));
    assert_eq!(classify_path(&g, &m, &vs(&[1, 2])), Ok(PathClass::BothEndsMatched));
    assert_eq!(classify_path(&g, &m, &vs(&[2, 3, 4])), Err(PathError::NotAlternating(1)));
    assert_eq!(classify_path(&g, &m, &vs(&[0, 2])), Err(PathError::NotAdjacent(0, 2)));
    assert_eq!(classify_path(&g, &m, &vs(&[1])), Err(PathError::Trivial));
    assert_eq!(classify_path(&g, &m, &vs(&[1, 2, 1])), Err(PathError::RepeatedVertex(1)));
}

#[test]
fn shifting_weights_keeps_perfect_verdicts() {
    // among perfect matchings of K_n a constant shift changes nothing
    let mut rng = common::rng(24);
    for _ in 0..60 {
        let g = common::random_complete(&mut rng, 6, -3, 3);
        let shifted = g.map_weights(|_, w| w + integer(5));
        let (_, best) = oracle::min_weight_perfect(&g).unwrap();
        let (_, best_shifted) = oracle::min_weight_perfect(&shifted).unwrap();
        let m = Matching::from_edges(&g, best).unwrap();
        let ms = Matching::from_edges(&shifted, best_shifted).unwrap();
        assert_eq!(m.weight(&shifted), ms.weight(&shifted));
    }
}
