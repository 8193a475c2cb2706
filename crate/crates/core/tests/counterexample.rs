use std::cmp::Ordering;

use num_bigint::BigInt;
use strongmatch::counterexample::{
    build_prefix, build_prefix_with, demonstrate_improvement, verify_inequalities, CounterexampleError,
    CounterexamplePrefix, Decider, Improvement, ImprovementCase, LinearA, PathWeight,
};
use strongmatch::graph::Matching;

fn prefix(depth: usize) -> CounterexamplePrefix {
    build_prefix_with(depth, depth as u32 + 4, 10_000).unwrap()
}

fn improves(p: &CounterexamplePrefix, m: &Matching) -> strongmatch::counterexample::PrefixImprovement {
    match demonstrate_improvement(p, m).unwrap() {
        Improvement::Improves(imp) => imp,
        other => panic!("expected an improvement, got {other:?}"),
    }
}

#[test]
fn depth_three_prefix_satisfies_every_inequality() {
    let p = build_prefix(3).unwrap();
    assert_eq!(p.n, vec![BigInt::from(1), BigInt::from(101), BigInt::from(101_001)]);
    assert_eq!(p.graph().edge_count(), 3 + 203 + 202_003);
    let report = verify_inequalities(&p).unwrap();
    assert!(report.all_hold());
    assert_eq!(report.almost_integral.len(), 6);
    for (j, path) in report.paths.iter().enumerate() {
        assert_eq!(path.k, path.k_expected);
        assert_eq!(path.last_odd, PathWeight::TwoA, "P_{}", j + 1);
    }
}

#[test]
fn running_gap_stays_in_range() {
    // after each even edge, odd minus even lies in [1 - a, 1)
    let p = prefix(2);
    let mut d = Decider::new(p.truncation);
    for path in &p.paths {
        let mut gap = LinearA::zero();
        for pos in 0..path.edge_count() {
            if pos % 2 == 0 {
                gap = gap + path.weight(pos).form();
            } else {
                assert_eq!(path.weight(pos), PathWeight::TwoAMinusOne);
                gap = gap - path.weight(pos).form();
                assert_ne!(d.sign(&(gap.clone() - LinearA::from_ints(1, -1))).unwrap(), Ordering::Less);
                assert_eq!(d.sign(&(gap.clone() - LinearA::from_ints(1, 0))).unwrap(), Ordering::Less);
            }
        }
    }
}

#[test]
fn two_exposed_vertices_on_a_path() {
    let p = prefix(2);
    let p2 = p.path(2);
    let mut m = p.perfect_through(1);
    m.remove(p.graph(), p2.edge(1));
    m.remove(p.graph(), p2.edge(3));
    m.insert(p.graph(), p2.edge(2)).unwrap();
    let imp = improves(&p, &m);
    assert_eq!(imp.case, ImprovementCase::SubpathSwitch);
    assert_eq!(imp.switched, vec![p2.edge(1), p2.edge(2), p2.edge(3)]);
    assert_eq!(imp.matching.len(), m.len() + 1);
}

#[test]
fn ends_matched_into_different_paths() {
    let p = prefix(2);
    let g = p.graph();
    let (p1, p2) = (p.path(1), p.path(2));
    // x by the first edge of P_1, y by the last edge of P_2
    let mut edges = vec![p1.edge(0), p2.edge(p2.edge_count() - 1)];
    edges.extend((2..p2.edge_count() - 1).step_by(2).map(|pos| p2.edge(pos)));
    let m = Matching::from_edges(g, edges).unwrap();
    assert_eq!(m.exposed().len(), 2);
    let imp = improves(&p, &m);
    assert_eq!(imp.case, ImprovementCase::CrossPathSwitch);
    assert_eq!(imp.paths, vec![1, 2]);
    let mut d = Decider::new(p.truncation);
    // the switch gains more than a - 1
    assert_eq!(d.sign(&(imp.gain.clone() - LinearA::from_ints(-1, 1))).unwrap(), Ordering::Greater);
}

#[test]
fn perfect_matchings_move_to_the_next_path() {
    let p = build_prefix(3).unwrap();
    let mut gains = Vec::new();
    for i in 1..3 {
        let imp = improves(&p, &p.perfect_through(i));
        assert_eq!(imp.case, ImprovementCase::PathSwap);
        assert_eq!(imp.paths, vec![i, i + 1]);
        assert!(imp.matching.is_perfect());
        assert_eq!(imp.gain, p.difference(i + 1) - p.difference(i));
        gains.push(imp.gain);
    }
    let mut d = Decider::new(p.truncation);
    assert_eq!(d.sign(&(gains[0].clone() - gains[1].clone())).unwrap(), Ordering::Greater);
    assert!(matches!(demonstrate_improvement(&p, &p.perfect_through(3)).unwrap(), Improvement::PrefixOptimal { path: 3 }));
}

#[test]
fn foreign_matchings_are_rejected() {
    let small = prefix(1);
    let big = prefix(2);
    let m = big.perfect_through(2);
    assert!(matches!(demonstrate_improvement(&small, &m), Err(CounterexampleError::Matching(_))));
}
