mod common;

use rand::Rng;
use strongmatch::graph::{integer, EdgeId, Graph, VertexId};
use strongmatch::oracle::{
    enumerate_matchings, has_augmenting_path, is_factor_critical, is_uniformly_almost_matchable, max_matching_size,
};

/// Number of matchings, the empty one included.
fn count(g: &Graph) -> usize {
    enumerate_matchings(g, 1 << 22).unwrap().len()
}

fn delete_edge(g: &Graph, e: EdgeId) -> Graph {
    let mut out = Graph::with_vertices(g.vertex_count());
    for (i, edge) in g.edges().iter().enumerate() {
        if i != e.0 {
            out.add_edge(edge.u, edge.v, edge.weight.clone()).unwrap();
        }
    }
    out
}

fn delete_ends(g: &Graph, e: EdgeId) -> Graph {
    let (a, b) = g.endpoints(e);
    let keep: Vec<VertexId> = g.vertices().filter(|&v| v != a && v != b).collect();
    g.induced(&keep).0
}

#[test]
fn matching_counts_follow_the_deletion_recurrence() {
    let mut rng = common::rng(61);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let g = common::random_graph(&mut rng, n, 0.5);
        if g.edge_count() == 0 {
            assert_eq!(count(&g), 1);
            continue;
        }
        let e = EdgeId(rng.gen_range(0..g.edge_count()));
        assert_eq!(count(&g), count(&delete_edge(&g, e)) + count(&delete_ends(&g, e)));
    }
}

#[test]
fn small_counts() {
    let tri = Graph::complete(3, |_, _| integer(1));
    assert_eq!(count(&tri), 4);
    let mut p = Graph::with_vertices(4);
    for i in 0..3 {
        p.add_edge(VertexId(i), VertexId(i + 1), integer(1)).unwrap();
    }
    // empty, three single edges, the two outer edges
    assert_eq!(count(&p), 5);
    assert_eq!(max_matching_size(&p), 2);
}

fn cycle(n: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for i in 0..n {
        g.add_edge(VertexId(i), VertexId((i + 1) % n), integer(1)).unwrap();
    }
    g
}

#[test]
fn odd_cycles_are_factor_critical() {
    assert!(is_factor_critical(&cycle(5)));
    assert!(!is_factor_critical(&cycle(4)));
    assert!(is_uniformly_almost_matchable(&Graph::with_vertices(1)));
    assert!(!is_factor_critical(&Graph::with_vertices(2)));
}

#[test]
fn augmenting_paths_track_cardinality() {
    let mut rng = common::rng(62);
    for _ in 0..200 {
        let g = common::random_graph(&mut rng, 7, 0.4);
        let m = common::random_matching(&mut rng, &g, 0.5);
        assert_eq!(has_augmenting_path(&g, &m), m.len() < max_matching_size(&g));
    }
}
