//! Gallai–Edmonds structure of a finite graph and strongly maximal matchings
//! assembled from it.
//!
//! On a finite graph a matching is strongly maximal exactly when it has
//! maximum cardinality, so every construction here bottoms out in the
//! blossom engine of [`blossom`].

pub mod blossom;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{EdgeId, Graph, Matching, VertexId};
use blossom::{IndexGraph, MateTable};

/// One component of `G - T` that is factor critical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalComponent {
    pub vertices: Vec<VertexId>,
    pub factor_critical: bool,
}

/// `(T, F, f_map, v(t), rest)` with
/// * `F` the factor-critical components of `G - T`,
/// * `f_map: T → F` injective, `contact[t] ∈ f_map(t)` adjacent to `t`,
/// * `rest = V - T - ⋃F` perfectly matchable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GEDecomposition {
    pub t: Vec<VertexId>,
    pub components: Vec<CriticalComponent>,
    pub f_map: BTreeMap<VertexId, usize>,
    pub contact: BTreeMap<VertexId, VertexId>,
    pub rest: Vec<VertexId>,
}

impl GEDecomposition {
    /// Components not in the range of `f_map`.
    pub fn unmapped_components(&self) -> Vec<usize> {
        let used: std::collections::BTreeSet<usize> = self.f_map.values().copied().collect();
        (0..self.components.len()).filter(|c| !used.contains(c)).collect()
    }
}

fn to_matching(g: &Graph, mate: &MateTable) -> Matching {
    Matching::from_edges(g, blossom::matching_edges(mate).into_iter().map(EdgeId)).expect("engine output is a matching")
}

fn mate_table(g: &Graph, m: &Matching) -> MateTable {
    g.vertices().map(|v| m.mate_edge(v).map(|e| e.0)).collect()
}

pub fn maximum_matching(g: &Graph) -> Matching {
    to_matching(g, &blossom::maximum_matching(&IndexGraph::from_graph(g)))
}

/// Decomposes `g` via one maximum matching: `D` is the set of vertices
/// reachable by even alternating paths from exposed vertices, `T` the outside
/// neighbours of `D`, the components are those of `G[D]`, and each `t ∈ T`
/// maps to the component containing its mate.
pub fn gallai_edmonds(g: &Graph) -> GEDecomposition {
    let ig = IndexGraph::from_graph(g);
    let mate = blossom::maximum_matching(&ig);
    let in_d = blossom::even_reachable(&ig, &mate);
    let n = g.vertex_count();

    let mut in_t = vec![false; n];
    for v in 0..n {
        if in_d[v] {
            for &(u, _) in ig.neighbours(v) {
                if !in_d[u] {
                    in_t[u] = true;
                }
            }
        }
    }

    let mut comp_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if !in_d[s] || comp_of[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp_of[s] = id;
        while let Some(v) = stack.pop() {
            members.push(VertexId(v));
            for &(u, _) in ig.neighbours(v) {
                if in_d[u] && comp_of[u] == usize::MAX {
                    comp_of[u] = id;
                    stack.push(u);
                }
            }
        }
        members.sort();
        components.push(CriticalComponent { vertices: members, factor_critical: true });
    }

    let mut f_map = BTreeMap::new();
    let mut contact = BTreeMap::new();
    let t: Vec<VertexId> = (0..n).filter(|&v| in_t[v]).map(VertexId).collect();
    for &tv in &t {
        let m = blossom::mate_vertex(&ig, &mate, tv.0).expect("T vertices are matched into D");
        debug_assert!(in_d[m]);
        f_map.insert(tv, comp_of[m]);
        contact.insert(tv, VertexId(m));
    }
    let rest = (0..n).filter(|&v| !in_d[v] && !in_t[v]).map(VertexId).collect();
    GEDecomposition { t, components, f_map, contact, rest }
}

fn perfect_on(ig: &IndexGraph, keep: &[usize]) -> Vec<usize> {
    let (sub, origin) = ig.induced(keep);
    let mate = blossom::perfect_matching(&sub).expect("part of the decomposition has a perfect matching");
    blossom::matching_edges(&mate).into_iter().map(|e| origin[e]).collect()
}

/// `{t·v(t)} ∪ ⋃J_t ∪ ⋃J_F ∪ N` assembled from the decomposition: each mapped
/// component minus its contact vertex and each unmapped component minus its
/// smallest vertex are matched perfectly, as is the remainder.
pub fn strongly_maximal_matching(g: &Graph) -> Matching {
    let ge = gallai_edmonds(g);
    let ig = IndexGraph::from_graph(g);
    let mut edges: Vec<usize> = Vec::new();

    for (&tv, &c) in &ge.f_map {
        let contact = ge.contact[&tv];
        let e = g.edges_between(tv, contact).next().expect("contact is adjacent");
        edges.push(e.0);
        let keep: Vec<usize> = ge.components[c].vertices.iter().filter(|&&v| v != contact).map(|v| v.0).collect();
        edges.extend(perfect_on(&ig, &keep));
    }
    for c in ge.unmapped_components() {
        let keep: Vec<usize> = ge.components[c].vertices.iter().skip(1).map(|v| v.0).collect();
        edges.extend(perfect_on(&ig, &keep));
    }
    let keep: Vec<usize> = ge.rest.iter().map(|v| v.0).collect();
    edges.extend(perfect_on(&ig, &keep));

    Matching::from_edges(g, edges.into_iter().map(EdgeId)).expect("assembled pieces are disjoint")
}

/// A strongly maximal matching whose support contains `supp(m)`.
///
/// Equivalent on finite graphs to switching a strongly maximal matching
/// along the indifferent components of its symmetric difference with `m`:
/// augmenting `m` never uncovers a vertex.
pub fn extend_to_strongly_maximal(g: &Graph, m: &Matching) -> Matching {
    let ig = IndexGraph::from_graph(g);
    to_matching(g, &blossom::maximum_matching_from(&ig, mate_table(g, m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::integer;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v), integer(1)).unwrap();
        }
        g
    }

    #[test]
    fn single_edge_is_all_rest() {
        let ge = gallai_edmonds(&graph(2, &[(0, 1)]));
        assert!(ge.t.is_empty() && ge.components.is_empty());
        assert_eq!(ge.rest, vec![VertexId(0), VertexId(1)]);
    }

    #[test]
    fn path_of_three() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let ge = gallai_edmonds(&g);
        assert_eq!(ge.t, vec![VertexId(1)]);
        let singles: Vec<_> = ge.components.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(singles, vec![vec![VertexId(0)], vec![VertexId(2)]]);
        assert_eq!(ge.f_map.len(), 1);
        let m = strongly_maximal_matching(&g);
        assert_eq!(m.len(), 1);
        assert!(m.covers(VertexId(1)));
    }

    #[test]
    fn triangle_is_one_critical_component() {
        let ge = gallai_edmonds(&graph(3, &[(0, 1), (1, 2), (2, 0)]));
        assert!(ge.t.is_empty() && ge.rest.is_empty());
        assert_eq!(ge.components.len(), 1);
        assert_eq!(ge.components[0].vertices.len(), 3);
    }

    #[test]
    fn empty_graph() {
        let g = Graph::new();
        assert!(strongly_maximal_matching(&g).is_empty());
    }

    #[test]
    fn extend_from_empty_on_k4_is_perfect() {
        let g = Graph::complete(4, |_, _| integer(1));
        let m = extend_to_strongly_maximal(&g, &Matching::empty(&g));
        assert!(m.is_perfect());
    }

    #[test]
    fn extend_keeps_support() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let m = Matching::from_edges(&g, [EdgeId(1)]).unwrap();
        let out = extend_to_strongly_maximal(&g, &m);
        assert_eq!(out.len(), 2);
        assert!(out.support().is_superset(&m.support()));
    }
}
