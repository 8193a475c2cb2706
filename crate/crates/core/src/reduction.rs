//! Strongly w-maximal matchings of arbitrary finite graphs through the
//! complete-graph procedure.
//!
//! Edges of non-positive weight are dropped first: a strongly w-maximal
//! matching never needs them, since removing one from any competitor does
//! not lower its gain. The remaining graph is completed with weight-0 fill
//! edges, every weight is negated, and the procedure computes a strongly
//! w-minimal perfect or almost perfect matching there. Its original edges
//! form the answer.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::alternating::{is_strongly_w_maximal, WeightVerdict};
use crate::graph::{EdgeId, Graph, Matching, Rational, VertexId};
use crate::primal_dual::{self, RunOptions, Solution, SolveError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    Original(EdgeId),
    Fill,
}

/// `K_n` on the vertices of `g`: every edge of `g` with negated weight, plus a
/// weight-0 edge for each non-adjacent pair. Parallel edges of `g` are kept.
pub fn complete_and_negate(g: &Graph) -> (Graph, Vec<EdgeOrigin>) {
    let n = g.vertex_count();
    let mut out = Graph::new();
    for v in g.vertices() {
        out.add_vertex(g.name(v)).expect("names are unique in g");
    }
    let mut origin = Vec::with_capacity(g.edge_count() + n * n.saturating_sub(1) / 2);
    for (i, e) in g.edges().iter().enumerate() {
        out.add_edge(e.u, e.v, -e.weight.clone()).expect("valid in g");
        origin.push(EdgeOrigin::Original(EdgeId(i)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.are_adjacent(VertexId(u), VertexId(v)) {
                out.add_edge(VertexId(u), VertexId(v), Rational::zero()).expect("distinct");
                origin.push(EdgeOrigin::Fill);
            }
        }
    }
    (out, origin)
}

/// The positive-weight edges of `g` as a spanning subgraph, with the id map
/// back to `g`.
fn positive_part(g: &Graph) -> (Graph, Vec<EdgeId>) {
    let mut out = Graph::new();
    for v in g.vertices() {
        out.add_vertex(g.name(v)).expect("names are unique in g");
    }
    let mut back = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.weight.is_positive() {
            out.add_edge(e.u, e.v, e.weight.clone()).expect("valid in g");
            back.push(EdgeId(i));
        }
    }
    (out, back)
}

/// A solved reduction: the answer on `g` together with the completed
/// instance and its solution.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub matching: Matching,
    pub completed: Graph,
    pub origin: Vec<EdgeOrigin>,
    pub solution: Solution,
    /// Map from edges of the positive part (the completed graph's original
    /// edges) back to `g`.
    pub back: Vec<EdgeId>,
}

/// The complete instance the procedure runs on: the positive part of `g`,
/// completed and negated. `back` maps its original edges to edges of `g`.
pub fn completed_instance(g: &Graph) -> (Graph, Vec<EdgeOrigin>, Vec<EdgeId>) {
    let (positive, back) = positive_part(g);
    let (completed, origin) = complete_and_negate(&positive);
    (completed, origin, back)
}

/// Edges of `g` behind the original edges of a completed-instance matching.
pub fn original_edges(origin: &[EdgeOrigin], back: &[EdgeId], m: &Matching) -> Vec<EdgeId> {
    m.edges()
        .filter_map(|e| match origin[e.0] {
            EdgeOrigin::Original(p) => Some(back[p.0]),
            EdgeOrigin::Fill => None,
        })
        .collect()
}

pub fn solve(g: &Graph, options: RunOptions) -> Result<Reduction, SolveError> {
    let (completed, origin, back) = completed_instance(g);
    let solution = primal_dual::run_with(&completed, options)?;
    let kept = original_edges(&origin, &back, &solution.matching);
    let matching = Matching::from_edges(g, kept).expect("subset of a matching");
    Ok(Reduction { matching, completed, origin, solution, back })
}

pub fn strongly_w_maximal(g: &Graph) -> Result<Matching, SolveError> {
    Ok(solve(g, RunOptions::default())?.matching)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("reduction output admits an improvement of gain {0}")]
    Improvable(String),
}

/// [`strongly_w_maximal`] followed by the exact weighted check.
pub fn strongly_w_maximal_certified(g: &Graph) -> Result<Matching, ReductionError> {
    let m = strongly_w_maximal(g)?;
    match is_strongly_w_maximal(g, &m) {
        WeightVerdict::Certified => Ok(m),
        WeightVerdict::Improvable(imp) => Err(ReductionError::Improvable(crate::graph::format_rational(&imp.gain))),
    }
}

/// Lifts a competitor `n` (a matching of `g` using positive edges only) to a
/// perfect or almost perfect matching of the completed graph: its edges,
/// then fill edges greedily in id order, then any remaining completed edges.
/// The added edges are returned separately; their original weight is zero
/// when all of them are fill edges.
pub fn lift_competitor(r: &Reduction, n: &Matching) -> Option<(Matching, Vec<EdgeId>)> {
    let forward: BTreeMap<EdgeId, EdgeId> =
        r.origin.iter().enumerate().filter_map(|(i, o)| match o {
            EdgeOrigin::Original(p) => Some((r.back[p.0], EdgeId(i))),
            EdgeOrigin::Fill => None,
        })
        .collect();
    let mut lifted = Matching::empty(&r.completed);
    for e in n.edges() {
        lifted.insert(&r.completed, *forward.get(&e)?).ok()?;
    }
    let mut added = Vec::new();
    let fill_first = r
        .completed
        .edge_ids()
        .filter(|e| r.origin[e.0] == EdgeOrigin::Fill)
        .chain(r.completed.edge_ids().filter(|e| r.origin[e.0] != EdgeOrigin::Fill));
    for e in fill_first {
        let (u, v) = r.completed.endpoints(e);
        if !lifted.covers(u) && !lifted.covers(v) {
            lifted.insert(&r.completed, e).expect("both ends free");
            added.push(e);
        }
    }
    Some((lifted, added))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::integer;

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> Graph {
        let mut g = Graph::with_vertices(n);
        for &(u, v, w) in edges {
            g.add_edge(VertexId(u), VertexId(v), integer(w)).unwrap();
        }
        g
    }

    #[test]
    fn complete_graph_is_only_negated() {
        let g = Graph::complete(3, |u, v| integer((u + v) as i64));
        let (c, origin) = complete_and_negate(&g);
        assert_eq!(c.edge_count(), 3);
        assert!(origin.iter().all(|o| matches!(o, EdgeOrigin::Original(_))));
        assert_eq!(c.weight(EdgeId(2)), &integer(-3));
    }

    #[test]
    fn two_isolated_vertices_get_a_fill_edge() {
        let (c, origin) = complete_and_negate(&Graph::with_vertices(2));
        assert_eq!(c.edge_count(), 1);
        assert_eq!(origin, vec![EdgeOrigin::Fill]);
        assert!(c.weight(EdgeId(0)).is_zero());
    }

    #[test]
    fn single_edge() {
        let g = graph(2, &[(0, 1, 1)]);
        let m = strongly_w_maximal_certified(&g).unwrap();
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![EdgeId(0)]);
    }

    #[test]
    fn path_prefers_heavier_edge() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 2)]);
        let m = strongly_w_maximal_certified(&g).unwrap();
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![EdgeId(1)]);
    }

    #[test]
    fn negative_edges_are_never_used() {
        let g = graph(4, &[(0, 1, -1), (1, 2, 3), (2, 3, -1)]);
        let m = strongly_w_maximal_certified(&g).unwrap();
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![EdgeId(1)]);
    }

    #[test]
    fn empty_graph() {
        assert!(strongly_w_maximal(&Graph::new()).unwrap().is_empty());
        assert!(strongly_w_maximal(&Graph::with_vertices(3)).unwrap().is_empty());
    }

    #[test]
    fn lifting_adds_only_fill_edges_when_possible() {
        let g = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        let r = solve(&g, RunOptions::default()).unwrap();
        let n = Matching::from_edges(&g, [EdgeId(1)]).unwrap();
        let (lifted, added) = lift_competitor(&r, &n).unwrap();
        assert!(lifted.is_perfect());
        assert!(added.iter().all(|e| r.origin[e.0] == EdgeOrigin::Fill));
    }
}
