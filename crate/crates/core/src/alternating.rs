//! Alternating paths relative to a matching, and certification of strong
//! (weighted) maximality.
//!
//! On finite graphs there are no infinite alternating paths, so "maximal
//! support" and "strongly maximal" coincide; [`has_maximal_support`] is kept
//! as a named alias.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::gallai_edmonds::blossom::{IndexGraph, Search};
use crate::graph::{AltComponent, AltKind, EdgeId, Graph, Matching, Rational, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathClass {
    /// Both endpoints outside `supp(M)`.
    FinitelyImproving,
    /// Exactly one endpoint outside `supp(M)`.
    Indifferent,
    /// Alternating, but both endpoints matched.
    BothEndsMatched,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("path has no edges")]
    Trivial,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("path repeats vertex {0}")]
    RepeatedVertex(usize),
    #[error("alternation fails at position {0}")]
    NotAlternating(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImprovingPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub class: PathClass,
}

/// Edges realising a vertex sequence relative to `m`: a step between mates
/// uses the matching edge, any other step the lowest-id non-matching edge.
fn realise(g: &Graph, m: &Matching, p: &[VertexId]) -> Result<Vec<EdgeId>, PathError> {
    let mut seen = BTreeSet::new();
    for &v in p {
        if !seen.insert(v) {
            return Err(PathError::RepeatedVertex(v.0));
        }
    }
    p.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            if m.mate(g, a) == Some(b) {
                return Ok(m.mate_edge(a).unwrap());
            }
            g.edges_between(a, b).find(|&e| !m.contains(e)).ok_or(PathError::NotAdjacent(a.0, b.0))
        })
        .collect()
}

/// Classifies a finite path given by its vertex sequence.
pub fn classify_path(g: &Graph, m: &Matching, p: &[VertexId]) -> Result<PathClass, PathError> {
    if p.len() < 2 {
        return Err(PathError::Trivial);
    }
    let edges = realise(g, m, p)?;
    for (i, pair) in edges.windows(2).enumerate() {
        if m.contains(pair[0]) == m.contains(pair[1]) {
            return Err(PathError::NotAlternating(i + 1));
        }
    }
    let exposed_ends = [p[0], p[p.len() - 1]].iter().filter(|&&v| !m.covers(v)).count();
    Ok(match exposed_ends {
        2 => PathClass::FinitelyImproving,
        1 => PathClass::Indifferent,
        _ => PathClass::BothEndsMatched,
    })
}

/// A finitely improving alternating path, or `None` exactly when `m` is
/// strongly maximal (has maximum cardinality).
///
/// Roots are tried in ascending vertex order; the first augmenting path found
/// is returned, oriented from its smaller endpoint.
pub fn find_finitely_improving_path(g: &Graph, m: &Matching) -> Option<ImprovingPath> {
    let ig = IndexGraph::from_graph(g);
    let mate: Vec<Option<usize>> = g.vertices().map(|v| m.mate_edge(v).map(|e| e.0)).collect();
    let mut search = Search::new(&ig);
    for root in 0..g.vertex_count() {
        if mate[root].is_some() {
            continue;
        }
        if let Some(path) = search.augmenting_path(&mate, root) {
            let mut vertices: Vec<VertexId> = path.vertices.into_iter().map(VertexId).collect();
            let mut edges: Vec<EdgeId> = path.edges.into_iter().map(EdgeId).collect();
            if vertices.last() < vertices.first() {
                vertices.reverse();
                edges.reverse();
            }
            return Some(ImprovingPath { vertices, edges, class: PathClass::FinitelyImproving });
        }
    }
    None
}

pub fn is_strongly_maximal(g: &Graph, m: &Matching) -> bool {
    find_finitely_improving_path(g, m).is_none()
}

/// Finite graphs have no infinitely improving paths, so maximal support is
/// the same property as strong maximality.
pub fn has_maximal_support(g: &Graph, m: &Matching) -> bool {
    is_strongly_maximal(g, m)
}

/// A matching `N` with `w[N \ M] > w[M \ N]`, obtained by switching `M`
/// along one alternating path or cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedImprovement {
    pub matching: Matching,
    pub switched: AltComponent,
    pub gain: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightVerdict {
    Certified,
    Improvable(WeightedImprovement),
}

impl WeightVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, WeightVerdict::Certified)
    }
}

struct GainSearch<'a> {
    g: &'a Graph,
    m: &'a Matching,
    on_path: Vec<bool>,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl GainSearch<'_> {
    fn gain(&self) -> Rational {
        self.edges.iter().fold(Rational::zero(), |acc, &e| {
            if self.m.contains(e) {
                acc - self.g.weight(e)
            } else {
                acc + self.g.weight(e)
            }
        })
    }

    /// Depth-first extension from the last vertex; `need_matched` says which
    /// kind of edge comes next.
    fn extend(&mut self, need_matched: bool) -> Option<AltComponent> {
        let at = *self.vertices.last().unwrap();
        let start = self.vertices[0];
        if need_matched {
            let e = self.m.mate_edge(at)?;
            let next = self.g.edge(e).other(at);
            if self.on_path[next.0] {
                return None;
            }
            self.push(next, e);
            // a path may end right after a matching edge
            if self.gain().is_positive() {
                return Some(self.snapshot(AltKind::Path));
            }
            let found = self.extend(false);
            self.pop();
            return found;
        }
        let mut options: Vec<(VertexId, EdgeId)> = self
            .g
            .incident(at)
            .iter()
            .filter(|&&e| !self.m.contains(e))
            .map(|&e| (self.g.edge(e).other(at), e))
            .collect();
        options.sort();
        for (next, e) in options {
            if next == start && !self.edges.is_empty() && self.m.contains(self.edges[0]) {
                self.edges.push(e);
                let closes = self.gain().is_positive();
                let snapshot = closes.then(|| self.snapshot(AltKind::Cycle));
                self.edges.pop();
                if snapshot.is_some() {
                    return snapshot;
                }
                continue;
            }
            if self.on_path[next.0] {
                continue;
            }
            self.push(next, e);
            if !self.m.covers(next) {
                if self.gain().is_positive() {
                    return Some(self.snapshot(AltKind::Path));
                }
            } else if let Some(found) = self.extend(true) {
                return Some(found);
            }
            self.pop();
        }
        None
    }

    fn push(&mut self, v: VertexId, e: EdgeId) {
        self.on_path[v.0] = true;
        self.vertices.push(v);
        self.edges.push(e);
    }

    fn pop(&mut self) {
        let v = self.vertices.pop().unwrap();
        self.on_path[v.0] = false;
        self.edges.pop();
    }

    fn snapshot(&self, kind: AltKind) -> AltComponent {
        AltComponent { kind, vertices: self.vertices.clone(), edges: self.edges.clone() }
    }
}

/// Decides whether `m` is strongly w-maximal.
///
/// If some `N` beats `m` then some single component of `M △ N` does, so the
/// search enumerates alternating paths (ends either exposed or closed by a
/// matching edge) and alternating cycles by depth-first search in vertex
/// order, stopping at the first one with positive gain. The search is exact
/// and exponential in the worst case; it is meant for small graphs.
pub fn is_strongly_w_maximal(g: &Graph, m: &Matching) -> WeightVerdict {
    let mut search = GainSearch { g, m, on_path: vec![false; g.vertex_count()], vertices: Vec::new(), edges: Vec::new() };
    for start in g.vertices() {
        search.on_path[start.0] = true;
        search.vertices.push(start);
        // exposed start: begin with a non-matching edge; matched start: with its matching edge
        let found = search.extend(m.covers(start));
        search.vertices.pop();
        search.on_path[start.0] = false;
        if let Some(switched) = found {
            let mut matching = m.clone();
            matching.switch(g, &switched.edges).expect("alternating switch yields a matching");
            let gain = crate::graph::edge_set_weight(g, matching.edges().filter(|e| !m.contains(*e)))
                - crate::graph::edge_set_weight(g, m.edges().filter(|e| !matching.contains(*e)));
            assert!(gain.is_positive(), "re-evaluated gain must stay positive");
            return WeightVerdict::Improvable(WeightedImprovement { matching, switched, gain });
        }
    }
    WeightVerdict::Certified
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::integer;

    fn path_graph(n: usize) -> Graph {
        let mut g = Graph::with_vertices(n);
        for i in 0..n - 1 {
            g.add_edge(VertexId(i), VertexId(i + 1), integer(1)).unwrap();
        }
        g
    }

    fn vs(ids: &[usize]) -> Vec<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn perfect_matching_on_k4_has_no_improving_path() {
        let g = Graph::complete(4, |_, _| integer(1));
        let m = Matching::from_edges(&g, [EdgeId(0), EdgeId(5)]).unwrap();
        assert!(find_finitely_improving_path(&g, &m).is_none());
    }

    #[test]
    fn middle_edge_of_p4_is_improvable() {
        let g = path_graph(4);
        let m = Matching::from_edges(&g, [EdgeId(1)]).unwrap();
        let p = find_finitely_improving_path(&g, &m).unwrap();
        assert_eq!(p.vertices, vs(&[0, 1, 2, 3]));
        assert_eq!(classify_path(&g, &m, &p.vertices), Ok(PathClass::FinitelyImproving));
    }

    #[test]
    fn classification_cases() {
        let g = path_graph(4);
        let empty = Matching::empty(&g);
        assert_eq!(classify_path(&g, &empty, &vs(&[0, 1])), Ok(PathClass::FinitelyImproving));
        let m = Matching::from_edges(&g, [EdgeId(1)]).unwrap();
        // starts at matched 1, ends at exposed 3 after two edges
        assert_eq!(classify_path(&g, &m, &vs(&[1, 2, 3])), Ok(PathClass::Indifferent));
        assert_eq!(classify_path(&g, &m, &vs(&[1, 2])), Ok(PathClass::BothEndsMatched));
        assert_eq!(classify_path(&g, &empty, &vs(&[0, 1, 2])), Err(PathError::NotAlternating(1)));
        assert_eq!(classify_path(&g, &empty, &vs(&[0, 2])), Err(PathError::NotAdjacent(0, 2)));
        assert_eq!(classify_path(&g, &empty, &vs(&[0])), Err(PathError::Trivial));
    }

    #[test]
    fn weighted_single_edge() {
        let mut g = Graph::with_vertices(2);
        g.add_edge(VertexId(0), VertexId(1), integer(1)).unwrap();
        match is_strongly_w_maximal(&g, &Matching::empty(&g)) {
            WeightVerdict::Improvable(imp) => assert_eq!(imp.gain, integer(1)),
            WeightVerdict::Certified => panic!("empty matching is improvable"),
        }
        let neg = g.map_weights(|_, _| integer(-1));
        assert!(is_strongly_w_maximal(&neg, &Matching::empty(&neg)).is_certified());
    }

    #[test]
    fn weighted_cycle_switch_is_found() {
        // square with matched edges of weight 1 and unmatched edges of weight 2
        let mut g = Graph::with_vertices(4);
        for i in 0..4 {
            let w = if i % 2 == 0 { 1 } else { 2 };
            g.add_edge(VertexId(i), VertexId((i + 1) % 4), integer(w)).unwrap();
        }
        let m = Matching::from_edges(&g, [EdgeId(0), EdgeId(2)]).unwrap();
        match is_strongly_w_maximal(&g, &m) {
            WeightVerdict::Improvable(imp) => {
                assert_eq!(imp.gain, integer(2));
                assert_eq!(imp.switched.kind, AltKind::Cycle);
            }
            WeightVerdict::Certified => panic!("cycle switch gains 2"),
        }
    }
}
