//! Nested contraction bookkeeping: a laminar family of vertex sets with
//! half-integral potentials, and the contracted multigraphs built on it.
//!
//! The family is a forest. Leaves are the singletons `{v}`; every other set
//! lists its member sets, so a set can be a set of sets of sets and so on.
//! Sets keep stable ids; removed sets stay in the arena marked dead, and the
//! append-only event log records every contraction and removal in order.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::gallai_edmonds::blossom::IndexGraph;
use crate::graph::{format_rational, parse_rational, EdgeId, Graph, HalfInt, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Members {
    Vertex(VertexId),
    Sets(Vec<SetId>),
}

#[derive(Clone, Debug)]
pub struct LaminarSet {
    pub members: Members,
    pub parent: Option<SetId>,
    pub potential: HalfInt,
    pub alive: bool,
    size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyEvent {
    Contract(SetId),
    Dissolve(SetId),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaminarError {
    #[error("set {0} does not exist or was removed")]
    UnknownSet(usize),
    #[error("set {0} is not maximal")]
    NotMaximal(usize),
    #[error("set {0} listed twice")]
    DuplicateMember(usize),
    #[error("cannot contract an empty collection")]
    Empty,
    #[error("set {0} flattens to a single vertex and cannot be dissolved")]
    SingletonDissolve(usize),
    #[error("set {0} has potential {1}, only zero-potential sets can be dissolved")]
    NonzeroPotential(usize, HalfInt),
    #[error("malformed family: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug)]
pub struct LaminarFamily {
    sets: Vec<LaminarSet>,
    singletons: Vec<SetId>,
    history: Vec<FamilyEvent>,
}

impl LaminarFamily {
    /// `{{v} : v ∈ V}` with all potentials zero.
    pub fn trivial(n: usize) -> Self {
        let sets = (0..n)
            .map(|v| LaminarSet {
                members: Members::Vertex(VertexId(v)),
                parent: None,
                potential: HalfInt::ZERO,
                alive: true,
                size: 1,
            })
            .collect();
        LaminarFamily { sets, singletons: (0..n).map(SetId).collect(), history: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.singletons.len()
    }

    fn get(&self, id: SetId) -> Result<&LaminarSet, LaminarError> {
        self.sets.get(id.0).filter(|s| s.alive).ok_or(LaminarError::UnknownSet(id.0))
    }

    pub fn set(&self, id: SetId) -> &LaminarSet {
        &self.sets[id.0]
    }

    pub fn is_alive(&self, id: SetId) -> bool {
        self.sets.get(id.0).is_some_and(|s| s.alive)
    }

    /// Live sets in id order.
    pub fn sets(&self) -> impl Iterator<Item = SetId> + '_ {
        self.sets.iter().enumerate().filter(|(_, s)| s.alive).map(|(i, _)| SetId(i))
    }

    pub fn len(&self) -> usize {
        self.sets().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn history(&self) -> &[FamilyEvent] {
        &self.history
    }

    pub fn singleton(&self, v: VertexId) -> SetId {
        self.singletons[v.0]
    }

    pub fn potential(&self, id: SetId) -> HalfInt {
        self.sets[id.0].potential
    }

    pub fn set_potential(&mut self, id: SetId, p: HalfInt) {
        self.sets[id.0].potential = p;
    }

    pub fn members(&self, id: SetId) -> &Members {
        &self.sets[id.0].members
    }

    /// Member sets of a non-singleton set; empty for `{v}`.
    pub fn children(&self, id: SetId) -> &[SetId] {
        match &self.sets[id.0].members {
            Members::Vertex(_) => &[],
            Members::Sets(c) => c,
        }
    }

    pub fn parent(&self, id: SetId) -> Option<SetId> {
        self.sets[id.0].parent
    }

    pub fn is_maximal(&self, id: SetId) -> bool {
        self.is_alive(id) && self.sets[id.0].parent.is_none()
    }

    pub fn maximal_sets(&self) -> Vec<SetId> {
        self.sets().filter(|&s| self.sets[s.0].parent.is_none()).collect()
    }

    /// Sets containing `v`, innermost first.
    pub fn chain(&self, v: VertexId) -> Vec<SetId> {
        let mut out = vec![self.singletons[v.0]];
        while let Some(p) = self.sets[out.last().unwrap().0].parent {
            out.push(p);
        }
        out
    }

    /// The maximal set whose flatten contains `v`.
    pub fn top(&self, v: VertexId) -> SetId {
        let mut s = self.singletons[v.0];
        while let Some(p) = self.sets[s.0].parent {
            s = p;
        }
        s
    }

    /// `⊔U`, sorted.
    pub fn flatten(&self, id: SetId) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.sets[id.0].size);
        let mut stack = vec![id];
        while let Some(s) = stack.pop() {
            match &self.sets[s.0].members {
                Members::Vertex(v) => out.push(*v),
                Members::Sets(c) => stack.extend(c.iter().copied()),
            }
        }
        out.sort();
        out
    }

    pub fn flatten_size(&self, id: SetId) -> usize {
        self.sets[id.0].size
    }

    pub fn contains_vertex(&self, id: SetId, v: VertexId) -> bool {
        self.chain(v).contains(&id)
    }

    /// Maximum nesting depth; singletons have depth one.
    pub fn depth(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.chain(VertexId(v)).len()).max().unwrap_or(0)
    }

    /// `δ(U)`: edges with exactly one endpoint in `⊔U`.
    pub fn boundary(&self, id: SetId, g: &Graph) -> Vec<EdgeId> {
        let mut inside = vec![false; g.vertex_count()];
        for v in self.flatten(id) {
            inside[v.0] = true;
        }
        g.edge_ids()
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                inside[u.0] != inside[v.0]
            })
            .collect()
    }

    /// `Σ_{U : e ∈ δ(U)} π(U)` for an edge with endpoints `u`, `v`.
    pub fn boundary_sum(&self, u: VertexId, v: VertexId) -> HalfInt {
        let cu = self.chain(u);
        let cv = self.chain(v);
        let common = cu.iter().filter(|s| cv.contains(s)).count();
        let own = |c: &[SetId]| c[..c.len() - common].iter().map(|&s| self.sets[s.0].potential).sum::<HalfInt>();
        own(&cu) + own(&cv)
    }

    /// `p(x) = Σ_{U : x ∈ ⊔U} π(U)`.
    pub fn energy(&self, x: VertexId) -> HalfInt {
        self.chain(x).iter().map(|&s| self.sets[s.0].potential).sum()
    }

    /// Edges whose boundary sum equals their weight.
    pub fn tight_subgraph(&self, g: &Graph, weights: &[HalfInt]) -> Vec<EdgeId> {
        g.edge_ids()
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                self.boundary_sum(u, v) == weights[e.0]
            })
            .collect()
    }

    /// Adds a new set whose members are the given maximal sets. The new set
    /// starts with potential zero.
    pub fn contract(&mut self, members: &[SetId]) -> Result<SetId, LaminarError> {
        if members.is_empty() {
            return Err(LaminarError::Empty);
        }
        let mut sorted = members.to_vec();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(LaminarError::DuplicateMember(w[0].0));
            }
        }
        for &m in &sorted {
            if self.get(m)?.parent.is_some() {
                return Err(LaminarError::NotMaximal(m.0));
            }
        }
        let id = SetId(self.sets.len());
        let size = sorted.iter().map(|m| self.sets[m.0].size).sum();
        for &m in &sorted {
            self.sets[m.0].parent = Some(id);
        }
        self.sets.push(LaminarSet { members: Members::Sets(sorted), parent: None, potential: HalfInt::ZERO, alive: true, size });
        self.history.push(FamilyEvent::Contract(id));
        Ok(id)
    }

    /// Removes a maximal zero-potential set; its members become maximal.
    pub fn dissolve(&mut self, id: SetId) -> Result<(), LaminarError> {
        let set = self.get(id)?;
        if set.parent.is_some() {
            return Err(LaminarError::NotMaximal(id.0));
        }
        if set.size <= 1 {
            return Err(LaminarError::SingletonDissolve(id.0));
        }
        if set.potential != HalfInt::ZERO {
            return Err(LaminarError::NonzeroPotential(id.0, set.potential));
        }
        for c in self.children(id).to_vec() {
            self.sets[c.0].parent = None;
        }
        self.sets[id.0].alive = false;
        self.history.push(FamilyEvent::Dissolve(id));
        Ok(())
    }

    /// Pairwise disjoint-or-nested check over all live sets.
    pub fn check_laminar(&self) -> Result<(), String> {
        let flats: Vec<(SetId, Vec<VertexId>)> = self.sets().map(|s| (s, self.flatten(s))).collect();
        for (i, (a, fa)) in flats.iter().enumerate() {
            for (b, fb) in &flats[i + 1..] {
                let inter = fa.iter().filter(|v| fb.binary_search(v).is_ok()).count();
                if inter != 0 && inter != fa.len() && inter != fb.len() {
                    return Err(format!("sets {} and {} overlap without nesting", a.0, b.0));
                }
            }
        }
        Ok(())
    }

    /// The flattens of the maximal sets partition the vertex set.
    pub fn check_partition(&self) -> Result<(), String> {
        let mut count = vec![0usize; self.vertex_count()];
        for s in self.maximal_sets() {
            for v in self.flatten(s) {
                count[v.0] += 1;
            }
        }
        match count.iter().position(|&c| c != 1) {
            Some(v) => Err(format!("vertex {v} lies in {} maximal sets", count[v])),
            None => Ok(()),
        }
    }

    /// Contracted multigraph whose vertices are `nodes` (sets with pairwise
    /// disjoint flattens) and whose edges are the edges of `edges` joining
    /// two distinct nodes.
    pub fn view(&self, g: &Graph, edges: &[EdgeId], nodes: &[SetId]) -> ContractedView {
        let mut node_of = vec![None; g.vertex_count()];
        for (i, &s) in nodes.iter().enumerate() {
            for v in self.flatten(s) {
                debug_assert!(node_of[v.0].is_none(), "view nodes must be disjoint");
                node_of[v.0] = Some(i);
            }
        }
        let mut view_edges = Vec::new();
        for &e in edges {
            let (u, v) = g.endpoints(e);
            if let (Some(a), Some(b)) = (node_of[u.0], node_of[v.0]) {
                if a != b {
                    view_edges.push(ViewEdge { a, b, host: e });
                }
            }
        }
        ContractedView { nodes: nodes.to_vec(), edges: view_edges, node_of }
    }

    /// `G'`: the maximal sets joined by the given (tight) edges.
    pub fn contracted_view(&self, g: &Graph, edges: &[EdgeId]) -> ContractedView {
        self.view(g, edges, &self.maximal_sets())
    }

    /// `H(U)`: the members of `U` joined by the given (tight) edges.
    pub fn member_view(&self, g: &Graph, edges: &[EdgeId], u: SetId) -> ContractedView {
        match &self.sets[u.0].members {
            Members::Vertex(_) => self.view(g, edges, &[u]),
            Members::Sets(c) => self.view(g, edges, c),
        }
    }

    /// JSON dump: a list of maximal sets, each `{"potential", "vertex"}` for
    /// a singleton or `{"potential", "members": [...]}` otherwise.
    pub fn to_json(&self, g: &Graph) -> Value {
        Value::Array(self.maximal_sets().into_iter().map(|s| self.set_json(g, s)).collect())
    }

    fn set_json(&self, g: &Graph, s: SetId) -> Value {
        let potential = format_rational(&self.sets[s.0].potential.to_rational());
        match &self.sets[s.0].members {
            Members::Vertex(v) => json!({ "potential": potential, "vertex": g.name(*v) }),
            Members::Sets(c) => {
                let members: Vec<Value> = c.iter().map(|&m| self.set_json(g, m)).collect();
                json!({ "potential": potential, "members": members })
            }
        }
    }

    /// Rebuilds a family from [`LaminarFamily::to_json`] output. Every vertex
    /// of `g` must appear exactly once as a singleton leaf.
    pub fn from_json(g: &Graph, value: &Value) -> Result<Self, LaminarError> {
        let malformed = |m: &str| LaminarError::Malformed(m.to_string());
        let tops = value.as_array().ok_or_else(|| malformed("family must be an array"))?;
        let mut fam = LaminarFamily::trivial(g.vertex_count());
        let mut seen = vec![false; g.vertex_count()];

        fn build(
            fam: &mut LaminarFamily,
            g: &Graph,
            seen: &mut [bool],
            node: &Value,
        ) -> Result<SetId, LaminarError> {
            let malformed = |m: String| LaminarError::Malformed(m);
            let potential = node
                .get("potential")
                .and_then(Value::as_str)
                .and_then(parse_rational)
                .and_then(|r| HalfInt::from_rational(&r))
                .ok_or_else(|| malformed("missing or non-half-integral potential".into()))?;
            let id = if let Some(name) = node.get("vertex").and_then(Value::as_str) {
                let v = g.vertex_by_name(name).ok_or_else(|| malformed(format!("unknown vertex {name:?}")))?;
                if std::mem::replace(&mut seen[v.0], true) {
                    return Err(malformed(format!("vertex {name:?} appears twice")));
                }
                fam.singleton(v)
            } else {
                let members = node
                    .get("members")
                    .and_then(Value::as_array)
                    .ok_or_else(|| malformed("set needs \"vertex\" or \"members\"".into()))?;
                let mut ids = Vec::with_capacity(members.len());
                for m in members {
                    ids.push(build(fam, g, seen, m)?);
                }
                fam.contract(&ids)?
            };
            fam.set_potential(id, potential);
            Ok(id)
        }

        for top in tops {
            build(&mut fam, g, &mut seen, top)?;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(malformed(&format!("vertex {:?} missing from family", g.name(VertexId(v)))));
        }
        fam.history.clear();
        Ok(fam)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ViewEdge {
    pub a: usize,
    pub b: usize,
    pub host: EdgeId,
}

/// A multigraph whose vertices are laminar sets; every edge remembers the
/// host edge it came from.
#[derive(Clone, Debug)]
pub struct ContractedView {
    pub nodes: Vec<SetId>,
    pub edges: Vec<ViewEdge>,
    node_of: Vec<Option<usize>>,
}

impl ContractedView {
    /// Index of the view vertex whose flatten contains host vertex `v`.
    pub fn node_of(&self, v: VertexId) -> Option<usize> {
        self.node_of[v.0]
    }

    pub fn index_of(&self, s: SetId) -> Option<usize> {
        self.nodes.iter().position(|&n| n == s)
    }

    pub fn index_graph(&self) -> IndexGraph {
        IndexGraph::new(self.nodes.len(), self.edges.iter().map(|e| (e.a, e.b)).collect())
    }

    /// View edge index for each host edge present in the view.
    pub fn edge_index(&self) -> BTreeMap<EdgeId, usize> {
        self.edges.iter().enumerate().map(|(i, e)| (e.host, i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::integer;

    fn k(n: usize) -> Graph {
        Graph::complete(n, |_, _| integer(1))
    }

    fn vs(ids: &[usize]) -> Vec<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn flatten_singleton_and_pair() {
        let mut fam = LaminarFamily::trivial(3);
        assert_eq!(fam.flatten(SetId(0)), vs(&[0]));
        let pair = fam.contract(&[SetId(0), SetId(1)]).unwrap();
        assert_eq!(fam.flatten(pair), vs(&[0, 1]));
        assert_eq!(fam.flatten_size(pair), 2);
    }

    #[test]
    fn boundary_cases() {
        let g = k(3);
        let mut fam = LaminarFamily::trivial(3);
        assert_eq!(fam.boundary(SetId(0), &g).len(), 2);
        let all = fam.contract(&[SetId(0), SetId(1), SetId(2)]).unwrap();
        assert!(fam.boundary(all, &g).is_empty());
    }

    #[test]
    fn tightness_of_single_edge() {
        let mut g = Graph::with_vertices(2);
        g.add_edge(VertexId(0), VertexId(1), integer(3)).unwrap();
        let w = g.half_int_weights().unwrap();
        let mut fam = LaminarFamily::trivial(2);
        assert!(fam.tight_subgraph(&g, &w).is_empty());
        fam.set_potential(SetId(0), HalfInt::from_doubled(3));
        fam.set_potential(SetId(1), HalfInt::from_doubled(3));
        assert_eq!(fam.tight_subgraph(&g, &w), vec![EdgeId(0)]);
    }

    #[test]
    fn zero_potentials_make_zero_weight_edges_tight() {
        let g = Graph::complete(4, |u, v| integer(if u + v == 3 { 0 } else { 2 }));
        let w = g.half_int_weights().unwrap();
        let fam = LaminarFamily::trivial(4);
        let tight = fam.tight_subgraph(&g, &w);
        assert!(tight.iter().all(|&e| g.weight(e) == &integer(0)));
        assert_eq!(tight.len(), 2);
    }

    #[test]
    fn contract_rejects_nested_and_duplicate() {
        let mut fam = LaminarFamily::trivial(4);
        let a = fam.contract(&[SetId(0), SetId(1), SetId(2)]).unwrap();
        assert_eq!(fam.contract(&[SetId(0), SetId(3)]), Err(LaminarError::NotMaximal(0)));
        assert_eq!(fam.contract(&[SetId(3), SetId(3)]), Err(LaminarError::DuplicateMember(3)));
        assert_eq!(fam.contract(&[]), Err(LaminarError::Empty));
        let outer = fam.contract(&[a, SetId(3)]).unwrap();
        assert_eq!(fam.flatten(outer), vs(&[0, 1, 2, 3]));
        assert_eq!(fam.depth(), 3);
        fam.check_laminar().unwrap();
        fam.check_partition().unwrap();
    }

    #[test]
    fn dissolve_preconditions() {
        let g = k(3);
        let mut fam = LaminarFamily::trivial(3);
        let before = fam.to_json(&g);
        let u = fam.contract(&[SetId(0), SetId(1), SetId(2)]).unwrap();
        fam.set_potential(u, HalfInt::HALF);
        assert_eq!(fam.dissolve(u), Err(LaminarError::NonzeroPotential(u.0, HalfInt::HALF)));
        assert_eq!(fam.dissolve(SetId(0)), Err(LaminarError::NotMaximal(0)));
        fam.set_potential(u, HalfInt::ZERO);
        fam.dissolve(u).unwrap();
        assert_eq!(fam.to_json(&g), before);
        assert_eq!(fam.history(), &[FamilyEvent::Contract(u), FamilyEvent::Dissolve(u)]);

        let mut fam = LaminarFamily::trivial(1);
        let wrap = fam.contract(&[SetId(0)]).unwrap();
        assert_eq!(fam.dissolve(wrap), Err(LaminarError::SingletonDissolve(wrap.0)));
    }

    #[test]
    fn dissolving_outer_exposes_inner() {
        let mut fam = LaminarFamily::trivial(5);
        let inner = fam.contract(&[SetId(0), SetId(1), SetId(2)]).unwrap();
        let outer = fam.contract(&[inner, SetId(3), SetId(4)]).unwrap();
        fam.dissolve(outer).unwrap();
        assert_eq!(fam.maximal_sets(), vec![SetId(3), SetId(4), inner]);
        fam.check_partition().unwrap();
    }

    #[test]
    fn energy_sums_nested_potentials() {
        let mut fam = LaminarFamily::trivial(3);
        assert_eq!(fam.energy(VertexId(0)), HalfInt::ZERO);
        let u = fam.contract(&[SetId(0), SetId(1), SetId(2)]).unwrap();
        fam.set_potential(u, HalfInt::HALF);
        fam.set_potential(SetId(0), HalfInt::ONE);
        assert_eq!(fam.energy(VertexId(0)), HalfInt::from_doubled(3));
    }

    #[test]
    fn trivial_view_is_the_graph() {
        let g = k(4);
        let fam = LaminarFamily::trivial(4);
        let all: Vec<EdgeId> = g.edge_ids().collect();
        let view = fam.contracted_view(&g, &all);
        assert_eq!(view.nodes.len(), 4);
        assert_eq!(view.edges.len(), 6);
        for e in &view.edges {
            let (u, v) = g.endpoints(e.host);
            assert_eq!((e.a, e.b), (u.0, v.0));
        }
        let h = fam.member_view(&g, &all, SetId(2));
        assert_eq!(h.nodes.len(), 1);
        assert!(h.edges.is_empty());
    }

    #[test]
    fn contracted_pair_in_triangle_has_parallel_edges() {
        let g = k(3);
        let mut fam = LaminarFamily::trivial(3);
        fam.contract(&[SetId(0), SetId(1)]).unwrap();
        let all: Vec<EdgeId> = g.edge_ids().collect();
        let view = fam.contracted_view(&g, &all);
        assert_eq!(view.nodes.len(), 2);
        assert_eq!(view.edges.len(), 2);
        assert_ne!(view.edges[0].host, view.edges[1].host);
    }

    #[test]
    fn json_round_trip() {
        let g = k(5);
        let mut fam = LaminarFamily::trivial(5);
        let u = fam.contract(&[SetId(1), SetId(2), SetId(4)]).unwrap();
        fam.set_potential(u, HalfInt::from_doubled(3));
        fam.set_potential(SetId(0), HalfInt::from_doubled(-1));
        let dumped = fam.to_json(&g);
        let back = LaminarFamily::from_json(&g, &dumped).unwrap();
        assert_eq!(back.to_json(&g), dumped);
        assert!(dumped.to_string().contains("\"3/2\""));
        assert!(dumped.to_string().contains("\"-1/2\""));
    }
}
