//! Exact-arithmetic graph, weight and matching substrate.
//!
//! Graphs are finite undirected multigraphs without self-loops. Parallel
//! edges are first-class: contracted views keep the identity of the host
//! edge they were derived from, so every [`EdgeId`] is stable for the
//! lifetime of a [`Graph`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// A half-integer stored by its double, so that `±1/2` updates stay exact
/// integer operations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_rational(self) -> Rational {
        rational(self.0, 2)
    }

    /// Converts a rational that is an integer multiple of one half.
    pub fn from_rational(r: &Rational) -> Option<Self> {
        let doubled = r * integer(2);
        if doubled.is_integer() {
            doubled.numer().to_i64().map(HalfInt)
        } else {
            None
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.0 -= rhs.0;
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        HalfInt(iter.map(|h| h.0).sum())
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("edges {0} and {1} share an endpoint")]
    NotAMatching(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Rational,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph on `n` vertices named `0`, `1`, ... without edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(i.to_string()).expect("fresh names");
        }
        g
    }

    /// Complete graph on `n` vertices with weights chosen per vertex pair.
    pub fn complete(n: usize, mut weight: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut g = Graph::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(VertexId(u), VertexId(v), weight(u, v)).expect("distinct endpoints");
            }
        }
        g
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId, GraphError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(GraphError::DuplicateVertex(name));
        }
        let id = VertexId(self.names.len());
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.adjacency.push(Vec::new());
        Ok(id)
    }

    /// Returns the vertex with this name, creating it if needed.
    pub fn ensure_vertex(&mut self, name: &str) -> VertexId {
        match self.index.get(name) {
            Some(&v) => v,
            None => self.add_vertex(name).expect("checked absent"),
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, weight: Rational) -> Result<EdgeId, GraphError> {
        for x in [u, v] {
            if x.0 >= self.names.len() {
                return Err(GraphError::UnknownVertex(x.0));
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.names[u.0].clone()));
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { u, v, weight });
        self.adjacency[u.0].push(id);
        self.adjacency[v.0].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn weight(&self, e: EdgeId) -> &Rational {
        &self.edges[e.0].weight
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let edge = &self.edges[e.0];
        (edge.u, edge.v)
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v.0]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// Edges joining `u` and `v`, in id order.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adjacency[u.0].iter().copied().filter(move |&e| self.edges[e.0].other(u) == v)
    }

    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.edges_between(u, v).next().is_some()
    }

    /// Every pair of distinct vertices is joined by at least one edge.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n * n];
        for e in &self.edges {
            seen[e.u.0 * n + e.v.0] = true;
            seen[e.v.0 * n + e.u.0] = true;
        }
        (0..n).all(|u| (u + 1..n).all(|v| seen[u * n + v]))
    }

    pub fn max_weight(&self) -> Option<&Rational> {
        self.edges.iter().map(|e| &e.weight).max()
    }

    /// Same topology and names with every weight replaced.
    pub fn map_weights(&self, mut f: impl FnMut(EdgeId, &Rational) -> Rational) -> Graph {
        let mut g = self.clone();
        for (i, e) in g.edges.iter_mut().enumerate() {
            e.weight = f(EdgeId(i), &self.edges[i].weight);
        }
        g
    }

    /// Subgraph induced by `keep`; vertex `i` of the result is `keep[i]`.
    /// Returns the subgraph together with the host id of every kept edge.
    pub fn induced(&self, keep: &[VertexId]) -> (Graph, Vec<EdgeId>) {
        let mut local = vec![usize::MAX; self.vertex_count()];
        let mut sub = Graph::new();
        for (i, &v) in keep.iter().enumerate() {
            local[v.0] = i;
            sub.add_vertex(self.names[v.0].clone()).expect("distinct host names");
        }
        let mut origin = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let (a, b) = (local[e.u.0], local[e.v.0]);
            if a != usize::MAX && b != usize::MAX {
                sub.add_edge(VertexId(a), VertexId(b), e.weight.clone()).expect("no loops");
                origin.push(EdgeId(i));
            }
        }
        (sub, origin)
    }

    /// Integer multiples of one half, per edge, or `None` if some weight is not.
    pub fn half_int_weights(&self) -> Option<Vec<HalfInt>> {
        self.edges.iter().map(|e| HalfInt::from_rational(&e.weight)).collect()
    }
}

/// A set of pairwise vertex-disjoint edges of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
    mate: Vec<Option<EdgeId>>,
}

impl Matching {
    pub fn empty(g: &Graph) -> Self {
        Matching { edges: BTreeSet::new(), mate: vec![None; g.vertex_count()] }
    }

    pub fn from_edges(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self, GraphError> {
        let mut m = Matching::empty(g);
        for e in edges {
            m.insert(g, e)?;
        }
        Ok(m)
    }

    pub fn insert(&mut self, g: &Graph, e: EdgeId) -> Result<(), GraphError> {
        if e.0 >= g.edge_count() {
            return Err(GraphError::UnknownEdge(e.0));
        }
        if self.edges.contains(&e) {
            return Ok(());
        }
        let (u, v) = g.endpoints(e);
        for x in [u, v] {
            if let Some(f) = self.mate[x.0] {
                return Err(GraphError::NotAMatching(f.0, e.0));
            }
        }
        self.mate[u.0] = Some(e);
        self.mate[v.0] = Some(e);
        self.edges.insert(e);
        Ok(())
    }

    pub fn remove(&mut self, g: &Graph, e: EdgeId) -> bool {
        if !self.edges.remove(&e) {
            return false;
        }
        let (u, v) = g.endpoints(e);
        self.mate[u.0] = None;
        self.mate[v.0] = None;
        true
    }

    /// Replaces `self` by `self △ edges`.
    pub fn switch(&mut self, g: &Graph, edges: &[EdgeId]) -> Result<(), GraphError> {
        let mut next: BTreeSet<EdgeId> = self.edges.clone();
        for &e in edges {
            if !next.remove(&e) {
                next.insert(e);
            }
        }
        *self = Matching::from_edges(g, next)?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn mate_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.mate[v.0]
    }

    pub fn mate(&self, g: &Graph, v: VertexId) -> Option<VertexId> {
        self.mate[v.0].map(|e| g.edge(e).other(v))
    }

    pub fn covers(&self, v: VertexId) -> bool {
        self.mate[v.0].is_some()
    }

    /// `supp(M)`: the matched vertices.
    pub fn support(&self) -> BTreeSet<VertexId> {
        self.mate
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_some())
            .map(|(i, _)| VertexId(i))
            .collect()
    }

    pub fn exposed(&self) -> Vec<VertexId> {
        self.mate
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_none())
            .map(|(i, _)| VertexId(i))
            .collect()
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }

    pub fn is_almost_perfect(&self) -> bool {
        self.mate.iter().filter(|m| m.is_none()).count() == 1
    }

    pub fn weight(&self, g: &Graph) -> Rational {
        matching_weight(g, self)
    }

    pub fn symmetric_difference(&self, other: &Matching) -> BTreeSet<EdgeId> {
        self.edges.symmetric_difference(&other.edges).copied().collect()
    }

    /// Endpoint names of every edge, each pair sorted, the list sorted.
    pub fn endpoint_pairs(&self, g: &Graph) -> Vec<(String, String)> {
        let mut pairs: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                let (a, b) = (g.name(u).to_string(), g.name(v).to_string());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        pairs.sort();
        pairs
    }
}

/// `w[F]` for a matching `F`.
pub fn matching_weight(g: &Graph, m: &Matching) -> Rational {
    m.edges().fold(Rational::zero(), |acc, e| acc + g.weight(e))
}

pub fn edge_set_weight(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Rational {
    edges.into_iter().fold(Rational::zero(), |acc, e| acc + g.weight(e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AltKind {
    Path,
    Cycle,
}

/// A connected component of `M △ N`: a path or an even cycle whose edges
/// alternate between `M \ N` and `N \ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltComponent {
    pub kind: AltKind,
    /// Vertex sequence; for a cycle the first vertex is not repeated.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// Splits `M △ N` into alternating paths and cycles.
///
/// Paths are listed before cycles. Each path starts at its smaller endpoint
/// and each cycle at its smallest vertex, so the output is deterministic.
pub fn symmetric_difference_decompose(g: &Graph, m: &Matching, n: &Matching) -> Vec<AltComponent> {
    let diff = m.symmetric_difference(n);
    let mut incident: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
    for &e in &diff {
        let (u, v) = g.endpoints(e);
        incident.entry(u).or_default().push(e);
        incident.entry(v).or_default().push(e);
    }
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    let mut out = Vec::new();

    let walk = |start: VertexId, used: &mut BTreeSet<EdgeId>| {
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        let mut at = start;
        while let Some(&e) = incident[&at].iter().find(|e| !used.contains(e)) {
            used.insert(e);
            edges.push(e);
            at = g.edge(e).other(at);
            if at == start {
                break;
            }
            vertices.push(at);
        }
        (vertices, edges)
    };

    for (&v, es) in &incident {
        if es.len() == 1 && !used.contains(&es[0]) {
            let (vertices, edges) = walk(v, &mut used);
            out.push(AltComponent { kind: AltKind::Path, vertices, edges });
        }
    }
    for (&v, es) in &incident {
        if es.iter().any(|e| !used.contains(e)) {
            let (vertices, edges) = walk(v, &mut used);
            out.push(AltComponent { kind: AltKind::Cycle, vertices, edges });
        }
    }
    out
}

/// Integer-valued, strictly positive copy of a rational-weighted graph.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub graph: Graph,
    pub scale: BigInt,
    pub shift: BigInt,
}

impl Normalized {
    /// Original weight of a normalized value: `(w' - shift) / scale`.
    pub fn denormalize(&self, value: &Rational) -> Rational {
        (value - Rational::from_integer(self.shift.clone())) / Rational::from_integer(self.scale.clone())
    }
}

/// Rescales and shifts weights to positive integers: `w' = scale·w + shift`.
///
/// `scale` is the lcm of the denominators. `shift` is zero when the scaled
/// weights are already at least one, otherwise the smallest integer making the
/// minimum exactly one. The shift changes `w[M]` by `shift·|M|`, so it only
/// preserves comparisons between matchings of equal cardinality.
pub fn normalize_weights(g: &Graph) -> Normalized {
    let scale = g.edges().iter().fold(BigInt::one(), |acc, e| acc.lcm(e.weight.denom()));
    let scaled: Vec<BigInt> = g
        .edges()
        .iter()
        .map(|e| (e.weight.numer() * &scale) / e.weight.denom())
        .collect();
    let shift = match scaled.iter().min() {
        Some(min) if min < &BigInt::one() => BigInt::one() - min,
        _ => BigInt::zero(),
    };
    let graph = g.map_weights(|e, _| Rational::from_integer(&scaled[e.0] + &shift));
    Normalized { graph, scale, shift }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}
