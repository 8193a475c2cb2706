//! Maximum-cardinality matching by alternating forests with blossom
//! shrinking, over plain index graphs.
//!
//! Every module that needs an unweighted matching (contracted views, induced
//! subgraphs, the host graph itself) lowers its graph to an [`IndexGraph`] and
//! works with a mate table of edge indices. Parallel edges are allowed.

#[derive(Clone, Debug, Default)]
pub struct IndexGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl IndexGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            debug_assert!(u != v && u < n && v < n);
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        IndexGraph { n, edges, adj }
    }

    pub fn from_graph(g: &crate::graph::Graph) -> Self {
        IndexGraph::new(g.vertex_count(), g.edges().iter().map(|e| (e.u.0, e.v.0)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v` as `(neighbour, edge)` pairs, sorted by neighbour.
    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Same vertex set, only the edges for which `keep` holds.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize) -> bool) -> (IndexGraph, Vec<usize>) {
        let mut origin = Vec::new();
        let mut edges = Vec::new();
        for (i, &e) in self.edges.iter().enumerate() {
            if keep(i) {
                edges.push(e);
                origin.push(i);
            }
        }
        (IndexGraph::new(self.n, edges), origin)
    }

    /// Subgraph induced by `keep`; returns it with local→host edge indices.
    pub fn induced(&self, keep: &[usize]) -> (IndexGraph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                edges.push((local[u], local[v]));
                origin.push(i);
            }
        }
        (IndexGraph::new(keep.len(), edges), origin)
    }
}

/// Mate table: `mate[v]` is the matching edge at `v`, if any.
pub type MateTable = Vec<Option<usize>>;

pub fn mate_vertex(g: &IndexGraph, mate: &[Option<usize>], v: usize) -> Option<usize> {
    mate[v].map(|e| g.other(e, v))
}

pub fn mate_from_edges(g: &IndexGraph, edges: impl IntoIterator<Item = usize>) -> MateTable {
    let mut mate = vec![None; g.n];
    for e in edges {
        let (u, v) = g.edges[e];
        assert!(mate[u].is_none() && mate[v].is_none(), "edges do not form a matching");
        mate[u] = Some(e);
        mate[v] = Some(e);
    }
    mate
}

pub fn matching_edges(mate: &[Option<usize>]) -> Vec<usize> {
    let mut edges: Vec<usize> = mate.iter().flatten().copied().collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// An augmenting path found by [`Search::augmenting_path`], listed from the
/// root of the search to the exposed vertex it reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentingPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// One alternating-forest search rooted at a single exposed vertex.
pub struct Search<'g> {
    g: &'g IndexGraph,
    base: Vec<usize>,
    parent: Vec<Option<usize>>,
    parent_edge: Vec<usize>,
    even: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl<'g> Search<'g> {
    pub fn new(g: &'g IndexGraph) -> Self {
        let n = g.n;
        Search {
            g,
            base: (0..n).collect(),
            parent: vec![None; n],
            parent_edge: vec![usize::MAX; n],
            even: vec![false; n],
            in_blossom: vec![false; n],
            queue: Default::default(),
        }
    }

    fn reset(&mut self) {
        for i in 0..self.g.n {
            self.base[i] = i;
            self.parent[i] = None;
            self.parent_edge[i] = usize::MAX;
            self.even[i] = false;
        }
        self.queue.clear();
    }

    fn lowest_common_base(&self, mate: &[Option<usize>], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            match mate_vertex(self.g, mate, a) {
                Some(m) => a = self.parent[m].expect("odd vertex has a parent"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = mate_vertex(self.g, mate, b).expect("non-root base is matched");
            b = self.parent[m].expect("odd vertex has a parent");
        }
    }

    fn mark_path(&mut self, mate: &[Option<usize>], mut v: usize, b: usize, mut child: usize, mut child_edge: usize) {
        while self.base[v] != b {
            let m = mate_vertex(self.g, mate, v).expect("blossom vertex is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            self.parent_edge[v] = child_edge;
            child = m;
            child_edge = self.parent_edge[m];
            v = self.parent[m].expect("odd vertex has a parent");
        }
    }

    /// Grows the alternating tree from `root`. Returns the exposed vertex that
    /// closes an augmenting path, or `None` once the tree is exhausted; in
    /// the latter case [`Search::even_vertices`] lists the outer vertices.
    fn grow(&mut self, mate: &[Option<usize>], root: usize) -> Option<usize> {
        self.reset();
        self.even[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.adj[v].len() {
                let (to, e) = self.g.adj[v][idx];
                if self.base[v] == self.base[to] || mate[v] == Some(e) || mate_vertex(self.g, mate, v) == Some(to) {
                    continue;
                }
                let to_is_even = to == root || mate_vertex(self.g, mate, to).is_some_and(|m| self.parent[m].is_some());
                if to_is_even {
                    let b = self.lowest_common_base(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, b, to, e);
                    self.mark_path(mate, to, b, v, e);
                    for i in 0..self.g.n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = b;
                            if !self.even[i] {
                                self.even[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    self.parent_edge[to] = e;
                    match mate_vertex(self.g, mate, to) {
                        None => return Some(to),
                        Some(m) => {
                            self.even[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    /// Alternating path from exposed `root` to another exposed vertex.
    pub fn augmenting_path(&mut self, mate: &[Option<usize>], root: usize) -> Option<AugmentingPath> {
        if mate[root].is_some() {
            return None;
        }
        let end = self.grow(mate, root)?;
        let mut vertices = vec![end];
        let mut edges = Vec::new();
        let mut v = end;
        loop {
            let p = self.parent[v].expect("tree vertex has a parent");
            edges.push(self.parent_edge[v]);
            vertices.push(p);
            match mate[p] {
                None => break,
                Some(me) => {
                    edges.push(me);
                    v = self.g.other(me, p);
                    vertices.push(v);
                }
            }
        }
        vertices.reverse();
        edges.reverse();
        Some(AugmentingPath { vertices, edges })
    }

    /// Outer vertices of the exhausted tree rooted at `root`.
    pub fn even_vertices(&mut self, mate: &[Option<usize>], root: usize) -> Vec<usize> {
        let found = self.grow(mate, root);
        assert!(found.is_none(), "even_vertices requires a maximum matching");
        (0..self.g.n).filter(|&v| self.even[v]).collect()
    }
}

/// Switches `mate` along an augmenting path.
pub fn augment(g: &IndexGraph, mate: &mut [Option<usize>], path: &AugmentingPath) {
    for (i, &e) in path.edges.iter().enumerate() {
        if i % 2 == 0 {
            let (u, v) = g.edges[e];
            mate[u] = Some(e);
            mate[v] = Some(e);
        }
    }
}

/// Grows `initial` to a maximum matching by augmenting paths only, so every
/// vertex covered by `initial` stays covered.
pub fn maximum_matching_from(g: &IndexGraph, initial: MateTable) -> MateTable {
    let mut mate = initial;
    let mut search = Search::new(g);
    for root in 0..g.n {
        if mate[root].is_none() {
            if let Some(path) = search.augmenting_path(&mate, root) {
                augment(g, &mut mate, &path);
            }
        }
    }
    mate
}

pub fn maximum_matching(g: &IndexGraph) -> MateTable {
    maximum_matching_from(g, vec![None; g.n])
}

/// Vertices reachable from an exposed vertex by an even alternating path
/// (the set missed by some maximum matching). `mate` must be maximum.
pub fn even_reachable(g: &IndexGraph, mate: &[Option<usize>]) -> Vec<bool> {
    let mut out = vec![false; g.n];
    let mut search = Search::new(g);
    for root in 0..g.n {
        if mate[root].is_none() {
            for v in search.even_vertices(mate, root) {
                out[v] = true;
            }
        }
    }
    out
}

/// Perfect matching of `g`, if one exists.
pub fn perfect_matching(g: &IndexGraph) -> Option<MateTable> {
    let mate = maximum_matching(g);
    mate.iter().all(Option::is_some).then_some(mate)
}
