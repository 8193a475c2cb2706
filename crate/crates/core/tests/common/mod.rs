#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strongmatch::graph::{integer, rational, Graph, Matching, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `K_n` with integer weights drawn from `lo..=hi`.
pub fn random_complete(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Graph {
    Graph::complete(n, |_, _| integer(rng.gen_range(lo..=hi)))
}

/// `G(n, p)` with unit weights.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(u), VertexId(v), integer(1)).unwrap();
            }
        }
    }
    g
}

/// `G(n, p)` with positive rational weights `num/den`, `num in 1..=9`, `den in 1..=4`.
pub fn random_weighted_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let w = rational(rng.gen_range(1..=9), rng.gen_range(1..=4));
                g.add_edge(VertexId(u), VertexId(v), w).unwrap();
            }
        }
    }
    g
}

/// A random matching built by scanning edges in random order and keeping
/// each free one with probability `keep`.
pub fn random_matching(rng: &mut ChaCha8Rng, g: &Graph, keep: f64) -> Matching {
    let mut ids: Vec<_> = g.edge_ids().collect();
    for i in (1..ids.len()).rev() {
        ids.swap(i, rng.gen_range(0..=i));
    }
    let mut m = Matching::empty(g);
    for e in ids {
        let (u, v) = g.endpoints(e);
        if !m.covers(u) && !m.covers(v) && rng.gen_bool(keep) {
            m.insert(g, e).unwrap();
        }
    }
    m
}

/// Every simple graph on `n` labelled vertices, by edge mask.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::with_vertices(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(VertexId(u), VertexId(v), integer(1)).unwrap();
            }
            bit += 1;
        }
    }
    g
}

fn without(g: &Graph, drop: &[VertexId]) -> Graph {
    let keep: Vec<VertexId> = g.vertices().filter(|v| !drop.contains(v)).collect();
    g.induced(&keep).0
}

/// Every structural property of a Gallai–Edmonds decomposition, with
/// matchability questions answered by the brute-force oracle.
pub fn check_gallai_edmonds(g: &Graph, ge: &strongmatch::gallai_edmonds::GEDecomposition) -> Result<(), String> {
    use strongmatch::oracle;
    let n = g.vertex_count();
    let mut part = vec![usize::MAX; n];
    let mut assign = |v: VertexId, label: usize| {
        if part[v.0] != usize::MAX {
            return Err(format!("vertex {} appears twice", v.0));
        }
        part[v.0] = label;
        Ok(())
    };
    for &t in &ge.t {
        assign(t, 0)?;
    }
    for &r in &ge.rest {
        assign(r, 1)?;
    }
    for (i, c) in ge.components.iter().enumerate() {
        for &v in &c.vertices {
            assign(v, 2 + i)?;
        }
    }
    if part.contains(&usize::MAX) {
        return Err("parts do not cover V".into());
    }
    // components and the remainder only meet through T
    for e in g.edges() {
        let (a, b) = (part[e.u.0], part[e.v.0]);
        if a != 0 && b != 0 && a != b {
            return Err(format!("edge {}-{} joins two parts of G - T", e.u.0, e.v.0));
        }
    }
    for c in &ge.components {
        if !oracle::is_factor_critical(&g.induced(&c.vertices).0) {
            return Err(format!("component {:?} is not factor critical", c.vertices));
        }
    }
    if !oracle::has_perfect_matching(&g.induced(&ge.rest).0) {
        return Err("remainder has no perfect matching".into());
    }
    let mut used = std::collections::BTreeSet::new();
    for &t in &ge.t {
        let c = *ge.f_map.get(&t).ok_or(format!("t = {} unmapped", t.0))?;
        if !used.insert(c) {
            return Err(format!("f_map is not injective at component {c}"));
        }
        let contact = ge.contact[&t];
        if !ge.components[c].vertices.contains(&contact) || !g.are_adjacent(t, contact) {
            return Err(format!("bad contact vertex for t = {}", t.0));
        }
    }
    // D is exactly the set of vertices missed by some maximum matching
    let nu = oracle::max_matching_size(g);
    for v in g.vertices() {
        let inessential = oracle::max_matching_size(&without(g, &[v])) == nu;
        if inessential != (part[v.0] >= 2) {
            return Err(format!("vertex {} misplaced relative to D", v.0));
        }
    }
    Ok(())
}
