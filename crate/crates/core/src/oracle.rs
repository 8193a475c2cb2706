//! Brute-force reference answers for small graphs.
//!
//! Nothing here uses the blossom engine, the laminar family or the
//! procedure; answers come from plain enumeration so they can be compared
//! against the fast paths. Costs grow exponentially; callers keep instances
//! to roughly a dozen vertices.

use std::cmp::Ordering;

use num_traits::Zero;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, Matching, Rational, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("more than {0} matchings to enumerate")]
    TooMany(usize),
}

/// Every matching of `g` (including the empty one), as sorted edge lists.
pub fn enumerate_matchings(g: &Graph, limit: usize) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    fn go(g: &Graph, i: usize, used: &mut [bool], cur: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>, limit: usize) -> bool {
        if i == g.edge_count() {
            if out.len() == limit {
                return false;
            }
            out.push(cur.clone());
            return true;
        }
        if !go(g, i + 1, used, cur, out, limit) {
            return false;
        }
        let e = &g.edges()[i];
        if !used[e.u.0] && !used[e.v.0] {
            used[e.u.0] = true;
            used[e.v.0] = true;
            cur.push(EdgeId(i));
            let ok = go(g, i + 1, used, cur, out, limit);
            cur.pop();
            used[e.u.0] = false;
            used[e.v.0] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.vertex_count()];
    if go(g, 0, &mut used, &mut Vec::new(), &mut out, limit) {
        Ok(out)
    } else {
        Err(OracleError::TooMany(limit))
    }
}

fn weight_of(g: &Graph, edges: &[EdgeId]) -> Rational {
    edges.iter().fold(Rational::zero(), |acc, &e| acc + g.weight(e))
}

/// Best matching covering every vertex of `free` except at most `skips`
/// of them, by branching on the smallest free vertex. `better` decides
/// between two weights.
fn best_cover(
    g: &Graph,
    free: &mut Vec<bool>,
    skips: usize,
    better: fn(&Rational, &Rational) -> bool,
) -> Option<(Rational, Vec<EdgeId>)> {
    let Some(v) = free.iter().position(|&f| f) else {
        return Some((Rational::zero(), Vec::new()));
    };
    let mut best: Option<(Rational, Vec<EdgeId>)> = None;
    let offer = |cand: (Rational, Vec<EdgeId>), best: &mut Option<(Rational, Vec<EdgeId>)>| {
        let replace = match best {
            None => true,
            Some((w, edges)) => {
                better(&cand.0, w) || (cand.0 == *w && lexicographic(&cand.1, edges) == Ordering::Less)
            }
        };
        if replace {
            *best = Some(cand);
        }
    };
    free[v] = false;
    if skips > 0 {
        if let Some(c) = best_cover(g, free, skips - 1, better) {
            offer(c, &mut best);
        }
    }
    for &e in g.incident(VertexId(v)) {
        let u = g.edge(e).other(VertexId(v)).0;
        if !free[u] {
            continue;
        }
        free[u] = false;
        if let Some((w, mut edges)) = best_cover(g, free, skips, better) {
            edges.push(e);
            edges.sort();
            offer((w + g.weight(e), edges), &mut best);
        }
        free[u] = true;
    }
    free[v] = true;
    best
}

fn lexicographic(a: &[EdgeId], b: &[EdgeId]) -> Ordering {
    a.cmp(b)
}

fn lower(a: &Rational, b: &Rational) -> bool {
    a < b
}

fn higher(a: &Rational, b: &Rational) -> bool {
    a > b
}

/// Minimum-weight perfect matching, ties broken by the lexicographically
/// smallest sorted edge-id list.
pub fn min_weight_perfect(g: &Graph) -> Option<(Rational, Vec<EdgeId>)> {
    best_cover(g, &mut vec![true; g.vertex_count()], 0, lower)
}

/// Minimum-weight matching leaving exactly one vertex exposed (`n` odd).
pub fn min_weight_almost_perfect(g: &Graph) -> Option<(Rational, Vec<EdgeId>)> {
    if g.vertex_count().is_multiple_of(2) {
        return None;
    }
    best_cover(g, &mut vec![true; g.vertex_count()], 1, lower)
}

/// Minimum weight over perfect matchings for even `n`, almost perfect ones
/// for odd `n`.
pub fn min_weight_near_perfect(g: &Graph) -> Option<(Rational, Vec<EdgeId>)> {
    if g.vertex_count().is_multiple_of(2) {
        min_weight_perfect(g)
    } else {
        min_weight_almost_perfect(g)
    }
}

/// Maximum-weight matching of any cardinality.
pub fn max_weight_matching(g: &Graph) -> (Rational, Vec<EdgeId>) {
    best_cover(g, &mut vec![true; g.vertex_count()], g.vertex_count(), higher).expect("empty matching always exists")
}

/// Largest matching size.
pub fn max_matching_size(g: &Graph) -> usize {
    fn go(g: &Graph, free: &mut [bool]) -> usize {
        let Some(v) = free.iter().position(|&f| f) else { return 0 };
        free[v] = false;
        let mut best = go(g, free);
        for &e in g.incident(VertexId(v)) {
            let u = g.edge(e).other(VertexId(v)).0;
            if free[u] {
                free[u] = false;
                best = best.max(1 + go(g, free));
                free[u] = true;
            }
        }
        free[v] = true;
        best
    }
    go(g, &mut vec![true; g.vertex_count()])
}

fn has_perfect_matching_on(g: &Graph, free: &mut [bool]) -> bool {
    let Some(v) = free.iter().position(|&f| f) else { return true };
    free[v] = false;
    let mut found = false;
    for &e in g.incident(VertexId(v)) {
        let u = g.edge(e).other(VertexId(v)).0;
        if free[u] {
            free[u] = false;
            found = has_perfect_matching_on(g, free);
            free[u] = true;
            if found {
                break;
            }
        }
    }
    free[v] = true;
    found
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    has_perfect_matching_on(g, &mut vec![true; g.vertex_count()])
}

/// `G - v` has a perfect matching for every `v`.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.vertex_count();
    n % 2 == 1
        && (0..n).all(|v| {
            let mut free = vec![true; n];
            free[v] = false;
            has_perfect_matching_on(g, &mut free)
        })
}

/// Odd order and factor critical.
pub fn is_uniformly_almost_matchable(g: &Graph) -> bool {
    is_factor_critical(g)
}

/// Vertices reachable from an exposed vertex by an alternating path
/// starting with a non-matching edge, split by parity of the path length:
/// `(even, odd)`. Exposed vertices count as reached by the trivial path.
/// Enumerates simple paths, so it is exponential.
pub fn alternating_reach(g: &Graph, m: &Matching) -> (Vec<bool>, Vec<bool>) {
    fn walk(g: &Graph, m: &Matching, at: VertexId, len: usize, on: &mut [bool], even: &mut [bool], odd: &mut [bool]) {
        if len.is_multiple_of(2) {
            even[at.0] = true;
            for &e in g.incident(at) {
                let u = g.edge(e).other(at);
                if !m.contains(e) && !on[u.0] {
                    on[u.0] = true;
                    walk(g, m, u, len + 1, on, even, odd);
                    on[u.0] = false;
                }
            }
        } else {
            odd[at.0] = true;
            if let Some(e) = m.mate_edge(at) {
                let u = g.edge(e).other(at);
                if !on[u.0] {
                    on[u.0] = true;
                    walk(g, m, u, len + 1, on, even, odd);
                    on[u.0] = false;
                }
            }
        }
    }
    let n = g.vertex_count();
    let (mut even, mut odd) = (vec![false; n], vec![false; n]);
    let mut on = vec![false; n];
    for x in m.exposed() {
        on[x.0] = true;
        walk(g, m, x, 0, &mut on, &mut even, &mut odd);
        on[x.0] = false;
    }
    (even, odd)
}

/// An alternating path joining two distinct exposed vertices, if any.
pub fn has_augmenting_path(g: &Graph, m: &Matching) -> bool {
    let (_, odd) = alternating_reach(g, m);
    // an odd path from one exposed vertex ending at another exposed vertex
    m.exposed().iter().any(|&x| odd[x.0])
}

/// A matching `N` with `w[N \ M] > w[M \ N]`, found by enumerating all
/// matchings.
pub fn weighted_improvement(g: &Graph, m: &Matching, limit: usize) -> Result<Option<Vec<EdgeId>>, OracleError> {
    for n in enumerate_matchings(g, limit)? {
        let added: Vec<EdgeId> = n.iter().copied().filter(|&e| !m.contains(e)).collect();
        let removed: Vec<EdgeId> = m.edges().filter(|e| n.binary_search(e).is_err()).collect();
        if weight_of(g, &added) > weight_of(g, &removed) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Lexicographically least edge list among matchings whose support strictly
/// contains `supp(M)`, if any.
pub fn support_extension(g: &Graph, m: &Matching, limit: usize) -> Result<Option<Vec<EdgeId>>, OracleError> {
    let support = m.support();
    for n in enumerate_matchings(g, limit)? {
        let mut covered = std::collections::BTreeSet::new();
        for &e in &n {
            let (a, b) = g.endpoints(e);
            covered.insert(a);
            covered.insert(b);
        }
        if covered.len() > support.len() && covered.is_superset(&support) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
