//! Invariant checks run between the phases of a step. Each returns
//! `SolveError::Invariant` naming the first violation.

use crate::gallai_edmonds::blossom::{self, IndexGraph};
use crate::graph::{Graph, HalfInt};
use crate::laminar::{LaminarFamily, Members};

use super::{BlossomRecord, Labeling, PotentialUpdate, SolveError, StepState};

fn fail(step: usize, what: impl Into<String>) -> SolveError {
    SolveError::Invariant { step, what: what.into() }
}

/// Every exposed vertex of `G'_i` holds exactly one host vertex that has
/// never been covered, and that vertex has energy `i/2`. Returns the number
/// of vertices checked.
pub fn energy_law(st: &StepState, never_matched: &[bool]) -> Result<usize, SolveError> {
    let expected = HalfInt::from_doubled(st.index as i64);
    let mut checked = 0;
    for x in st.exposed() {
        let never: Vec<_> = st.family.flatten(st.view.nodes[x]).into_iter().filter(|v| never_matched[v.0]).collect();
        if never.len() != 1 {
            return Err(fail(st.index, format!("exposed set holds {} never-matched vertices", never.len())));
        }
        let p = st.family.energy(never[0]);
        if p != expected {
            return Err(fail(st.index, format!("never-matched vertex has energy {p}, expected {expected}")));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Local copy of `G'[U]` with the matching edges inside `U`.
fn local(st: &StepState, u: &[usize]) -> (IndexGraph, Vec<Option<usize>>, usize) {
    let (sub, _) = st.graph.induced(u);
    let mut inner = vec![None; u.len()];
    let mut boundary = 0;
    for (i, &v) in u.iter().enumerate() {
        if let Some(m) = st.mate_of(v) {
            match u.binary_search(&m) {
                Ok(j) => inner[i] = Some(j),
                Err(_) => boundary += 1,
            }
        }
    }
    (sub, inner, boundary)
}

fn uniformly_almost_matchable(g: &IndexGraph) -> bool {
    let n = g.vertex_count();
    n % 2 == 1
        && (0..n).all(|v| {
            let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            blossom::perfect_matching(&g.induced(&keep).0).is_some()
        })
}

/// Summaries of the new sets, checking that each has odd size and meets
/// exactly one of `X'` and `M ∩ δ(U)`, at most once. Thorough mode also
/// checks uniform almost matchability of `G'[U]` and finds the member from
/// which every member is reachable by an even alternating path inside `U`.
pub fn blossom_records(st: &StepState, lab: &Labeling, blossoms: &[Vec<usize>], thorough: bool) -> Result<Vec<BlossomRecord>, SolveError> {
    let step = st.index;
    let mut out = Vec::with_capacity(blossoms.len());
    for u in blossoms {
        let (sub, inner_mate, boundary_matched) = local(st, u);
        let exposed: Vec<usize> = (0..u.len()).filter(|&i| lab.exposed.binary_search(&u[i]).is_ok()).collect();
        if u.len() % 2 == 0 {
            return Err(fail(step, format!("component of G'[T'] with {} vertices", u.len())));
        }
        if exposed.len() + boundary_matched != 1 {
            return Err(fail(
                step,
                format!("component meets {} exposed vertices and {} boundary matching edges", exposed.len(), boundary_matched),
            ));
        }
        let mut dominating = None;
        if thorough {
            if !uniformly_almost_matchable(&sub) {
                return Err(fail(step, "component of G'[T'] is not uniformly almost matchable"));
            }
            let outer: Vec<usize> = (0..u.len()).filter(|&i| inner_mate[i].is_none()).collect();
            if outer.len() != 1 {
                return Err(fail(step, "matching inside a component is not near perfect"));
            }
            let mate: Vec<Option<usize>> = {
                let mut t = vec![None; u.len()];
                for (e, &(a, b)) in sub.edges().iter().enumerate() {
                    if inner_mate[a] == Some(b) && t[a].is_none() && t[b].is_none() {
                        t[a] = Some(e);
                        t[b] = Some(e);
                    }
                }
                t
            };
            if !blossom::even_reachable(&sub, &mate).iter().all(|&r| r) {
                return Err(fail(step, "no member dominates a component of G'[T']"));
            }
            dominating = Some(outer[0]);
        }
        let flatten_size = u.iter().map(|&v| st.family.flatten_size(st.view.nodes[v])).sum();
        out.push(BlossomRecord {
            size: u.len(),
            flatten_size,
            edges: sub.edges().to_vec(),
            inner_mate,
            exposed_member: exposed.first().copied(),
            boundary_matched,
            dominating,
        });
    }
    Ok(out)
}

/// In `G*` (`G'` with every set of `𝒰` contracted) the carried matching is
/// maximum, the raised sets are exactly the vertices reachable by even
/// alternating paths from exposed ones, and the lowered sets are exactly the
/// vertices reachable only by odd ones.
pub fn relabel_after_contraction(_g: &Graph, st: &StepState, lab: &Labeling, update: &PotentialUpdate) -> Result<(), SolveError> {
    let step = st.index;
    let n = st.mate.len();
    let mut node = vec![usize::MAX; n];
    let mut next = 0;
    let blossoms = super::find_blossom_components(st, lab)?;
    for u in &blossoms {
        for &v in u {
            node[v] = next;
        }
        next += 1;
    }
    let raised: Vec<usize> = (0..next).collect();
    for slot in node.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut edges = Vec::new();
    let mut star_mate = vec![None; next];
    for (e, &(a, b)) in st.graph.edges().iter().enumerate() {
        if node[a] == node[b] {
            continue;
        }
        let id = edges.len();
        edges.push((node[a], node[b]));
        if st.mate[a] == Some(e) && update.carried.contains(&st.view.edges[e].host) {
            star_mate[node[a]] = Some(id);
            star_mate[node[b]] = Some(id);
        }
    }
    let star = IndexGraph::new(next, edges);
    let size = blossom::matching_edges(&star_mate).len();
    if blossom::matching_edges(&blossom::maximum_matching_from(&star, star_mate.clone())).len() != size {
        return Err(fail(step, "carried matching is not maximum after contraction"));
    }
    let even = blossom::even_reachable(&star, &star_mate);
    let even_set: Vec<usize> = (0..next).filter(|&v| even[v]).collect();
    if even_set != raised {
        return Err(fail(step, "even-reachable vertices after contraction differ from the new sets"));
    }
    let mut odd_only: Vec<usize> = (0..next)
        .filter(|&v| !even[v] && blossom::mate_vertex(&star, &star_mate, v).is_some_and(|m| even[m]))
        .collect();
    odd_only.sort_unstable();
    let mut lowered: Vec<usize> = lab.odd_only().into_iter().map(|v| node[v]).collect();
    lowered.sort_unstable();
    if odd_only != lowered {
        return Err(fail(step, "odd-only vertices after contraction differ from the lowered sets"));
    }
    Ok(())
}

/// Undersaturation of every edge and nonnegativity on sets of size at least 3.
pub fn dual_feasibility(g: &Graph, weights: &[HalfInt], family: &LaminarFamily, step: usize) -> Result<(), SolveError> {
    for (i, e) in g.edges().iter().enumerate() {
        if family.boundary_sum(e.u, e.v) > weights[i] {
            return Err(fail(step, format!("edge {i} is oversaturated")));
        }
    }
    for s in family.sets() {
        if family.flatten_size(s) >= 3 && family.potential(s) < HalfInt::ZERO {
            return Err(fail(step, format!("set {} of size >= 3 has negative potential", s.0)));
        }
    }
    Ok(())
}

/// Every exposed vertex of `G'_{i+1}` is a set created in step `i` with
/// exactly one member exposed in `M_i`.
pub fn exposed_after_rebuild(old: &StepState, next: &StepState, update: &PotentialUpdate) -> Result<(), SolveError> {
    for x in next.exposed() {
        let s = next.view.nodes[x];
        if !update.raised.contains(&s) {
            return Err(fail(old.index, "an exposed vertex of the next G' is not a new set"));
        }
        let exposed_members = next
            .family
            .children(s)
            .iter()
            .filter(|&&c| old.view.index_of(c).is_some_and(|i| old.mate[i].is_none()))
            .count();
        if exposed_members != 1 {
            return Err(fail(old.index, format!("new exposed set has {exposed_members} previously exposed members")));
        }
    }
    Ok(())
}

/// `H(U)` is uniformly almost matchable for every non-singleton set.
pub fn sets_uniformly_almost_matchable(g: &Graph, st: &StepState) -> Result<(), SolveError> {
    for s in st.family.sets() {
        if matches!(st.family.members(s), Members::Vertex(_)) {
            continue;
        }
        let h = st.family.member_view(g, &st.tight, s).index_graph();
        if !uniformly_almost_matchable(&h) {
            return Err(fail(st.index, format!("H({}) is not uniformly almost matchable", s.0)));
        }
    }
    Ok(())
}

/// The tight edges inside `⊔U` connect it, for every set.
pub fn tight_sets_connected(g: &Graph, st: &StepState) -> Result<(), SolveError> {
    for s in st.family.sets() {
        let flat = st.family.flatten(s);
        if flat.len() == 1 {
            continue;
        }
        let mut inside = vec![usize::MAX; g.vertex_count()];
        for (i, v) in flat.iter().enumerate() {
            inside[v.0] = i;
        }
        let mut adj = vec![Vec::new(); flat.len()];
        for &e in &st.tight {
            let (u, v) = g.endpoints(e);
            if inside[u.0] != usize::MAX && inside[v.0] != usize::MAX {
                adj[inside[u.0]].push(inside[v.0]);
                adj[inside[v.0]].push(inside[u.0]);
            }
        }
        let mut seen = vec![false; flat.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(fail(st.index, format!("tight edges do not connect set {}", s.0)));
        }
    }
    Ok(())
}
