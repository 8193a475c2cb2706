//! Primal–dual construction of strongly w-minimal perfect or almost perfect
//! matchings in complete graphs with rational weights.
//!
//! Each step works on `G'`: the maximal sets of the laminar family joined by
//! tight edges, carrying a maximum matching `M`. Vertices reachable from
//! exposed vertices by even alternating paths are grouped into the
//! components of `G'[T']`, which are contracted with potential `1/2`; sets
//! reachable only by odd paths lose `1/2`, and non-singleton sets that hit
//! zero are dissolved. The carried-over matching is extended across the
//! dissolved sets and grown back to maximum cardinality. Once at most one
//! vertex of `G'` is exposed, the family is unfolded top-down into a matching
//! of the host graph.

mod certificate;
pub mod checks;

pub use certificate::{verify_certificate, CertificateError, CertificateReport, DualCertificate, Violation};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::gallai_edmonds::blossom::{self, IndexGraph, MateTable};
use crate::graph::{normalize_weights, EdgeId, Graph, HalfInt, Matching, VertexId};
use crate::laminar::{ContractedView, LaminarFamily, Members, SetId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("the procedure needs a complete graph")]
    NotComplete,
    #[error("normalized weights do not fit in 62 bits")]
    WeightsTooLarge,
    #[error("still more than one exposed vertex after {0} steps")]
    StepCapExceeded(usize),
    #[error("invariant violated at step {step}: {what}")]
    Invariant { step: usize, what: String },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Also run the brute-force checks on every step: uniform almost
    /// matchability of every set, dominating vertices of new sets, the
    /// relabelling after contraction and connectivity of `G_i[⊔U]`.
    pub thorough: bool,
}

impl RunOptions {
    pub fn thorough() -> Self {
        RunOptions { thorough: true }
    }
}

/// Everything the procedure owns between two potential updates.
#[derive(Clone, Debug)]
pub struct StepState {
    pub index: usize,
    pub family: LaminarFamily,
    pub tight: Vec<EdgeId>,
    pub view: ContractedView,
    pub graph: IndexGraph,
    pub mate: MateTable,
}

impl StepState {
    fn build(g: &Graph, weights: &[HalfInt], index: usize, family: LaminarFamily) -> Self {
        let tight = family.tight_subgraph(g, weights);
        let view = family.contracted_view(g, &tight);
        let graph = view.index_graph();
        let mate = vec![None; view.nodes.len()];
        StepState { index, family, tight, view, graph, mate }
    }

    pub fn exposed(&self) -> Vec<usize> {
        (0..self.mate.len()).filter(|&v| self.mate[v].is_none()).collect()
    }

    /// Host edges of the current matching on `G'`.
    pub fn matching_host_edges(&self) -> Vec<EdgeId> {
        blossom::matching_edges(&self.mate).into_iter().map(|e| self.view.edges[e].host).collect()
    }

    pub fn mate_of(&self, v: usize) -> Option<usize> {
        blossom::mate_vertex(&self.graph, &self.mate, v)
    }
}

/// `X'`, `S'` and `T'` on the current `G'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub exposed: Vec<usize>,
    /// `S'`: reachable from `X'` by an odd alternating path.
    pub odd: Vec<bool>,
    /// `T'`: reachable from `X'` by an even (possibly trivial) alternating path.
    pub even: Vec<bool>,
}

impl Labeling {
    /// `S' \ T'`.
    pub fn odd_only(&self) -> Vec<usize> {
        (0..self.odd.len()).filter(|&v| self.odd[v] && !self.even[v]).collect()
    }
}

/// Labels `G'` relative to a maximum matching.
///
/// The even set is the outer set of the alternating forest grown from the
/// exposed vertices. A matched vertex `v` has an odd alternating path from
/// `X'` exactly when its mate has an even one: such a path never visits the
/// mate, so it is an augmenting path of `G' - mate(v)` relative to
/// `M - mate_edge(v)`, and that graph has a matching of size `|M|` exactly
/// when some maximum matching of `G'` misses the mate.
pub fn label(state: &StepState) -> Labeling {
    let even = blossom::even_reachable(&state.graph, &state.mate);
    let odd = (0..state.mate.len()).map(|v| state.mate_of(v).is_some_and(|m| even[m])).collect();
    Labeling { exposed: state.exposed(), odd, even }
}

fn components(g: &IndexGraph, allowed: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        if !allowed[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &(u, _) in g.neighbours(v) {
                if allowed[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `𝒰`: the components of `G' - (S' \ T')` that meet `T'`, sorted by their
/// smallest vertex. They coincide with the components of `G'[T']`; both are
/// computed and compared.
pub fn find_blossom_components(state: &StepState, lab: &Labeling) -> Result<Vec<Vec<usize>>, SolveError> {
    let n = state.mate.len();
    let outside_odd_only: Vec<bool> = (0..n).map(|v| !(lab.odd[v] && !lab.even[v])).collect();
    let mut by_removal: Vec<Vec<usize>> =
        components(&state.graph, &outside_odd_only).into_iter().filter(|c| c.iter().any(|&v| lab.even[v])).collect();
    let mut by_even = components(&state.graph, &lab.even);
    by_removal.sort();
    by_even.sort();
    if by_removal != by_even {
        return Err(SolveError::Invariant {
            step: state.index,
            what: "components of G'-(S'\\T') meeting T' differ from components of G'[T']".into(),
        });
    }
    Ok(by_even)
}

/// Result of contracting `𝒰` and moving potentials by one half.
#[derive(Clone, Debug)]
pub struct PotentialUpdate {
    pub family: LaminarFamily,
    /// `T_i = 𝒰_i`, as new sets of the family.
    pub raised: Vec<SetId>,
    /// `S_i = S'_i \ T'_i`.
    pub lowered: Vec<SetId>,
    pub dissolved: Vec<SetId>,
    /// `M*_i`: matching edges not swallowed by a new set.
    pub carried: Vec<EdgeId>,
}

pub fn update_potentials(state: &StepState, lab: &Labeling, blossoms: &[Vec<usize>]) -> Result<PotentialUpdate, SolveError> {
    let step = state.index;
    let invariant = |what: String| SolveError::Invariant { step, what };
    let mut family = state.family.clone();

    let mut blossom_of = vec![usize::MAX; state.mate.len()];
    let mut raised = Vec::with_capacity(blossoms.len());
    for (i, u) in blossoms.iter().enumerate() {
        let members: Vec<SetId> = u.iter().map(|&v| state.view.nodes[v]).collect();
        for &v in u {
            blossom_of[v] = i;
        }
        let id = family.contract(&members).map_err(|e| invariant(e.to_string()))?;
        family.set_potential(id, HalfInt::HALF);
        if family.flatten_size(id).is_multiple_of(2) {
            return Err(invariant(format!("new set {} has even flatten size", id.0)));
        }
        raised.push(id);
    }

    let lowered: Vec<SetId> = lab.odd_only().into_iter().map(|v| state.view.nodes[v]).collect();
    for &s in &lowered {
        if blossom_of[state.view.index_of(s).unwrap()] != usize::MAX {
            return Err(invariant("S and T intersect".into()));
        }
        family.set_potential(s, family.potential(s) - HalfInt::HALF);
    }
    let mut dissolved = Vec::new();
    for &s in &lowered {
        if family.flatten_size(s) > 1 && family.potential(s) == HalfInt::ZERO {
            family.dissolve(s).map_err(|e| invariant(e.to_string()))?;
            dissolved.push(s);
        }
    }

    let carried = blossom::matching_edges(&state.mate)
        .into_iter()
        .filter(|&e| {
            let ve = state.view.edges[e];
            blossom_of[ve.a] == usize::MAX || blossom_of[ve.a] != blossom_of[ve.b]
        })
        .map(|e| state.view.edges[e].host)
        .collect();

    Ok(PotentialUpdate { family, raised, lowered, dissolved, carried })
}

/// Builds `G'_{i+1}` and `M_{i+1}`: the carried edges, a perfect matching of
/// `H(U) - W` for every dissolved `U` (with `W` the member hit by its carried
/// edge), then augmentation to maximum cardinality.
pub fn rebuild_matching(g: &Graph, weights: &[HalfInt], state: &StepState, update: &PotentialUpdate) -> Result<StepState, SolveError> {
    let step = state.index;
    let invariant = |what: String| SolveError::Invariant { step, what };
    let mut next = StepState::build(g, weights, state.index + 1, update.family.clone());
    let index_of_edge = next.view.edge_index();

    let mut chosen: Vec<usize> = Vec::new();
    for &e in &update.carried {
        let idx = *index_of_edge.get(&e).ok_or_else(|| invariant(format!("carried edge {} is no longer tight", e.0)))?;
        chosen.push(idx);
    }
    for &d in &update.dissolved {
        let inside: Vec<bool> = {
            let mut mark = vec![false; g.vertex_count()];
            for v in next.family.flatten(d) {
                mark[v.0] = true;
            }
            mark
        };
        let anchors: Vec<VertexId> = update
            .carried
            .iter()
            .filter_map(|&e| {
                let (u, v) = g.endpoints(e);
                match (inside[u.0], inside[v.0]) {
                    (true, false) => Some(u),
                    (false, true) => Some(v),
                    _ => None,
                }
            })
            .collect();
        if anchors.len() != 1 {
            return Err(invariant(format!("dissolved set {} meets {} carried edges", d.0, anchors.len())));
        }
        let h = next.family.member_view(g, &next.tight, d);
        let skip = h.node_of(anchors[0]).expect("anchor lies in a member");
        let keep: Vec<usize> = (0..h.nodes.len()).filter(|&i| i != skip).collect();
        let (sub, origin) = h.index_graph().induced(&keep);
        let mate = blossom::perfect_matching(&sub)
            .ok_or_else(|| invariant(format!("H(U) minus a member has no perfect matching for set {}", d.0)))?;
        for local in blossom::matching_edges(&mate) {
            let host = h.edges[origin[local]].host;
            chosen.push(*index_of_edge.get(&host).ok_or_else(|| invariant("member edge missing from G'".into()))?);
        }
    }

    let mut mate = vec![None; next.view.nodes.len()];
    for idx in chosen {
        let (a, b) = next.graph.edges()[idx];
        if mate[a].is_some() || mate[b].is_some() {
            return Err(invariant("extension N_i is not a matching".into()));
        }
        mate[a] = Some(idx);
        mate[b] = Some(idx);
    }
    next.mate = blossom::maximum_matching_from(&next.graph, mate);
    Ok(next)
}

/// Per-set summary of a new contraction, kept for later independent checks.
#[derive(Clone, Debug)]
pub struct BlossomRecord {
    /// Number of `G'` vertices in the set.
    pub size: usize,
    pub flatten_size: usize,
    /// Edges of `G'[U]` in local indices.
    pub edges: Vec<(usize, usize)>,
    /// Local mate inside `U`, `None` for the member matched outside or exposed.
    pub inner_mate: Vec<Option<usize>>,
    /// Member lying in `X'`, if any.
    pub exposed_member: Option<usize>,
    /// `|M ∩ δ(U)|` in `G'`.
    pub boundary_matched: usize,
    /// A member that dominates `U` (thorough runs only).
    pub dominating: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub index: usize,
    pub view_vertices: usize,
    pub exposed: usize,
    pub matching_size: usize,
    pub blossoms: Vec<BlossomRecord>,
    pub lowered: usize,
    pub dissolved: usize,
    pub carried: usize,
    pub next_matching_size: usize,
    /// Never-matched vertices whose energy was checked against `i/2`.
    pub energy_checked: usize,
}

#[derive(Clone, Debug, Default)]
pub struct RunStats {
    pub max_depth: usize,
    pub max_flatten: usize,
    pub family_size: usize,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub matching: Matching,
    pub certificate: DualCertificate,
    pub steps: usize,
    pub trace: Vec<StepRecord>,
    pub stats: RunStats,
}

/// A run in progress on an integer-weighted complete graph.
pub struct Procedure<'g> {
    g: &'g Graph,
    weights: Vec<HalfInt>,
    cap: usize,
    options: RunOptions,
    state: StepState,
    never_matched: Vec<bool>,
    trace: Vec<StepRecord>,
}

impl<'g> Procedure<'g> {
    /// Starts from the trivial family with zero potentials and a maximum
    /// matching of `G'_0`. `g` must have positive integer weights.
    pub fn new(g: &'g Graph, options: RunOptions) -> Result<Self, SolveError> {
        if !g.is_complete() {
            return Err(SolveError::NotComplete);
        }
        let weights = g.half_int_weights().ok_or(SolveError::WeightsTooLarge)?;
        if weights.iter().any(|w| !w.is_integer() || w.doubled() > i64::MAX / 4) {
            return Err(SolveError::WeightsTooLarge);
        }
        let cap = weights.iter().map(|w| w.doubled() / 2).max().unwrap_or(0);
        let cap = usize::try_from(cap).map_err(|_| SolveError::WeightsTooLarge)?;
        let mut state = StepState::build(g, &weights, 0, LaminarFamily::trivial(g.vertex_count()));
        state.mate = blossom::maximum_matching(&state.graph);
        let mut proc = Procedure {
            g,
            weights,
            cap,
            options,
            state,
            never_matched: vec![true; g.vertex_count()],
            trace: Vec::new(),
        };
        proc.observe_matching()?;
        Ok(proc)
    }

    pub fn state(&self) -> &StepState {
        &self.state
    }

    pub fn step_cap(&self) -> usize {
        self.cap
    }

    pub fn trace(&self) -> &[StepRecord] {
        &self.trace
    }

    pub fn is_finished(&self) -> bool {
        self.state.exposed().len() <= 1
    }

    /// Updates the never-matched set for the current `M_i` and checks the
    /// energy law `p_i(x) = i/2` on it.
    fn observe_matching(&mut self) -> Result<usize, SolveError> {
        let st = &self.state;
        for v in 0..st.mate.len() {
            if st.mate[v].is_some() {
                for x in st.family.flatten(st.view.nodes[v]) {
                    self.never_matched[x.0] = false;
                }
            }
        }
        checks::energy_law(st, &self.never_matched)
    }

    /// One iteration: label, contract, move potentials, rebuild.
    pub fn step(&mut self) -> Result<(), SolveError> {
        let i = self.state.index;
        if self.is_finished() {
            return Ok(());
        }
        if i >= self.cap {
            return Err(SolveError::StepCapExceeded(self.cap));
        }
        let lab = label(&self.state);
        let blossoms = find_blossom_components(&self.state, &lab)?;
        let mut records = checks::blossom_records(&self.state, &lab, &blossoms, self.options.thorough)?;
        let update = update_potentials(&self.state, &lab, &blossoms)?;
        if self.options.thorough {
            checks::relabel_after_contraction(self.g, &self.state, &lab, &update)?;
        }
        checks::dual_feasibility(self.g, &self.weights, &update.family, i + 1)?;
        let next = rebuild_matching(self.g, &self.weights, &self.state, &update)?;
        checks::exposed_after_rebuild(&self.state, &next, &update)?;
        if self.options.thorough {
            checks::sets_uniformly_almost_matchable(self.g, &next)?;
            checks::tight_sets_connected(self.g, &next)?;
        }
        for r in &mut records {
            r.dominating = r.dominating.filter(|_| self.options.thorough);
        }
        let record = StepRecord {
            index: i,
            view_vertices: self.state.view.nodes.len(),
            exposed: lab.exposed.len(),
            matching_size: blossom::matching_edges(&self.state.mate).len(),
            blossoms: records,
            lowered: update.lowered.len(),
            dissolved: update.dissolved.len(),
            carried: update.carried.len(),
            next_matching_size: blossom::matching_edges(&next.mate).len(),
            energy_checked: 0,
        };
        self.state = next;
        let checked = self.observe_matching()?;
        self.trace.push(StepRecord { energy_checked: checked, ..record });
        Ok(())
    }

    /// Unfolds the final family into a matching of `g` and assembles the
    /// certificate. Weights in the certificate are the ones given to
    /// [`Procedure::new`] (scale 1, shift 0).
    pub fn finish(self) -> Result<Solution, SolveError> {
        if !self.is_finished() {
            return Err(SolveError::Invariant { step: self.state.index, what: "finish called early".into() });
        }
        let st = &self.state;
        let exposed_vertex = match st.exposed().as_slice() {
            [] => None,
            [x] => {
                let flat = st.family.flatten(st.view.nodes[*x]);
                let never: Vec<VertexId> = flat.into_iter().filter(|v| self.never_matched[v.0]).collect();
                if never.len() != 1 {
                    return Err(SolveError::Invariant {
                        step: st.index,
                        what: format!("exposed set holds {} never-matched vertices", never.len()),
                    });
                }
                Some(never[0])
            }
            _ => unreachable!("finished"),
        };
        let matching = decontract(self.g, st, exposed_vertex)?;
        let stats = RunStats {
            max_depth: st.family.depth(),
            max_flatten: st.family.sets().map(|s| st.family.flatten_size(s)).max().unwrap_or(0),
            family_size: st.family.len(),
        };
        let certificate = DualCertificate {
            family: st.family.clone(),
            matching: matching.clone(),
            scale: BigInt::from(1),
            shift: BigInt::from(0),
            steps: st.index,
            exposed: exposed_vertex,
        };
        Ok(Solution { matching, certificate, steps: st.index, trace: self.trace, stats })
    }
}

/// Extends a perfect or almost perfect matching of the final `G'_n` into one
/// of the host graph. Every set `U` gets an anchor: the endpoint of its
/// external matching edge, or the never-matched vertex for the exposed set.
/// `H(U)` minus the member holding the anchor is matched perfectly, and each
/// member inherits the endpoint of its new edge as anchor.
pub fn decontract(g: &Graph, state: &StepState, exposed_vertex: Option<VertexId>) -> Result<Matching, SolveError> {
    let invariant = |what: String| SolveError::Invariant { step: state.index, what };
    let fam = &state.family;
    let mut edges: Vec<EdgeId> = state.matching_host_edges();
    let mut stack: Vec<(SetId, VertexId)> = Vec::new();
    for (v, &s) in state.view.nodes.iter().enumerate() {
        let anchor = match state.mate[v] {
            Some(e) => {
                let (a, b) = g.endpoints(state.view.edges[e].host);
                if state.view.node_of(a) == Some(v) {
                    a
                } else {
                    b
                }
            }
            None => exposed_vertex.ok_or_else(|| invariant("exposed set without a never-matched vertex".into()))?,
        };
        stack.push((s, anchor));
    }
    while let Some((s, anchor)) = stack.pop() {
        let Members::Sets(children) = fam.members(s) else { continue };
        let h = fam.member_view(g, &state.tight, s);
        let skip = h.node_of(anchor).ok_or_else(|| invariant("anchor outside its set".into()))?;
        let keep: Vec<usize> = (0..children.len()).filter(|&i| i != skip).collect();
        let (sub, origin) = h.index_graph().induced(&keep);
        let mate = blossom::perfect_matching(&sub)
            .ok_or_else(|| invariant(format!("H({}) minus a member has no perfect matching", s.0)))?;
        let mut anchors: Vec<Option<VertexId>> = vec![None; children.len()];
        anchors[skip] = Some(anchor);
        for local in blossom::matching_edges(&mate) {
            let ve = h.edges[origin[local]];
            let (x, y) = g.endpoints(ve.host);
            for z in [x, y] {
                anchors[h.node_of(z).unwrap()] = Some(z);
            }
            edges.push(ve.host);
        }
        for (i, &c) in children.iter().enumerate() {
            stack.push((c, anchors[i].expect("every member is anchored")));
        }
    }
    Matching::from_edges(g, edges).map_err(|e| invariant(e.to_string()))
}

/// Normalizes weights to positive integers, runs the procedure to completion
/// and returns a matching of `g` with its certificate.
pub fn run(g: &Graph) -> Result<Solution, SolveError> {
    run_with(g, RunOptions::default())
}

pub fn run_with(g: &Graph, options: RunOptions) -> Result<Solution, SolveError> {
    let normalized = normalize_weights(g);
    if normalized.graph.edges().iter().any(|e| e.weight.numer().to_i64().is_none_or(|w| w > i64::MAX / 4)) {
        return Err(SolveError::WeightsTooLarge);
    }
    let mut proc = Procedure::new(&normalized.graph, options)?;
    while !proc.is_finished() {
        proc.step()?;
    }
    let mut solution = proc.finish()?;
    // same vertex and edge ids, so the matching transfers unchanged
    solution.certificate.scale = normalized.scale;
    solution.certificate.shift = normalized.shift;
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::integer;

    #[test]
    fn k2_terminates_after_one_step() {
        let g = Graph::complete(2, |_, _| integer(1));
        let sol = run(&g).unwrap();
        assert!(sol.matching.is_perfect());
        assert_eq!(sol.matching.weight(&g), integer(1));
        assert_eq!(sol.steps, 1);
        assert!(verify_certificate(&g, &sol.matching, &sol.certificate).passed());
    }

    #[test]
    fn first_step_on_single_edge_raises_both_endpoints() {
        let g = Graph::complete(2, |_, _| integer(1));
        let mut proc = Procedure::new(&g, RunOptions::thorough()).unwrap();
        assert_eq!(proc.state().exposed().len(), 2);
        let lab = label(proc.state());
        let blossoms = find_blossom_components(proc.state(), &lab).unwrap();
        assert_eq!(blossoms, vec![vec![0], vec![1]]);
        let update = update_potentials(proc.state(), &lab, &blossoms).unwrap();
        for v in g.vertices() {
            assert_eq!(update.family.energy(v), HalfInt::HALF);
        }
        proc.step().unwrap();
        assert!(proc.is_finished());
        assert_eq!(proc.state().tight, vec![EdgeId(0)]);
    }

    #[test]
    fn k4_equal_weights() {
        let g = Graph::complete(4, |_, _| integer(3));
        let sol = run_with(&g, RunOptions::thorough()).unwrap();
        assert!(sol.matching.is_perfect());
        assert_eq!(sol.matching.weight(&g), integer(6));
        assert!(verify_certificate(&g, &sol.matching, &sol.certificate).passed());
    }

    #[test]
    fn triangle_is_almost_perfect() {
        let g = Graph::complete(3, |u, v| integer((u + v) as i64));
        let sol = run_with(&g, RunOptions::thorough()).unwrap();
        assert!(sol.matching.is_almost_perfect());
        assert_eq!(sol.matching.weight(&g), integer(1));
        assert!(verify_certificate(&g, &sol.matching, &sol.certificate).passed());
    }

    #[test]
    fn rejects_incomplete_graph() {
        let mut g = Graph::with_vertices(3);
        g.add_edge(VertexId(0), VertexId(1), integer(1)).unwrap();
        assert_eq!(run(&g).unwrap_err(), SolveError::NotComplete);
    }

    #[test]
    fn trivial_family_decontracts_to_itself() {
        let g = Graph::complete(4, |u, v| integer(if u + v == 3 { 1 } else { 5 }));
        let w = g.half_int_weights().unwrap();
        let mut st = StepState::build(&g, &w, 0, LaminarFamily::trivial(4));
        assert!(st.tight.is_empty());
        let all: Vec<EdgeId> = g.edge_ids().collect();
        st.view = st.family.contracted_view(&g, &all);
        st.graph = st.view.index_graph();
        st.mate = blossom::perfect_matching(&st.graph).unwrap();
        let m = decontract(&g, &st, None).unwrap();
        assert_eq!(m.edge_set().iter().copied().collect::<Vec<_>>(), st.matching_host_edges());
    }

    #[test]
    fn three_vertex_set_matched_at_its_base() {
        // K_4 where {0,1,2} is a tight triangle matched outside through 0
        let g = Graph::complete(4, |_, _| integer(2));
        let w = g.half_int_weights().unwrap();
        let mut fam = LaminarFamily::trivial(4);
        let u = fam.contract(&[SetId(0), SetId(1), SetId(2)]).unwrap();
        for v in 0..4 {
            fam.set_potential(SetId(v), HalfInt::ONE);
        }
        fam.set_potential(u, HalfInt::ZERO);
        let st0 = StepState::build(&g, &w, 0, fam);
        let mut st = st0.clone();
        assert_eq!(st.view.nodes.len(), 2);
        let e03 = g.edges_between(VertexId(0), VertexId(3)).next().unwrap();
        let idx = st.view.edge_index()[&e03];
        st.mate = blossom::mate_from_edges(&st.graph, [idx]);
        let m = decontract(&g, &st, None).unwrap();
        assert!(m.is_perfect());
        assert_eq!(m.mate(&g, VertexId(1)), Some(VertexId(2)));
    }
}
