//! Finite prefixes of the two-terminal path family on which no matching is
//! strongly w-maximal.
//!
//! Vertices `x` and `y` are joined by paths `P_1, P_2, …`; `P_i` has
//! `2n_i + 1` edges with `n_1 = 1` and `n_{i+1} = 10^{i+1} n_i + 1`. Edges
//! at odd positions (second, fourth, …) weigh `2a - 1`; the others weigh
//! `2a` or `a`, chosen greedily so that the running difference between the
//! two kinds stays in `[1 - a, 1)`.
//!
//! A prefix can only witness finite facts: the inequalities on the weights
//! and path lengths, and an explicit improving switch for each matching
//! shape that can occur. That a perfect matching through `P_I` has
//! no improvement inside the prefix is expected; the improvement needs
//! `P_{I+1}`.

pub mod number;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{format_rational, EdgeId, Graph, Matching, Rational, VertexId};
pub use number::{Decider, IrrationalA, LinearA, UndecidedError};
use number::{pow10, pow10_rational};

pub const DEFAULT_EDGE_BUDGET: u64 = 250_000;
pub const EDGE_BUDGET_VAR: &str = "STRONGMATCH_EDGE_BUDGET";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CounterexampleError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("prefix needs {needed} edges, budget is {budget}")]
    BudgetExceeded { needed: BigInt, budget: u64 },
    #[error(transparent)]
    Undecided(#[from] UndecidedError),
    #[error("invalid matching: {0}")]
    Matching(String),
    #[error("switch along {0:?} does not improve the matching")]
    NotImproving(Vec<usize>),
}

/// `n_1, …, n_count`.
pub fn sequence(count: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for i in 1..=count {
        let next = match out.last() {
            None => BigInt::one(),
            Some(prev) => pow10(i as u32) * prev + 1,
        };
        out.push(next);
    }
    out
}

/// Budget from the environment, falling back to the default.
pub fn edge_budget() -> u64 {
    std::env::var(EDGE_BUDGET_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_EDGE_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathWeight {
    A,
    TwoA,
    TwoAMinusOne,
}

impl PathWeight {
    /// `(c0, c1)` of `c0 + c1·a`.
    pub fn coefficients(self) -> (i64, i64) {
        match self {
            PathWeight::A => (0, 1),
            PathWeight::TwoA => (0, 2),
            PathWeight::TwoAMinusOne => (-1, 2),
        }
    }

    pub fn form(self) -> LinearA {
        let (c0, c1) = self.coefficients();
        LinearA::from_ints(c0, c1)
    }

    pub fn label(self) -> &'static str {
        match self {
            PathWeight::A => "a",
            PathWeight::TwoA => "2a",
            PathWeight::TwoAMinusOne => "2a - 1",
        }
    }
}

/// One path `x = x_0, x_1, …, x_{2n+1} = y`.
#[derive(Clone, Debug)]
pub struct PrefixPath {
    /// 1-based index `i` of `P_i`.
    pub index: usize,
    pub n: usize,
    /// Weights of the edges `x_{2k} x_{2k+1}`, `k = 0..=n`.
    pub odd: Vec<PathWeight>,
    pub first_edge: usize,
    /// Vertex id of `x_1`; interior vertices are numbered consecutively.
    pub first_vertex: usize,
}

impl PrefixPath {
    pub fn edge_count(&self) -> usize {
        2 * self.n + 1
    }

    /// Weight of the edge `x_pos x_{pos+1}`.
    pub fn weight(&self, pos: usize) -> PathWeight {
        if pos.is_multiple_of(2) {
            self.odd[pos / 2]
        } else {
            PathWeight::TwoAMinusOne
        }
    }

    pub fn edge(&self, pos: usize) -> EdgeId {
        EdgeId(self.first_edge + pos)
    }
}

/// Weights of `x_{2k} x_{2k+1}` for `k = 0..=n`: `2a` while the odd edges so
/// far fall short of `k(2a - 1)`, else `a`.
fn odd_weights(n: usize, decider: &mut Decider) -> Result<Vec<PathWeight>, UndecidedError> {
    let mut out = Vec::with_capacity(n + 1);
    let (mut s0, mut s1) = (0i64, 0i64);
    for k in 0..=n as i64 {
        // running odd sum minus k(2a - 1)
        let short = decider.sign_int(s0 + k, s1 - 2 * k)? == Ordering::Less;
        let w = if short { PathWeight::TwoA } else { PathWeight::A };
        let (c0, c1) = w.coefficients();
        s0 += c0;
        s1 += c1;
        out.push(w);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CounterexamplePrefix {
    pub depth: usize,
    pub n: Vec<BigInt>,
    pub paths: Vec<PrefixPath>,
    /// Truncation level the weights were decided at.
    pub truncation: u32,
    graph: Graph,
    x: VertexId,
    y: VertexId,
}

impl CounterexamplePrefix {
    /// The prefix graph. Its rational edge weights are the symbolic weights
    /// evaluated at the lower end of the enclosure of `a`, for display and
    /// export only; all decisions use [`CounterexamplePrefix::weight`].
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn x(&self) -> VertexId {
        self.x
    }

    pub fn y(&self) -> VertexId {
        self.y
    }

    pub fn path(&self, i: usize) -> &PrefixPath {
        &self.paths[i - 1]
    }

    /// `(i, pos)` of an edge.
    pub fn locate(&self, e: EdgeId) -> (usize, usize) {
        let p = self.paths.iter().rev().find(|p| p.first_edge <= e.0).expect("edge belongs to a path");
        (p.index, e.0 - p.first_edge)
    }

    pub fn weight(&self, e: EdgeId) -> PathWeight {
        let (i, pos) = self.locate(e);
        self.path(i).weight(pos)
    }

    /// Vertex `x^i_pos`.
    pub fn vertex(&self, i: usize, pos: usize) -> VertexId {
        let p = self.path(i);
        if pos == 0 {
            self.x
        } else if pos == 2 * p.n + 1 {
            self.y
        } else {
            VertexId(p.first_vertex + pos - 1)
        }
    }

    /// Edges `x_{2k} x_{2k+1}` (`parity = 0`) or `x_{2k-1} x_{2k}` (`parity = 1`) of `P_i`.
    fn edges_of_parity(&self, i: usize, parity: usize) -> impl Iterator<Item = EdgeId> + '_ {
        let p = self.path(i);
        (parity..p.edge_count()).step_by(2).map(move |pos| p.edge(pos))
    }

    pub fn odd_edges(&self, i: usize) -> Vec<EdgeId> {
        self.edges_of_parity(i, 0).collect()
    }

    pub fn even_edges(&self, i: usize) -> Vec<EdgeId> {
        self.edges_of_parity(i, 1).collect()
    }

    /// The perfect matching using the odd edges of `P_i` and the even edges
    /// of every other path.
    pub fn perfect_through(&self, i: usize) -> Matching {
        let mut edges = self.odd_edges(i);
        for j in 1..=self.depth {
            if j != i {
                edges.extend(self.even_edges(j));
            }
        }
        Matching::from_edges(&self.graph, edges).expect("disjoint by construction")
    }

    pub fn sum(&self, edges: impl IntoIterator<Item = EdgeId>) -> LinearA {
        let (mut c0, mut c1) = (0i64, 0i64);
        for e in edges {
            let (a0, a1) = self.weight(e).coefficients();
            c0 += a0;
            c1 += a1;
        }
        LinearA::from_ints(c0, c1)
    }

    /// `odd(P_i) - even(P_i)`.
    pub fn difference(&self, i: usize) -> LinearA {
        self.sum(self.odd_edges(i)) - self.sum(self.even_edges(i))
    }
}

fn vertex_name(i: usize, pos: usize) -> String {
    format!("p{i}_{pos}")
}

/// Builds `P_1, …, P_depth` with truncation `depth + 4` and the budget from
/// the environment.
pub fn build_prefix(depth: usize) -> Result<CounterexamplePrefix, CounterexampleError> {
    build_prefix_with(depth, depth as u32 + 4, edge_budget())
}

pub fn build_prefix_with(depth: usize, truncation: u32, budget: u64) -> Result<CounterexamplePrefix, CounterexampleError> {
    if depth == 0 {
        return Err(CounterexampleError::ZeroDepth);
    }
    let n = sequence(depth);
    let needed: BigInt = n.iter().map(|ni| BigInt::from(2) * ni + 1).sum();
    if needed > BigInt::from(budget) {
        return Err(CounterexampleError::BudgetExceeded { needed, budget });
    }
    let sizes: Vec<usize> = n.iter().map(|ni| ni.to_usize().expect("within budget")).collect();

    let decider = Decider::new(truncation.max(1));
    let built = crate::batch::map(&sizes, |&ni| {
        let mut d = decider.clone();
        odd_weights(ni, &mut d).map(|w| (w, d.truncation()))
    });
    let mut paths = Vec::with_capacity(depth);
    let mut used = decider.truncation();
    let (mut first_edge, mut first_vertex) = (0, 2);
    for (idx, result) in built.into_iter().enumerate() {
        let (odd, k) = result?;
        used = used.max(k);
        paths.push(PrefixPath { index: idx + 1, n: sizes[idx], odd, first_edge, first_vertex });
        first_edge += 2 * sizes[idx] + 1;
        first_vertex += 2 * sizes[idx];
    }

    let a_lo = IrrationalA::new(used).lo;
    let mut graph = Graph::new();
    let x = graph.add_vertex("x").expect("fresh");
    let y = graph.add_vertex("y").expect("fresh");
    for p in &paths {
        let mut prev = x;
        for pos in 0..p.edge_count() {
            let next = if pos + 1 == p.edge_count() {
                y
            } else {
                graph.add_vertex(vertex_name(p.index, pos + 1)).expect("fresh")
            };
            let form = p.weight(pos).form();
            graph.add_edge(prev, next, &form.c0 + &form.c1 * &a_lo).expect("distinct endpoints");
            prev = next;
        }
    }
    Ok(CounterexamplePrefix { depth, n, paths, truncation: used, graph, x, y })
}

/// One checked inequality `lower < value < upper` (or with `≤` on the lower
/// side), with the enclosure of `value` and the verdict.
#[derive(Clone, Debug)]
pub struct IntervalFact {
    pub name: String,
    pub value: LinearA,
    pub lower: Option<LinearA>,
    pub upper: Option<LinearA>,
    pub lower_inclusive: bool,
    pub holds: bool,
    pub enclosure: (Rational, Rational),
}

impl IntervalFact {
    fn check(
        name: String,
        value: LinearA,
        lower: Option<LinearA>,
        upper: Option<LinearA>,
        lower_inclusive: bool,
        d: &mut Decider,
    ) -> Result<Self, UndecidedError> {
        let mut holds = true;
        if let Some(l) = &lower {
            let s = d.sign(&(value.clone() - l.clone()))?;
            holds &= s == Ordering::Greater || (lower_inclusive && s == Ordering::Equal);
        }
        if let Some(u) = &upper {
            holds &= d.sign(&(u.clone() - value.clone()))? == Ordering::Greater;
        }
        let enclosure = d.enclosure().bounds(&value);
        Ok(IntervalFact { name, value, lower, upper, lower_inclusive, holds, enclosure })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "value": self.value.to_string(),
            "lower": self.lower.as_ref().map(|l| l.to_string()),
            "lower_inclusive": self.lower_inclusive,
            "upper": self.upper.as_ref().map(|u| u.to_string()),
            "enclosure": [format_rational(&self.enclosure.0), format_rational(&self.enclosure.1)],
            "holds": self.holds,
        })
    }
}

/// Per-path results of the prefix scans.
#[derive(Clone, Debug)]
pub struct PathReport {
    pub index: usize,
    pub edges: usize,
    /// Vertex positions `0..=2n+1` scanned.
    pub positions: usize,
    /// Positions where `1 - a ≤ Σ odd - k(2a-1) < 1` failed.
    pub even_odd_failures: usize,
    /// Even positions where `odd - even < 1` failed.
    pub even_length_failures: usize,
    /// Odd positions where `odd - even ≥ a` failed.
    pub odd_length_failures: usize,
    /// Odd edges of weight `a` before the last odd edge.
    pub k: BigInt,
    pub k_expected: BigInt,
    pub last_odd: PathWeight,
    pub even_sum: LinearA,
    pub even_sum_expected: LinearA,
    pub sandwich: IntervalFact,
}

impl PathReport {
    pub fn holds(&self) -> bool {
        self.even_odd_failures == 0
            && self.even_length_failures == 0
            && self.odd_length_failures == 0
            && self.k == self.k_expected
            && self.last_odd == PathWeight::TwoA
            && self.even_sum == self.even_sum_expected
            && self.sandwich.holds
    }

    pub fn to_json(&self) -> Value {
        json!({
            "path": self.index,
            "edges": self.edges,
            "positions_checked": self.positions,
            "even_odd_failures": self.even_odd_failures,
            "even_length_failures": self.even_length_failures,
            "odd_length_failures": self.odd_length_failures,
            "k": self.k.to_string(),
            "k_expected": self.k_expected.to_string(),
            "last_odd_weight": self.last_odd.label(),
            "even_sum": self.even_sum.to_string(),
            "even_sum_expected": self.even_sum_expected.to_string(),
            "sandwich": self.sandwich.to_json(),
            "holds": self.holds(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub depth: usize,
    pub truncation: u32,
    pub enclosure: (Rational, Rational),
    pub n: Vec<BigInt>,
    pub almost_integral: Vec<IntervalFact>,
    pub paths: Vec<PathReport>,
    /// `odd(P_j) - even(P_j) < odd(P_{j+1}) - even(P_{j+1})` for `j < depth`.
    pub increasing: Vec<IntervalFact>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.almost_integral.iter().all(|f| f.holds)
            && self.paths.iter().all(PathReport::holds)
            && self.increasing.iter().all(|f| f.holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "note": "finite prefix: every inequality is decided exactly for the listed indices \
                     and positions; almost-integrality is checked index by index, not proved for all i",
            "depth": self.depth,
            "truncation": self.truncation,
            "a_enclosure": [format_rational(&self.enclosure.0), format_rational(&self.enclosure.1)],
            "n": self.n.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "almost_integral": self.almost_integral.iter().map(IntervalFact::to_json).collect::<Vec<_>>(),
            "paths": self.paths.iter().map(PathReport::to_json).collect::<Vec<_>>(),
            "increasing_differences": self.increasing.iter().map(IntervalFact::to_json).collect::<Vec<_>>(),
            "holds": self.all_hold(),
        })
    }
}

fn c(r: Rational) -> LinearA {
    LinearA::constant(r)
}

fn scan_path(p: &PrefixPath, d: &mut Decider) -> Result<PathReport, UndecidedError> {
    let j = p.index as i64;
    let (mut odd0, mut odd1, mut even0, mut even1) = (0i64, 0i64, 0i64, 0i64);
    let (mut eo_fail, mut el_fail, mut ol_fail) = (0, 0, 0);
    let mut k_count = 0u64;
    for pos in 0..=p.edge_count() {
        // odd(x P x_pos) - even(x P x_pos)
        let (g0, g1) = (odd0 - even0, odd1 - even1);
        if pos % 2 == 0 {
            if d.sign_int(1 - g0, -g1)? != Ordering::Greater {
                el_fail += 1;
            }
            // pos = 2k: odd edges 0..k against k(2a - 1), which is the even sum
            if pos <= 2 * p.n {
                let lower = d.sign_int(g0 - 1, g1 + 1)?;
                if lower == Ordering::Less || d.sign_int(1 - g0, -g1)? != Ordering::Greater {
                    eo_fail += 1;
                }
            }
        } else if d.sign_int(g0, g1 - 1)? == Ordering::Less {
            ol_fail += 1;
        }
        if pos < p.edge_count() {
            let w = p.weight(pos);
            let (c0, c1) = w.coefficients();
            if pos % 2 == 0 {
                odd0 += c0;
                odd1 += c1;
                if w == PathWeight::A && pos < 2 * p.n {
                    k_count += 1;
                }
            } else {
                even0 += c0;
                even1 += c1;
            }
        }
    }
    let two_a = LinearA::from_ints(0, 2);
    let difference = LinearA::from_ints(odd0 - even0, odd1 - even1);
    let sandwich = IntervalFact::check(
        format!("2a - 10^-{j} < odd(P_{j}) - even(P_{j}) < 2a - 10^-{}", j + 1),
        difference,
        Some(two_a.clone() - c(pow10_rational(-j))),
        Some(two_a - c(pow10_rational(-(j + 1)))),
        false,
        d,
    )?;
    let n = p.n as i64;
    Ok(PathReport {
        index: p.index,
        edges: p.edge_count(),
        positions: p.edge_count() + 1,
        even_odd_failures: eo_fail,
        even_length_failures: el_fail,
        odd_length_failures: ol_fail,
        k: BigInt::from(k_count),
        k_expected: pow10((j * (j + 1) / 2 - 1) as u32),
        last_odd: p.odd[p.n],
        even_sum: LinearA::from_ints(even0, even1),
        even_sum_expected: LinearA::from_ints(-n, 2 * n),
        sandwich,
    })
}

/// Decides every inequality of the construction on `prefix`: almost
/// integrality of `10^{i(i+1)/2 - 1} a` up to `depth + 3`, the running
/// bounds at every vertex of every path, the count of weight-`a` edges, the
/// final odd edge, the even sums, and the sandwich bounds with their
/// increasing order.
pub fn verify_inequalities(prefix: &CounterexamplePrefix) -> Result<InequalityReport, CounterexampleError> {
    let mut d = Decider::new(prefix.truncation);
    let top = prefix.depth + 3;
    let n = sequence(top);
    let mut almost_integral = Vec::with_capacity(top);
    for (idx, ni) in n.iter().enumerate() {
        let i = idx as i64 + 1;
        let scale = pow10_rational(i * (i + 1) / 2 - 1);
        let value = LinearA::a() * &scale - c(Rational::from_integer(ni.clone()));
        almost_integral.push(IntervalFact::check(
            format!("10^-{} < 10^{} a - n_{i} < 10^-{i}", i + 1, i * (i + 1) / 2 - 1),
            value,
            Some(c(pow10_rational(-(i + 1)))),
            Some(c(pow10_rational(-i))),
            false,
            &mut d,
        )?);
    }

    let scans = crate::batch::map(&prefix.paths, |p| {
        let mut local = d.clone();
        scan_path(p, &mut local).map(|r| (r, local.truncation()))
    });
    let mut paths = Vec::with_capacity(scans.len());
    let mut truncation = d.truncation();
    for s in scans {
        let (r, k) = s?;
        truncation = truncation.max(k);
        paths.push(r);
    }

    let mut increasing = Vec::new();
    for j in 1..prefix.depth {
        increasing.push(IntervalFact::check(
            format!("odd(P_{j}) - even(P_{j}) < odd(P_{}) - even(P_{})", j + 1, j + 1),
            prefix.difference(j + 1) - prefix.difference(j),
            Some(LinearA::zero()),
            None,
            false,
            &mut d,
        )?);
    }
    truncation = truncation.max(d.truncation());
    let a = IrrationalA::new(truncation);
    Ok(InequalityReport {
        depth: prefix.depth,
        truncation,
        enclosure: (a.lo, a.hi),
        n,
        almost_integral,
        paths,
        increasing,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImprovementCase {
    /// Two exposed vertices on one path joined by a matched stretch.
    SubpathSwitch,
    /// `x` and `y` matched into different paths.
    CrossPathSwitch,
    /// Perfect matching through `P_i`, moved to `P_{i+1}`.
    PathSwap,
}

impl ImprovementCase {
    pub fn label(self) -> &'static str {
        match self {
            ImprovementCase::SubpathSwitch => "subpath_switch",
            ImprovementCase::CrossPathSwitch => "cross_path_switch",
            ImprovementCase::PathSwap => "path_swap",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PrefixImprovement {
    pub case: ImprovementCase,
    pub paths: Vec<usize>,
    /// Edges of the switched path, in order along it.
    pub switched: Vec<EdgeId>,
    pub matching: Matching,
    /// `w[N \ M] - w[M \ N]`.
    pub gain: LinearA,
    pub gain_enclosure: (Rational, Rational),
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Improvement {
    Improves(PrefixImprovement),
    /// Perfect through the last path of the prefix: the improving swap uses
    /// the next path, which the prefix does not contain.
    PrefixOptimal { path: usize },
}

impl Improvement {
    pub fn to_json(&self, prefix: &CounterexamplePrefix) -> Value {
        match self {
            Improvement::PrefixOptimal { path } => json!({
                "result": "prefix_optimal",
                "path": path,
                "note": "an improvement exists beyond the prefix, through the next path",
            }),
            Improvement::Improves(imp) => {
                let g = prefix.graph();
                json!({
                    "result": "improvement",
                    "case": imp.case.label(),
                    "paths": imp.paths,
                    "switched": imp.switched.iter().map(|&e| {
                        let (u, v) = g.endpoints(e);
                        json!([g.name(u), g.name(v)])
                    }).collect::<Vec<_>>(),
                    "gain": imp.gain.to_string(),
                    "gain_enclosure": [format_rational(&imp.gain_enclosure.0), format_rational(&imp.gain_enclosure.1)],
                    "matching": imp.matching.endpoint_pairs(g),
                })
            }
        }
    }
}

/// Finds the improving switch the case analysis prescribes for `m`:
/// two exposed vertices on one path give a subpath switch; `x` and `y`
/// matched into different paths give a switch through `x`; a perfect matching
/// through `P_i` moves to `P_{i+1}` when `i < depth`.
pub fn demonstrate_improvement(prefix: &CounterexamplePrefix, m: &Matching) -> Result<Improvement, CounterexampleError> {
    let g = prefix.graph();
    if m.edges().any(|e| e.0 >= g.edge_count()) || m.exposed().len() + 2 * m.len() != g.vertex_count() {
        return Err(CounterexampleError::Matching("matching is not on the prefix graph".into()));
    }
    let switch = |case: ImprovementCase, paths: Vec<usize>, switched: Vec<EdgeId>| {
        let mut n = m.clone();
        n.switch(g, &switched).map_err(|e| CounterexampleError::Matching(e.to_string()))?;
        let gain = prefix.sum(n.edges().filter(|e| !m.contains(*e))) - prefix.sum(m.edges().filter(|e| !n.contains(*e)));
        let mut d = Decider::new(prefix.truncation);
        if d.sign(&gain)? != Ordering::Greater {
            return Err(CounterexampleError::NotImproving(paths));
        }
        let gain_enclosure = d.enclosure().bounds(&gain);
        Ok(Improvement::Improves(PrefixImprovement { case, paths, switched, matching: n, gain, gain_enclosure }))
    };

    for p in &prefix.paths {
        let exposed: Vec<usize> =
            (0..=p.edge_count()).filter(|&pos| !m.covers(prefix.vertex(p.index, pos))).collect();
        if let Some(w) = exposed.windows(2).next() {
            let edges = (w[0]..w[1]).map(|pos| p.edge(pos)).collect();
            return switch(ImprovementCase::SubpathSwitch, vec![p.index], edges);
        }
    }

    let path_of = |v: VertexId| m.mate_edge(v).map(|e| prefix.locate(e).0);
    let (Some(i), Some(j)) = (path_of(prefix.x), path_of(prefix.y)) else {
        unreachable!("an exposed x or y leaves a second exposed vertex on the path matching the other end")
    };
    if i != j {
        // x^i_m is the exposed vertex of P_i, x^j_n the one of P_j
        let pi = prefix.path(i);
        let pj = prefix.path(j);
        let mi = (1..=2 * pi.n).find(|&pos| !m.covers(prefix.vertex(i, pos))).expect("P_i has an exposed vertex");
        let nj = (1..=2 * pj.n).find(|&pos| !m.covers(prefix.vertex(j, pos))).expect("P_j has an exposed vertex");
        let mut edges: Vec<EdgeId> = (0..mi).rev().map(|pos| pi.edge(pos)).collect();
        edges.extend((0..nj).map(|pos| pj.edge(pos)));
        return switch(ImprovementCase::CrossPathSwitch, vec![i, j], edges);
    }
    if i == prefix.depth {
        return Ok(Improvement::PrefixOptimal { path: i });
    }
    let mut edges: Vec<EdgeId> = (0..prefix.path(i).edge_count()).rev().map(|pos| prefix.path(i).edge(pos)).collect();
    edges.extend((0..prefix.path(i + 1).edge_count()).map(|pos| prefix.path(i + 1).edge(pos)));
    switch(ImprovementCase::PathSwap, vec![i, i + 1], edges)
}
