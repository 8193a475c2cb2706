//! Dual certificates for the output of the procedure and their independent
//! verification.
//!
//! A certificate fixes a laminar family with potentials, the affine map
//! `w' = scale·w + shift` onto integer weights, the number of steps taken and,
//! for an almost perfect matching, the exposed vertex. Verification rebuilds
//! the normalized weights and checks tightness, undersaturation, sign
//! conditions, how the matching meets every set, and the energy of the
//! exposed vertex.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, HalfInt, Matching, Rational, VertexId};
use crate::laminar::{LaminarError, LaminarFamily, SetId};

#[derive(Clone, Debug)]
pub struct DualCertificate {
    pub family: LaminarFamily,
    pub matching: Matching,
    pub scale: BigInt,
    pub shift: BigInt,
    pub steps: usize,
    pub exposed: Option<VertexId>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate field {0:?} is missing or malformed")]
    Field(&'static str),
    #[error(transparent)]
    Family(#[from] LaminarError),
    #[error("certificate matching: {0}")]
    Matching(String),
}

/// One failed condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonIntegralWeight(EdgeId),
    NotTight(EdgeId),
    Oversaturated(EdgeId),
    NegativePotential(SetId),
    CrossedTwice(SetId),
    /// `|M ∩ δ(U)| = 0` while `⊔U` does not hold the exposed vertex.
    Unmatched(SetId),
    /// `⊔U` holds the exposed vertex but a matching edge leaves it.
    ExposedSetMatched(SetId),
    NotPerfectOrAlmostPerfect,
    ExposedVertexMismatch,
    ExposedEnergy { expected: HalfInt, found: HalfInt },
    ExposedNotMaximal(VertexId),
    MatchingMismatch,
    Laminar(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonIntegralWeight(e) => write!(f, "edge {} has a non-integral normalized weight", e.0),
            Violation::NotTight(e) => write!(f, "matching edge {} is not tight", e.0),
            Violation::Oversaturated(e) => write!(f, "edge {} is oversaturated", e.0),
            Violation::NegativePotential(s) => write!(f, "set {} of size >= 3 has negative potential", s.0),
            Violation::CrossedTwice(s) => write!(f, "set {} is left by more than one matching edge", s.0),
            Violation::Unmatched(s) => write!(f, "set {} is left by no matching edge", s.0),
            Violation::ExposedSetMatched(s) => write!(f, "set {} holds the exposed vertex but is matched out", s.0),
            Violation::NotPerfectOrAlmostPerfect => write!(f, "matching is neither perfect nor almost perfect"),
            Violation::ExposedVertexMismatch => write!(f, "declared exposed vertex is not the exposed vertex"),
            Violation::ExposedEnergy { expected, found } => {
                write!(f, "exposed vertex has energy {found}, expected {expected}")
            }
            Violation::ExposedNotMaximal(v) => write!(f, "vertex {} has higher energy than the exposed vertex", v.0),
            Violation::MatchingMismatch => write!(f, "certificate matching differs from the checked matching"),
            Violation::Laminar(m) => write!(f, "family is not laminar: {m}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateReport {
    pub violations: Vec<Violation>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl DualCertificate {
    pub fn to_json(&self, g: &Graph) -> Value {
        let pairs: Vec<Value> = self.matching.endpoint_pairs(g).into_iter().map(|(a, b)| json!([a, b])).collect();
        json!({
            "family": self.family.to_json(g),
            "matching": pairs,
            "edge_ids": self.matching.edges().map(|e| e.0).collect::<Vec<_>>(),
            "scale": self.scale.to_string(),
            "shift": self.shift.to_string(),
            "steps": self.steps,
            "exposed": self.exposed.map(|v| g.name(v).to_string()),
        })
    }

    pub fn from_json(g: &Graph, value: &Value) -> Result<Self, CertificateError> {
        let family = LaminarFamily::from_json(g, value.get("family").ok_or(CertificateError::Field("family"))?)?;
        let edge_ids = value
            .get("edge_ids")
            .and_then(Value::as_array)
            .ok_or(CertificateError::Field("edge_ids"))?
            .iter()
            .map(|e| e.as_u64().map(|e| EdgeId(e as usize)).filter(|e| e.0 < g.edge_count()))
            .collect::<Option<Vec<_>>>()
            .ok_or(CertificateError::Field("edge_ids"))?;
        let matching = Matching::from_edges(g, edge_ids).map_err(|e| CertificateError::Matching(e.to_string()))?;
        let big = |key: &'static str| {
            value
                .get(key)
                .and_then(Value::as_str)
                .and_then(|s| s.parse::<BigInt>().ok())
                .ok_or(CertificateError::Field(key))
        };
        let steps = value.get("steps").and_then(Value::as_u64).ok_or(CertificateError::Field("steps"))? as usize;
        let exposed = match value.get("exposed") {
            None | Some(Value::Null) => None,
            Some(Value::String(name)) => Some(g.vertex_by_name(name).ok_or(CertificateError::Field("exposed"))?),
            Some(_) => return Err(CertificateError::Field("exposed")),
        };
        Ok(DualCertificate { family, matching, scale: big("scale")?, shift: big("shift")?, steps, exposed })
    }
}

/// Checks `m` against `cert` on `g` (original weights). Returns every
/// violation found rather than stopping at the first.
pub fn verify_certificate(g: &Graph, m: &Matching, cert: &DualCertificate) -> CertificateReport {
    let mut out = Vec::new();
    let fam = &cert.family;
    if m.edge_set() != cert.matching.edge_set() {
        out.push(Violation::MatchingMismatch);
    }
    if let Err(e) = fam.check_laminar().and_then(|_| fam.check_partition()) {
        out.push(Violation::Laminar(e));
        return CertificateReport { violations: out };
    }

    let scale = Rational::from_integer(cert.scale.clone());
    let shift = Rational::from_integer(cert.shift.clone());
    for (i, e) in g.edges().iter().enumerate() {
        let id = EdgeId(i);
        let w = &e.weight * &scale + &shift;
        if !w.is_integer() {
            out.push(Violation::NonIntegralWeight(id));
            continue;
        }
        let sum = fam.boundary_sum(e.u, e.v).to_rational();
        if sum > w {
            out.push(Violation::Oversaturated(id));
        }
        if m.contains(id) && sum != w {
            out.push(Violation::NotTight(id));
        }
    }

    let exposed = m.exposed();
    let almost = m.is_almost_perfect();
    if !m.is_perfect() && !almost {
        out.push(Violation::NotPerfectOrAlmostPerfect);
    }
    if exposed.len() == 1 && cert.exposed != Some(exposed[0]) || exposed.is_empty() && cert.exposed.is_some() {
        out.push(Violation::ExposedVertexMismatch);
    }

    let mut inside = vec![false; g.vertex_count()];
    for s in fam.sets() {
        let flat = fam.flatten(s);
        if flat.len() >= 3 && fam.potential(s) < HalfInt::ZERO {
            out.push(Violation::NegativePotential(s));
        }
        for v in &flat {
            inside[v.0] = true;
        }
        let crossing = m
            .edges()
            .filter(|&e| {
                let (a, b) = g.endpoints(e);
                inside[a.0] != inside[b.0]
            })
            .count();
        let holds_exposed = almost && flat.contains(&exposed[0]);
        match (crossing, holds_exposed) {
            (0, false) => out.push(Violation::Unmatched(s)),
            (0, true) | (1, false) => {}
            (1, true) => out.push(Violation::ExposedSetMatched(s)),
            _ => out.push(Violation::CrossedTwice(s)),
        }
        for v in &flat {
            inside[v.0] = false;
        }
    }

    if almost {
        let x = exposed[0];
        let px = fam.energy(x);
        let expected = HalfInt::from_doubled(cert.steps as i64);
        if px != expected || px < HalfInt::ZERO {
            out.push(Violation::ExposedEnergy { expected, found: px });
        }
        if let Some(v) = g.vertices().find(|&v| fam.energy(v) > px) {
            out.push(Violation::ExposedNotMaximal(v));
        }
    }
    CertificateReport { violations: out }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "certificate holds");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
