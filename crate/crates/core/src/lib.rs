//! Strongly maximal and strongly w-maximal matchings.
//!
//! * [`graph`]: multigraphs with exact rational weights, matchings, and
//!   symmetric-difference decomposition.
//! * [`alternating`]: classification of alternating paths and exact checks
//!   for strong maximality, plain and weighted.
//! * [`gallai_edmonds`]: the blossom engine, the Gallai–Edmonds decomposition
//!   and strongly maximal matchings built from it.
//! * [`laminar`]: laminar families of vertex sets with half-integral
//!   potentials.
//! * [`primal_dual`]: the contraction procedure producing strongly w-minimal
//!   perfect or almost perfect matchings of complete graphs, with
//!   certificates.
//! * [`reduction`]: strongly w-maximal matchings of arbitrary finite graphs
//!   through the complete-graph procedure.
//! * [`counterexample`]: the infinite path family on which every matching is
//!   improvable.
//! * [`oracle`]: brute-force reference answers for small instances.
//! * [`batch`]: solving and verifying many instances at once.

pub mod alternating;
pub mod batch;
pub mod counterexample;
pub mod gallai_edmonds;
pub mod graph;
pub mod io;
pub mod laminar;
pub mod oracle;
pub mod primal_dual;
pub mod reduction;

pub use graph::{EdgeId, Graph, HalfInt, Matching, Rational, VertexId};
