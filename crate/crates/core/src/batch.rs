//! Many independent instances at once.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! thread pool; without it everything runs in order on the calling thread.
//! Results always come back in input order.

use crate::graph::Graph;
use crate::primal_dual::{self, CertificateReport, RunOptions, Solution, SolveError};

/// `items.map(f)`, in parallel when the feature is enabled.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

pub fn solve_all(graphs: &[Graph], options: RunOptions) -> Vec<Result<Solution, SolveError>> {
    map(graphs, |g| primal_dual::run_with(g, options))
}

pub fn solve_all_sequential(graphs: &[Graph], options: RunOptions) -> Vec<Result<Solution, SolveError>> {
    map_sequential(graphs, |g| primal_dual::run_with(g, options))
}

/// Checks each solution's certificate against its graph.
pub fn verify_all(instances: &[(Graph, Solution)]) -> Vec<CertificateReport> {
    map(instances, |(g, s)| primal_dual::verify_certificate(g, &s.matching, &s.certificate))
}
