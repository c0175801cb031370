//! Per-instance data parallelism over corpora.
//!
//! With the `parallel` feature (on by default) [`par_map`] fans out over a
//! rayon pool; without it, it runs in order on the calling thread. Results
//! are always returned in input order.

use crate::error::Result;
use crate::graph::Graph;
use crate::solver::{maxmin_probability, MaxminValue};

/// Maps `f` over `items`, in parallel when the `parallel` feature is enabled.
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq_map(items, f)
    }
}

pub fn seq_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// A graph paired with the defender's λ.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    pub lambda: usize,
}

pub fn solve_corpus(instances: &[Instance], theta_cap: usize) -> Vec<Result<MaxminValue>> {
    par_map(instances, |i| maxmin_probability(&i.graph, i.lambda, theta_cap))
}

pub fn solve_corpus_sequential(instances: &[Instance], theta_cap: usize) -> Vec<Result<MaxminValue>> {
    seq_map(instances, |i| maxmin_probability(&i.graph, i.lambda, theta_cap))
}
