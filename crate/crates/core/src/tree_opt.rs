//! Defense-optimality of trees.
//!
//! A tree is defense-optimal exactly when it splits into `n / λ` disjoint
//! λ-subtrees. The check walks the tree bottom-up carrying, for each vertex,
//! the set of not-yet-assigned vertices hanging below it. That residual is
//! cut off as a block as soon as it reaches λ vertices; a residual larger
//! than λ means some vertex would need two blocks.

use std::sync::Arc;

use crate::error::Result;
use crate::graph::Tree;
use crate::ratio::Rational;
use crate::strategy::DefenseStrategy;
use crate::subgraphs::{ActionSet, LambdaSubgraph};

/// `n / λ` pairwise disjoint λ-subtrees covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    tree: Tree,
    lambda: usize,
    blocks: Vec<LambdaSubgraph>,
}

impl TreePartition {
    pub fn blocks(&self) -> &[LambdaSubgraph] {
        &self.blocks
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// One block per line as a sorted vertex list.
    pub fn to_lines(&self) -> String {
        self.blocks.iter().map(|b| format!("{b}\n")).collect()
    }
}

/// Returns the partition when the tree is defense-optimal, `None` otherwise.
pub fn check_tree_defense_optimal(tree: &Tree, lambda: usize) -> Result<Option<TreePartition>> {
    let n = tree.n();
    if lambda == 0 || lambda > n {
        return Err(crate::error::CsdError::LambdaOutOfRange { lambda, n });
    }
    if !n.is_multiple_of(lambda) {
        return Ok(None);
    }
    let rooted = if tree.root() == 0 { tree.clone() } else { tree.rerooted(0)? };

    let mut residual: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut blocks = Vec::with_capacity(n / lambda);
    for v in rooted.post_order() {
        let mut pending = vec![v];
        for &c in rooted.children(v) {
            pending.append(&mut residual[c]);
        }
        if pending.len() > lambda {
            return Ok(None);
        }
        if pending.len() == lambda {
            pending.sort_unstable();
            blocks.push(LambdaSubgraph::from_sorted_unchecked(pending));
        } else {
            residual[v] = pending;
        }
    }
    if !residual[0].is_empty() {
        return Ok(None);
    }
    blocks.sort_unstable();
    Ok(Some(TreePartition {
        tree: rooted,
        lambda,
        blocks,
    }))
}

/// Uniform strategy over the blocks: every vertex is covered with probability λ/n.
pub fn optimal_tree_strategy(partition: &TreePartition) -> Result<DefenseStrategy> {
    let actions = ActionSet::from_subgraphs(partition.tree.graph(), partition.lambda, partition.blocks.clone())?;
    DefenseStrategy::uniform(Arc::new(actions))
}

/// λ/n as the guaranteed probability of a defense-optimal tree.
pub fn optimal_probability(partition: &TreePartition) -> Rational {
    Rational::new(partition.lambda.into(), partition.tree.n().into())
}
