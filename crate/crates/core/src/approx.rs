//! Covering a graph with few λ-subgraphs, and the uniform strategy over them.
//!
//! [`cover_tree`] walks a rooted tree depth-first (children in ascending
//! order) and pours every visited vertex into the current block. A new block
//! only starts at an uncovered vertex, which keeps blocks distinct. Once the
//! whole tree is covered, a last incomplete block is topped up by a fresh
//! depth-first walk from its smallest vertex until it holds λ vertices.
//!
//! Every vertex is covered at most `degree(v)` times except for at most
//! `λ - 1` vertices picked up by the top-up walk, so there are at most
//! `(2n - 3)/λ + 1` blocks and the uniform strategy over them loses at most
//! a factor `2 + (λ - 3)/n` against the best defense.

use std::sync::Arc;

use crate::error::{CsdError, Result};
use crate::graph::{spanning_tree, Graph, Tree};
use crate::ratio::Rational;
use crate::strategy::DefenseStrategy;
use crate::subgraphs::{ActionSet, LambdaSubgraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCollection {
    tree: Tree,
    lambda: usize,
    subgraphs: Vec<LambdaSubgraph>,
}

impl CoverCollection {
    /// Blocks in the order the walk produced them.
    pub fn subgraphs(&self) -> &[LambdaSubgraph] {
        &self.subgraphs
    }

    pub fn len(&self) -> usize {
        self.subgraphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgraphs.is_empty()
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn source_tree(&self) -> &Tree {
        &self.tree
    }

    /// Number of blocks containing each vertex.
    pub fn coverage(&self) -> Vec<usize> {
        let mut counts = vec![0; self.tree.n()];
        for s in &self.subgraphs {
            for &v in s.vertices() {
                counts[v] += 1;
            }
        }
        counts
    }

    /// Blocks one per line, then `vertex coverage` lines after a `#coverage` marker.
    pub fn to_lines(&self) -> String {
        let mut out: String = self.subgraphs.iter().map(|b| format!("{b}\n")).collect();
        out.push_str("#coverage\n");
        for (v, c) in self.coverage().iter().enumerate() {
            out.push_str(&format!("{v} {c}\n"));
        }
        out
    }
}

/// Next vertex of the depth-first walk: the smallest uncovered child, else the parent.
fn step(tree: &Tree, covered: &[bool], v: usize) -> Option<usize> {
    tree.children(v)
        .iter()
        .copied()
        .find(|&c| !covered[c])
        .or_else(|| tree.parent(v))
}

struct Block {
    vertices: Vec<usize>,
    member: Vec<bool>,
}

impl Block {
    fn new(n: usize) -> Self {
        Block {
            vertices: Vec::new(),
            member: vec![false; n],
        }
    }

    fn insert(&mut self, v: usize) {
        if !self.member[v] {
            self.member[v] = true;
            self.vertices.push(v);
        }
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn finish(mut self) -> LambdaSubgraph {
        self.vertices.sort_unstable();
        LambdaSubgraph::from_sorted_unchecked(self.vertices)
    }
}

/// Covers `tree` with distinct λ-subtrees, walking from the tree's root.
pub fn cover_tree(tree: &Tree, lambda: usize) -> Result<CoverCollection> {
    let n = tree.n();
    if lambda == 0 || lambda > n {
        return Err(CsdError::LambdaOutOfRange { lambda, n });
    }
    let mut covered = vec![false; n];
    let mut covered_count = 0;
    let mut cursor = tree.root();
    let mut blocks = Vec::new();
    let mut last = None;

    while covered_count < n {
        while covered[cursor] {
            cursor = step(tree, &covered, cursor).expect("an uncovered vertex remains");
        }
        let mut block = Block::new(n);
        loop {
            block.insert(cursor);
            if !covered[cursor] {
                covered[cursor] = true;
                covered_count += 1;
            }
            let next = step(tree, &covered, cursor);
            if let Some(w) = next {
                cursor = w;
            }
            if block.len() == lambda || next.is_none() {
                break;
            }
        }
        if block.len() == lambda {
            blocks.push(block.finish());
        } else {
            last = Some(block);
        }
    }

    if let Some(mut block) = last {
        let start = *block.vertices.iter().min().expect("blocks start nonempty");
        let walk_tree = tree.rerooted(start)?;
        let mut visited = vec![false; n];
        let mut cursor = start;
        loop {
            block.insert(cursor);
            visited[cursor] = true;
            if block.len() == lambda {
                break;
            }
            cursor = step(&walk_tree, &visited, cursor).expect("the tree has at least lambda vertices");
        }
        blocks.push(block.finish());
    }

    Ok(CoverCollection {
        tree: tree.clone(),
        lambda,
        subgraphs: blocks,
    })
}

/// The cover over a breadth-first spanning tree and the uniform strategy on it.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxStrategy {
    pub cover: CoverCollection,
    pub strategy: DefenseStrategy,
    /// Minimum vertex probability under `strategy`.
    pub guaranteed: Rational,
}

pub fn approx_defense_strategy(graph: &Graph, lambda: usize) -> Result<ApproxStrategy> {
    let tree = spanning_tree(graph);
    let cover = cover_tree(&tree, lambda)?;
    let actions = ActionSet::from_subgraphs(graph, lambda, cover.subgraphs.clone())?;
    let strategy = DefenseStrategy::uniform(Arc::new(actions))?;
    let guaranteed = strategy.vertex_probabilities().min().clone();
    Ok(ApproxStrategy {
        cover,
        strategy,
        guaranteed,
    })
}

/// Fraction of attackers the approximate strategy catches in expectation against any attack.
pub fn guaranteed_catch_fraction(graph: &Graph, lambda: usize) -> Result<Rational> {
    Ok(approx_defense_strategy(graph, lambda)?.guaranteed)
}

/// `2 + (λ - 3)/n`.
pub fn approximation_factor(n: usize, lambda: usize) -> Rational {
    Rational::from_integer(2.into()) + Rational::new((lambda as i64 - 3).into(), (n as i64).into())
}

/// `(2n - 3)/λ + 1`, the real-valued bound on the number of blocks.
pub fn block_bound(n: usize, lambda: usize) -> Rational {
    Rational::new((2 * n as i64 - 3).into(), (lambda as i64).into()) + Rational::from_integer(1.into())
}
