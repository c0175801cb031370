//! The defender's action set: connected induced subgraphs on exactly λ vertices.

use std::collections::HashMap;
use std::fmt;

use crate::error::{CsdError, Result};
use crate::graph::Graph;

/// Default guardrail on the number of enumerated subgraphs.
pub const DEFAULT_THETA_CAP: usize = 5_000_000;

/// Strictly ascending vertex list of a connected induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LambdaSubgraph(Vec<usize>);

impl LambdaSubgraph {
    /// Sorts `vertices` and checks they induce a connected subgraph of `graph`.
    pub fn new(graph: &Graph, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(CsdError::InvalidStrategy(format!(
                "repeated vertex in subgraph {vertices:?}"
            )));
        }
        if !graph.is_connected_subset(&vertices)? {
            return Err(CsdError::InvalidStrategy(format!(
                "subgraph {vertices:?} is not connected"
            )));
        }
        Ok(LambdaSubgraph(vertices))
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        LambdaSubgraph(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Display for LambdaSubgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// A list of λ-subgraphs with a per-vertex membership index.
///
/// Built either exhaustively by [`enumerate_action_set`] (every connected
/// λ-subset, lexicographic order) or from an explicit collection such as a
/// cover or a tree partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSet {
    n: usize,
    lambda: usize,
    subgraphs: Vec<LambdaSubgraph>,
    member_index: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    exhaustive: bool,
}

impl ActionSet {
    fn build(n: usize, lambda: usize, subgraphs: Vec<LambdaSubgraph>, exhaustive: bool) -> Self {
        let mut member_index = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(subgraphs.len());
        for (j, s) in subgraphs.iter().enumerate() {
            for &v in s.vertices() {
                member_index[v].push(j);
            }
            lookup.insert(s.vertices().to_vec(), j);
        }
        ActionSet {
            n,
            lambda,
            subgraphs,
            member_index,
            lookup,
            exhaustive,
        }
    }

    /// Non-exhaustive action set over an explicit, duplicate-free collection.
    pub fn from_subgraphs(
        graph: &Graph,
        lambda: usize,
        subgraphs: Vec<LambdaSubgraph>,
    ) -> Result<Self> {
        check_lambda(graph, lambda)?;
        let mut seen = std::collections::HashSet::new();
        for s in &subgraphs {
            if s.len() != lambda {
                return Err(CsdError::InvalidStrategy(format!(
                    "subgraph {s} has {} vertices, expected {lambda}",
                    s.len()
                )));
            }
            if s.vertices().iter().any(|&v| v >= graph.n()) || !graph.is_connected_subset(s.vertices())? {
                return Err(CsdError::InvalidStrategy(format!("{s} is not a λ-subgraph")));
            }
            if !seen.insert(s.clone()) {
                return Err(CsdError::InvalidStrategy(format!("duplicate subgraph {s}")));
            }
        }
        Ok(Self::build(graph.n(), lambda, subgraphs, false))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Number of subgraphs.
    pub fn theta(&self) -> usize {
        self.subgraphs.len()
    }

    pub fn subgraphs(&self) -> &[LambdaSubgraph] {
        &self.subgraphs
    }

    pub fn subgraph(&self, index: usize) -> &LambdaSubgraph {
        &self.subgraphs[index]
    }

    /// Indices of the subgraphs containing `v`.
    pub fn containing(&self, v: usize) -> &[usize] {
        &self.member_index[v]
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        self.lookup.get(vertices).copied()
    }

    /// True when this is the complete action set of its graph.
    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    /// One sorted vertex list per line.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.subgraphs {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

fn check_lambda(graph: &Graph, lambda: usize) -> Result<()> {
    if lambda == 0 || lambda > graph.n() {
        return Err(CsdError::LambdaOutOfRange {
            lambda,
            n: graph.n(),
        });
    }
    Ok(())
}

pub fn enumerate_action_set(graph: &Graph, lambda: usize) -> Result<ActionSet> {
    enumerate_action_set_capped(graph, lambda, DEFAULT_THETA_CAP)
}

/// Enumerates every connected induced λ-subset, failing once more than `cap`
/// subgraphs have been produced.
///
/// Each set is grown from its minimum vertex; at every step the smallest
/// frontier vertex is either added or permanently excluded, so every set is
/// generated exactly once.
pub fn enumerate_action_set_capped(graph: &Graph, lambda: usize, cap: usize) -> Result<ActionSet> {
    check_lambda(graph, lambda)?;
    let mut grower = Grower {
        graph,
        lambda,
        cap,
        state: vec![Mark::Free; graph.n()],
        current: Vec::with_capacity(lambda),
        found: Vec::new(),
    };
    for root in 0..graph.n() {
        grower.current.push(root);
        grower.state[root] = Mark::Member;
        let frontier: Vec<usize> = graph.neighbors(root).iter().copied().filter(|&w| w > root).collect();
        grower.grow(root, frontier)?;
        grower.state[root] = Mark::Free;
        grower.current.pop();
    }
    let mut found = grower.found;
    found.sort_unstable();
    Ok(ActionSet::build(graph.n(), lambda, found, true))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Free,
    Member,
    Frontier,
    Excluded,
}

struct Grower<'g> {
    graph: &'g Graph,
    lambda: usize,
    cap: usize,
    state: Vec<Mark>,
    current: Vec<usize>,
    found: Vec<LambdaSubgraph>,
}

impl Grower<'_> {
    /// `frontier` is sorted ascending and holds vertices marked `Frontier`
    /// (or `Free` on first entry from the root).
    fn grow(&mut self, root: usize, frontier: Vec<usize>) -> Result<()> {
        if self.current.len() == self.lambda {
            if self.found.len() == self.cap {
                return Err(CsdError::ThetaCap { cap: self.cap });
            }
            let mut vertices = self.current.clone();
            vertices.sort_unstable();
            self.found.push(LambdaSubgraph::from_sorted_unchecked(vertices));
            return Ok(());
        }
        let Some((&next, rest)) = frontier.split_first() else {
            return Ok(());
        };
        for &w in &frontier {
            self.state[w] = Mark::Frontier;
        }

        // Branch 1: take `next`.
        let mut grown: Vec<usize> = rest.to_vec();
        let mut added = Vec::new();
        for &w in self.graph.neighbors(next) {
            if w > root && self.state[w] == Mark::Free {
                self.state[w] = Mark::Frontier;
                added.push(w);
                grown.push(w);
            }
        }
        grown.sort_unstable();
        self.state[next] = Mark::Member;
        self.current.push(next);
        let taken = self.grow(root, grown);
        self.current.pop();
        for &w in &added {
            self.state[w] = Mark::Free;
        }
        taken?;

        // Branch 2: exclude `next` for the rest of this subtree of the search.
        self.state[next] = Mark::Excluded;
        let skipped = self.grow(root, rest.to_vec());
        for &w in &frontier {
            self.state[w] = Mark::Free;
        }
        skipped
    }
}

/// Number of listed subgraphs containing each vertex.
pub fn coverage_counts(actions: &ActionSet, collection: &[usize]) -> Result<Vec<usize>> {
    let mut counts = vec![0; actions.n()];
    for &j in collection {
        let s = actions.subgraphs().get(j).ok_or(CsdError::InvalidIndex {
            index: j,
            theta: actions.theta(),
        })?;
        for &v in s.vertices() {
            counts[v] += 1;
        }
    }
    Ok(counts)
}
