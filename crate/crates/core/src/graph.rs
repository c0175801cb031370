//! Simple undirected connected graphs, rooted trees, and the edge-list format.
//!
//! The edge-list document is `n m` on the first line followed by `m` lines
//! `u v` with `u < v`. Serialization always emits edges in lexicographic
//! order, so `parse_graph(&g.to_edge_list())` reproduces `g` exactly.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{CsdError, Result};

/// Simple, undirected, connected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph and validates every invariant, connectivity included.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(CsdError::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(CsdError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(CsdError::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            normalized.push((a, b));
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(CsdError::DuplicateEdge(w[0].0, w[0].1));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let graph = Graph {
            n,
            edges: normalized,
            adjacency,
        };
        let seen = graph.reach_from(0, |_| true);
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(CsdError::Disconnected(v));
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    fn reach_from(&self, start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] && allowed(w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Whether the subgraph induced by `set` is connected.
    pub fn is_connected_subset(&self, set: &[usize]) -> Result<bool> {
        let first = *set.first().ok_or(CsdError::EmptySet)?;
        let mut member = vec![false; self.n];
        for &v in set {
            if v >= self.n {
                return Err(CsdError::VertexOutOfRange { vertex: v, n: self.n });
            }
            member[v] = true;
        }
        let seen = self.reach_from(first, |w| member[w]);
        Ok(set.iter().all(|&v| seen[v]))
    }

    /// Canonical edge-list document.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parses the edge-list format. Blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or(CsdError::Parse {
        line: 1,
        message: "missing header \"n m\"".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        if edges.len() == m {
            return Err(CsdError::Parse {
                line,
                message: format!("more than the declared {m} edges"),
            });
        }
        let [u, v] = parse_pair(line, body)?;
        if u >= n || v >= n {
            return Err(CsdError::VertexOutOfRange { vertex: u.max(v), n });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(CsdError::Parse {
            line: header_line,
            message: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges)
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| CsdError::Parse {
            line,
            message: format!("expected a non-negative integer, got {s:?}"),
        })
    };
    match fields.as_slice() {
        [a, b] => Ok([parse(a)?, parse(b)?]),
        _ => Err(CsdError::Parse {
            line,
            message: format!("expected two fields, got {}", fields.len()),
        }),
    }
}

/// A tree together with a root and parent/children arrays.
///
/// Children are kept in ascending label order; every traversal in the crate
/// relies on that for determinism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    graph: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Tree {
    /// Roots `graph` at vertex 0.
    pub fn from_graph(graph: Graph) -> Result<Self> {
        Self::rooted_at(graph, 0)
    }

    pub fn rooted_at(graph: Graph, root: usize) -> Result<Self> {
        if !graph.is_tree() {
            return Err(CsdError::NotATree(format!(
                "{} edges on {} vertices",
                graph.edge_count(),
                graph.n()
            )));
        }
        if root >= graph.n() {
            return Err(CsdError::VertexOutOfRange { vertex: root, n: graph.n() });
        }
        let n = graph.n();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        Ok(Tree {
            graph,
            root,
            parent,
            children,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    /// The same tree rooted elsewhere.
    pub fn rerooted(&self, root: usize) -> Result<Tree> {
        Tree::rooted_at(self.graph.clone(), root)
    }

    /// Vertices in post-order (children before parents, children ascending).
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack = vec![(self.root, 0usize)];
        while let Some((v, next)) = stack.pop() {
            if let Some(&c) = self.children[v].get(next) {
                stack.push((v, next + 1));
                stack.push((c, 0));
            } else {
                order.push(v);
            }
        }
        order
    }
}

/// Breadth-first spanning tree from vertex 0, neighbors explored in ascending order.
pub fn spanning_tree(graph: &Graph) -> Tree {
    let n = graph.n();
    let mut seen = vec![false; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &w in graph.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    let tree_graph = Graph::new(n, edges).expect("spanning tree of a connected graph");
    Tree::from_graph(tree_graph).expect("spanning tree has n - 1 edges")
}
