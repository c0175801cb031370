//! Instance generators: named families, extremal constructions and seeded
//! random graphs. Every constructor labels vertices `0..n` deterministically.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{CsdError, Result};
use crate::graph::Graph;
use crate::ratio::{format_ratio, Rational};

/// A graph together with the defender's λ and what the construction predicts.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedInstance {
    pub graph: Graph,
    pub lambda: usize,
    pub predicted_pstar: Option<Rational>,
    pub construction: String,
    pub params: BTreeMap<String, Value>,
    /// Decision threshold for reduction instances.
    pub threshold: Option<Rational>,
    pub note: Option<String>,
}

impl GeneratedInstance {
    /// Sidecar document written next to the edge list.
    pub fn metadata(&self) -> Value {
        let predicted = self
            .predicted_pstar
            .as_ref()
            .map_or_else(|| "none".to_string(), format_ratio);
        let mut doc = json!({
            "construction": self.construction,
            "params": self.params,
            "n": self.graph.n(),
            "m": self.graph.edge_count(),
            "lambda": self.lambda,
            "predicted_pstar": predicted,
        });
        if let Some(t) = &self.threshold {
            doc["threshold"] = json!(format_ratio(t));
        }
        if let Some(note) = &self.note {
            doc["note"] = json!(note);
        }
        doc
    }
}

fn invalid(msg: impl Into<String>) -> CsdError {
    CsdError::InvalidParams(msg.into())
}

fn q(num: usize, den: usize) -> Rational {
    Rational::new(num.into(), den.into())
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn check_lambda(n: usize, lambda: usize) -> Result<()> {
    if lambda == 0 || lambda > n {
        return Err(CsdError::LambdaOutOfRange { lambda, n });
    }
    Ok(())
}

pub fn gen_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("a path needs at least one vertex"));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("a cycle needs at least three vertices"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Path with λ; predicts λ/n when λ divides n.
pub fn path_instance(n: usize, lambda: usize) -> Result<GeneratedInstance> {
    let graph = gen_path(n)?;
    check_lambda(n, lambda)?;
    Ok(GeneratedInstance {
        graph,
        lambda,
        predicted_pstar: n.is_multiple_of(lambda).then(|| q(lambda, n)),
        construction: "path".into(),
        params: params(&[("n", json!(n))]),
        threshold: None,
        note: None,
    })
}

/// Cycle with λ; always predicts λ/n.
pub fn cycle_instance(n: usize, lambda: usize) -> Result<GeneratedInstance> {
    let graph = gen_cycle(n)?;
    check_lambda(n, lambda)?;
    Ok(GeneratedInstance {
        graph,
        lambda,
        predicted_pstar: Some(q(lambda, n)),
        construction: "cycle".into(),
        params: params(&[("n", json!(n))]),
        threshold: None,
        note: None,
    })
}

/// Central vertex 0 with `b` lines of `σ = ⌈λ/2⌉` vertices and one shorter line.
pub fn gen_star_of_lines(n: usize, lambda: usize) -> Result<GeneratedInstance> {
    if lambda < 2 || lambda + 1 > n {
        return Err(invalid(format!("star-of-lines needs 2 <= lambda <= n-1, got n={n} lambda={lambda}")));
    }
    let sigma = lambda.div_ceil(2);
    let b = (n - 1) / sigma;
    let remainder = n - 1 - b * sigma;
    let mut edges = Vec::with_capacity(n - 1);
    let mut attach = |start: usize, len: usize| {
        edges.push((0, start));
        edges.extend((start + 1..start + len).map(|v| (v - 1, v)));
    };
    for line in 0..b {
        attach(1 + line * sigma, sigma);
    }
    if remainder > 0 {
        attach(1 + b * sigma, remainder);
    }
    let graph = Graph::new(n, edges)?;
    let predicted = if lambda % 2 == 1 && sigma - remainder == 1 {
        q(1, b + 1)
    } else {
        q(1, b)
    };
    Ok(GeneratedInstance {
        graph,
        lambda,
        predicted_pstar: Some(predicted),
        construction: "star-of-lines".into(),
        params: params(&[
            ("n", json!(n)),
            ("lambda", json!(lambda)),
            ("sigma", json!(sigma)),
            ("b", json!(b)),
            ("remainder", json!(remainder)),
        ]),
        threshold: None,
        note: None,
    })
}

/// One path of `a_i` vertices per integer, each hanging off vertex 0.
pub fn gen_three_partition_tree(a: &[usize], m: usize) -> Result<GeneratedInstance> {
    if m == 0 || a.len() != 3 * m {
        return Err(invalid(format!("expected 3m = {} integers, got {}", 3 * m, a.len())));
    }
    if a.contains(&0) {
        return Err(invalid("integers must be positive"));
    }
    let s: usize = a.iter().sum();
    if !s.is_multiple_of(m) {
        return Err(invalid(format!("sum {s} is not divisible by m = {m}")));
    }
    let target = s / m;
    if let Some(x) = a.iter().find(|&&x| x >= target) {
        return Err(invalid(format!("integer {x} is not below s/m = {target}")));
    }
    let n = s + 1;
    let mut edges = Vec::with_capacity(s);
    let mut next = 1;
    for &len in a {
        edges.push((0, next));
        edges.extend((next + 1..next + len).map(|v| (v - 1, v)));
        next += len;
    }
    Ok(GeneratedInstance {
        graph: Graph::new(n, edges)?,
        lambda: target + 1,
        predicted_pstar: None,
        construction: "three-partition".into(),
        params: params(&[("a", json!(a)), ("m", json!(m)), ("s", json!(s))]),
        threshold: Some(q(1, m)),
        note: Some("pstar >= threshold iff the integers split into m groups of equal sum".into()),
    })
}

/// Path 0-1-2 bridged by 2-3 to the clique on {3, 4, 5, 6}, with λ = 3.
pub fn gen_fig1_graph() -> GeneratedInstance {
    let mut edges = vec![(0, 1), (1, 2), (2, 3)];
    for u in 3..7 {
        for v in u + 1..7 {
            edges.push((u, v));
        }
    }
    GeneratedInstance {
        graph: Graph::new(7, edges).expect("fixed construction is valid"),
        lambda: 3,
        predicted_pstar: Some(q(3, 7)),
        construction: "fig1".into(),
        params: BTreeMap::new(),
        threshold: None,
        note: Some("path 0-1-2 bridged to the clique on 3..6; value confirmed by the exact solver".into()),
    }
}

/// Uniform-attachment tree, relabelled by a random permutation.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::new(n.max(1), random_tree_edges(n, &mut rng)?)
}

fn random_tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    if n == 0 {
        return Err(invalid("a tree needs at least one vertex"));
    }
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    Ok((1..n).map(|v| (label[rng.gen_range(0..v)], label[v])).collect())
}

/// Random tree plus `m - (n - 1)` further edges chosen uniformly.
pub fn gen_random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = random_tree_edges(n, &mut rng)?;
    let max = n * (n - 1) / 2;
    if m + 1 < n || m > max {
        return Err(invalid(format!("m = {m} is outside [{}, {max}] for n = {n}", n - 1)));
    }
    let extra = m + 1 - n;
    let mut present: HashSet<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    if 2 * extra <= max - present.len() {
        while present.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && present.insert((u.min(v), u.max(v))) {
                edges.push((u, v));
            }
        }
    } else {
        let mut missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !present.contains(e))
            .collect();
        missing.shuffle(&mut rng);
        edges.extend(missing.into_iter().take(extra));
    }
    Graph::new(n, edges)
}

/// One representative of every unlabelled tree on `n` vertices.
pub fn all_free_trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(invalid("trees need at least one vertex"));
    }
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 1..n {
        let mut seen = HashMap::new();
        for edges in &level {
            for attach in 0..size {
                let mut grown = edges.clone();
                grown.push((attach, size));
                seen.entry(canonical_form(size + 1, &grown)).or_insert(grown);
            }
        }
        let mut next: Vec<_> = seen.into_iter().collect();
        next.sort();
        level = next.into_iter().map(|(_, e)| e).collect();
    }
    level.into_iter().map(|edges| Graph::new(n, edges)).collect()
}

/// Isomorphism-invariant encoding: nested parentheses rooted at the center(s).
fn canonical_form(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    centers(&adj)
        .into_iter()
        .map(|c| encode(&adj, c, usize::MAX))
        .min()
        .expect("every tree has a center")
}

fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut parts: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| encode(adj, w, v))
        .collect();
    parts.sort();
    format!("({})", parts.concat())
}
