#![allow(dead_code)]

use std::collections::VecDeque;

use csd_core::generate::{cycle_instance, gen_fig1_graph, gen_star_of_lines, gen_three_partition_tree, path_instance};
use csd_core::Graph;
use itertools::Itertools;

pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    pub lambda: usize,
}

fn fixture(name: impl Into<String>, graph: Graph, lambda: usize) -> Fixture {
    Fixture {
        name: name.into(),
        graph,
        lambda,
    }
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).tuple_combinations()).unwrap()
}

/// The named instances used across the suites.
pub fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (n, l) in [(8, 4), (12, 3), (10, 5), (5, 2), (3, 2), (4, 2), (7, 3)] {
        out.push(fixture(format!("path{n}/{l}"), path_instance(n, l).unwrap().graph, l));
    }
    for n in [5, 6, 7] {
        for l in [2, 3] {
            out.push(fixture(format!("cycle{n}/{l}"), cycle_instance(n, l).unwrap().graph, l));
        }
    }
    out.push(fixture("star3/2", star(3), 2));
    out.push(fixture("star4/3", star(4), 3));
    out.push(fixture("k5/3", complete(5), 3));
    let f = gen_fig1_graph();
    out.push(fixture("fig1/3", f.graph, f.lambda));
    for (n, l) in [(15, 6), (19, 7), (20, 7), (9, 4)] {
        let s = gen_star_of_lines(n, l).unwrap();
        out.push(fixture(format!("star-of-lines{n}/{l}"), s.graph, l));
    }
    let t = gen_three_partition_tree(&[2, 2, 2, 2, 2, 2], 2).unwrap();
    out.push(fixture("three-partition-2x6", t.graph, t.lambda));
    let spider = Graph::new(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
    out.push(fixture("spider7/3", spider, 3));
    let house = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]).unwrap();
    out.push(fixture("house/2", house, 2));
    let forked = Graph::new(7, [(0, 1), (1, 2), (1, 5), (2, 4), (2, 6), (3, 4)]).unwrap();
    out.push(fixture("forked-tree7/2", forked, 2));
    out
}

/// Reachability inside `set`, written independently of the library.
pub fn connected_in(graph: &Graph, set: &[usize]) -> bool {
    let Some(&start) = set.first() else {
        return false;
    };
    let mut seen = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in graph.edges() {
            let w = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if set.contains(&w) && !seen.contains(&w) {
                seen.push(w);
                queue.push_back(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Every connected λ-subset by filtering all C(n, λ) subsets.
pub fn brute_force_subgraphs(graph: &Graph, lambda: usize) -> Vec<Vec<usize>> {
    (0..graph.n())
        .combinations(lambda)
        .filter(|s| connected_in(graph, s))
        .collect()
}

/// Whether `a` splits into `m` triples of equal sum, by exhaustive search.
pub fn three_partition_brute(a: &[usize], m: usize) -> bool {
    if a.len() != 3 * m {
        return false;
    }
    let s: usize = a.iter().sum();
    if !s.is_multiple_of(m) {
        return false;
    }
    fn go(rest: &[usize], target: usize) -> bool {
        if rest.is_empty() {
            return true;
        }
        let (first, tail) = (rest[0], &rest[1..]);
        for (i, j) in (0..tail.len()).tuple_combinations() {
            if first + tail[i] + tail[j] == target {
                let remaining: Vec<usize> = tail
                    .iter()
                    .enumerate()
                    .filter(|&(x, _)| x != i && x != j)
                    .map(|(_, &v)| v)
                    .collect();
                if go(&remaining, target) {
                    return true;
                }
            }
        }
        false
    }
    go(a, s / m)
}
