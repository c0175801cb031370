//! Fictitious play on the one-attacker matrix game.
//!
//! The defender picks a subgraph, the attacker picks a vertex, and the
//! defender scores 1 when the vertex is covered. The players alternate: the
//! defender plays, the attacker best-responds to the defender's history
//! including that play, then the defender best-responds to the attacker's
//! history. Ties go to the lowest index.
//! The defender's empirical mixture guarantees `lower`, the attacker's
//! concedes at most `upper`, and the game value lies in between.

use serde::Serialize;

use crate::error::{CsdError, Result};
use crate::graph::Graph;
use crate::subgraphs::{enumerate_action_set_capped, ActionSet, DEFAULT_THETA_CAP};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FictitiousPlay {
    pub iterations: u64,
    pub lower: f64,
    pub upper: f64,
    /// Midpoint of the bracket.
    pub estimate: f64,
    pub defender_average: Vec<f64>,
    pub attacker_average: Vec<f64>,
}

pub fn fictitious_play_value(graph: &Graph, lambda: usize, iterations: u64) -> Result<FictitiousPlay> {
    let actions = enumerate_action_set_capped(graph, lambda, DEFAULT_THETA_CAP)?;
    fictitious_play(&actions, iterations)
}

pub fn fictitious_play(actions: &ActionSet, iterations: u64) -> Result<FictitiousPlay> {
    if iterations == 0 {
        return Err(CsdError::InvalidParams("at least one iteration is required".into()));
    }
    let n = actions.n();
    let theta = actions.theta();
    let mut defender_plays = vec![0u64; theta];
    let mut attacker_plays = vec![0u64; n];
    // Cumulative payoff of each pure strategy against the opponent's history.
    let mut subgraph_score = vec![0u64; theta];
    let mut vertex_cover = vec![0u64; n];

    let mut defender = 0usize;
    for _ in 0..iterations {
        defender_plays[defender] += 1;
        for &v in actions.subgraph(defender).vertices() {
            vertex_cover[v] += 1;
        }
        let attacker = argmin(&vertex_cover);
        attacker_plays[attacker] += 1;
        for &j in actions.containing(attacker) {
            subgraph_score[j] += 1;
        }
        defender = argmax(&subgraph_score);
    }

    let t = iterations as f64;
    let lower = vertex_cover[argmin(&vertex_cover)] as f64 / t;
    let upper = subgraph_score[argmax(&subgraph_score)] as f64 / t;
    Ok(FictitiousPlay {
        iterations,
        lower,
        upper,
        estimate: (lower + upper) / 2.0,
        defender_average: defender_plays.iter().map(|&c| c as f64 / t).collect(),
        attacker_average: attacker_plays.iter().map(|&c| c as f64 / t).collect(),
    })
}

fn argmax(values: &[u64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

fn argmin(values: &[u64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[best] {
            best = i;
        }
    }
    best
}
