//! Mixed strategies for the defender and the attackers.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{CsdError, Result};
use crate::ratio::{format_ratio, Rational};
use crate::subgraphs::{ActionSet, LambdaSubgraph};

/// Probability distribution over the subgraphs of an [`ActionSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct DefenseStrategy {
    actions: Arc<ActionSet>,
    probs: Vec<Rational>,
}

impl DefenseStrategy {
    pub fn new(actions: Arc<ActionSet>, probs: Vec<Rational>) -> Result<Self> {
        if probs.len() != actions.theta() {
            return Err(CsdError::InvalidStrategy(format!(
                "{} probabilities for {} subgraphs",
                probs.len(),
                actions.theta()
            )));
        }
        check_distribution(&probs, "defense strategy")?;
        Ok(DefenseStrategy { actions, probs })
    }

    /// Equal weight on every subgraph of `actions`.
    pub fn uniform(actions: Arc<ActionSet>) -> Result<Self> {
        let theta = actions.theta();
        if theta == 0 {
            return Err(CsdError::InvalidStrategy("empty action set".into()));
        }
        let p = Rational::new(1.into(), theta.into());
        Ok(DefenseStrategy {
            probs: vec![p; theta],
            actions,
        })
    }

    /// Builds a strategy from `(subgraph, probability)` pairs, looked up by vertex set.
    pub fn from_support(
        actions: Arc<ActionSet>,
        support: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self> {
        let mut probs = vec![Rational::zero(); actions.theta()];
        for (mut vertices, p) in support {
            vertices.sort_unstable();
            let j = actions.index_of(&vertices).ok_or_else(|| {
                CsdError::InvalidStrategy(format!("{vertices:?} is not a λ-subgraph of the graph"))
            })?;
            if !probs[j].is_zero() {
                return Err(CsdError::InvalidStrategy(format!("{vertices:?} listed twice")));
            }
            probs[j] = p;
        }
        Self::new(actions, probs)
    }

    pub fn actions(&self) -> &Arc<ActionSet> {
        &self.actions
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// `(index, subgraph, probability)` for every positive-probability subgraph.
    pub fn support(&self) -> impl Iterator<Item = (usize, &LambdaSubgraph, &Rational)> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(move |(j, p)| (j, self.actions.subgraph(j), p))
    }

    pub fn vertex_probabilities(&self) -> VertexProbabilities {
        let mut p = vec![Rational::zero(); self.actions.n()];
        for (_, s, q) in self.support() {
            for &v in s.vertices() {
                p[v] += q;
            }
        }
        VertexProbabilities::new(p)
    }
}

/// Per-vertex coverage probabilities with their minimum and argmin set.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexProbabilities {
    p: Vec<Rational>,
    pmin: Rational,
    argmin: Vec<usize>,
}

impl VertexProbabilities {
    fn new(p: Vec<Rational>) -> Self {
        let pmin = p.iter().min().cloned().unwrap_or_else(Rational::zero);
        let argmin = p
            .iter()
            .enumerate()
            .filter(|(_, x)| **x == pmin)
            .map(|(v, _)| v)
            .collect();
        VertexProbabilities { p, pmin, argmin }
    }

    pub fn values(&self) -> &[Rational] {
        &self.p
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.p[v]
    }

    pub fn min(&self) -> &Rational {
        &self.pmin
    }

    pub fn argmin(&self) -> &[usize] {
        &self.argmin
    }

    pub fn total(&self) -> Rational {
        self.p.iter().sum()
    }
}

/// One defense strategy and `k` attacker distributions over vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile {
    pub defense: DefenseStrategy,
    pub attackers: Vec<Vec<Rational>>,
}

impl StrategyProfile {
    pub fn new(defense: DefenseStrategy, attackers: Vec<Vec<Rational>>) -> Result<Self> {
        if attackers.is_empty() {
            return Err(CsdError::InvalidStrategy("at least one attacker is required".into()));
        }
        let n = defense.actions().n();
        for (a, t) in attackers.iter().enumerate() {
            if t.len() != n {
                return Err(CsdError::InvalidStrategy(format!(
                    "attacker {a} has {} entries for {n} vertices",
                    t.len()
                )));
            }
            check_distribution(t, &format!("attacker {a}"))?;
        }
        Ok(StrategyProfile { defense, attackers })
    }

    pub fn k(&self) -> usize {
        self.attackers.len()
    }

    /// Expected number of attackers on each vertex.
    pub fn expected_attackers(&self) -> Vec<Rational> {
        let n = self.defense.actions().n();
        let mut mass = vec![Rational::zero(); n];
        for t in &self.attackers {
            for (m, x) in mass.iter_mut().zip(t) {
                *m += x;
            }
        }
        mass
    }
}

/// Uniform distribution over `vertices` in a vector of length `n`.
pub fn uniform_over(n: usize, vertices: &[usize]) -> Vec<Rational> {
    let mut t = vec![Rational::zero(); n];
    let share = Rational::new(1.into(), vertices.len().into());
    for &v in vertices {
        t[v] = share.clone();
    }
    t
}

fn check_distribution(probs: &[Rational], what: &str) -> Result<()> {
    if let Some(p) = probs.iter().find(|p| p.is_negative()) {
        return Err(CsdError::InvalidStrategy(format!(
            "{what} has negative probability {}",
            format_ratio(p)
        )));
    }
    let total: Rational = probs.iter().sum();
    if !total.is_one() {
        return Err(CsdError::InvalidStrategy(format!(
            "{what} sums to {} instead of 1",
            format_ratio(&total)
        )));
    }
    Ok(())
}
