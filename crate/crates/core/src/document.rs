//! JSON documents for solutions and strategy profiles.
//!
//! A profile document lists the defense distribution by sorted vertex lists
//! and each attacker's distribution keyed by vertex:
//!
//! ```json
//! {
//!   "defense": [{"subgraph": [0, 1], "prob": "1/2"}, {"subgraph": [2, 3], "prob": "1/2"}],
//!   "attackers": [{"0": "1/2", "3": "1/2"}]
//! }
//! ```
//!
//! Omitted vertices and subgraphs carry probability zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CsdError, Result};
use crate::ratio::{serde_ratio, Rational};
use crate::solver::{equilibrium_defense_ratio, ExactSolution};
use crate::strategy::{DefenseStrategy, StrategyProfile};
use crate::subgraphs::ActionSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Prob(#[serde(with = "serde_ratio")] pub Rational);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportEntry {
    pub subgraph: Vec<usize>,
    #[serde(with = "serde_ratio")]
    pub prob: Rational,
}

/// Nonzero entries of a defense strategy in action-set order.
pub fn support_entries(strategy: &DefenseStrategy) -> Vec<SupportEntry> {
    strategy
        .support()
        .map(|(_, s, p)| SupportEntry {
            subgraph: s.vertices().to_vec(),
            prob: p.clone(),
        })
        .collect()
}

fn sparse(values: &[Rational]) -> BTreeMap<usize, Prob> {
    values
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(v, x)| (v, Prob(x.clone())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub defense: Vec<SupportEntry>,
    pub attackers: Vec<BTreeMap<usize, Prob>>,
}

impl ProfileDoc {
    pub fn from_profile(profile: &StrategyProfile) -> Self {
        ProfileDoc {
            defense: support_entries(&profile.defense),
            attackers: profile.attackers.iter().map(|t| sparse(t)).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CsdError::InvalidStrategy(format!("profile document: {e}")))
    }

    /// Resolves subgraphs against `actions` and validates every distribution.
    pub fn into_profile(self, actions: &Arc<ActionSet>) -> Result<StrategyProfile> {
        let defense = DefenseStrategy::from_support(
            Arc::clone(actions),
            self.defense.into_iter().map(|e| (e.subgraph, e.prob)),
        )?;
        let n = actions.n();
        let attackers = self
            .attackers
            .into_iter()
            .enumerate()
            .map(|(a, entries)| {
                let mut t = vec![Rational::zero(); n];
                for (v, Prob(x)) in entries {
                    if v >= n {
                        return Err(CsdError::InvalidStrategy(format!(
                            "attacker {a} names vertex {v} outside 0..{n}"
                        )));
                    }
                    t[v] = x;
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        StrategyProfile::new(defense, attackers)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionDoc {
    pub n: usize,
    pub lambda: usize,
    pub theta: usize,
    #[serde(with = "serde_ratio")]
    pub pstar: Rational,
    #[serde(with = "serde_ratio")]
    pub defense_ratio: Rational,
    pub defense_optimal: bool,
    pub strategy: Vec<SupportEntry>,
    pub vstar: Vec<usize>,
    /// Attacker distribution under which no subgraph catches more than `pstar`.
    pub certificate: BTreeMap<usize, Prob>,
}

impl SolutionDoc {
    pub fn new(solution: &ExactSolution) -> Self {
        let actions = solution.actions();
        SolutionDoc {
            n: actions.n(),
            lambda: actions.lambda(),
            theta: actions.theta(),
            pstar: solution.pstar.clone(),
            defense_ratio: equilibrium_defense_ratio(solution),
            defense_optimal: solution.pstar == Rational::new(actions.lambda().into(), actions.n().into()),
            strategy: support_entries(&solution.qstar),
            vstar: solution.vstar.clone(),
            certificate: sparse(&solution.certificate),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::ratio::ratio;
    use crate::solver::{build_equilibrium, solve_maxmin};

    fn path4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn profile_round_trip() {
        let sol = solve_maxmin(&path4(), 2).unwrap();
        let profile = build_equilibrium(&sol, 2).unwrap();
        let doc = ProfileDoc::from_profile(&profile);
        let text = serde_json::to_string(&doc).unwrap();
        let back = ProfileDoc::parse(&text).unwrap().into_profile(sol.actions()).unwrap();
        assert_eq!(back, profile);
    }

    #[test]
    fn parses_the_documented_shape() {
        let text = r#"{"defense":[{"subgraph":[1,0],"prob":"1/2"},{"subgraph":[2,3],"prob":"1/2"}],
                       "attackers":[{"0":"1/2","3":"1/2"}]}"#;
        let sol = solve_maxmin(&path4(), 2).unwrap();
        let profile = ProfileDoc::parse(text).unwrap().into_profile(sol.actions()).unwrap();
        assert_eq!(profile.k(), 1);
        assert_eq!(profile.attackers[0][3], ratio(1, 2));
    }

    #[test]
    fn rejects_bad_documents() {
        let sol = solve_maxmin(&path4(), 2).unwrap();
        let bad = [
            r#"{"defense":[{"subgraph":[0,1],"prob":"1/3"}],"attackers":[{"0":"1/1"}]}"#,
            r#"{"defense":[{"subgraph":[0,2],"prob":"1/1"}],"attackers":[{"0":"1/1"}]}"#,
            r#"{"defense":[{"subgraph":[0,1],"prob":"1/1"}],"attackers":[{"9":"1/1"}]}"#,
            r#"{"defense":[{"subgraph":[0,1],"prob":"1/1"}],"attackers":[]}"#,
            r#"{"defense":[{"subgraph":[0,1],"prob":"x"}],"attackers":[{"0":"1/1"}]}"#,
            r#"{"defense":[],"attackers":[{"0":"1/1"}],"extra":1}"#,
        ];
        for text in bad {
            let r = ProfileDoc::parse(text).and_then(|d| d.into_profile(sol.actions()));
            assert!(matches!(r, Err(CsdError::InvalidStrategy(_))), "{text}");
        }
    }

    #[test]
    fn solution_document_fields() {
        let sol = solve_maxmin(&path4(), 2).unwrap();
        let doc = serde_json::to_value(SolutionDoc::new(&sol)).unwrap();
        assert_eq!(doc["pstar"], "1/2");
        assert_eq!(doc["defense_ratio"], "2/1");
        assert_eq!(doc["defense_optimal"], true);
    }
}
