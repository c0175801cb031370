//! Payoffs, defense ratios and equilibrium verification.
//!
//! Two independent routes decide whether a profile is an equilibrium:
//! [`verify_equilibrium`] checks the three structural conditions (optimal
//! guarantee, attackers inside `V*`, support subgraphs carrying maximal
//! attacker mass), while [`pure_deviation_check`] tries every unilateral
//! pure deviation directly. By linearity of the payoffs, pure deviations
//! suffice for every player.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{CsdError, Result};
use crate::graph::Graph;
use crate::ratio::{format_ratio, serde_ratio, Rational};
use crate::solver::solve_maxmin_capped;
use crate::strategy::{DefenseStrategy, StrategyProfile};
use crate::subgraphs::{enumerate_action_set_capped, ActionSet, DEFAULT_THETA_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefenseRatio {
    Finite(Rational),
    /// No attacker is ever caught.
    Infinite,
}

impl Serialize for DefenseRatio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DefenseRatio::Finite(r) => s.serialize_str(&format_ratio(r)),
            DefenseRatio::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnderCoveredVertex {
    pub vertex: usize,
    #[serde(with = "serde_ratio")]
    pub probability: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttackerOutsideVstar {
    pub attacker: usize,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnderloadedSubgraph {
    pub support_subgraph: Vec<usize>,
    #[serde(with = "serde_ratio")]
    pub support_mass: Rational,
    pub heavier_subgraph: Vec<usize>,
    #[serde(with = "serde_ratio")]
    pub heavier_mass: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumReport {
    pub is_equilibrium: bool,
    pub condition1_ok: bool,
    pub condition1_witness: Option<UnderCoveredVertex>,
    pub condition2_ok: bool,
    pub condition2_witness: Option<AttackerOutsideVstar>,
    pub condition3_ok: bool,
    pub condition3_witness: Option<UnderloadedSubgraph>,
    #[serde(with = "serde_ratio")]
    pub pstar: Rational,
    pub vstar: Vec<usize>,
    #[serde(with = "serde_ratio")]
    pub defense_value: Rational,
    pub defense_ratio: DefenseRatio,
}

/// Expected number of attackers caught.
pub fn defense_value(profile: &StrategyProfile) -> Rational {
    let p = profile.defense.vertex_probabilities();
    profile
        .expected_attackers()
        .iter()
        .zip(p.values())
        .map(|(m, pi)| m * pi)
        .sum()
}

/// Probability that attacker `index` escapes.
pub fn attacker_payoff(index: usize, profile: &StrategyProfile) -> Result<Rational> {
    let t = profile.attackers.get(index).ok_or(CsdError::InvalidIndex {
        index,
        theta: profile.k(),
    })?;
    let p = profile.defense.vertex_probabilities();
    Ok(t.iter()
        .zip(p.values())
        .map(|(ti, pi)| ti * (Rational::one() - pi))
        .sum())
}

/// `k / defense_value`, or infinite when nobody can be caught.
pub fn defense_ratio(profile: &StrategyProfile) -> DefenseRatio {
    let value = defense_value(profile);
    if value.is_zero() {
        DefenseRatio::Infinite
    } else {
        DefenseRatio::Finite(Rational::from_integer(profile.k().into()) / value)
    }
}

fn subgraph_masses(actions: &ActionSet, mass: &[Rational]) -> Vec<Rational> {
    actions
        .subgraphs()
        .iter()
        .map(|s| s.vertices().iter().map(|&v| &mass[v]).sum())
        .collect()
}

/// Re-expresses the profile's defense over `actions`, matching subgraphs by vertex set.
pub fn lift_profile(profile: &StrategyProfile, actions: &Arc<ActionSet>) -> Result<StrategyProfile> {
    if Arc::ptr_eq(profile.defense.actions(), actions) {
        return Ok(profile.clone());
    }
    let support = profile
        .defense
        .support()
        .map(|(_, s, p)| (s.vertices().to_vec(), p.clone()));
    let defense = DefenseStrategy::from_support(actions.clone(), support)?;
    StrategyProfile::new(defense, profile.attackers.clone())
}

/// Re-solves the covering program and checks the three equilibrium conditions.
pub fn verify_equilibrium(graph: &Graph, lambda: usize, profile: &StrategyProfile) -> Result<EquilibriumReport> {
    verify_equilibrium_capped(graph, lambda, profile, DEFAULT_THETA_CAP)
}

pub fn verify_equilibrium_capped(
    graph: &Graph,
    lambda: usize,
    profile: &StrategyProfile,
    theta_cap: usize,
) -> Result<EquilibriumReport> {
    if profile.defense.actions().n() != graph.n() || profile.defense.actions().lambda() != lambda {
        return Err(CsdError::InvalidStrategy("profile does not match the graph and lambda".into()));
    }
    let solution = solve_maxmin_capped(graph, lambda, theta_cap)?;
    let profile = lift_profile(profile, solution.actions())?;
    check_conditions(solution.actions(), &solution.pstar, &solution.vstar, &profile)
}

/// Checks the conditions against a known `p*` and `V*`.
pub fn check_conditions(
    actions: &Arc<ActionSet>,
    pstar: &Rational,
    vstar: &[usize],
    profile: &StrategyProfile,
) -> Result<EquilibriumReport> {
    let profile = lift_profile(profile, actions)?;
    let p = profile.defense.vertex_probabilities();

    let condition1_witness = (p.min() != pstar).then(|| UnderCoveredVertex {
        vertex: p.argmin()[0],
        probability: p.min().clone(),
    });

    let mut in_vstar = vec![false; actions.n()];
    for &v in vstar {
        in_vstar[v] = true;
    }
    let condition2_witness = profile.attackers.iter().enumerate().find_map(|(a, t)| {
        t.iter()
            .enumerate()
            .find(|(v, x)| x.is_positive() && !in_vstar[*v])
            .map(|(v, _)| AttackerOutsideVstar { attacker: a, vertex: v })
    });

    let masses = subgraph_masses(actions, &profile.expected_attackers());
    let (heaviest, heaviest_mass) = masses
        .iter()
        .enumerate()
        .fold(None::<(usize, &Rational)>, |best, (j, m)| match best {
            Some((_, bm)) if bm >= m => best,
            _ => Some((j, m)),
        })
        .expect("action sets are nonempty");
    let condition3_witness = profile
        .defense
        .support()
        .find(|(j, _, _)| &masses[*j] < heaviest_mass)
        .map(|(j, s, _)| UnderloadedSubgraph {
            support_subgraph: s.vertices().to_vec(),
            support_mass: masses[j].clone(),
            heavier_subgraph: actions.subgraph(heaviest).vertices().to_vec(),
            heavier_mass: heaviest_mass.clone(),
        });

    let condition1_ok = condition1_witness.is_none();
    let condition2_ok = condition2_witness.is_none();
    let condition3_ok = condition3_witness.is_none();
    Ok(EquilibriumReport {
        is_equilibrium: condition1_ok && condition2_ok && condition3_ok,
        condition1_ok,
        condition1_witness,
        condition2_ok,
        condition2_witness,
        condition3_ok,
        condition3_witness,
        pstar: pstar.clone(),
        vstar: vstar.to_vec(),
        defense_value: defense_value(&profile),
        defense_ratio: defense_ratio(&profile),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "player", rename_all = "snake_case")]
pub enum Deviation {
    Attacker {
        attacker: usize,
        vertex: usize,
        #[serde(with = "serde_ratio")]
        gain: Rational,
    },
    Defender {
        subgraph: Vec<usize>,
        #[serde(with = "serde_ratio")]
        gain: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeviationCheck {
    pub stable: bool,
    pub witness: Option<Deviation>,
}

/// Tries every pure deviation of every player; the profile's action set must be exhaustive.
pub fn pure_deviation_check(profile: &StrategyProfile) -> Result<DeviationCheck> {
    let actions = profile.defense.actions();
    if !actions.is_exhaustive() {
        return Err(CsdError::InvalidParams(
            "pure deviation check needs the complete action set".into(),
        ));
    }
    let p = profile.defense.vertex_probabilities();
    let (weakest, pmin) = (p.argmin()[0], p.min());
    for a in 0..profile.k() {
        let current = attacker_payoff(a, profile)?;
        let deviation = Rational::one() - pmin;
        if deviation > current {
            return Ok(DeviationCheck {
                stable: false,
                witness: Some(Deviation::Attacker {
                    attacker: a,
                    vertex: weakest,
                    gain: deviation - current,
                }),
            });
        }
    }
    let current = defense_value(profile);
    let masses = subgraph_masses(actions, &profile.expected_attackers());
    if let Some((j, m)) = masses.iter().enumerate().find(|(_, m)| **m > current) {
        return Ok(DeviationCheck {
            stable: false,
            witness: Some(Deviation::Defender {
                subgraph: actions.subgraph(j).vertices().to_vec(),
                gain: m - &current,
            }),
        });
    }
    Ok(DeviationCheck {
        stable: true,
        witness: None,
    })
}

/// Builds the full action set of `graph` for use with [`lift_profile`].
pub fn exhaustive_actions(graph: &Graph, lambda: usize, theta_cap: usize) -> Result<Arc<ActionSet>> {
    Ok(Arc::new(enumerate_action_set_capped(graph, lambda, theta_cap)?))
}
