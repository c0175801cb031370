//! Exact MaxMin probability, best-defense strategies and equilibria.
//!
//! The covering program has one variable per λ-subgraph plus the guaranteed
//! probability `p'`:
//!
//! ```text
//! maximize p'   s.t.   Σ_{j ∋ i} q_j >= p'  for every vertex i,   Σ_j q_j = 1,   q, p' >= 0
//! ```
//!
//! Its optimal dual prices on the covering rows form an attacker distribution
//! under which no subgraph catches more than `p*`, which is kept as an
//! optimality certificate next to the primal strategy.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{CsdError, Result};
use crate::game::{check_conditions, EquilibriumReport};
use crate::graph::Graph;
use crate::ratio::{format_ratio, Rational};
use crate::simplex::LinearProgram;
use crate::strategy::{uniform_over, DefenseStrategy, StrategyProfile};
use crate::subgraphs::{enumerate_action_set_capped, ActionSet, DEFAULT_THETA_CAP};

/// Optimal value of the covering program with a primal and a dual witness.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxminValue {
    pub pstar: Rational,
    pub qstar: DefenseStrategy,
    /// Attacker distribution over vertices whose best defender reply catches exactly `pstar`.
    pub certificate: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub pstar: Rational,
    pub qstar: DefenseStrategy,
    /// Vertices covered with probability exactly `pstar` under every best-defense strategy.
    pub vstar: Vec<usize>,
    pub certificate: Vec<Rational>,
}

impl ExactSolution {
    pub fn actions(&self) -> &Arc<ActionSet> {
        self.qstar.actions()
    }
}

pub fn solve_maxmin(graph: &Graph, lambda: usize) -> Result<ExactSolution> {
    solve_maxmin_capped(graph, lambda, DEFAULT_THETA_CAP)
}

pub fn solve_maxmin_capped(graph: &Graph, lambda: usize, theta_cap: usize) -> Result<ExactSolution> {
    let actions = Arc::new(enumerate_action_set_capped(graph, lambda, theta_cap)?);
    let value = maxmin_value(actions)?;
    let vstar = tight_in_every_optimum(&value)?;
    Ok(ExactSolution {
        pstar: value.pstar,
        qstar: value.qstar,
        vstar,
        certificate: value.certificate,
    })
}

/// `p*` and a certified best-defense strategy, without computing `V*`.
pub fn maxmin_probability(graph: &Graph, lambda: usize, theta_cap: usize) -> Result<MaxminValue> {
    maxmin_value(Arc::new(enumerate_action_set_capped(graph, lambda, theta_cap)?))
}

/// Solves the covering program over an exhaustive action set.
pub fn maxmin_value(actions: Arc<ActionSet>) -> Result<MaxminValue> {
    if !actions.is_exhaustive() {
        return Err(CsdError::InvalidParams(
            "the covering program needs the complete action set".into(),
        ));
    }
    let n = actions.n();
    let lambda = actions.lambda();
    let everyone: Vec<usize> = (0..n).collect();

    let value = if lambda == 1 || lambda == n {
        // Singletons or the whole graph: the optimum is forced.
        let qstar = DefenseStrategy::uniform(actions.clone())?;
        MaxminValue {
            pstar: Rational::new(lambda.into(), n.into()),
            qstar,
            certificate: uniform_over(n, &everyone),
        }
    } else {
        let theta = actions.theta();
        let mut rhs = vec![Rational::zero(); n];
        rhs.push(Rational::one());
        let mut lp = LinearProgram::new(rhs);
        for s in actions.subgraphs() {
            let mut entries: Vec<(usize, i64)> = s.vertices().iter().map(|&v| (v, -1)).collect();
            entries.push((n, 1));
            lp.add_column(0, entries);
        }
        let guaranteed = lp.add_column(1, (0..n).map(|v| (v, 1)).collect());
        for v in 0..n {
            lp.add_column(0, vec![(v, 1)]);
        }
        let sol = lp.solve().map_err(|e| CsdError::Lp(e.to_string()))?;
        let qstar = DefenseStrategy::new(actions.clone(), sol.values[..theta].to_vec())?;
        let weight: Rational = sol.duals[..n].iter().sum();
        if !weight.is_positive() {
            return Err(CsdError::Diagnostic("covering duals have no mass".into()));
        }
        let certificate = sol.duals[..n].iter().map(|y| y / &weight).collect();
        MaxminValue {
            pstar: sol.values[guaranteed].clone(),
            qstar,
            certificate,
        }
    };
    certify(&value)?;
    Ok(value)
}

/// Checks primal feasibility and the dual bound; together they prove optimality.
fn certify(value: &MaxminValue) -> Result<()> {
    let actions = value.qstar.actions();
    let p = value.qstar.vertex_probabilities();
    if p.min() != &value.pstar {
        return Err(CsdError::Diagnostic(format!(
            "strategy guarantees {} but the program reported {}",
            format_ratio(p.min()),
            format_ratio(&value.pstar)
        )));
    }
    if p.total() != Rational::from_integer(actions.lambda().into()) {
        return Err(CsdError::Diagnostic("vertex probabilities do not sum to lambda".into()));
    }
    let y = &value.certificate;
    if y.iter().any(|x| x.is_negative()) || !y.iter().sum::<Rational>().is_one() {
        return Err(CsdError::Diagnostic("certificate is not a distribution".into()));
    }
    let best_reply = actions
        .subgraphs()
        .iter()
        .map(|s| s.vertices().iter().map(|&v| &y[v]).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero);
    if best_reply != value.pstar {
        return Err(CsdError::Diagnostic(format!(
            "dual certificate bounds the value by {}, not {}",
            format_ratio(&best_reply),
            format_ratio(&value.pstar)
        )));
    }
    Ok(())
}

/// Vertices whose covering constraint is tight in every optimal strategy.
///
/// Vertices with positive certificate weight are tight in every optimum by
/// complementary slackness. Each remaining candidate `v` is tested by
/// maximizing `p_v` over the optimal face; any optimum found this way also
/// rules out every other vertex it lifts above `p*`.
fn tight_in_every_optimum(value: &MaxminValue) -> Result<Vec<usize>> {
    let actions = value.qstar.actions();
    let n = actions.n();
    let p = value.qstar.vertex_probabilities();
    let mut excluded: Vec<bool> = p.values().iter().map(|x| *x != value.pstar).collect();
    let mut confirmed: Vec<bool> = value.certificate.iter().map(|y| y.is_positive()).collect();

    for v in 0..n {
        if excluded[v] || confirmed[v] {
            continue;
        }
        let lifted = maximize_on_optimal_face(actions, &value.pstar, v)?;
        if lifted[v] > value.pstar {
            for (u, pu) in lifted.iter().enumerate() {
                if *pu > value.pstar {
                    excluded[u] = true;
                }
            }
        } else {
            confirmed[v] = true;
        }
    }
    Ok((0..n).filter(|&v| !excluded[v]).collect())
}

/// Vertex probabilities of a strategy maximizing `p_v` subject to `min_i p_i >= pstar`.
fn maximize_on_optimal_face(actions: &ActionSet, pstar: &Rational, v: usize) -> Result<Vec<Rational>> {
    let n = actions.n();
    let theta = actions.theta();
    let mut rhs = vec![pstar.clone(); n];
    rhs.push(Rational::one());
    let mut lp = LinearProgram::new(rhs);
    for s in actions.subgraphs() {
        let mut entries: Vec<(usize, i64)> = s.vertices().iter().map(|&u| (u, 1)).collect();
        entries.push((n, 1));
        lp.add_column(i64::from(s.contains(v)), entries);
    }
    for u in 0..n {
        lp.add_column(0, vec![(u, -1)]);
    }
    let sol = lp.solve().map_err(|e| CsdError::Lp(e.to_string()))?;
    let mut p = vec![Rational::zero(); n];
    for (s, q) in actions.subgraphs().iter().zip(&sol.values[..theta]) {
        if q.is_positive() {
            for &u in s.vertices() {
                p[u] += q;
            }
        }
    }
    Ok(p)
}

/// Where the attackers' common distribution came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackerConstruction {
    /// Uniform on `V*`.
    UniformVstar,
    /// The optimal dual prices of the covering program.
    Certificate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium {
    pub profile: StrategyProfile,
    pub construction: AttackerConstruction,
    /// Why uniform on `V*` was rejected, when it was.
    pub uniform_rejection: Option<EquilibriumReport>,
}

/// Defender plays `qstar`; every attacker plays the same distribution.
///
/// Attackers uniform on `V*` are tried first. That profile can violate the
/// third condition (a support subgraph carrying less attacker mass than some
/// other subgraph), e.g. on the tree `0-1, 1-2, 1-5, 2-4, 2-6, 3-4` with
/// λ = 2, where the optimum is unique and `{0, 1}` holds one tight vertex
/// while `{2, 4}` holds two. The dual certificate is then used instead: its
/// support lies in `V*` by complementary slackness and every support subgraph
/// of `qstar` has zero reduced cost, so it always passes.
pub fn build_equilibrium_detailed(solution: &ExactSolution, k: usize) -> Result<Equilibrium> {
    if k == 0 {
        return Err(CsdError::InvalidParams("k must be at least 1".into()));
    }
    let n = solution.actions().n();
    let check = |attacker: Vec<Rational>| -> Result<(StrategyProfile, EquilibriumReport)> {
        let profile = StrategyProfile::new(solution.qstar.clone(), vec![attacker; k])?;
        let report = check_conditions(solution.actions(), &solution.pstar, &solution.vstar, &profile)?;
        Ok((profile, report))
    };
    let (profile, uniform) = check(uniform_over(n, &solution.vstar))?;
    if uniform.is_equilibrium {
        return Ok(Equilibrium {
            profile,
            construction: AttackerConstruction::UniformVstar,
            uniform_rejection: None,
        });
    }
    let (profile, report) = check(solution.certificate.clone())?;
    if !report.is_equilibrium {
        return Err(CsdError::Diagnostic(format!(
            "neither uniform-on-V* nor certificate attackers form an equilibrium: {report:?}"
        )));
    }
    Ok(Equilibrium {
        profile,
        construction: AttackerConstruction::Certificate,
        uniform_rejection: Some(uniform),
    })
}

pub fn build_equilibrium(solution: &ExactSolution, k: usize) -> Result<StrategyProfile> {
    Ok(build_equilibrium_detailed(solution, k)?.profile)
}

/// `1 / p*`, independent of the number of attackers.
pub fn equilibrium_defense_ratio(solution: &ExactSolution) -> Rational {
    solution.pstar.recip()
}

pub fn is_defense_optimal(graph: &Graph, lambda: usize) -> Result<bool> {
    is_defense_optimal_capped(graph, lambda, DEFAULT_THETA_CAP)
}

pub fn is_defense_optimal_capped(graph: &Graph, lambda: usize, theta_cap: usize) -> Result<bool> {
    let value = maxmin_probability(graph, lambda, theta_cap)?;
    Ok(value.pstar == Rational::new(lambda.into(), graph.n().into()))
}
