//! Connected-subgraph defense games: one defender protects a connected set of
//! λ vertices, k attackers each pick a vertex.
//!
//! The crate computes the exact MaxMin probability `p*` with a rational
//! simplex, builds and verifies equilibria, decides defense-optimality of
//! trees in linear time, approximates the best defense through a tree cover,
//! and generates the standard instance families.

pub mod approx;
pub mod batch;
pub mod document;
pub mod error;
pub mod fictitious;
pub mod game;
pub mod generate;
pub mod graph;
pub mod ratio;
pub mod simplex;
pub mod solver;
pub mod strategy;
pub mod subgraphs;
pub mod tree_opt;

pub use error::{CsdError, Result};
pub use graph::{parse_graph, spanning_tree, Graph, Tree};
pub use ratio::Rational;
pub use solver::{build_equilibrium, build_equilibrium_detailed, solve_maxmin, ExactSolution};
pub use strategy::{DefenseStrategy, StrategyProfile};
pub use subgraphs::{enumerate_action_set, ActionSet, LambdaSubgraph};
