//! Subgame-perfect equilibria of a two-player game between a generalist that
//! chooses how openly to release a base model and a specialist that
//! fine-tunes it, under an open-source threshold backed by a penalty.
//!
//! The game is solved by backward induction: the specialist's performance
//! choice has a closed form, the generalist picks its openness from a small
//! candidate set, and the revenue share is bargained by grid search.
//! [`regulation`] then maps regulation profiles into compliance, deadweight,
//! abstention and Pareto-improving regions.

pub mod bargaining;
pub mod error;
pub mod model;
pub mod oracle;
pub mod parallel;
pub mod regulation;
pub mod response;

pub use bargaining::{bargaining_objective, solve_bargain, solve_bargain_with};
pub use error::{ModelError, Result};
pub use model::{
    generalist_cost, generalist_utility, revenue, specialist_cost, specialist_utility,
    BargainingRule, Equilibrium, GameParams, RegionLabel, Regulation, StrategyProfile,
};
pub use parallel::Execution;
pub use regulation::{
    classify_cell, indifference_boundary_numeric, indifference_penalty, pareto_optimal_policies,
    pareto_region_bounds, run_sweep, run_sweep_with, Axis, Objective, SweepParam, SweepSpec,
    SweepTable,
};
pub use response::{
    generalist_best_response, generalist_candidates, quadratic_coefficients,
    specialist_best_response, specialist_participates, SpecialistResponse,
};
