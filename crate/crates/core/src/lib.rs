//! Pareto set identification for vector optimization under polyhedral
//! ordering cones with stochastic bandit feedback.
//!
//! The crate has five layers:
//!
//! - [`cone`]: polyhedral ordering cones, membership, Euclidean projection
//!   onto polyhedra (Dykstra), distances, and the cone distortion constants.
//! - [`gaps`]: the direction-free escape/cover gaps between designs, the
//!   per-pair distance ratios, and full gap tables with suboptimality gaps.
//! - [`pareto`]: design sets and Pareto optimality under the cone order.
//! - [`bandit`]: noisy evaluation, the naive elimination algorithm, and the
//!   sample-budget formulas.
//! - [`evaluation`]: probably-approximately-correct success checks for
//!   returned sets and battery summaries.
//!
//! All randomness is deterministic given a root seed (see [`rng`]); runs
//! are reproducible bit for bit across invocations and thread schedules.

pub mod bandit;
pub mod cone;
pub mod error;
pub mod evaluation;
pub mod gaps;
pub mod pareto;
pub mod rng;

pub use bandit::{
    BudgetChoice, DEFAULT_CONCENTRATION_C, ExperimentConfig, NoiseModel, RunResult, empirical_gaps,
    empirical_means, naive_elimination, pac_budget, per_design_budget,
};
pub use cone::{
    BetaProvenance, ConeConstants, ConeFamily, DEFAULT_TOL, PolyhedralCone, Projection,
    beta_closed_form, beta_empirical, project_onto_polyhedron,
};
pub use error::{Error, Result};
pub use evaluation::{
    BatterySummary, GapStatistics, SuccessReport, aggregate, check_covering, check_gap_bound,
    evaluate_run, gap_statistics,
};
pub use gaps::{
    Dominance, GapTable, PairwiseGaps, build_gap_table, classify, cover_gap, distance_ratio,
    escape_gap,
};
pub use pareto::{DesignSet, dominates, pareto_set};
