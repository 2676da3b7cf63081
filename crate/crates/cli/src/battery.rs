//! Experiment batteries: grids of (budget, epsilon, cone) cells.
//!
//! Sampling is keyed by `(seed, budget, run)` only. Epsilon enters the
//! evaluation, not the sampling, and the returned set of every cone is
//! computed from the same empirical means, so all cells that share a
//! resolved budget share their runs. This mirrors how grid batteries are
//! usually reported (per-run returned sets fixed across the epsilon column)
//! and makes the whole battery a deterministic function of the root seed.
//!
//! Runs execute on a worker pool; results are collected in (budget, run)
//! order, so output files are byte-stable across thread schedules.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use vecopt::rng::derive_stream;
use vecopt::{
    BatterySummary, BudgetChoice, DesignSet, GapTable, PolyhedralCone, build_gap_table,
    empirical_means, evaluate_run, pac_budget, pareto_set,
};

use crate::config::BatteryConfig;
use crate::error::{CliError, CliResult};

/// A cone participating in a battery, with its identifier and, when known,
/// its distortion constant (needed to resolve `"auto"` budgets).
pub struct ConeEntry {
    pub id: String,
    pub cone: PolyhedralCone,
    pub beta: Option<f64>,
}

/// The returned set of one cone in one run.
#[derive(Debug, Clone, Serialize)]
pub struct SetEntry {
    pub cone: String,
    pub set: Vec<usize>,
}

/// One sampled run: empirical means plus the returned set under every cone.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    #[serde(rename = "L")]
    pub budget: u64,
    pub run: u32,
    pub total_samples: u64,
    pub returned_sets: Vec<SetEntry>,
    pub empirical_means: Vec<Vec<f64>>,
}

/// Aggregated outcome of one (budget, epsilon, cone) cell.
#[derive(Debug, Clone)]
pub struct AggregateRow {
    /// Realized budget (auto cells record the resolved value).
    pub budget: u64,
    pub epsilon: f64,
    pub cone_id: String,
    pub summary: BatterySummary,
}

#[derive(Debug)]
pub struct BatteryResult {
    pub records: Vec<RunRecord>,
    pub rows: Vec<AggregateRow>,
}

fn resolve_budget(
    choice: BudgetChoice,
    epsilon: f64,
    cone: &ConeEntry,
    design: &DesignSet,
    config: &BatteryConfig,
) -> CliResult<u64> {
    match choice {
        BudgetChoice::Fixed(l) => Ok(l),
        BudgetChoice::Auto => {
            let beta = cone.beta.ok_or_else(|| {
                CliError::Usage(format!(
                    "cone '{}' has no closed-form distortion constant; \
                     set \"beta\" in the config to use L = \"auto\"",
                    cone.id
                ))
            })?;
            Ok(pac_budget(
                epsilon,
                config.delta,
                design.len(),
                beta,
                config.concentration_c,
                config.sigma,
                design.dim(),
            )?)
        }
    }
}

/// Run the full grid and aggregate every cell.
pub fn run_battery(
    design: &DesignSet,
    cones: &[ConeEntry],
    config: &BatteryConfig,
) -> CliResult<BatteryResult> {
    if cones.is_empty() {
        return Err(CliError::Usage("at least one cone is required".into()));
    }
    for entry in cones {
        if entry.cone.dim() != design.dim() {
            return Err(CliError::Usage(format!(
                "cone '{}' has dimension {}, dataset has {}",
                entry.id,
                entry.cone.dim(),
                design.dim()
            )));
        }
    }

    // Resolve every cell up front; config errors must precede any sampling.
    let mut cell_budgets: Vec<Vec<Vec<u64>>> = Vec::with_capacity(config.budgets.len());
    for &choice in &config.budgets {
        let mut per_eps = Vec::with_capacity(config.epsilons.len());
        for &eps in &config.epsilons {
            let mut per_cone = Vec::with_capacity(cones.len());
            for cone in cones {
                per_cone.push(resolve_budget(choice, eps, cone, design, config)?);
            }
            per_eps.push(per_cone);
        }
        cell_budgets.push(per_eps);
    }

    let noise = config.noise();
    let distinct_budgets: Vec<u64> = {
        let mut set: Vec<u64> = cell_budgets.iter().flatten().flatten().copied().collect();
        set.sort_unstable();
        set.dedup();
        set
    };

    let jobs: Vec<(u64, u32)> = distinct_budgets
        .iter()
        .flat_map(|&budget| (0..config.runs).map(move |run| (budget, run)))
        .collect();
    let records: Vec<RunRecord> = jobs
        .into_par_iter()
        .map(|(budget, run)| -> CliResult<RunRecord> {
            let run_seed = derive_stream(derive_stream(config.seed, budget), run as u64);
            let means = empirical_means(design, &noise, budget, run_seed);
            let empirical = DesignSet::new(means, design.labels().to_vec())?;
            let returned_sets = cones
                .iter()
                .map(|entry| -> CliResult<SetEntry> {
                    Ok(SetEntry {
                        cone: entry.id.clone(),
                        set: pareto_set(&empirical, &entry.cone, config.tol)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(RunRecord {
                budget,
                run,
                total_samples: budget * design.len() as u64,
                returned_sets,
                empirical_means: empirical.means().to_vec(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut by_budget: BTreeMap<u64, Vec<&RunRecord>> = BTreeMap::new();
    for record in &records {
        by_budget.entry(record.budget).or_default().push(record);
    }

    let truths: Vec<GapTable> = cones
        .iter()
        .map(|entry| Ok(build_gap_table(design, &entry.cone, config.tol)?))
        .collect::<CliResult<Vec<_>>>()?;

    let mut rows = Vec::new();
    for (bi, _) in config.budgets.iter().enumerate() {
        for (ei, &eps) in config.epsilons.iter().enumerate() {
            for (ci, entry) in cones.iter().enumerate() {
                let budget = cell_budgets[bi][ei][ci];
                let reports = by_budget[&budget]
                    .iter()
                    .map(|record| {
                        Ok(evaluate_run(
                            &record.returned_sets[ci].set,
                            &truths[ci],
                            eps,
                        )?)
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                rows.push(AggregateRow {
                    budget,
                    epsilon: eps,
                    cone_id: entry.id.clone(),
                    summary: vecopt::aggregate(&reports)?,
                });
            }
        }
    }

    Ok(BatteryResult { records, rows })
}
