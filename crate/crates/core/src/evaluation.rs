//! Success verification of returned Pareto sets against ground truth.
//!
//! A returned set `P` succeeds at level `eps` when both hold:
//!
//! 1. covering: every true Pareto design i is within reach of some returned
//!    design j, in the sense that a step of at most `eps` along a cone
//!    direction added to `mu_j` weakly dominates `mu_i`. This is exactly
//!    `min over j in P of cover(i, j) <= eps`, so the check reuses the
//!    pairwise cover gaps of the ground-truth table.
//! 2. gap bound: every returned non-Pareto design has suboptimality gap at
//!    most `eps`.
//!
//! Reported diagnostics follow the usual battery summaries: the number of
//! covering failures, the number of gap-bound failures, and the percentage
//! of true Pareto designs missing from `P`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaps::GapTable;

/// Verdict and diagnostics for one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessReport {
    /// Covering condition held.
    pub covering_ok: bool,
    /// Gap-bound condition held.
    pub gap_bound_ok: bool,
    /// True Pareto designs that failed the covering test (nf1).
    pub covering_failures: usize,
    /// Returned non-Pareto designs with suboptimality gap above eps (nf2).
    pub gap_bound_failures: usize,
    /// `|P* \ P| / |P*| * 100` (pm).
    pub missed_pareto_percent: f64,
}

impl SuccessReport {
    pub fn success(&self) -> bool {
        self.covering_ok && self.gap_bound_ok
    }
}

/// Averages over a battery of reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatterySummary {
    pub success_rate_percent: f64,
    pub mean_covering_failures: f64,
    pub mean_gap_bound_failures: f64,
    pub mean_missed_pareto_percent: f64,
}

/// Descriptive statistics of the suboptimality gaps of non-Pareto designs.
/// `std` is the sample standard deviation (divisor n - 1) and is `None` for
/// fewer than two values; all fields except `count` are `None` when every
/// design is Pareto.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapStatistics {
    pub count: usize,
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

fn check_indices(returned: &[usize], n: usize) -> Result<()> {
    if let Some(&bad) = returned.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidParameter(format!(
            "returned set contains index {bad}, but the table has {n} designs"
        )));
    }
    Ok(())
}

/// Covering test: for each true Pareto design i, some j in `returned` has
/// `cover(i, j) <= epsilon`. Returns the verdict and the failing i's.
/// An empty `returned` fails every Pareto design; that is a valid report,
/// not an error.
pub fn check_covering(
    returned: &[usize],
    truth: &GapTable,
    epsilon: f64,
) -> Result<(bool, Vec<usize>)> {
    check_indices(returned, truth.n_designs())?;
    let mut failing = Vec::new();
    for i in truth.pareto_indices() {
        let reachable = returned.iter().any(|&j| truth.pair(i, j).cover <= epsilon);
        if !reachable {
            failing.push(i);
        }
    }
    Ok((failing.is_empty(), failing))
}

/// Gap-bound test: every returned design outside the true Pareto set must
/// have suboptimality gap at most `epsilon`. Returns the verdict and the
/// violating indices.
pub fn check_gap_bound(
    returned: &[usize],
    truth: &GapTable,
    epsilon: f64,
) -> Result<(bool, Vec<usize>)> {
    check_indices(returned, truth.n_designs())?;
    let mask = truth.pareto_mask();
    let failing: Vec<usize> = returned
        .iter()
        .copied()
        .filter(|&i| !mask[i] && truth.suboptimality()[i] > epsilon)
        .collect();
    Ok((failing.is_empty(), failing))
}

/// Combine both checks into a full report.
pub fn evaluate_run(returned: &[usize], truth: &GapTable, epsilon: f64) -> Result<SuccessReport> {
    let (covering_ok, covering_fail) = check_covering(returned, truth, epsilon)?;
    let (gap_bound_ok, gap_fail) = check_gap_bound(returned, truth, epsilon)?;

    let pareto = truth.pareto_indices();
    let missed = pareto.iter().filter(|i| !returned.contains(i)).count();
    let missed_pareto_percent = if pareto.is_empty() {
        0.0
    } else {
        100.0 * missed as f64 / pareto.len() as f64
    };

    Ok(SuccessReport {
        covering_ok,
        gap_bound_ok,
        covering_failures: covering_fail.len(),
        gap_bound_failures: gap_fail.len(),
        missed_pareto_percent,
    })
}

/// Success rate and diagnostic means over a battery.
pub fn aggregate(reports: &[SuccessReport]) -> Result<BatterySummary> {
    if reports.is_empty() {
        return Err(Error::EmptyInput("no reports to aggregate".into()));
    }
    let n = reports.len() as f64;
    let successes = reports.iter().filter(|r| r.success()).count() as f64;
    Ok(BatterySummary {
        success_rate_percent: 100.0 * successes / n,
        mean_covering_failures: reports
            .iter()
            .map(|r| r.covering_failures as f64)
            .sum::<f64>()
            / n,
        mean_gap_bound_failures: reports
            .iter()
            .map(|r| r.gap_bound_failures as f64)
            .sum::<f64>()
            / n,
        mean_missed_pareto_percent: reports.iter().map(|r| r.missed_pareto_percent).sum::<f64>()
            / n,
    })
}

/// Statistics of the suboptimality gaps over non-Pareto designs.
pub fn gap_statistics(table: &GapTable) -> GapStatistics {
    let gaps: Vec<f64> = table
        .pareto_mask()
        .iter()
        .zip(table.suboptimality())
        .filter_map(|(&is_pareto, &gap)| (!is_pareto).then_some(gap))
        .collect();
    let count = gaps.len();
    if count == 0 {
        return GapStatistics {
            count,
            mean: None,
            std: None,
            min: None,
            max: None,
        };
    }
    let mean = gaps.iter().sum::<f64>() / count as f64;
    let std = (count > 1).then(|| {
        (gaps.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>() / (count as f64 - 1.0)).sqrt()
    });
    GapStatistics {
        count,
        mean: Some(mean),
        std,
        min: gaps.iter().copied().fold(f64::INFINITY, f64::min).into(),
        max: gaps
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
            .into(),
    }
}
