//! Output writers. All files are UTF-8 with `\n` line endings; all float
//! formatting goes through the shortest-roundtrip `Display`, so identical
//! inputs produce byte-identical files.

use std::io::Write;

use vecopt::GapStatistics;

use crate::battery::{AggregateRow, RunRecord};
use crate::error::CliResult;

/// One JSON object per line, one line per run.
pub fn write_runs_jsonl<W: Write>(out: &mut W, records: &[RunRecord]) -> CliResult<()> {
    for record in records {
        serde_json::to_writer(&mut *out, record)
            .map_err(|e| crate::error::CliError::Data(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Battery aggregate table: `L,epsilon,cone,success_rate,nf1,nf2,pm`.
pub fn write_aggregate_csv<W: Write>(out: &mut W, rows: &[AggregateRow]) -> CliResult<()> {
    writeln!(out, "L,epsilon,cone,success_rate,nf1,nf2,pm")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.budget,
            row.epsilon,
            row.cone_id,
            row.summary.success_rate_percent,
            row.summary.mean_covering_failures,
            row.summary.mean_gap_bound_failures,
            row.summary.mean_missed_pareto_percent,
        )?;
    }
    Ok(())
}

/// Pareto indices as a JSON array.
pub fn write_pareto_json<W: Write>(out: &mut W, indices: &[usize]) -> CliResult<()> {
    serde_json::to_writer(&mut *out, indices)
        .map_err(|e| crate::error::CliError::Data(e.to_string()))?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Single-row CSV of suboptimality-gap statistics; absent values stay empty.
pub fn write_gap_stats_csv<W: Write>(out: &mut W, stats: &GapStatistics) -> CliResult<()> {
    fn cell(v: Option<f64>) -> String {
        v.map(|x| x.to_string()).unwrap_or_default()
    }
    writeln!(out, "count,mean,std,min,max")?;
    writeln!(
        out,
        "{},{},{},{},{}",
        stats.count,
        cell(stats.mean),
        cell(stats.std),
        cell(stats.min),
        cell(stats.max),
    )?;
    Ok(())
}
