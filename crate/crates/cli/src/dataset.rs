//! CSV dataset ingestion.
//!
//! One design per row, objectives taken from named columns. Columns listed
//! in `negate_columns` are multiplied by -1 on load, which turns
//! minimize-type objectives (cost, area, latency) into the maximize
//! convention used everywhere else. Parse failures name the offending row
//! and column.
//!
//! The parser handles plain comma-separated files with a header line;
//! quoting is not supported, fields are trimmed, and CRLF line endings are
//! accepted.

use std::fs;
use std::path::PathBuf;

use vecopt::DesignSet;

use crate::error::{CliError, CliResult};

/// What to read from a CSV file and how to orient it.
#[derive(Debug, Clone)]
pub struct DatasetSpec {
    pub path: PathBuf,
    /// Objective columns in order; empty means every column except the id
    /// column.
    pub objective_columns: Vec<String>,
    /// Subset of the objective columns to negate on load.
    pub negate_columns: Vec<String>,
    /// Optional label column; row indices are used when absent.
    pub id_column: Option<String>,
}

pub fn load_dataset(spec: &DatasetSpec) -> CliResult<DesignSet> {
    let text = fs::read_to_string(&spec.path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", spec.path.display())))?;
    parse_dataset(&text, spec)
}

/// Parse CSV text according to a dataset spec; split out for testability.
pub fn parse_dataset(text: &str, spec: &DatasetSpec) -> CliResult<DesignSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header_line) = lines
        .next()
        .ok_or_else(|| CliError::Data(format!("{}: file is empty", spec.path.display())))?;
    let header: Vec<String> = split_row(header_line);

    let find = |name: &str| -> CliResult<usize> {
        header.iter().position(|h| h == name).ok_or_else(|| {
            CliError::Data(format!(
                "{}: missing column '{name}' (header has: {})",
                spec.path.display(),
                header.join(", ")
            ))
        })
    };

    let id_idx = match &spec.id_column {
        Some(name) => Some(find(name)?),
        None => None,
    };

    let objective_names: Vec<String> = if spec.objective_columns.is_empty() {
        header
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != id_idx)
            .map(|(_, h)| h.clone())
            .collect()
    } else {
        spec.objective_columns.clone()
    };
    if objective_names.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no objective columns",
            spec.path.display()
        )));
    }
    for negated in &spec.negate_columns {
        if !objective_names.contains(negated) {
            return Err(CliError::Usage(format!(
                "negated column '{negated}' is not among the objective columns"
            )));
        }
    }

    let objective_idx: Vec<usize> = objective_names
        .iter()
        .map(|n| find(n))
        .collect::<CliResult<_>>()?;
    let negate: Vec<bool> = objective_names
        .iter()
        .map(|n| spec.negate_columns.contains(n))
        .collect();

    let mut means = Vec::new();
    let mut labels = Vec::new();
    for (line_no, line) in lines {
        let fields = split_row(line);
        if fields.len() != header.len() {
            return Err(CliError::Data(format!(
                "{}: row at line {} has {} fields, header has {}",
                spec.path.display(),
                line_no + 1,
                fields.len(),
                header.len()
            )));
        }
        let mut mean = Vec::with_capacity(objective_idx.len());
        for (slot, (&idx, &neg)) in objective_idx.iter().zip(&negate).enumerate() {
            let cell = &fields[idx];
            let value: f64 = cell.parse().map_err(|_| {
                CliError::Data(format!(
                    "{}: row at line {}, column '{}': cannot parse '{}' as a number",
                    spec.path.display(),
                    line_no + 1,
                    objective_names[slot],
                    cell
                ))
            })?;
            if !value.is_finite() {
                return Err(CliError::Data(format!(
                    "{}: row at line {}, column '{}': non-finite value",
                    spec.path.display(),
                    line_no + 1,
                    objective_names[slot]
                )));
            }
            mean.push(if neg { -value } else { value });
        }
        labels.push(match id_idx {
            Some(idx) => fields[idx].clone(),
            None => means.len().to_string(),
        });
        means.push(mean);
    }

    if means.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no data rows",
            spec.path.display()
        )));
    }
    DesignSet::new(means, labels).map_err(CliError::from)
}

fn split_row(line: &str) -> Vec<String> {
    line.trim_end_matches('\r')
        .split(',')
        .map(|f| f.trim().to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(objectives: &[&str], negate: &[&str], id: Option<&str>) -> DatasetSpec {
        DatasetSpec {
            path: PathBuf::from("test.csv"),
            objective_columns: objectives.iter().map(|s| s.to_string()).collect(),
            negate_columns: negate.iter().map(|s| s.to_string()).collect(),
            id_column: id.map(|s| s.to_string()),
        }
    }

    #[test]
    fn negated_column_flips_sign() {
        let text = "area,throughput\n2.0,5.0\n3.5,4.0\n1.0,1.0\n";
        let design = parse_dataset(text, &spec(&["area", "throughput"], &["area"], None)).unwrap();
        assert_eq!(design.len(), 3);
        assert_eq!(design.mean(0), &[-2.0, 5.0]);
        assert_eq!(design.mean(1), &[-3.5, 4.0]);
        assert_eq!(design.label(2), "2");
    }

    #[test]
    fn id_column_becomes_label() {
        let text = "name,x,y\nfirst,1,2\nsecond,3,4\n";
        let design = parse_dataset(text, &spec(&["x", "y"], &[], Some("name"))).unwrap();
        assert_eq!(design.label(0), "first");
        assert_eq!(design.label(1), "second");
        assert_eq!(design.mean(1), &[3.0, 4.0]);
    }

    #[test]
    fn default_objectives_are_all_non_id_columns() {
        let text = "id,x,y\na,1,2\n";
        let design = parse_dataset(text, &spec(&[], &[], Some("id"))).unwrap();
        assert_eq!(design.dim(), 2);
        assert_eq!(design.mean(0), &[1.0, 2.0]);
    }

    #[test]
    fn malformed_cell_names_row_and_column() {
        let text = "x,y\n1,2\noops,4\n";
        let err = parse_dataset(text, &spec(&["x", "y"], &[], None)).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        assert!(msg.contains("'x'"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn short_row_is_reported() {
        let text = "x,y\n1\n";
        let err = parse_dataset(text, &spec(&["x", "y"], &[], None)).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn missing_column_is_reported() {
        let text = "x,y\n1,2\n";
        let err = parse_dataset(text, &spec(&["z"], &[], None)).unwrap_err();
        assert!(err.to_string().contains("'z'"), "{err}");
    }

    #[test]
    fn empty_inputs_are_rejected() {
        assert!(parse_dataset("", &spec(&["x"], &[], None)).is_err());
        assert!(parse_dataset("x,y\n", &spec(&["x", "y"], &[], None)).is_err());
    }

    #[test]
    fn negate_must_be_a_subset_of_objectives() {
        let text = "x,y\n1,2\n";
        let err = parse_dataset(text, &spec(&["x"], &["y"], None)).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn crlf_endings_are_accepted() {
        let text = "x,y\r\n1,2\r\n";
        let design = parse_dataset(text, &spec(&["x", "y"], &[], None)).unwrap();
        assert_eq!(design.mean(0), &[1.0, 2.0]);
    }
}
