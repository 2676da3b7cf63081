//! Library behind the `vecopt` binary: dataset ingestion, cone
//! specifications, configuration files, battery orchestration, and output
//! writers. The binary is a thin argument-parsing layer over these modules;
//! tests drive them directly.

pub mod battery;
pub mod conespec;
pub mod config;
pub mod dataset;
pub mod error;
pub mod output;

pub use battery::{AggregateRow, BatteryResult, ConeEntry, RunRecord, SetEntry, run_battery};
pub use conespec::{ConeKind, ConeSpec, parse_angle};
pub use config::{BatteryConfig, NoiseKind};
pub use dataset::{DatasetSpec, load_dataset, parse_dataset};
pub use error::{CliError, CliResult};
