//! Experiment orchestration: purity convergence, relative-entropy bound
//! comparison and the l1 / formation relations over the `ρ(τ)` family, with
//! CSV, JSON and SVG output.
//!
//! Every random stream is derived from the configured seed and the cell it
//! belongs to, so results do not depend on thread scheduling.

pub mod cli;
mod config;
mod experiments;
mod plot;
mod table;

use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::coherence_bounds::BoundError;
use crate::shadows::ShadowError;
use crate::statekit::StateError;

pub use config::{theta_for_overlap, ExperimentConfig, FieldError, OutputFormat, OverlapSetting};
pub use experiments::{
    dump_snapshots, run_all, run_l1_cf, run_purity_sweep, run_re_qur, write_table, L1CfRow, PurityRow,
    ReQurRow, RunSummary,
};
pub use plot::{render_svg, PlotSpec, Series};
pub use table::{emit_csv, emit_json, emit_plot, format_sig, Cell, PlotRows, Table, TableRow};

/// Process exit codes used by the CLI.
pub mod exit_code {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INVALID_CONFIG: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {}", join(.0))]
    InvalidConfig(Vec<FieldError>),

    #[error("cannot read config {path}: {source}")]
    ConfigRead { path: PathBuf, source: io::Error },

    #[error("cannot parse config {path}: {source}")]
    ConfigParse { path: PathBuf, source: serde_json::Error },

    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("cannot write {path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },

    #[error("cannot write {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },

    #[error("cannot render plot {path}: {message}")]
    Plot { path: PathBuf, message: String },

    #[error("table {0} has no rows")]
    EmptyTable(String),

    #[error("column {column} of table {table} holds non-finite value {value}")]
    NonFinite { table: String, column: &'static str, value: f64 },

    #[error(transparent)]
    State(#[from] StateError),

    #[error(transparent)]
    Shadow(#[from] ShadowError),

    #[error(transparent)]
    Bound(#[from] BoundError),
}

fn join(errors: &[FieldError]) -> String {
    errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::InvalidConfig(_) | HarnessError::ConfigParse { .. } => exit_code::INVALID_CONFIG,
            HarnessError::ConfigRead { .. }
            | HarnessError::Io { .. }
            | HarnessError::Csv { .. }
            | HarnessError::Json { .. }
            | HarnessError::Plot { .. }
            | HarnessError::EmptyTable(_) => exit_code::IO,
            _ => exit_code::FAILURE,
        }
    }
}
