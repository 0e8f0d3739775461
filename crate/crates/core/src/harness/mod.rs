//! Experiment orchestration: one graph, one probability scheme, one cost
//! draw, and a grid of selection methods by budgets, written as CSV and
//! JSON result files.

mod config;
mod output;
mod run;

use std::fmt;

pub use config::{ExperimentConfig, Timing, DEFAULT_BUDGETS};
pub use output::{emit_results, read_results_json, write_results, Format, ResultRow, ResultTable, RunStatus, CSV_HEADER};
pub use run::{communities_for, prepare, run_experiment, shapley_for, Instance, RunFailure};

use crate::error::Error;

/// Pipeline step an error came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Config,
    Load,
    Probabilities,
    Costs,
    Cache,
    Shapley,
    Communities,
    Selection,
    Evaluation,
    Output,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Config => "config",
            Stage::Load => "load",
            Stage::Probabilities => "probabilities",
            Stage::Costs => "costs",
            Stage::Cache => "cache",
            Stage::Shapley => "shapley",
            Stage::Communities => "communities",
            Stage::Selection => "selection",
            Stage::Evaluation => "evaluation",
            Stage::Output => "output",
        };
        f.write_str(s)
    }
}

#[derive(Debug)]
pub struct StageError {
    pub stage: Stage,
    pub source: Error,
}

impl StageError {
    /// Configuration problems are the caller's fault; everything else is a
    /// runtime failure.
    pub fn is_validation(&self) -> bool {
        self.stage == Stage::Config
            || matches!(self.source, Error::Parse { .. } | Error::Cost { .. })
    }
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.stage, self.source)
    }
}

impl std::error::Error for StageError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}
