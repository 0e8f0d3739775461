use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ProbabilityScheme;
use crate::rng::{self, Stream};
use crate::selection::Method;

pub const DEFAULT_BUDGETS: [u64; 7] = [2000, 6000, 10000, 14000, 18000, 22000, 26000];

/// Whether result rows carry wall-clock timings. With `Off` every timing
/// column is 0 and result files depend only on the configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Timing {
    Wall,
    #[default]
    Off,
}

/// One experiment: a graph, one probability scheme, one cost draw, and a
/// grid of methods by budgets.
///
/// Stored as flat `key = value` lines (TOML). Relative paths are resolved
/// against the directory of the file they were read from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Tag written in the `dataset` column; defaults to the graph file stem.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    pub graph: PathBuf,
    #[serde(default)]
    pub directed: bool,
    /// `uniform:<p>`, `trivalency[:<seed>]` or `wc`.
    #[serde(default = "default_probability")]
    pub probability: String,
    /// `identifier,cost` file; when absent costs are drawn from
    /// `[cost_min, cost_max]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_file: Option<PathBuf>,
    #[serde(default = "default_cost_min")]
    pub cost_min: u64,
    #[serde(default = "default_cost_max")]
    pub cost_max: u64,
    #[serde(default = "default_budgets")]
    pub budgets: Vec<u64>,
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default = "default_accuracy")]
    pub epsilon: f64,
    #[serde(default = "default_accuracy")]
    pub delta: f64,
    #[serde(default = "default_repetitions")]
    pub repetitions: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_cap: Option<u64>,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default)]
    pub seed: u64,
    /// Louvain resolution.
    #[serde(default = "default_resolution")]
    pub resolution: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_json: Option<PathBuf>,
    /// Directory receiving one seed record per cell.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds_dir: Option<PathBuf>,
    #[serde(default)]
    pub timing: Timing,
    /// Run the (method, budget) cells concurrently.
    #[serde(default)]
    pub parallel_cells: bool,
}

fn default_probability() -> String {
    "wc".into()
}
fn default_cost_min() -> u64 {
    50
}
fn default_cost_max() -> u64 {
    100
}
fn default_budgets() -> Vec<u64> {
    DEFAULT_BUDGETS.to_vec()
}
fn default_theta() -> f64 {
    crate::mia::DEFAULT_THETA
}
fn default_accuracy() -> f64 {
    0.1
}
fn default_repetitions() -> u32 {
    1
}
fn default_methods() -> Vec<Method> {
    Method::ALL.to_vec()
}
fn default_resolution() -> f64 {
    1.0
}

impl ExperimentConfig {
    /// Configuration with every optional key at its default.
    pub fn new(graph: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            dataset: None,
            graph: graph.into(),
            directed: false,
            probability: default_probability(),
            cost_file: None,
            cost_min: default_cost_min(),
            cost_max: default_cost_max(),
            budgets: default_budgets(),
            theta: default_theta(),
            epsilon: default_accuracy(),
            delta: default_accuracy(),
            repetitions: default_repetitions(),
            tau_cap: None,
            methods: default_methods(),
            seed: 0,
            resolution: default_resolution(),
            output_csv: None,
            output_json: None,
            seeds_dir: None,
            timing: Timing::Off,
            parallel_cells: false,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::domain(format!("config: {e}")))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::domain(format!("config: {e}")))
    }

    /// Reads a TOML config, or the JSON written by a previous run (its
    /// `config` member), and resolves relative paths against the file's
    /// directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = if text.trim_start().starts_with('{') {
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::domain(format!("{}: {e}", path.display())))?;
            let inner = value.get("config").cloned().unwrap_or(value);
            serde_json::from_value(inner).map_err(|e| Error::domain(format!("{}: {e}", path.display())))?
        } else {
            Self::from_toml(&text).map_err(|e| Error::domain(format!("{}: {e}", path.display())))?
        };
        if let Some(dir) = path.parent() {
            config.rebase(dir);
        }
        Ok(config)
    }

    fn rebase(&mut self, dir: &Path) {
        let join = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        join(&mut self.graph);
        for p in [&mut self.cost_file, &mut self.output_csv, &mut self.output_json, &mut self.seeds_dir]
            .into_iter()
            .flatten()
        {
            join(p);
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::domain("methods must not be empty"));
        }
        let mut seen = self.methods.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.methods.len() {
            return Err(Error::domain("methods must not repeat"));
        }
        if self.budgets.is_empty() {
            return Err(Error::domain("budgets must not be empty"));
        }
        if self.budgets[0] == 0 || self.budgets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("budgets must be positive and strictly increasing"));
        }
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return Err(Error::domain(format!("theta {} outside (0,1]", self.theta)));
        }
        if self.cost_file.is_none() && !(1 <= self.cost_min && self.cost_min <= self.cost_max) {
            return Err(Error::domain(format!(
                "cost interval [{}, {}] needs 1 <= cost_min <= cost_max",
                self.cost_min, self.cost_max
            )));
        }
        if !(self.resolution > 0.0 && self.resolution.is_finite()) {
            return Err(Error::domain(format!("resolution {} must be positive", self.resolution)));
        }
        if self.methods.iter().any(|m| m.needs_shapley()) {
            crate::shapley::SamplingPlan::new(self.epsilon, self.delta, 0.0, self.tau_cap, self.repetitions)?;
        }
        self.scheme()?.validate()
    }

    /// Probability scheme; a trivalency scheme without a seed takes one
    /// derived from the master seed.
    pub fn scheme(&self) -> Result<ProbabilityScheme> {
        ProbabilityScheme::parse_with_seed(&self.probability, rng::derive_seed(self.seed, Stream::Trivalency))
    }

    pub fn dataset_tag(&self) -> String {
        self.dataset.clone().unwrap_or_else(|| {
            self.graph
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".into())
        })
    }

    /// The same run with every implicit choice written out.
    pub fn resolved(&self) -> Result<Self> {
        let mut out = self.clone();
        out.dataset = Some(self.dataset_tag());
        out.probability = self.scheme()?.to_string();
        Ok(out)
    }
}
