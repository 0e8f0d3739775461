//! Seed selection under a budget.
//!
//! Every selector makes one pass over a fixed ranking and never exceeds the
//! budget: `C(S) <= B` holds for all outputs.

mod baseline;
mod ranked;

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use baseline::{clustering_coefficient, clustering_coefficients, select_baseline};
pub use ranked::{select_bimgt, select_bimgtc, BudgetAllocation};

use crate::error::{Error, Result};
use crate::graph::{CostAssignment, Graph, NodeId};
use crate::mia::MiiaCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    /// Global Shapley ranking with neighbour exclusion.
    #[serde(rename = "BIMGT")]
    Bimgt,
    /// Shapley ranking per community with proportional budgets.
    #[serde(rename = "BIMGTC")]
    Bimgtc,
    /// Uniform random picks.
    #[serde(rename = "RAND")]
    Rand,
    /// Maximum degree first.
    #[serde(rename = "MDH")]
    Mdh,
    /// Maximum clustering coefficient first.
    #[serde(rename = "MCCH")]
    Mcch,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Bimgt, Method::Bimgtc, Method::Rand, Method::Mdh, Method::Mcch];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Bimgt => "BIMGT",
            Method::Bimgtc => "BIMGTC",
            Method::Rand => "RAND",
            Method::Mdh => "MDH",
            Method::Mcch => "MCCH",
        }
    }

    pub fn needs_shapley(self) -> bool {
        matches!(self, Method::Bimgt | Method::Bimgtc)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::domain(format!("unknown method `{s}` (expected BIMGT, BIMGTC, RAND, MDH or MCCH)")))
    }
}

/// Selected seeds in selection order.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet {
    pub nodes: Vec<NodeId>,
    pub total_cost: u64,
    pub method: Method,
    pub budget: u64,
    /// Budget left unspent. For BIMGTC this is the final remainder of the
    /// largest community after every transfer.
    pub remaining: f64,
    /// `sigma(S)`, once evaluated.
    pub spread: Option<f64>,
}

impl SeedSet {
    fn empty(method: Method, budget: u64) -> Self {
        SeedSet {
            nodes: Vec::new(),
            total_cost: 0,
            method,
            budget,
            remaining: budget as f64,
            spread: None,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Computes and stores `sigma(S)`.
    pub fn evaluate(&mut self, graph: &Graph, cache: &MiiaCache) -> Result<f64> {
        let spread = cache.sigma(graph, &self.nodes)?;
        self.spread = Some(spread);
        Ok(spread)
    }

    pub fn record(&self, graph: &Graph) -> SeedRecord {
        SeedRecord {
            method: self.method,
            budget: self.budget,
            seeds: self.nodes.iter().map(|&u| graph.label(u).to_owned()).collect(),
            total_cost: self.total_cost,
            spread: self.spread,
        }
    }
}

/// Exported form of a seed set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub method: Method,
    pub budget: u64,
    pub seeds: Vec<String>,
    pub total_cost: u64,
    pub spread: Option<f64>,
}

impl SeedRecord {
    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self).map_err(|e| Error::domain(format!("seed record: {e}")))
    }

    pub fn node_ids(&self, graph: &Graph) -> Result<Vec<NodeId>> {
        self.seeds
            .iter()
            .map(|s| graph.node_id(s).ok_or_else(|| Error::domain(format!("unknown seed `{s}`"))))
            .collect()
    }
}

/// Reads seeds either from a JSON seed record or from one identifier per
/// line.
pub fn read_seeds<R: BufRead>(graph: &Graph, mut reader: R, origin: &Path) -> Result<Vec<NodeId>> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|e| Error::io(origin, e))?;
    if text.trim_start().starts_with('{') {
        let record: SeedRecord = serde_json::from_str(&text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            line: e.line(),
            message: e.to_string(),
        })?;
        return record.node_ids(graph);
    }
    let mut seeds = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let id = line.trim();
        if id.is_empty() || id.starts_with('#') {
            continue;
        }
        let u = graph.node_id(id).ok_or_else(|| Error::Parse {
            path: origin.to_path_buf(),
            line: i + 1,
            message: format!("unknown identifier `{id}`"),
        })?;
        seeds.push(u);
    }
    Ok(seeds)
}

fn check_inputs(graph: &Graph, costs: &CostAssignment, values: Option<&[f64]>) -> Result<()> {
    let n = graph.node_count();
    if costs.len() != n {
        return Err(Error::domain(format!("{} costs for {n} nodes", costs.len())));
    }
    if let Some(values) = values {
        if values.len() != n {
            return Err(Error::domain(format!("{} Shapley values for {n} nodes", values.len())));
        }
        if let Some(u) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("Shapley value of `{}` is not finite", graph.label(u as NodeId))));
        }
    }
    Ok(())
}

/// Nodes by descending score, ties by ascending index.
fn descending(scores: &[f64]) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..scores.len() as NodeId).collect();
    order.sort_by(|&a, &b| scores[b as usize].total_cmp(&scores[a as usize]).then(a.cmp(&b)));
    order
}
