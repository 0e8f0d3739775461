//! The BIM game and its Shapley values.
//!
//! Players are the nodes of the graph and a coalition's utility is its MIA
//! spread. Shapley values are estimated by sampling uniform permutations;
//! the number of permutations comes from a Hoeffding-style bound on the
//! range of marginal contributions. An exact coalition-enumeration routine
//! serves tiny games and tests.

mod estimate;
mod exact;
mod range;

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use estimate::{estimate_shapley, estimate_shapley_with};
pub use exact::{exact_marginal_range, exact_shapley, DEFAULT_EXACT_LIMIT};
pub use range::{aggregate_range, marginal_gain_range, marginal_gain_upper};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::mia::MiiaCache;

/// Cooperative game whose utility is the MIA spread.
#[derive(Clone, Copy)]
pub struct BimGame<'a> {
    graph: &'a Graph,
    cache: &'a MiiaCache,
}

impl<'a> BimGame<'a> {
    pub fn new(graph: &'a Graph, cache: &'a MiiaCache) -> Result<Self> {
        cache.check(graph)?;
        Ok(BimGame { graph, cache })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn cache(&self) -> &'a MiiaCache {
        self.cache
    }

    pub fn players(&self) -> usize {
        self.graph.node_count()
    }

    /// `nu(S) = sigma(S)`.
    pub fn utility(&self, coalition: &[NodeId]) -> f64 {
        self.cache.sigma_mask(&self.cache.mask(coalition))
    }
}

/// `ceil(ln(2/delta) * r^2 / (2 eps^2))`, at least 1.
pub fn sample_bound(epsilon: f64, delta: f64, range: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::domain(format!("epsilon {epsilon} must be positive")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(format!("delta {delta} outside (0,1)")));
    }
    if !(range >= 0.0 && range.is_finite()) {
        return Err(Error::domain(format!("range {range} must be non-negative")));
    }
    let bound = ((2.0 / delta).ln() * range * range / (2.0 * epsilon * epsilon)).ceil();
    Ok((bound as u64).max(1))
}

/// How many permutations to draw and why.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub epsilon: f64,
    pub delta: f64,
    /// Aggregated marginal-gain range `r`.
    pub range: f64,
    /// Permutation count demanded by the bound.
    pub bound: u64,
    /// Permutations actually drawn.
    pub tau: u64,
    pub tau_cap: Option<u64>,
    /// Evaluations averaged per permutation.
    pub repetitions: u32,
}

impl SamplingPlan {
    pub fn new(epsilon: f64, delta: f64, range: f64, tau_cap: Option<u64>, repetitions: u32) -> Result<Self> {
        let bound = sample_bound(epsilon, delta, range)?;
        if tau_cap == Some(0) {
            return Err(Error::domain("tau cap must be positive"));
        }
        if repetitions == 0 {
            return Err(Error::domain("repetitions must be positive"));
        }
        let tau = tau_cap.map_or(bound, |cap| bound.min(cap));
        Ok(SamplingPlan {
            epsilon,
            delta,
            range,
            bound,
            tau,
            tau_cap,
            repetitions,
        })
    }

    /// Plan sized from the graph's aggregated range.
    pub fn for_graph(graph: &Graph, epsilon: f64, delta: f64, tau_cap: Option<u64>, repetitions: u32) -> Result<Self> {
        Self::new(epsilon, delta, aggregate_range(graph)?, tau_cap, repetitions)
    }

    pub fn is_capped(&self) -> bool {
        self.tau < self.bound
    }
}

/// Estimated Shapley values and the parameters that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapleyEstimate {
    pub values: Vec<f64>,
    pub plan: SamplingPlan,
    pub master_seed: u64,
    /// Per-node upper end `c_u` of the marginal-gain range.
    pub ranges: Vec<f64>,
}

impl ShapleyEstimate {
    pub fn value(&self, u: NodeId) -> f64 {
        self.values[u as usize]
    }

    /// Writes `identifier,phi` lines.
    pub fn write<W: Write>(&self, graph: &Graph, out: W) -> std::io::Result<()> {
        write_values(graph, &self.values, out)
    }
}

pub fn write_values<W: Write>(graph: &Graph, values: &[f64], mut out: W) -> std::io::Result<()> {
    for (u, phi) in values.iter().enumerate() {
        writeln!(out, "{},{}", graph.label(u as NodeId), phi)?;
    }
    Ok(())
}

/// Reads an `identifier,phi` file; every node must be present.
pub fn read_values<R: BufRead>(graph: &Graph, reader: R, origin: &Path) -> Result<Vec<f64>> {
    let mut values = vec![None; graph.node_count()];
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse {
            path: origin.to_path_buf(),
            line: i + 1,
            message,
        };
        let (id, phi) = line
            .split_once(',')
            .ok_or_else(|| bad(format!("expected `identifier,phi`, found `{line}`")))?;
        let u = graph
            .node_id(id.trim())
            .ok_or_else(|| bad(format!("unknown identifier `{}`", id.trim())))?;
        let phi: f64 = phi
            .trim()
            .parse()
            .map_err(|_| bad(format!("`{}` is not a number", phi.trim())))?;
        values[u as usize] = Some(phi);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(u, v)| v.ok_or_else(|| Error::domain(format!("no value for node `{}`", graph.label(u as NodeId)))))
        .collect()
}
