use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng;

const TRIVALENCY_LEVELS: [f64; 3] = [0.1, 0.01, 0.001];

/// How influence probabilities are put on the arcs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbabilityScheme {
    /// Every arc gets the same probability.
    Uniform(f64),
    /// Each edge draws uniformly from {0.1, 0.01, 0.001}.
    Trivalency { seed: u64 },
    /// `P(u, v) = 1 / indeg(v)`.
    WeightedCascade,
}

impl ProbabilityScheme {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProbabilityScheme::Uniform(p) if !(p > 0.0 && p <= 1.0) => {
                Err(Error::domain(format!("uniform probability {p} outside (0,1]")))
            }
            _ => Ok(()),
        }
    }

    /// Parses `uniform:<p>`, `trivalency[:<seed>]`, `wc` or
    /// `weighted-cascade`; a trivalency scheme without an explicit seed uses
    /// `default_seed`.
    pub fn parse_with_seed(s: &str, default_seed: u64) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (s, None),
        };
        let scheme = match (kind.to_ascii_lowercase().as_str(), arg) {
            ("uniform", Some(p)) => ProbabilityScheme::Uniform(
                p.parse()
                    .map_err(|_| Error::domain(format!("bad uniform probability `{p}`")))?,
            ),
            ("trivalency", None) => ProbabilityScheme::Trivalency { seed: default_seed },
            ("trivalency", Some(seed)) => ProbabilityScheme::Trivalency {
                seed: seed
                    .parse()
                    .map_err(|_| Error::domain(format!("bad trivalency seed `{seed}`")))?,
            },
            ("wc" | "weighted-cascade" | "weighted_cascade", None) => ProbabilityScheme::WeightedCascade,
            _ => return Err(Error::domain(format!("unknown probability scheme `{s}`"))),
        };
        scheme.validate()?;
        Ok(scheme)
    }

    /// Returns `graph` with every arc probability set by this scheme.
    pub fn apply(&self, graph: Graph) -> Result<Graph> {
        self.validate()?;
        Ok(match *self {
            ProbabilityScheme::Uniform(p) => graph.reweighted(|_, _, _| p),
            ProbabilityScheme::WeightedCascade => {
                // an arc into v exists, so indeg(v) >= 1
                graph.reweighted(|g, _, v| 1.0 / g.in_degree(v) as f64)
            }
            ProbabilityScheme::Trivalency { seed } => {
                let draws = trivalency_draws(&graph, seed);
                let directed = graph.is_directed();
                graph.reweighted(|g, u, v| {
                    // undirected edges carry one draw, stored on the arc from the lower index
                    let (a, b) = if directed || u < v { (u, v) } else { (v, u) };
                    let pos = g.out_arcs(a).binary_search_by_key(&b, |x| x.node).expect("arc exists");
                    draws[a as usize][pos]
                })
            }
        })
    }
}

/// One draw per edge in (source, target) order; only the lower-index arc of
/// an undirected edge consumes a draw.
fn trivalency_draws(graph: &Graph, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng::seeded(seed);
    graph
        .nodes()
        .map(|u| {
            graph
                .out_arcs(u)
                .iter()
                .map(|a| {
                    if graph.is_directed() || u < a.node {
                        *TRIVALENCY_LEVELS.choose(&mut rng).expect("non-empty")
                    } else {
                        f64::NAN
                    }
                })
                .collect()
        })
        .collect()
}

/// Convenience wrapper matching the scheme-first call style.
pub fn assign_probabilities(graph: Graph, scheme: &ProbabilityScheme) -> Result<Graph> {
    scheme.apply(graph)
}

impl fmt::Display for ProbabilityScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbabilityScheme::Uniform(p) => write!(f, "uniform:{p}"),
            ProbabilityScheme::Trivalency { seed } => write!(f, "trivalency:{seed}"),
            ProbabilityScheme::WeightedCascade => f.write_str("wc"),
        }
    }
}

impl FromStr for ProbabilityScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProbabilityScheme::parse_with_seed(s, 0)
    }
}
