use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, NodeId};
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostProvenance {
    Interval { lo: u64, hi: u64, seed: u64 },
    File(PathBuf),
}

/// Integer selection cost of every node.
#[derive(Debug, Clone, PartialEq)]
pub struct CostAssignment {
    costs: Vec<u64>,
    provenance: CostProvenance,
}

impl CostAssignment {
    /// Independent uniform integers in `[lo, hi]`, reproducible from `seed`.
    pub fn uniform(graph: &Graph, lo: u64, hi: u64, seed: u64) -> Result<Self> {
        if lo < 1 || hi < lo {
            return Err(Error::domain(format!("cost interval [{lo},{hi}] must satisfy 1 <= lo <= hi")));
        }
        let mut rng = rng::seeded(seed);
        let costs = (0..graph.node_count()).map(|_| rng.gen_range(lo..=hi)).collect();
        Ok(CostAssignment {
            costs,
            provenance: CostProvenance::Interval { lo, hi, seed },
        })
    }

    /// Explicit costs, mostly for fixtures.
    pub fn from_vec(costs: Vec<u64>) -> Result<Self> {
        if let Some(i) = costs.iter().position(|&c| c == 0) {
            return Err(Error::Cost {
                node: i.to_string(),
                message: "cost must be a positive integer".into(),
            });
        }
        Ok(CostAssignment {
            costs,
            provenance: CostProvenance::File(PathBuf::from("<memory>")),
        })
    }

    /// Reads `identifier,cost` lines. Every node of `graph` must appear
    /// exactly once with a positive integer cost.
    pub fn from_file(graph: &Graph, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_reader(graph, BufReader::new(file), path)
    }

    pub fn from_reader<R: BufRead>(graph: &Graph, reader: R, origin: &Path) -> Result<Self> {
        let mut costs: Vec<Option<u64>> = vec![None; graph.node_count()];
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(origin, e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                path: origin.to_path_buf(),
                line: i + 1,
                message,
            };
            let (id, cost) = line
                .split_once(',')
                .ok_or_else(|| parse_err(format!("expected `identifier,cost`, found `{line}`")))?;
            let (id, cost) = (id.trim(), cost.trim());
            let node = graph.node_id(id).ok_or_else(|| Error::Cost {
                node: id.to_owned(),
                message: "identifier not present in the graph".into(),
            })?;
            let value: i64 = cost.parse().map_err(|_| Error::Cost {
                node: id.to_owned(),
                message: format!("`{cost}` is not an integer"),
            })?;
            if value <= 0 {
                return Err(Error::Cost {
                    node: id.to_owned(),
                    message: format!("cost {value} is not positive"),
                });
            }
            if costs[node as usize].replace(value as u64).is_some() {
                return Err(Error::Cost {
                    node: id.to_owned(),
                    message: "listed more than once".into(),
                });
            }
        }
        let costs = costs
            .into_iter()
            .enumerate()
            .map(|(u, c)| {
                c.ok_or_else(|| Error::Cost {
                    node: graph.label(u as NodeId).to_owned(),
                    message: "missing from cost file".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CostAssignment {
            costs,
            provenance: CostProvenance::File(origin.to_path_buf()),
        })
    }

    pub fn write<W: Write>(&self, graph: &Graph, mut out: W) -> std::io::Result<()> {
        for (u, c) in self.costs.iter().enumerate() {
            writeln!(out, "{},{}", graph.label(u as NodeId), c)?;
        }
        Ok(())
    }

    pub fn cost(&self, u: NodeId) -> u64 {
        self.costs[u as usize]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.costs
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn provenance(&self) -> &CostProvenance {
        &self.provenance
    }

    pub fn total(&self, nodes: &[NodeId]) -> u64 {
        nodes.iter().map(|&u| self.cost(u)).sum()
    }
}
