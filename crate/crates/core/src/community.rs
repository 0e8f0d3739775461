//! Louvain community detection and Newman modularity.
//!
//! Detection runs on the undirected view of the graph with unit edge
//! weights; arc probabilities are ignored. Each level repeats local moves in
//! a seeded random order until no node can raise modularity, then collapses
//! communities into weighted nodes. Detection stops at the first level where
//! no node moves.

use std::io::{BufRead, Write};
use std::path::Path;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LouvainConfig {
    /// Multiplier on the null-model term; 1 is classic modularity.
    pub resolution: f64,
    /// A move is accepted only when it gains more than this.
    pub min_gain: f64,
}

impl Default for LouvainConfig {
    fn default() -> Self {
        LouvainConfig {
            resolution: 1.0,
            min_gain: 1e-12,
        }
    }
}

/// Disjoint communities covering every node.
///
/// Community indices follow the first appearance of a member in node order,
/// so node 0 is always in community 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityPartition {
    assignment: Vec<u32>,
    members: Vec<Vec<NodeId>>,
    largest: usize,
    modularity: f64,
    levels: Vec<f64>,
}

impl CommunityPartition {
    /// Partition from a per-node label; labels are renumbered by first
    /// appearance.
    pub fn from_assignment(graph: &Graph, labels: &[u32]) -> Result<Self> {
        let n = graph.node_count();
        if labels.len() != n {
            return Err(Error::domain(format!("partition labels {} of {n} nodes", labels.len())));
        }
        if n == 0 {
            return Err(Error::domain("partition of an empty graph"));
        }
        let mut renumber = std::collections::HashMap::new();
        let mut assignment = Vec::with_capacity(n);
        let mut members: Vec<Vec<NodeId>> = Vec::new();
        for (u, &label) in labels.iter().enumerate() {
            let c = *renumber.entry(label).or_insert_with(|| {
                members.push(Vec::new());
                members.len() as u32 - 1
            });
            assignment.push(c);
            members[c as usize].push(u as NodeId);
        }
        // first maximum wins, so ties go to the smallest index
        let largest = members
            .iter()
            .enumerate()
            .fold(0, |best, (i, m)| if m.len() > members[best].len() { i } else { best });
        let mut partition = CommunityPartition {
            assignment,
            members,
            largest,
            modularity: 0.0,
            levels: Vec::new(),
        };
        partition.modularity = modularity_with(graph, &partition.assignment, 1.0);
        Ok(partition)
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn community_of(&self, u: NodeId) -> usize {
        self.assignment[u as usize] as usize
    }

    pub fn communities(&self) -> &[Vec<NodeId>] {
        &self.members
    }

    pub fn members(&self, community: usize) -> &[NodeId] {
        &self.members[community]
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// Index of `K_max`.
    pub fn largest(&self) -> usize {
        self.largest
    }

    /// Classic modularity of this partition on the graph it was built from.
    pub fn modularity(&self) -> f64 {
        self.modularity
    }

    /// Modularity after each Louvain level, in level order; empty for
    /// partitions not produced by detection.
    pub fn level_modularity(&self) -> &[f64] {
        &self.levels
    }

    /// Writes `identifier,community` lines.
    pub fn write<W: Write>(&self, graph: &Graph, mut out: W) -> std::io::Result<()> {
        for (u, c) in self.assignment.iter().enumerate() {
            writeln!(out, "{},{}", graph.label(u as NodeId), c)?;
        }
        Ok(())
    }

    /// Reads `identifier,community` lines; every node must be assigned once.
    pub fn read<R: BufRead>(graph: &Graph, reader: R, origin: &Path) -> Result<Self> {
        let mut labels = vec![None; graph.node_count()];
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
            let (id, c) = line
                .split_once(',')
                .ok_or_else(|| bad(format!("expected `identifier,community`, found `{line}`")))?;
            let u = graph
                .node_id(id.trim())
                .ok_or_else(|| bad(format!("unknown identifier `{}`", id.trim())))?;
            let c: u32 = c
                .trim()
                .parse()
                .map_err(|_| bad(format!("`{}` is not a community index", c.trim())))?;
            if labels[u as usize].replace(c).is_some() {
                return Err(bad(format!("node `{}` assigned twice", id.trim())));
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(u, c)| c.ok_or_else(|| Error::domain(format!("node `{}` has no community", graph.label(u as NodeId)))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_assignment(graph, &labels)
    }
}

/// `Q = sum_c [ in_c / 2m - (tot_c / 2m)^2 ]` on the unit-weight undirected
/// view, with `in_c` counting each internal edge twice.
pub fn modularity(graph: &Graph, partition: &CommunityPartition) -> Result<f64> {
    if partition.assignment.len() != graph.node_count() {
        return Err(Error::domain(format!(
            "partition covers {} nodes, graph has {}",
            partition.assignment.len(),
            graph.node_count()
        )));
    }
    Ok(modularity_with(graph, &partition.assignment, 1.0))
}

fn modularity_with(graph: &Graph, assignment: &[u32], resolution: f64) -> f64 {
    let level = Level::from_graph(graph);
    level.modularity(assignment, resolution)
}

pub fn detect_communities(graph: &Graph, seed: u64) -> Result<CommunityPartition> {
    detect_communities_with(graph, seed, &LouvainConfig::default())
}

pub fn detect_communities_with(graph: &Graph, seed: u64, config: &LouvainConfig) -> Result<CommunityPartition> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::domain("community detection needs at least one node"));
    }
    if !(config.resolution > 0.0 && config.resolution.is_finite()) {
        return Err(Error::domain(format!("resolution {} must be positive", config.resolution)));
    }
    let mut rng = rng::seeded(seed);
    let mut level = Level::from_graph(graph);
    // community of every original node, in the current level's numbering
    let mut assignment: Vec<u32> = (0..n as u32).collect();
    let mut levels = Vec::new();

    if level.total > 0.0 {
        loop {
            let (labels, moved) = level.local_moves(config, &mut rng);
            if !moved {
                break;
            }
            let (labels, count) = renumber(&labels);
            for a in assignment.iter_mut() {
                *a = labels[*a as usize];
            }
            levels.push(level.modularity(&labels, config.resolution));
            level = level.aggregate(&labels, count);
        }
    }

    let mut partition = CommunityPartition::from_assignment(graph, &assignment)?;
    partition.levels = levels;
    Ok(partition)
}

/// Relabels by first appearance; returns the labels and their count.
fn renumber(labels: &[u32]) -> (Vec<u32>, usize) {
    let mut map = vec![u32::MAX; labels.len()];
    let mut next = 0;
    let out = labels
        .iter()
        .map(|&l| {
            if map[l as usize] == u32::MAX {
                map[l as usize] = next;
                next += 1;
            }
            map[l as usize]
        })
        .collect();
    (out, next as usize)
}

/// Weighted undirected graph of one Louvain level.
struct Level {
    /// Neighbours other than the node itself, with edge weights.
    adj: Vec<Vec<(u32, f64)>>,
    /// `A_ii`: twice the weight collapsed into the node.
    loops: Vec<f64>,
    /// Weighted degree `k_i`, including `A_ii`.
    degree: Vec<f64>,
    /// `2m = sum_i k_i`.
    total: f64,
}

impl Level {
    fn from_graph(graph: &Graph) -> Self {
        let adj: Vec<Vec<(u32, f64)>> = graph
            .nodes()
            .map(|u| graph.undirected_neighbors(u).into_iter().map(|v| (v, 1.0)).collect())
            .collect();
        let n = adj.len();
        Self::with(adj, vec![0.0; n])
    }

    fn with(adj: Vec<Vec<(u32, f64)>>, loops: Vec<f64>) -> Self {
        let degree: Vec<f64> = adj
            .iter()
            .zip(&loops)
            .map(|(a, l)| l + a.iter().map(|e| e.1).sum::<f64>())
            .collect();
        let total = degree.iter().sum();
        Level { adj, loops, degree, total }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn modularity(&self, labels: &[u32], resolution: f64) -> f64 {
        if self.total == 0.0 {
            return 0.0;
        }
        let k = labels.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut inside = vec![0.0; k];
        let mut tot = vec![0.0; k];
        for i in 0..self.len() {
            let c = labels[i] as usize;
            tot[c] += self.degree[i];
            inside[c] += self.loops[i];
            for &(j, w) in &self.adj[i] {
                if labels[j as usize] as usize == c {
                    inside[c] += w;
                }
            }
        }
        let m2 = self.total;
        inside
            .iter()
            .zip(&tot)
            .map(|(i, t)| i / m2 - resolution * (t / m2) * (t / m2))
            .sum()
    }

    /// Moves nodes between communities until a full pass changes nothing.
    /// Returns each node's community and whether any node moved.
    fn local_moves(&self, config: &LouvainConfig, rng: &mut impl rand::Rng) -> (Vec<u32>, bool) {
        let n = self.len();
        let mut label: Vec<u32> = (0..n as u32).collect();
        let mut tot = self.degree.clone();
        let mut weight_to = vec![0.0; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.shuffle(rng);
        let mut any = false;

        loop {
            let mut moved = false;
            for &i in &order {
                let i = i as usize;
                let ki = self.degree[i];
                if self.adj[i].is_empty() {
                    continue;
                }
                let home = label[i];
                for &(j, w) in &self.adj[i] {
                    let c = label[j as usize];
                    if weight_to[c as usize] == 0.0 {
                        touched.push(c);
                    }
                    weight_to[c as usize] += w;
                }
                tot[home as usize] -= ki;
                let gain = |c: u32, w: f64| w - config.resolution * tot[c as usize] * ki / self.total;

                let mut best = home;
                let mut best_gain = gain(home, weight_to[home as usize]);
                for &c in &touched {
                    let g = gain(c, weight_to[c as usize]);
                    if g > best_gain + config.min_gain {
                        best = c;
                        best_gain = g;
                    }
                }
                tot[best as usize] += ki;
                if best != home {
                    label[i] = best;
                    moved = true;
                }
                for &c in &touched {
                    weight_to[c as usize] = 0.0;
                }
                touched.clear();
            }
            if !moved {
                break;
            }
            any = true;
        }
        (label, any)
    }

    /// Collapses each community into one node.
    fn aggregate(&self, labels: &[u32], count: usize) -> Level {
        let mut loops = vec![0.0; count];
        let mut weights: Vec<std::collections::BTreeMap<u32, f64>> = vec![Default::default(); count];
        for i in 0..self.len() {
            let c = labels[i];
            loops[c as usize] += self.loops[i];
            for &(j, w) in &self.adj[i] {
                let d = labels[j as usize];
                if d == c {
                    loops[c as usize] += w;
                } else {
                    *weights[c as usize].entry(d).or_insert(0.0) += w;
                }
            }
        }
        let adj = weights.into_iter().map(|m| m.into_iter().collect()).collect();
        Level::with(adj, loops)
    }
}
