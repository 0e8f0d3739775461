//! Graph storage, ingestion, influence probabilities and selection costs.
//!
//! Nodes are dense indices `0..n` with a side table back to the raw
//! identifiers found in the input file. Every node keeps both its outgoing
//! and incoming arc lists, each sorted by neighbour index. An undirected edge
//! is stored as two arcs.

mod cost;
mod io;
mod probability;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

pub use cost::{CostAssignment, CostProvenance};
pub use io::{export_edge_list, load_edge_list, read_edge_list};
pub use probability::{assign_probabilities, ProbabilityScheme};

use crate::error::{Error, Result};

pub type NodeId = u32;

/// One arc endpoint together with the arc's influence probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub node: NodeId,
    pub prob: f64,
}

#[derive(Debug, Clone)]
pub struct Graph {
    directed: bool,
    out_arcs: Vec<Vec<Arc>>,
    in_arcs: Vec<Vec<Arc>>,
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edge_count: usize,
    fingerprint: u64,
}

impl Graph {
    /// Builds a graph from labelled edges. Self-loops are dropped and repeated
    /// edges collapse into one; every arc starts with probability 1.
    pub fn from_labelled_edges<'a, I>(directed: bool, edges: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut builder = GraphBuilder::new(directed);
        for (u, v) in edges {
            builder.add_edge(u, v);
        }
        builder.build()
    }

    /// Builds a graph over nodes `0..n` labelled by their decimal index.
    /// Arcs are `(from, to, probability)`; for undirected graphs each triple
    /// yields both arcs with the same probability.
    pub fn from_arcs(n: usize, directed: bool, arcs: &[(NodeId, NodeId, f64)]) -> Result<Self> {
        let mut builder = GraphBuilder::new(directed);
        for i in 0..n {
            builder.intern(&i.to_string());
        }
        for &(u, v, p) in arcs {
            if u as usize >= n || v as usize >= n {
                return Err(Error::domain(format!("arc ({u},{v}) outside 0..{n}")));
            }
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::domain(format!("arc ({u},{v}) has probability {p} outside (0,1]")));
            }
            builder.add_indexed(u, v, p);
        }
        Ok(builder.build())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Distinct edges: unordered pairs when undirected, ordered pairs otherwise.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn out_arcs(&self, u: NodeId) -> &[Arc] {
        &self.out_arcs[u as usize]
    }

    pub fn in_arcs(&self, u: NodeId) -> &[Arc] {
        &self.in_arcs[u as usize]
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out_arcs[u as usize].len()
    }

    pub fn in_degree(&self, u: NodeId) -> usize {
        self.in_arcs[u as usize].len()
    }

    /// Out-degree; for undirected graphs this is the ordinary degree.
    pub fn degree(&self, u: NodeId) -> usize {
        self.out_degree(u)
    }

    pub fn max_degree(&self) -> usize {
        self.out_arcs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Probability of the arc `u -> v`, 0 when absent.
    pub fn probability(&self, u: NodeId, v: NodeId) -> f64 {
        let arcs = &self.out_arcs[u as usize];
        match arcs.binary_search_by_key(&v, |a| a.node) {
            Ok(i) => arcs[i].prob,
            Err(_) => 0.0,
        }
    }

    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.node_count() as NodeId
    }

    /// Neighbours in the undirected view (union of in- and out-neighbours),
    /// sorted and deduplicated.
    pub fn undirected_neighbors(&self, u: NodeId) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self.out_arcs(u).iter().map(|a| a.node).collect();
        if self.directed {
            out.extend(self.in_arcs(u).iter().map(|a| a.node));
            out.sort_unstable();
            out.dedup();
        }
        out
    }

    /// Hash of the structure and the probabilities; caches built on a graph
    /// record it to detect being used against a different one.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.directed.hash(&mut h);
        self.labels.len().hash(&mut h);
        for arcs in &self.out_arcs {
            arcs.len().hash(&mut h);
            for a in arcs {
                a.node.hash(&mut h);
                a.prob.to_bits().hash(&mut h);
            }
        }
        h.finish()
    }

    /// Replaces every arc probability with `prob(u, v)`. In-arc lists are
    /// rebuilt from the out-arcs so both views stay consistent.
    pub(crate) fn reweighted(mut self, mut prob: impl FnMut(&Graph, NodeId, NodeId) -> f64) -> Graph {
        let probs: Vec<Vec<f64>> = self
            .nodes()
            .map(|u| self.out_arcs(u).iter().map(|a| prob(&self, u, a.node)).collect())
            .collect();
        for (arcs, ps) in self.out_arcs.iter_mut().zip(probs) {
            for (a, p) in arcs.iter_mut().zip(ps) {
                a.prob = p;
            }
        }
        self.rebuild_in_arcs();
        self.fingerprint = self.compute_fingerprint();
        self
    }

    fn rebuild_in_arcs(&mut self) {
        let mut in_arcs: Vec<Vec<Arc>> = self.in_arcs.iter().map(|a| Vec::with_capacity(a.len())).collect();
        in_arcs.resize_with(self.labels.len(), Vec::new);
        for (u, arcs) in self.out_arcs.iter().enumerate() {
            for a in arcs {
                in_arcs[a.node as usize].push(Arc {
                    node: u as NodeId,
                    prob: a.prob,
                });
            }
        }
        // sources are visited in increasing order, so each list is sorted
        self.in_arcs = in_arcs;
    }
}

/// Incremental construction used by the loaders.
#[derive(Debug)]
pub struct GraphBuilder {
    directed: bool,
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    arcs: Vec<(NodeId, NodeId, f64)>,
}

impl GraphBuilder {
    pub fn new(directed: bool) -> Self {
        GraphBuilder {
            directed,
            labels: Vec::new(),
            index: HashMap::new(),
            arcs: Vec::new(),
        }
    }

    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len() as NodeId;
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn add_edge(&mut self, u: &str, v: &str) {
        let u = self.intern(u);
        let v = self.intern(v);
        self.add_indexed(u, v, 1.0);
    }

    fn add_indexed(&mut self, u: NodeId, v: NodeId, p: f64) {
        if u == v {
            return;
        }
        self.arcs.push((u, v, p));
        if !self.directed {
            self.arcs.push((v, u, p));
        }
    }

    pub fn build(self) -> Graph {
        let n = self.labels.len();
        let mut arcs = self.arcs;
        // first occurrence of a repeated arc wins
        arcs.sort_by_key(|&(u, v, _)| (u, v));
        arcs.dedup_by_key(|&mut (u, v, _)| (u, v));

        let mut out_arcs = vec![Vec::new(); n];
        for &(u, v, p) in &arcs {
            out_arcs[u as usize].push(Arc { node: v, prob: p });
        }
        let edge_count = if self.directed { arcs.len() } else { arcs.len() / 2 };
        let mut g = Graph {
            directed: self.directed,
            out_arcs,
            in_arcs: Vec::new(),
            labels: self.labels,
            index: self.index,
            edge_count,
            fingerprint: 0,
        };
        g.rebuild_in_arcs();
        g.fingerprint = g.compute_fingerprint();
        g
    }
}
