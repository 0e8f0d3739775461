use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub(crate) const NONE: u32 = u32::MAX;

/// Maximum influence in-arborescence of one root.
///
/// Nodes are stored in the order Dijkstra settled them, so `nodes[0]` is the
/// root and every parent precedes its children.
#[derive(Debug, Clone, PartialEq)]
pub struct MiiaTree {
    nodes: Vec<NodeId>,
    parent: Vec<u32>,
    arc_prob: Vec<f64>,
    path_prob: Vec<f64>,
    child_start: Vec<u32>,
    children: Vec<u32>,
}

impl MiiaTree {
    pub fn root(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Never true: the root is always present.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn node(&self, local: usize) -> NodeId {
        self.nodes[local]
    }

    /// Local index of the next hop towards the root.
    pub fn parent(&self, local: usize) -> Option<usize> {
        match self.parent[local] {
            NONE => None,
            p => Some(p as usize),
        }
    }

    /// `P(node, parent)`; 1 for the root.
    pub fn arc_probability(&self, local: usize) -> f64 {
        self.arc_prob[local]
    }

    /// Propagation probability of the node's maximum influence path to the root.
    pub fn path_probability(&self, local: usize) -> f64 {
        self.path_prob[local]
    }

    /// Local indices of the tree in-neighbours, in decreasing index order.
    pub fn children(&self, local: usize) -> &[u32] {
        let (s, e) = (self.child_start[local] as usize, self.child_start[local + 1] as usize);
        &self.children[s..e]
    }

    pub fn position(&self, node: NodeId) -> Option<usize> {
        self.nodes.iter().position(|&x| x == node)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.position(node).is_some()
    }

    /// Tree arcs `(from, to, probability)`, all oriented towards the root.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        (1..self.len()).map(move |i| (self.nodes[i], self.nodes[self.parent[i] as usize], self.arc_prob[i]))
    }

    /// `ap` of the node at `local`, recomputed from its children's current
    /// values. Shared by full evaluation and the incremental sweep so both
    /// round identically.
    #[inline]
    pub(crate) fn combine_children(&self, local: usize, ap: &[f64]) -> f64 {
        let mut miss = 1.0;
        for &c in self.children(local) {
            let c = c as usize;
            miss *= 1.0 - ap[c] * self.arc_prob[c];
        }
        1.0 - miss
    }

    /// Fills `ap` (resized to the tree) with every node's activation
    /// probability and returns the root's.
    pub fn evaluate(&self, is_seed: impl Fn(NodeId) -> bool, ap: &mut Vec<f64>) -> f64 {
        ap.clear();
        ap.resize(self.len(), 0.0);
        for i in (0..self.len()).rev() {
            ap[i] = if is_seed(self.nodes[i]) {
                1.0
            } else {
                self.combine_children(i, ap)
            };
        }
        ap[0]
    }

    /// Text listing used for fixture diffs: the root, each arc, and each
    /// node's path probability, with original identifiers.
    pub fn dump(&self, graph: &Graph) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "root {}", graph.label(self.root()));
        for (from, to, p) in self.arcs() {
            let _ = writeln!(s, "arc {} {} {}", graph.label(from), graph.label(to), p);
        }
        for (i, &u) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "node {} {}", graph.label(u), self.path_prob[i]);
        }
        s
    }
}

/// Builds `MIIA(root, theta)`.
pub fn build_miia(graph: &Graph, root: NodeId, theta: f64) -> Result<MiiaTree> {
    check_theta(theta)?;
    check_node(graph, root)?;
    let mut scratch = Scratch::new(graph.node_count());
    Ok(scratch.tree(graph, root, theta))
}

/// `ap(u, S, tree)`; fails when `u` is not in the tree.
pub fn activation_probability(tree: &MiiaTree, seeds: &[NodeId], u: NodeId) -> Result<f64> {
    let local = tree.position(u).ok_or(Error::NotInTree {
        node: u,
        root: tree.root(),
    })?;
    let mut ap = Vec::new();
    tree.evaluate(|x| seeds.contains(&x), &mut ap);
    Ok(ap[local])
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("threshold {theta} outside (0,1]")))
    }
}

pub(crate) fn check_node(graph: &Graph, u: NodeId) -> Result<()> {
    if (u as usize) < graph.node_count() {
        Ok(())
    } else {
        Err(Error::domain(format!("node index {u} out of range 0..{}", graph.node_count())))
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: NodeId,
}

impl Eq for Entry {}

impl Ord for Entry {
    // min-heap on distance, then on node index
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const UNSEEN: u8 = 0;
const QUEUED: u8 = 1;
const SETTLED: u8 = 2;
const EXCLUDED: u8 = 3;

/// Reusable Dijkstra buffers; only touched entries are reset between roots.
pub(crate) struct Scratch {
    dist: Vec<f64>,
    next: Vec<NodeId>,
    arc: Vec<f64>,
    prob: Vec<f64>,
    state: Vec<u8>,
    local: Vec<u32>,
    touched: Vec<NodeId>,
    order: Vec<NodeId>,
    heap: BinaryHeap<Entry>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Self {
        Scratch {
            dist: vec![f64::INFINITY; n],
            next: vec![NONE; n],
            arc: vec![1.0; n],
            prob: vec![0.0; n],
            state: vec![UNSEEN; n],
            local: vec![NONE; n],
            touched: Vec::new(),
            order: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &u in &self.touched {
            let u = u as usize;
            self.dist[u] = f64::INFINITY;
            self.next[u] = NONE;
            self.arc[u] = 1.0;
            self.prob[u] = 0.0;
            self.state[u] = UNSEEN;
            self.local[u] = NONE;
        }
        self.touched.clear();
        self.order.clear();
        self.heap.clear();
    }

    /// Settles nodes by decreasing path probability towards `root`, keeping
    /// those whose probability is at least `theta` in `self.order`. Stops
    /// early once `target` is settled.
    pub(crate) fn run(&mut self, graph: &Graph, root: NodeId, theta: f64, target: Option<NodeId>) {
        self.reset();
        let r = root as usize;
        self.dist[r] = 0.0;
        self.prob[r] = 1.0;
        self.state[r] = QUEUED;
        self.touched.push(root);
        self.heap.push(Entry { dist: 0.0, node: root });

        while let Some(Entry { dist, node: x }) = self.heap.pop() {
            let xi = x as usize;
            if self.state[xi] != QUEUED || dist > self.dist[xi] {
                continue;
            }
            if x != root {
                // the product is kept alongside the log distance so the
                // threshold test sees exactly prod P, not exp(-sum ln P)
                let p = self.prob[self.next[xi] as usize] * self.arc[xi];
                self.prob[xi] = p;
                if p < theta {
                    self.state[xi] = EXCLUDED;
                    continue;
                }
            }
            self.state[xi] = SETTLED;
            self.local[xi] = self.order.len() as u32;
            self.order.push(x);
            if Some(x) == target {
                return;
            }
            for a in graph.in_arcs(x) {
                let w = a.node as usize;
                if self.state[w] == SETTLED || self.state[w] == EXCLUDED {
                    continue;
                }
                let nd = dist + -a.prob.ln();
                if self.state[w] == UNSEEN {
                    self.touched.push(a.node);
                } else if nd > self.dist[w] || (nd == self.dist[w] && x >= self.next[w]) {
                    continue;
                }
                let improved = nd < self.dist[w];
                self.dist[w] = nd;
                self.next[w] = x;
                self.arc[w] = a.prob;
                self.state[w] = QUEUED;
                if improved {
                    self.heap.push(Entry { dist: nd, node: a.node });
                }
            }
        }
    }

    pub(crate) fn tree(&mut self, graph: &Graph, root: NodeId, theta: f64) -> MiiaTree {
        self.run(graph, root, theta, None);
        let len = self.order.len();
        let mut parent = Vec::with_capacity(len);
        let mut arc_prob = Vec::with_capacity(len);
        let mut path_prob = Vec::with_capacity(len);
        let mut child_count = vec![0u32; len + 1];
        for &u in &self.order {
            let ui = u as usize;
            if u == root {
                parent.push(NONE);
                arc_prob.push(1.0);
            } else {
                let p = self.local[self.next[ui] as usize];
                parent.push(p);
                arc_prob.push(self.arc[ui]);
                child_count[p as usize] += 1;
            }
            path_prob.push(self.prob[ui]);
        }
        let mut child_start = vec![0u32; len + 1];
        for i in 0..len {
            child_start[i + 1] = child_start[i] + child_count[i];
        }
        let mut fill = child_start.clone();
        let mut children = vec![0u32; len.saturating_sub(1)];
        for i in (1..len).rev() {
            let p = parent[i] as usize;
            children[fill[p] as usize] = i as u32;
            fill[p] += 1;
        }
        MiiaTree {
            nodes: self.order.clone(),
            parent,
            arc_prob,
            path_prob,
            child_start,
            children,
        }
    }

    pub(crate) fn path_to(&self, from: NodeId) -> Option<(Vec<NodeId>, f64)> {
        let fi = from as usize;
        if self.state[fi] != SETTLED {
            return None;
        }
        let mut nodes = vec![from];
        let mut x = fi;
        while self.next[x] != NONE {
            x = self.next[x] as usize;
            nodes.push(x as NodeId);
        }
        Some((nodes, self.prob[fi]))
    }
}
