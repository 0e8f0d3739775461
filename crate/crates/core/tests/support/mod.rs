//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately share no code with the library: maximum
//! influence paths come from enumerating every simple path, and Shapley
//! values from the coalition-weighted sum over explicit utilities.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use bimgame::{Graph, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Directed graph on `n` nodes; each ordered pair is an arc with
/// probability `density`, carrying a probability drawn from (0, 1].
pub fn random_directed(n: usize, density: f64, rng: &mut impl Rng) -> Graph {
    let mut arcs = Vec::new();
    for u in 0..n as NodeId {
        for v in 0..n as NodeId {
            if u != v && rng.gen_bool(density) {
                arcs.push((u, v, 1.0 - rng.gen::<f64>()));
            }
        }
    }
    Graph::from_arcs(n, true, &arcs).unwrap()
}

/// Undirected Erdos-Renyi graph with per-edge probabilities from (0, 1].
pub fn erdos_renyi(n: usize, density: f64, rng: &mut impl Rng) -> Graph {
    let mut arcs = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.gen_bool(density) {
                arcs.push((u, v, 1.0 - rng.gen::<f64>()));
            }
        }
    }
    Graph::from_arcs(n, false, &arcs).unwrap()
}

/// Undirected graph of `blocks` dense groups of `size` nodes joined by a few
/// random inter-group edges, all with probability `p`.
pub fn planted(blocks: usize, size: usize, p_in: f64, p_out: f64, prob: f64, rng: &mut impl Rng) -> Graph {
    let n = blocks * size;
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let same = u / size == v / size;
            if rng.gen_bool(if same { p_in } else { p_out }) {
                arcs.push((u as NodeId, v as NodeId, prob));
            }
        }
    }
    Graph::from_arcs(n, false, &arcs).unwrap()
}

pub fn write_edge_list(graph: &Graph, path: &Path) {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).unwrap());
    for u in graph.nodes() {
        for a in graph.out_arcs(u) {
            if graph.is_directed() || u < a.node {
                writeln!(f, "{} {}", graph.label(u), graph.label(a.node)).unwrap();
            }
        }
    }
}

/// Best simple path from `u` to `root`: highest product, ties broken by the
/// lexicographically smallest node sequence. `None` when unreachable.
fn best_path(graph: &Graph, u: NodeId, root: NodeId) -> Option<(f64, Vec<NodeId>)> {
    fn walk(graph: &Graph, at: NodeId, root: NodeId, p: f64, path: &mut Vec<NodeId>, best: &mut Option<(f64, Vec<NodeId>)>) {
        if at == root {
            let better = match best {
                None => true,
                Some((bp, bpath)) => p > *bp || (p == *bp && path < bpath),
            };
            if better {
                *best = Some((p, path.clone()));
            }
            return;
        }
        for a in graph.out_arcs(at) {
            if !path.contains(&a.node) {
                path.push(a.node);
                walk(graph, a.node, root, p * a.prob, path, best);
                path.pop();
            }
        }
    }
    let mut best = None;
    walk(graph, u, root, 1.0, &mut vec![u], &mut best);
    best
}

/// MIA arborescences built by explicit path enumeration.
pub struct BruteMia<'a> {
    graph: &'a Graph,
    /// `next[root][u]`: next hop of `u` towards `root` when `u` is in the
    /// arborescence of `root`.
    next: Vec<Vec<Option<NodeId>>>,
}

impl<'a> BruteMia<'a> {
    pub fn new(graph: &'a Graph, theta: f64) -> Self {
        let next = graph
            .nodes()
            .map(|root| {
                graph
                    .nodes()
                    .map(|u| {
                        if u == root {
                            return None;
                        }
                        best_path(graph, u, root).filter(|(p, _)| *p >= theta).map(|(_, path)| path[1])
                    })
                    .collect()
            })
            .collect();
        BruteMia { graph, next }
    }

    /// Members other than the root, as (node, next hop) pairs.
    pub fn arcs(&self, root: NodeId) -> Vec<(NodeId, NodeId)> {
        self.next[root as usize]
            .iter()
            .enumerate()
            .filter_map(|(u, n)| n.map(|n| (u as NodeId, n)))
            .collect()
    }

    pub fn sigma(&self, seeds: &[NodeId]) -> f64 {
        let seeds: BTreeSet<NodeId> = seeds.iter().copied().collect();
        self.graph.nodes().map(|root| self.ap(root, root, &seeds)).sum()
    }

    fn ap(&self, root: NodeId, u: NodeId, seeds: &BTreeSet<NodeId>) -> f64 {
        if seeds.contains(&u) {
            return 1.0;
        }
        let mut stay = 1.0;
        for (w, n) in self.next[root as usize].iter().enumerate() {
            if *n == Some(u) {
                let w = w as NodeId;
                stay *= 1.0 - self.ap(root, w, seeds) * self.graph.probability(w, u);
            }
        }
        1.0 - stay
    }
}

/// Utility of every coalition, indexed by bitmask.
pub fn utilities(n: usize, nu: impl Fn(&[NodeId]) -> f64) -> Vec<f64> {
    (0..1usize << n)
        .map(|mask| {
            let s: Vec<NodeId> = (0..n as NodeId).filter(|&i| mask & (1 << i) != 0).collect();
            nu(&s)
        })
        .collect()
}

/// Shapley values by averaging marginal contributions over all `n!` orders.
pub fn shapley_by_permutations(n: usize, table: &[f64]) -> Vec<f64> {
    fn permute(prefix: &mut Vec<usize>, used: usize, n: usize, table: &[f64], acc: &mut [f64], count: &mut f64) {
        if prefix.len() == n {
            let mut mask = 0;
            for &i in prefix.iter() {
                acc[i] += table[mask | 1 << i] - table[mask];
                mask |= 1 << i;
            }
            *count += 1.0;
            return;
        }
        for i in 0..n {
            if used & (1 << i) == 0 {
                prefix.push(i);
                permute(prefix, used | 1 << i, n, table, acc, count);
                prefix.pop();
            }
        }
    }
    let mut acc = vec![0.0; n];
    let mut count = 0.0;
    permute(&mut Vec::new(), 0, n, table, &mut acc, &mut count);
    acc.iter().map(|a| a / count).collect()
}

/// Shapley values by the coalition-weighted formula.
pub fn shapley_by_coalitions(n: usize, table: &[f64]) -> Vec<f64> {
    let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    (0..n)
        .map(|i| {
            (0..table.len())
                .filter(|t| t & (1 << i) == 0)
                .map(|t| {
                    let k = t.count_ones() as usize;
                    fact(k) * fact(n - k - 1) / fact(n) * (table[t | 1 << i] - table[t])
                })
                .sum()
        })
        .collect()
}

/// `max_u (max marginal - min marginal)` over all coalitions.
pub fn exact_range(n: usize, table: &[f64]) -> f64 {
    (0..n)
        .map(|i| {
            let gains: Vec<f64> = (0..table.len())
                .filter(|t| t & (1 << i) == 0)
                .map(|t| table[t | 1 << i] - table[t])
                .collect();
            let hi = gains.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo = gains.iter().cloned().fold(f64::INFINITY, f64::min);
            hi - lo
        })
        .fold(0.0, f64::max)
}

pub fn random_subset(n: usize, rng: &mut impl Rng) -> Vec<NodeId> {
    (0..n as NodeId).filter(|_| rng.gen_bool(0.5)).collect()
}
