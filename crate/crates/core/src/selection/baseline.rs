use rand::Rng;

use super::{check_inputs, descending, Method, SeedSet};
use crate::error::{Error, Result};
use crate::graph::{CostAssignment, Graph, NodeId};
use crate::rng;

/// RAND, MDH or MCCH.
///
/// RAND draws uniformly among nodes not yet selected and keeps a draw when
/// it is affordable; it stops after `n` consecutive unaffordable draws or
/// once nothing left is affordable. MDH and MCCH take every affordable node
/// in one pass by descending degree or clustering coefficient, ties by
/// index. `seed` is only used by RAND.
pub fn select_baseline(graph: &Graph, costs: &CostAssignment, budget: u64, method: Method, seed: u64) -> Result<SeedSet> {
    check_inputs(graph, costs, None)?;
    match method {
        Method::Rand => Ok(random(graph, costs, budget, seed)),
        Method::Mdh => {
            let degree: Vec<f64> = graph.nodes().map(|u| graph.out_degree(u) as f64).collect();
            Ok(single_pass(costs, budget, method, &descending(&degree)))
        }
        Method::Mcch => Ok(single_pass(costs, budget, method, &descending(&clustering_coefficients(graph)))),
        _ => Err(Error::domain(format!("{method} is not a baseline"))),
    }
}

fn single_pass(costs: &CostAssignment, budget: u64, method: Method, order: &[NodeId]) -> SeedSet {
    let mut set = SeedSet::empty(method, budget);
    let mut left = budget;
    for &u in order {
        let c = costs.cost(u);
        if c <= left {
            left -= c;
            set.nodes.push(u);
        }
    }
    set.total_cost = budget - left;
    set.remaining = left as f64;
    set
}

fn random(graph: &Graph, costs: &CostAssignment, budget: u64, seed: u64) -> SeedSet {
    let n = graph.node_count();
    let mut set = SeedSet::empty(Method::Rand, budget);
    let mut pool: Vec<NodeId> = graph.nodes().collect();
    let mut rng = rng::seeded(seed);
    let mut left = budget;
    let mut misses = 0;
    while misses < n && pool.iter().any(|&u| costs.cost(u) <= left) {
        let i = rng.gen_range(0..pool.len());
        let u = pool[i];
        let c = costs.cost(u);
        if c <= left {
            left -= c;
            set.nodes.push(u);
            pool.swap_remove(i);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    set.total_cost = budget - left;
    set.remaining = left as f64;
    set
}

/// Local clustering coefficient on the undirected view:
/// `2 * links among neighbours / (deg (deg - 1))`, 0 when `deg <= 1`.
pub fn clustering_coefficient(graph: &Graph, u: NodeId) -> f64 {
    let neighbours = graph.undirected_neighbors(u);
    coefficient(&neighbours, |v, w| graph.undirected_neighbors(v).binary_search(&w).is_ok())
}

pub fn clustering_coefficients(graph: &Graph) -> Vec<f64> {
    let lists: Vec<Vec<NodeId>> = graph.nodes().map(|u| graph.undirected_neighbors(u)).collect();
    lists
        .iter()
        .map(|n| coefficient(n, |v, w| lists[v as usize].binary_search(&w).is_ok()))
        .collect()
}

fn coefficient(neighbours: &[NodeId], linked: impl Fn(NodeId, NodeId) -> bool) -> f64 {
    let d = neighbours.len();
    if d <= 1 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &v) in neighbours.iter().enumerate() {
        links += neighbours[i + 1..].iter().filter(|&&w| linked(v, w)).count();
    }
    2.0 * links as f64 / (d * (d - 1)) as f64
}
