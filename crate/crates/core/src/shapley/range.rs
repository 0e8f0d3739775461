use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// `c_u = deg(u)/2 + sum_{w in N(u)} 1/(deg(w) - 1)`.
///
/// On directed graphs `N(u)` are the out-neighbours, `deg(u)` the
/// out-degree and `deg(w)` the in-degree. A neighbour with `deg(w) <= 1`
/// contributes 1.
pub fn marginal_gain_upper(graph: &Graph, u: NodeId) -> f64 {
    let neighbours = graph.out_arcs(u);
    let share: f64 = neighbours
        .iter()
        .map(|a| {
            let d = graph.in_degree(a.node);
            if d <= 1 {
                1.0
            } else {
                1.0 / (d - 1) as f64
            }
        })
        .sum();
    neighbours.len() as f64 / 2.0 + share
}

pub fn marginal_gain_range(graph: &Graph, u: NodeId) -> RangeInclusive<f64> {
    0.0..=marginal_gain_upper(graph, u)
}

/// Mean of `c_u` over all nodes.
pub fn aggregate_range(graph: &Graph) -> Result<f64> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::domain("aggregate range of an empty graph"));
    }
    let total: f64 = graph.nodes().map(|u| marginal_gain_upper(graph, u)).sum();
    Ok(total / n as f64)
}
