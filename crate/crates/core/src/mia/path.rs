use crate::error::Result;
use crate::graph::{Graph, NodeId};

use super::tree::{check_node, Scratch};

/// A maximum-probability path, listed from source to target.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxInfluencePath {
    pub nodes: Vec<NodeId>,
    pub probability: f64,
}

impl MaxInfluencePath {
    pub fn exists(&self) -> bool {
        !self.nodes.is_empty()
    }
}

/// Highest-probability path from `u` to `v`. An unreachable target gives an
/// empty path with probability 0; `u == v` gives `[u]` with probability 1.
pub fn max_influence_path(graph: &Graph, u: NodeId, v: NodeId) -> Result<MaxInfluencePath> {
    check_node(graph, u)?;
    check_node(graph, v)?;
    let mut scratch = Scratch::new(graph.node_count());
    // no threshold: every reachable node qualifies
    scratch.run(graph, v, 0.0, Some(u));
    Ok(match scratch.path_to(u) {
        Some((nodes, probability)) => MaxInfluencePath { nodes, probability },
        None => MaxInfluencePath {
            nodes: Vec::new(),
            probability: 0.0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_node() {
        let g = Graph::from_arcs(2, true, &[(0, 1, 0.5)]).unwrap();
        let p = max_influence_path(&g, 1, 1).unwrap();
        assert_eq!(p.nodes, vec![1]);
        assert_eq!(p.probability, 1.0);
    }

    #[test]
    fn direct_beats_detour() {
        // a=0, b=1, c=2: a->b 0.5, a->c 0.2, c->b 0.9
        let g = Graph::from_arcs(3, true, &[(0, 1, 0.5), (0, 2, 0.2), (2, 1, 0.9)]).unwrap();
        let p = max_influence_path(&g, 0, 1).unwrap();
        assert_eq!(p.nodes, vec![0, 1]);
        assert_eq!(p.probability, 0.5);
    }

    #[test]
    fn detour_wins_when_better() {
        let g = Graph::from_arcs(3, true, &[(0, 1, 0.1), (0, 2, 0.8), (2, 1, 0.9)]).unwrap();
        let p = max_influence_path(&g, 0, 1).unwrap();
        assert_eq!(p.nodes, vec![0, 2, 1]);
        assert!((p.probability - 0.72).abs() < 1e-15);
    }

    #[test]
    fn unreachable() {
        let g = Graph::from_arcs(3, true, &[(0, 1, 0.5)]).unwrap();
        let p = max_influence_path(&g, 1, 0).unwrap();
        assert!(!p.exists());
        assert_eq!(p.probability, 0.0);
        let p = max_influence_path(&g, 0, 2).unwrap();
        assert_eq!(p.probability, 0.0);
    }

    #[test]
    fn invalid_index() {
        let g = Graph::from_arcs(2, true, &[(0, 1, 0.5)]).unwrap();
        assert!(max_influence_path(&g, 0, 5).is_err());
    }

    #[test]
    fn long_path_probability_is_product() {
        let arcs: Vec<_> = (0..30).map(|i| (i, i + 1, 0.5)).collect();
        let g = Graph::from_arcs(31, true, &arcs).unwrap();
        let p = max_influence_path(&g, 0, 30).unwrap();
        assert_eq!(p.nodes.len(), 31);
        assert_eq!(p.probability, 0.5f64.powi(30));
    }
}
