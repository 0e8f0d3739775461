use crate::error::{Error, Result};
use crate::exec::{ordered_sum, Execution};
use crate::graph::{Graph, NodeId};

use super::tree::{check_node, check_theta, MiiaTree, Scratch};

/// Every node's arborescence for one threshold, plus a reverse index from a
/// node to the trees that contain it.
#[derive(Debug, Clone)]
pub struct MiiaCache {
    theta: f64,
    fingerprint: u64,
    trees: Vec<MiiaTree>,
    /// Start of each tree in a flat per-(tree, node) array.
    offsets: Vec<usize>,
    /// For node `u`: `(root, local index of u)` for every tree holding `u`,
    /// in increasing root order.
    reverse: Vec<Vec<(u32, u32)>>,
}

impl MiiaCache {
    pub fn build(graph: &Graph, theta: f64) -> Result<Self> {
        Self::build_with(graph, theta, Execution::default())
    }

    pub fn build_with(graph: &Graph, theta: f64, exec: Execution) -> Result<Self> {
        check_theta(theta)?;
        let n = graph.node_count();
        let trees = exec.map_init(
            n,
            || Scratch::new(n),
            |scratch, v| scratch.tree(graph, v as NodeId, theta),
        );

        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0usize;
        let mut reverse: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (v, tree) in trees.iter().enumerate() {
            offsets.push(total);
            total += tree.len();
            for (i, &u) in tree.nodes().iter().enumerate() {
                reverse[u as usize].push((v as u32, i as u32));
            }
        }
        offsets.push(total);

        Ok(MiiaCache {
            theta,
            fingerprint: graph.fingerprint(),
            trees,
            offsets,
            reverse,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn node_count(&self) -> usize {
        self.trees.len()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn tree(&self, root: NodeId) -> &MiiaTree {
        &self.trees[root as usize]
    }

    pub fn trees(&self) -> &[MiiaTree] {
        &self.trees
    }

    /// Roots whose arborescence contains `u`, with `u`'s local index there.
    pub fn containing(&self, u: NodeId) -> &[(u32, u32)] {
        &self.reverse[u as usize]
    }

    pub(crate) fn offset(&self, root: usize) -> usize {
        self.offsets[root]
    }

    /// Sum of all tree sizes.
    pub fn total_size(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    /// Fails unless the cache was built from exactly this graph.
    pub fn check(&self, graph: &Graph) -> Result<()> {
        if graph.fingerprint() == self.fingerprint && graph.node_count() == self.trees.len() {
            Ok(())
        } else {
            Err(Error::StaleCache {
                expected: self.fingerprint,
                actual: graph.fingerprint(),
            })
        }
    }

    /// Expected spread of `seeds`.
    pub fn sigma(&self, graph: &Graph, seeds: &[NodeId]) -> Result<f64> {
        self.check(graph)?;
        for &s in seeds {
            check_node(graph, s)?;
        }
        Ok(self.sigma_mask(&self.mask(seeds)))
    }

    pub fn mask(&self, seeds: &[NodeId]) -> Vec<bool> {
        let mut mask = vec![false; self.node_count()];
        for &s in seeds {
            mask[s as usize] = true;
        }
        mask
    }

    /// Spread for a membership mask, without the graph consistency check.
    pub fn sigma_mask(&self, mask: &[bool]) -> f64 {
        self.sigma_mask_with(mask, Execution::default())
    }

    pub fn sigma_mask_with(&self, mask: &[bool], exec: Execution) -> f64 {
        let per_root = self.root_activations(mask, exec);
        ordered_sum(&per_root)
    }

    /// `ap(v, S, MIIA(v))` for every root `v`.
    pub fn root_activations(&self, mask: &[bool], exec: Execution) -> Vec<f64> {
        exec.map_init(self.trees.len(), Vec::new, |ap, v| {
            self.trees[v].evaluate(|x| mask[x as usize], ap)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mia::build_miia;

    fn chain() -> Graph {
        Graph::from_arcs(3, true, &[(0, 1, 0.5), (1, 2, 0.5)]).unwrap()
    }

    #[test]
    fn chain_sigma() {
        let g = chain();
        let cache = MiiaCache::build(&g, 0.1).unwrap();
        assert_eq!(cache.sigma(&g, &[]).unwrap(), 0.0);
        assert_eq!(cache.sigma(&g, &[0]).unwrap(), 1.75);
        assert_eq!(cache.sigma(&g, &[0, 1, 2]).unwrap(), 3.0);
    }

    #[test]
    fn trees_match_single_builds() {
        let g = chain();
        let cache = MiiaCache::build(&g, 0.1).unwrap();
        for v in g.nodes() {
            assert_eq!(cache.tree(v), &build_miia(&g, v, 0.1).unwrap());
        }
        assert_eq!(cache.total_size(), 1 + 2 + 3);
        assert_eq!(cache.containing(0), &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(cache.containing(2), &[(2, 0)]);
    }

    #[test]
    fn edgeless_singletons() {
        let g = Graph::from_arcs(5, false, &[]).unwrap();
        let cache = MiiaCache::build(&g, 0.01).unwrap();
        assert!(cache.trees().iter().all(|t| t.len() == 1));
        assert_eq!(cache.sigma(&g, &[1, 3]).unwrap(), 2.0);
    }

    #[test]
    fn rebuild_is_identical() {
        let g = Graph::from_arcs(6, false, &[(0, 1, 0.3), (1, 2, 0.6), (2, 3, 0.9), (3, 0, 0.2), (4, 5, 0.5)]).unwrap();
        let a = MiiaCache::build_with(&g, 0.01, Execution::Parallel).unwrap();
        let b = MiiaCache::build_with(&g, 0.01, Execution::Sequential).unwrap();
        assert_eq!(a.trees(), b.trees());
        assert_eq!(a.reverse, b.reverse);
    }

    #[test]
    fn stale_cache_rejected() {
        let g = chain();
        let cache = MiiaCache::build(&g, 0.1).unwrap();
        let other = Graph::from_arcs(3, true, &[(0, 1, 0.4), (1, 2, 0.5)]).unwrap();
        assert!(matches!(cache.sigma(&other, &[0]), Err(Error::StaleCache { .. })));
    }

    #[test]
    fn seed_out_of_range() {
        let g = chain();
        let cache = MiiaCache::build(&g, 0.1).unwrap();
        assert!(cache.sigma(&g, &[9]).is_err());
    }
}
