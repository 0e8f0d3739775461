use crate::graph::NodeId;

use super::cache::MiiaCache;

/// Activation state of every tree for a growing seed set.
///
/// Inserting a node only touches the trees that contain it, and within each
/// tree only the path from the node to the root; propagation stops as soon
/// as an ancestor's value is unchanged or the ancestor is itself a seed. The
/// values stored after any sequence of insertions equal a from-scratch
/// evaluation of the same seed set bit for bit.
pub struct ActivationSweep<'a> {
    cache: &'a MiiaCache,
    ap: Vec<f64>,
    seeded: Vec<bool>,
    value: f64,
}

impl<'a> ActivationSweep<'a> {
    pub fn new(cache: &'a MiiaCache) -> Self {
        ActivationSweep {
            cache,
            ap: vec![0.0; cache.total_size()],
            seeded: vec![false; cache.node_count()],
            value: 0.0,
        }
    }

    /// Back to the empty seed set.
    pub fn reset(&mut self) {
        self.ap.fill(0.0);
        self.seeded.fill(false);
        self.value = 0.0;
    }

    /// Running spread, accumulated from the returned gains.
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn is_seed(&self, u: NodeId) -> bool {
        self.seeded[u as usize]
    }

    /// Adds `u` to the seed set and returns `sigma(S + u) - sigma(S)`.
    pub fn insert(&mut self, u: NodeId) -> f64 {
        if self.seeded[u as usize] {
            return 0.0;
        }
        self.seeded[u as usize] = true;
        let mut gain = 0.0;
        for &(root, local) in self.cache.containing(u) {
            let tree = self.cache.tree(root);
            let base = self.cache.offset(root as usize);
            let ap = &mut self.ap[base..base + tree.len()];
            let before = ap[0];
            let mut at = local as usize;
            if ap[at] == 1.0 {
                continue;
            }
            ap[at] = 1.0;
            while let Some(p) = tree.parent(at) {
                if self.seeded[tree.node(p) as usize] {
                    break;
                }
                let updated = tree.combine_children(p, ap);
                if updated == ap[p] {
                    break;
                }
                ap[p] = updated;
                at = p;
            }
            gain += ap[0] - before;
        }
        self.value += gain;
        gain
    }

    /// Current `ap` of the root of tree `root`.
    pub fn root_activation(&self, root: NodeId) -> f64 {
        self.ap[self.cache.offset(root as usize)]
    }
}
