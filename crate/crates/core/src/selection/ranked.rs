use super::{check_inputs, descending, Method, SeedSet};
use crate::community::CommunityPartition;
use crate::error::{Error, Result};
use crate::graph::{CostAssignment, Graph};

/// One descending pass over the Shapley ranking. A node is taken when it is
/// still eligible and affordable; taking it makes its neighbours (out-
/// neighbours on directed graphs) ineligible. On undirected graphs the
/// result is an independent set.
pub fn select_bimgt(graph: &Graph, costs: &CostAssignment, budget: u64, shapley: &[f64]) -> Result<SeedSet> {
    check_inputs(graph, costs, Some(shapley))?;
    let mut set = SeedSet::empty(Method::Bimgt, budget);
    let mut eligible = vec![true; graph.node_count()];
    let mut left = budget;
    for u in descending(shapley) {
        let c = costs.cost(u);
        if !eligible[u as usize] || c > left {
            continue;
        }
        left -= c;
        set.nodes.push(u);
        for a in graph.out_arcs(u) {
            eligible[a.node as usize] = false;
        }
    }
    set.total_cost = budget - left;
    set.remaining = left as f64;
    Ok(set)
}

/// Per-community budget shares.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetAllocation {
    pub shares: Vec<f64>,
    pub total: u64,
    /// True when the Shapley total was zero and shares follow community size.
    pub by_size: bool,
}

impl BudgetAllocation {
    /// `B_i = B * Phi_i / Phi`, with `Phi_i` the Shapley sum of community `i`.
    /// Falls back to `B * |K_i| / n` when `Phi` is not positive.
    pub fn new(partition: &CommunityPartition, shapley: &[f64], budget: u64) -> Self {
        let sums: Vec<f64> = partition
            .communities()
            .iter()
            .map(|m| m.iter().map(|&u| shapley[u as usize]).sum::<f64>().max(0.0))
            .collect();
        let total: f64 = sums.iter().sum();
        let b = budget as f64;
        if total > 0.0 {
            BudgetAllocation {
                shares: sums.iter().map(|s| b * (s / total)).collect(),
                total: budget,
                by_size: false,
            }
        } else {
            let n = shapley.len() as f64;
            BudgetAllocation {
                shares: partition.communities().iter().map(|m| b * (m.len() as f64 / n)).collect(),
                total: budget,
                by_size: true,
            }
        }
    }
}

/// Community-wise selection. Communities are visited by descending size
/// (ties by index) with the largest one last; each gets one descending-phi
/// pass under its share, and whatever a community leaves unspent moves to
/// the largest community.
pub fn select_bimgtc(
    graph: &Graph,
    costs: &CostAssignment,
    budget: u64,
    shapley: &[f64],
    partition: &CommunityPartition,
) -> Result<SeedSet> {
    check_inputs(graph, costs, Some(shapley))?;
    if partition.assignment().len() != graph.node_count() {
        return Err(Error::domain("partition does not cover the graph"));
    }
    let allocation = BudgetAllocation::new(partition, shapley, budget);
    let largest = partition.largest();
    let mut order: Vec<usize> = (0..partition.count()).filter(|&k| k != largest).collect();
    order.sort_by_key(|&k| (std::cmp::Reverse(partition.members(k).len()), k));
    order.push(largest);

    let ranking = descending(shapley);
    let mut set = SeedSet::empty(Method::Bimgtc, budget);
    let mut transferred = 0.0;
    let mut last_left = 0.0;
    for k in order {
        let mut left = allocation.shares[k];
        if k == largest {
            left += transferred;
        }
        for &u in ranking.iter().filter(|&&u| partition.community_of(u) == k) {
            let c = costs.cost(u);
            if c as f64 <= left {
                left -= c as f64;
                set.nodes.push(u);
                set.total_cost += c;
            }
        }
        if k == largest {
            last_left = left;
        } else {
            transferred += left;
        }
    }
    debug_assert!(set.total_cost <= budget);
    set.remaining = last_left;
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;

    fn costs(v: &[u64]) -> CostAssignment {
        CostAssignment::from_vec(v.to_vec()).unwrap()
    }

    #[test]
    fn zero_budget() {
        let g = Graph::from_arcs(3, false, &[(0, 1, 0.5)]).unwrap();
        let s = select_bimgt(&g, &costs(&[1, 1, 1]), 0, &[3.0, 2.0, 1.0]).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.remaining, 0.0);
    }

    #[test]
    fn flagging_example() {
        // a=0 (phi 5, cost 60), b=1 (phi 4, cost 50, adjacent to a), d=2 (phi 3, cost 50)
        let g = Graph::from_arcs(3, false, &[(0, 1, 0.5)]).unwrap();
        let s = select_bimgt(&g, &costs(&[60, 50, 50]), 120, &[5.0, 4.0, 3.0]).unwrap();
        assert_eq!(s.nodes, vec![0, 2]);
        assert_eq!((s.total_cost, s.remaining), (110, 10.0));
    }

    #[test]
    fn scan_continues_past_unaffordable() {
        let g = Graph::from_arcs(3, false, &[]).unwrap();
        let s = select_bimgt(&g, &costs(&[90, 50, 10]), 60, &[3.0, 2.0, 1.0]).unwrap();
        assert_eq!(s.nodes, vec![1, 2]);
    }

    #[test]
    fn directed_flags_out_neighbours_only() {
        let g = Graph::from_arcs(3, true, &[(1, 0, 0.5), (0, 2, 0.5)]).unwrap();
        let s = select_bimgt(&g, &costs(&[1, 1, 1]), 10, &[3.0, 2.0, 1.0]).unwrap();
        // 0 flags 2; 1 points at 0 but 0 was chosen first
        assert_eq!(s.nodes, vec![0, 1]);
    }

    #[test]
    fn greedy_independent_set_with_large_budget() {
        // path 0-1-2-3-4, phi favours 1 then 3
        let g = Graph::from_arcs(5, false, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)]).unwrap();
        let s = select_bimgt(&g, &costs(&[1; 5]), 100, &[0.5, 5.0, 1.0, 4.0, 0.1]).unwrap();
        assert_eq!(s.nodes, vec![1, 3]);
    }

    fn two_communities() -> (Graph, CommunityPartition) {
        let g = Graph::from_arcs(5, false, &[(0, 1, 1.0), (1, 2, 1.0), (3, 4, 1.0)]).unwrap();
        let p = CommunityPartition::from_assignment(&g, &[0, 0, 0, 1, 1]).unwrap();
        (g, p)
    }

    #[test]
    fn proportional_shares() {
        let (_, p) = two_communities();
        let a = BudgetAllocation::new(&p, &[1.0, 1.5, 0.5, 0.5, 0.5], 100);
        assert_eq!(a.shares, vec![75.0, 25.0]);
        assert!(!a.by_size);
        let a = BudgetAllocation::new(&p, &[0.0; 5], 100);
        assert_eq!(a.shares, vec![60.0, 40.0]);
        assert!(a.by_size);
    }

    #[test]
    fn leftover_moves_to_largest() {
        // community 1 = {3,4} gets 75 with costs 60, 50: takes 3, leaves 15.
        // community 0 = {0,1,2} is the largest and gets 25 + 15 = 40.
        let g = Graph::from_arcs(5, false, &[(0, 1, 1.0), (1, 2, 1.0), (3, 4, 1.0)]).unwrap();
        let p = CommunityPartition::from_assignment(&g, &[0, 0, 0, 1, 1]).unwrap();
        let phi = [0.5, 0.25, 0.25, 2.0, 1.0];
        let a = BudgetAllocation::new(&p, &phi, 100);
        assert_eq!(a.shares, vec![25.0, 75.0]);
        let s = select_bimgtc(&g, &costs(&[40, 30, 35, 60, 50]), 100, &phi, &p).unwrap();
        // 0 (cost 40) fits 40 exactly; 1 and 2 no longer fit
        assert_eq!(s.nodes, vec![3, 0]);
        assert_eq!(s.total_cost, 100);
        assert_eq!(s.remaining, 0.0);
    }

    #[test]
    fn single_community_is_plain_ranking() {
        let g = Graph::from_arcs(4, false, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let p = CommunityPartition::from_assignment(&g, &[0; 4]).unwrap();
        let phi = [1.0, 4.0, 3.0, 2.0];
        let s = select_bimgtc(&g, &costs(&[5, 6, 7, 3]), 14, &phi, &p).unwrap();
        // no flagging: 1 (6), 2 (7) adjacent, then 3 no longer fits, 0 no longer fits
        assert_eq!(s.nodes, vec![1, 2]);
        let plain: Vec<NodeId> = {
            let mut left = 14;
            let mut out = Vec::new();
            for u in [1, 2, 3, 0] {
                let c = [5, 6, 7, 3][u as usize];
                if c <= left {
                    left -= c;
                    out.push(u);
                }
            }
            out
        };
        assert_eq!(s.nodes, plain);
    }
}
