mod support;

use std::collections::BTreeSet;

use bimgame::mia::{max_influence_path, ActivationSweep};
use bimgame::shapley::{exact_marginal_range, exact_shapley};
use bimgame::{BimGame, MiiaCache, NodeId};
use rand::Rng;

use support::{random_directed, rng, shapley_by_coalitions, shapley_by_permutations, utilities, BruteMia};

const THETA: f64 = 0.01;

#[test]
fn arborescences_match_path_enumeration() {
    let mut r = rng(1);
    for _ in 0..40 {
        let n = r.gen_range(1..=8);
        let g = random_directed(n, 0.3, &mut r);
        let cache = MiiaCache::build(&g, THETA).unwrap();
        let brute = BruteMia::new(&g, THETA);
        for root in g.nodes() {
            let ours: BTreeSet<(NodeId, NodeId)> = cache.tree(root).arcs().map(|(u, v, _)| (u, v)).collect();
            let theirs: BTreeSet<(NodeId, NodeId)> = brute.arcs(root).into_iter().collect();
            assert_eq!(ours, theirs, "root {root}");
        }
    }
}

#[test]
fn max_influence_path_matches_enumeration() {
    let mut r = rng(2);
    for _ in 0..40 {
        let n = r.gen_range(2..=7);
        let g = random_directed(n, 0.35, &mut r);
        let brute = BruteMia::new(&g, f64::MIN_POSITIVE);
        for v in g.nodes() {
            let arcs = brute.arcs(v);
            for u in g.nodes().filter(|&u| u != v) {
                let path = max_influence_path(&g, u, v).unwrap();
                match arcs.iter().find(|(w, _)| *w == u) {
                    Some(&(_, next)) => assert_eq!(path.nodes[1], next),
                    None => assert!(!path.exists()),
                }
            }
        }
    }
}

#[test]
fn sigma_matches_enumeration() {
    let mut r = rng(3);
    for _ in 0..30 {
        let n = r.gen_range(1..=9);
        let g = random_directed(n, 0.3, &mut r);
        let cache = MiiaCache::build(&g, THETA).unwrap();
        let brute = BruteMia::new(&g, THETA);
        for _ in 0..20 {
            let s = support::random_subset(n, &mut r);
            let ours = cache.sigma(&g, &s).unwrap();
            let theirs = brute.sigma(&s);
            assert!((ours - theirs).abs() <= 1e-12, "{ours} vs {theirs}");
        }
    }
}

#[test]
fn sweep_gains_match_enumeration() {
    let mut r = rng(4);
    for _ in 0..20 {
        let n = r.gen_range(2..=8);
        let g = random_directed(n, 0.3, &mut r);
        let cache = MiiaCache::build(&g, THETA).unwrap();
        let brute = BruteMia::new(&g, THETA);
        let mut order: Vec<NodeId> = g.nodes().collect();
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut r);
        let mut sweep = ActivationSweep::new(&cache);
        let mut prefix = Vec::new();
        for &u in &order {
            let before = brute.sigma(&prefix);
            prefix.push(u);
            let gain = sweep.insert(u);
            assert!((gain - (brute.sigma(&prefix) - before)).abs() <= 1e-12);
        }
    }
}

#[test]
fn exact_shapley_matches_permutation_average() {
    let mut r = rng(5);
    for _ in 0..15 {
        let n = r.gen_range(1..=6);
        let g = random_directed(n, 0.35, &mut r);
        let cache = MiiaCache::build(&g, THETA).unwrap();
        let game = BimGame::new(&g, &cache).unwrap();
        let brute = BruteMia::new(&g, THETA);
        let table = utilities(n, |s| brute.sigma(s));
        let by_perm = shapley_by_permutations(n, &table);
        let by_coal = shapley_by_coalitions(n, &table);
        let ours = exact_shapley(&game, 10).unwrap();
        for i in 0..n {
            assert!((ours[i] - by_perm[i]).abs() < 1e-9);
            assert!((by_coal[i] - by_perm[i]).abs() < 1e-9);
        }
        assert!((exact_marginal_range(&game, 10).unwrap() - support::exact_range(n, &table)).abs() < 1e-9);
    }
}
