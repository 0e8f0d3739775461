//! Sequential versus parallel execution of the three hot loops: arborescence
//! construction, spread evaluation and Shapley sampling.

use std::hint::black_box;

use bimgame::graph::{assign_probabilities, ProbabilityScheme};
use bimgame::shapley::estimate_shapley_with;
use bimgame::{BimGame, Execution, Graph, MiiaCache, NodeId, SamplingPlan};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const THETA: f64 = 0.01;
const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

/// Clustered undirected graph: groups of 20 nodes, sparse links between them.
fn fixture(n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if u / 20 == v / 20 { 0.25 } else { 2.0 / n as f64 };
            if rng.gen_bool(p) {
                arcs.push((u as NodeId, v as NodeId, 1.0));
            }
        }
    }
    let g = Graph::from_arcs(n, false, &arcs).unwrap();
    assign_probabilities(g, &ProbabilityScheme::WeightedCascade).unwrap()
}

fn cache_build(c: &mut Criterion) {
    let g = fixture(2000);
    let mut group = c.benchmark_group("cache_build");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, g.node_count()), |b| {
            b.iter(|| MiiaCache::build_with(black_box(&g), THETA, exec).unwrap())
        });
    }
    group.finish();
}

fn sigma(c: &mut Criterion) {
    let g = fixture(2000);
    let cache = MiiaCache::build(&g, THETA).unwrap();
    let seeds: Vec<NodeId> = (0..g.node_count() as NodeId).step_by(37).collect();
    let mask = cache.mask(&seeds);
    let mut group = c.benchmark_group("sigma");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, seeds.len()), |b| {
            b.iter(|| cache.sigma_mask_with(black_box(&mask), exec))
        });
    }
    group.finish();
}

fn shapley(c: &mut Criterion) {
    let g = fixture(500);
    let cache = MiiaCache::build(&g, THETA).unwrap();
    let game = BimGame::new(&g, &cache).unwrap();
    let plan = SamplingPlan::for_graph(&g, 0.1, 0.1, Some(256), 1).unwrap();
    let mut group = c.benchmark_group("shapley");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, plan.tau), |b| {
            b.iter(|| estimate_shapley_with(&game, &plan, black_box(3), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cache_build, sigma, shapley);
criterion_main!(benches);
