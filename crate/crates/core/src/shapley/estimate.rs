use rand::seq::SliceRandom;

use super::{marginal_gain_upper, BimGame, SamplingPlan, ShapleyEstimate};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::NodeId;
use crate::mia::ActivationSweep;
use crate::rng;

/// Permutations summed sequentially into one partial vector. The chunking
/// is fixed, so results do not depend on how many workers run.
const CHUNK: u64 = 8;
/// Chunks in flight before their partial sums are folded into the total.
const WAVE: u64 = 64;

pub fn estimate_shapley(game: &BimGame<'_>, plan: &SamplingPlan, master_seed: u64) -> Result<ShapleyEstimate> {
    estimate_shapley_with(game, plan, master_seed, Execution::default())
}

/// Monte Carlo Shapley values: the mean, over `plan.tau` uniform random
/// permutations, of each player's marginal contribution to the players
/// preceding it. Permutation `i` is drawn from stream `i` of `master_seed`.
pub fn estimate_shapley_with(
    game: &BimGame<'_>,
    plan: &SamplingPlan,
    master_seed: u64,
    exec: Execution,
) -> Result<ShapleyEstimate> {
    if plan.tau == 0 {
        return Err(Error::domain("tau must be positive"));
    }
    if plan.repetitions == 0 {
        return Err(Error::domain("repetitions must be positive"));
    }
    let n = game.players();
    let cache = game.cache();
    let chunks = plan.tau.div_ceil(CHUNK);
    let mut total = vec![0.0; n];

    let mut first = 0;
    while first < chunks {
        let last = (first + WAVE).min(chunks);
        let partials = exec.map_init(
            (last - first) as usize,
            || Worker {
                sweep: ActivationSweep::new(cache),
                order: Vec::with_capacity(n),
                round: vec![0.0; n],
            },
            |worker, k| {
                let chunk = first + k as u64;
                let start = chunk * CHUNK;
                let end = (start + CHUNK).min(plan.tau);
                let mut acc = vec![0.0; n];
                for i in start..end {
                    worker.permutation(master_seed, i, n);
                    worker.accumulate(plan.repetitions, &mut acc);
                }
                acc
            },
        );
        for partial in partials {
            for (t, p) in total.iter_mut().zip(partial) {
                *t += p;
            }
        }
        first = last;
    }

    let tau = plan.tau as f64;
    let values = total.into_iter().map(|s| s / tau).collect();
    let graph = game.graph();
    Ok(ShapleyEstimate {
        values,
        plan: *plan,
        master_seed,
        ranges: graph.nodes().map(|u| marginal_gain_upper(graph, u)).collect(),
    })
}

struct Worker<'a> {
    sweep: ActivationSweep<'a>,
    order: Vec<NodeId>,
    round: Vec<f64>,
}

impl Worker<'_> {
    fn permutation(&mut self, master_seed: u64, index: u64, n: usize) {
        self.order.clear();
        self.order.extend(0..n as NodeId);
        self.order.shuffle(&mut rng::indexed_rng(master_seed, index));
    }

    /// Adds this permutation's marginal gains, averaged over `repetitions`
    /// sweeps, into `acc`.
    fn accumulate(&mut self, repetitions: u32, acc: &mut [f64]) {
        self.round.fill(0.0);
        for _ in 0..repetitions {
            self.sweep.reset();
            for &u in &self.order {
                self.round[u as usize] += self.sweep.insert(u);
            }
        }
        let r = repetitions as f64;
        for (a, t) in acc.iter_mut().zip(&self.round) {
            *a += t / r;
        }
    }
}
