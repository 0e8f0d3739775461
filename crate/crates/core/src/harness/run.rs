use std::path::PathBuf;
use std::time::Instant;

use super::output::{write_results, Format, ResultRow, ResultTable, RunStatus};
use super::{ExperimentConfig, Stage, StageError, Timing};
use crate::community::{detect_communities_with, CommunityPartition, LouvainConfig};
use crate::error::Error;
use crate::exec::Execution;
use crate::graph::{load_edge_list, CostAssignment, Graph};
use crate::mia::MiiaCache;
use crate::rng::{derive_seed, Stream};
use crate::selection::{select_baseline, select_bimgt, select_bimgtc, Method, SeedSet};
use crate::shapley::{estimate_shapley, BimGame, SamplingPlan, ShapleyEstimate};

/// Everything shared by the cells of one experiment.
pub struct Instance {
    pub dataset: String,
    pub graph: Graph,
    pub costs: CostAssignment,
    pub cache: MiiaCache,
}

fn tag(stage: Stage) -> impl FnOnce(Error) -> StageError {
    move |source| StageError { stage, source }
}

/// Loads the graph, applies the probability scheme, assigns costs and builds
/// the arborescence cache.
pub fn prepare(config: &ExperimentConfig) -> Result<Instance, StageError> {
    let graph = load_edge_list(&config.graph, config.directed).map_err(tag(Stage::Load))?;
    let scheme = config.scheme().map_err(tag(Stage::Config))?;
    let graph = scheme.apply(graph).map_err(tag(Stage::Probabilities))?;
    let costs = match &config.cost_file {
        Some(path) => CostAssignment::from_file(&graph, path),
        None => CostAssignment::uniform(&graph, config.cost_min, config.cost_max, derive_seed(config.seed, Stream::Costs)),
    }
    .map_err(tag(Stage::Costs))?;
    let cache = MiiaCache::build(&graph, config.theta).map_err(tag(Stage::Cache))?;
    Ok(Instance {
        dataset: config.dataset_tag(),
        graph,
        costs,
        cache,
    })
}

/// Shapley values for an instance under the configured sampling plan.
pub fn shapley_for(instance: &Instance, config: &ExperimentConfig) -> Result<ShapleyEstimate, StageError> {
    let plan = SamplingPlan::for_graph(&instance.graph, config.epsilon, config.delta, config.tau_cap, config.repetitions)
        .map_err(tag(Stage::Shapley))?;
    let game = BimGame::new(&instance.graph, &instance.cache).map_err(tag(Stage::Shapley))?;
    estimate_shapley(&game, &plan, derive_seed(config.seed, Stream::Shapley)).map_err(tag(Stage::Shapley))
}

pub fn communities_for(graph: &Graph, config: &ExperimentConfig) -> Result<CommunityPartition, StageError> {
    let louvain = LouvainConfig {
        resolution: config.resolution,
        ..LouvainConfig::default()
    };
    detect_communities_with(graph, derive_seed(config.seed, Stream::Louvain), &louvain).map_err(tag(Stage::Communities))
}

/// A failed run: the stage that failed and the rows completed before it.
#[derive(Debug)]
pub struct RunFailure {
    pub error: StageError,
    pub partial: Option<Box<ResultTable>>,
}

impl std::fmt::Display for RunFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.error.fmt(f)
    }
}

impl std::error::Error for RunFailure {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

struct Shared<'a> {
    config: &'a ExperimentConfig,
    instance: &'a Instance,
    shapley: Option<&'a [f64]>,
    partition: Option<&'a CommunityPartition>,
    shapley_ms: f64,
    community_ms: f64,
}

impl Shared<'_> {
    fn elapsed(&self, start: Instant) -> f64 {
        match self.config.timing {
            Timing::Wall => start.elapsed().as_secs_f64() * 1e3,
            Timing::Off => 0.0,
        }
    }

    fn cell(&self, method: Method, budget: u64) -> Result<ResultRow, StageError> {
        let Instance { graph, costs, cache, dataset } = self.instance;
        let start = Instant::now();
        let mut set: SeedSet = match method {
            Method::Bimgt => select_bimgt(graph, costs, budget, self.shapley.expect("computed up front")),
            Method::Bimgtc => select_bimgtc(
                graph,
                costs,
                budget,
                self.shapley.expect("computed up front"),
                self.partition.expect("computed up front"),
            ),
            _ => select_baseline(graph, costs, budget, method, derive_seed(self.config.seed, Stream::Random)),
        }
        .map_err(tag(Stage::Selection))?;
        let mut select_ms = self.elapsed(start);
        if method == Method::Bimgtc {
            select_ms += self.community_ms;
        }
        if set.total_cost > budget {
            return Err(StageError {
                stage: Stage::Selection,
                source: Error::domain(format!("{method} spent {} of budget {budget}", set.total_cost)),
            });
        }
        let spread = set.evaluate(graph, cache).map_err(tag(Stage::Evaluation))?;

        let seeds_file = match &self.config.seeds_dir {
            Some(dir) => {
                let path = dir.join(format!("{dataset}_{method}_{budget}.json"));
                write_seed_record(&set, graph, &path).map_err(tag(Stage::Output))?;
                Some(path.display().to_string())
            }
            None => None,
        };
        Ok(ResultRow {
            dataset: dataset.clone(),
            method,
            budget,
            spread,
            seeds: set.len(),
            cost: set.total_cost,
            select_ms,
            shapley_ms: method.needs_shapley().then_some(self.shapley_ms),
            seeds_file,
        })
    }
}

fn write_seed_record(set: &SeedSet, graph: &Graph, path: &PathBuf) -> crate::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    set.record(graph).write_json(std::io::BufWriter::new(file))
}

/// Runs every (method, budget) cell of `config` and writes the configured
/// output files.
///
/// Rows come out in method order, then ascending budget, whether or not
/// cells run concurrently. Shapley values and communities are computed once
/// and shared by all budgets. On failure the rows finished so far are
/// flushed to `<output>.partial` files.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultTable, RunFailure> {
    let fail = |error: StageError| RunFailure { error, partial: None };
    config.validate().map_err(|e| fail(tag(Stage::Config)(e)))?;
    let resolved = config.resolved().map_err(|e| fail(tag(Stage::Config)(e)))?;
    let mut table = ResultTable {
        status: RunStatus::Complete,
        error: None,
        config: resolved.clone(),
        shapley_runs: 0,
        rows: Vec::new(),
    };

    let outcome = run_cells(&resolved, &mut table);
    if let Err(error) = outcome {
        table.status = RunStatus::Partial;
        table.error = Some(error.to_string());
        // best effort: the original failure is what gets reported
        let _ = emit(&resolved, &table);
        return Err(RunFailure {
            error,
            partial: Some(Box::new(table)),
        });
    }
    if let Err(error) = emit(&resolved, &table) {
        return Err(RunFailure {
            error,
            partial: Some(Box::new(table)),
        });
    }
    Ok(table)
}

fn run_cells(config: &ExperimentConfig, table: &mut ResultTable) -> Result<(), StageError> {
    let instance = prepare(config)?;

    let needs_shapley = config.methods.iter().any(|m| m.needs_shapley());
    let (shapley, shapley_ms) = if needs_shapley {
        let start = Instant::now();
        let estimate = shapley_for(&instance, config)?;
        table.shapley_runs += 1;
        let ms = match config.timing {
            Timing::Wall => start.elapsed().as_secs_f64() * 1e3,
            Timing::Off => 0.0,
        };
        (Some(estimate.values), ms)
    } else {
        (None, 0.0)
    };
    let (partition, community_ms) = if config.methods.contains(&Method::Bimgtc) {
        let start = Instant::now();
        let p = communities_for(&instance.graph, config)?;
        let ms = match config.timing {
            Timing::Wall => start.elapsed().as_secs_f64() * 1e3,
            Timing::Off => 0.0,
        };
        (Some(p), ms)
    } else {
        (None, 0.0)
    };

    let shared = Shared {
        config,
        instance: &instance,
        shapley: shapley.as_deref(),
        partition: partition.as_ref(),
        shapley_ms,
        community_ms,
    };
    let cells: Vec<(Method, u64)> = config
        .methods
        .iter()
        .flat_map(|&m| config.budgets.iter().map(move |&b| (m, b)))
        .collect();
    let exec = if config.parallel_cells {
        Execution::default()
    } else {
        Execution::Sequential
    };
    let results = exec.map(cells.len(), |i| shared.cell(cells[i].0, cells[i].1));
    for r in results {
        table.rows.push(r?);
    }
    Ok(())
}

fn emit(config: &ExperimentConfig, table: &ResultTable) -> Result<(), StageError> {
    if let Some(path) = &config.output_csv {
        write_results(table, Format::Csv, path).map_err(tag(Stage::Output))?;
    }
    if let Some(path) = &config.output_json {
        write_results(table, Format::Json, path).map_err(tag(Stage::Output))?;
    }
    Ok(())
}
