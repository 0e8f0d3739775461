//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or configuration, 2 runtime failure.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use bimgame::community::CommunityPartition;
use bimgame::harness::{self, ExperimentConfig, Instance, StageError};
use bimgame::selection::{read_seeds, select_baseline, select_bimgt, select_bimgtc, Method};
use bimgame::shapley::read_values;
use bimgame::{rng, Error};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bimgame", version, about = "Shapley-value seed selection for budgeted influence maximization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate Shapley values and write `identifier,phi` lines.
    Shapley {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Select seeds with one method under one budget.
    Select {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        method: Method,
        #[arg(long)]
        budget: u64,
        /// Precomputed `identifier,phi` file; estimated when absent.
        #[arg(long)]
        phi: Option<PathBuf>,
        /// Precomputed `identifier,community` file; detected when absent.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        resolution: f64,
        /// Seed record (JSON); printed to stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run a full method-by-budget sweep from a config file.
    Experiment {
        /// TOML config, or the JSON result file of an earlier run.
        #[arg(long, short)]
        config: PathBuf,
        #[arg(long)]
        output_csv: Option<PathBuf>,
        #[arg(long)]
        output_json: Option<PathBuf>,
    },
    /// Detect communities and write `identifier,community` lines.
    Communities {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        resolution: f64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Print sigma(S) for a seed file (JSON record or one identifier per line).
    Evaluate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        seeds: PathBuf,
    },
    /// Print the arborescence of one root.
    Miia {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        root: String,
    },
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Edge list: two identifiers per line, `#` comments.
    #[arg(long, short)]
    graph: PathBuf,
    #[arg(long)]
    directed: bool,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// `uniform:<p>`, `trivalency[:<seed>]` or `wc`.
    #[arg(long, default_value = "wc")]
    probability: String,
    #[arg(long, default_value_t = bimgame::mia::DEFAULT_THETA)]
    theta: f64,
    /// `identifier,cost` file; costs are drawn from the interval otherwise.
    #[arg(long)]
    costs: Option<PathBuf>,
    #[arg(long, default_value_t = 50)]
    cost_min: u64,
    #[arg(long, default_value_t = 100)]
    cost_max: u64,
    /// Master seed; every randomized stage derives its own stream from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone)]
struct SamplingArgs {
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    repetitions: u32,
    #[arg(long)]
    tau_cap: Option<u64>,
}

impl InstanceArgs {
    fn config(&self) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(&self.graph.graph);
        c.directed = self.graph.directed;
        c.probability = self.probability.clone();
        c.theta = self.theta;
        c.cost_file = self.costs.clone();
        c.cost_min = self.cost_min;
        c.cost_max = self.cost_max;
        c.seed = self.seed;
        c
    }
}

impl SamplingArgs {
    fn apply(&self, c: &mut ExperimentConfig) {
        c.epsilon = self.epsilon;
        c.delta = self.delta;
        c.repetitions = self.repetitions;
        c.tau_cap = self.tau_cap;
    }
}

/// Error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn validation(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

fn runtime(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

impl From<StageError> for Failure {
    fn from(e: StageError) -> Self {
        if e.is_validation() {
            validation(e)
        } else {
            runtime(e)
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => runtime(e),
            _ => validation(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Shapley { instance, sampling, out } => {
            let mut config = instance.config();
            sampling.apply(&mut config);
            config.validate()?;
            let inst = harness::prepare(&config)?;
            let estimate = harness::shapley_for(&inst, &config)?;
            if estimate.plan.is_capped() {
                eprintln!(
                    "note: drew {} permutations; the bound asks for {}",
                    estimate.plan.tau, estimate.plan.bound
                );
            }
            with_output(out.as_deref(), |w| estimate.write(&inst.graph, w))
        }
        Command::Select {
            instance,
            sampling,
            method,
            budget,
            phi,
            partition,
            resolution,
            out,
        } => {
            let mut config = instance.config();
            sampling.apply(&mut config);
            config.methods = vec![method];
            config.budgets = vec![budget.max(1)];
            config.resolution = resolution;
            config.validate()?;
            let inst = harness::prepare(&config)?;
            let mut set = select(&inst, &config, method, budget, phi.as_deref(), partition.as_deref())?;
            set.evaluate(&inst.graph, &inst.cache)?;
            let record = set.record(&inst.graph);
            match out {
                Some(path) => {
                    let file = File::create(&path).with_context(|| format!("creating {}", path.display())).map_err(runtime)?;
                    record.write_json(BufWriter::new(file))?;
                    Ok(())
                }
                None => {
                    record.write_json(io::stdout().lock())?;
                    println!();
                    Ok(())
                }
            }
        }
        Command::Experiment {
            config,
            output_csv,
            output_json,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if output_csv.is_some() {
                cfg.output_csv = output_csv;
            }
            if output_json.is_some() {
                cfg.output_json = output_json;
            }
            if cfg.output_csv.is_none() && cfg.output_json.is_none() {
                return Err(validation(anyhow::anyhow!("no output_csv or output_json configured")));
            }
            let table = harness::run_experiment(&cfg).map_err(|f| Failure::from(f.error))?;
            eprintln!("{} rows, {} Shapley estimation(s)", table.rows.len(), table.shapley_runs);
            Ok(())
        }
        Command::Communities {
            graph,
            seed,
            resolution,
            out,
        } => {
            let g = bimgame::graph::load_edge_list(&graph.graph, graph.directed)?;
            let mut config = ExperimentConfig::new(&graph.graph);
            config.seed = seed;
            config.resolution = resolution;
            config.validate()?;
            let p = harness::communities_for(&g, &config)?;
            eprintln!("{} communities, modularity {}", p.count(), p.modularity());
            with_output(out.as_deref(), |w| p.write(&g, w))
        }
        Command::Evaluate { instance, seeds } => {
            let config = instance.config();
            config.validate()?;
            let inst = harness::prepare(&config)?;
            let file = File::open(&seeds).map_err(|e| Error::Io {
                path: seeds.clone(),
                source: e,
            })?;
            let nodes = read_seeds(&inst.graph, BufReader::new(file), &seeds)?;
            let sigma = inst.cache.sigma(&inst.graph, &nodes)?;
            println!("{sigma}");
            Ok(())
        }
        Command::Miia { instance, root } => {
            let config = instance.config();
            config.validate()?;
            let inst = harness::prepare(&config)?;
            let u = inst
                .graph
                .node_id(&root)
                .ok_or_else(|| validation(anyhow::anyhow!("unknown node `{root}`")))?;
            print!("{}", inst.cache.tree(u).dump(&inst.graph));
            Ok(())
        }
    }
}

fn select(
    inst: &Instance,
    config: &ExperimentConfig,
    method: Method,
    budget: u64,
    phi: Option<&Path>,
    partition: Option<&Path>,
) -> Result<bimgame::SeedSet, Failure> {
    if !method.needs_shapley() {
        let seed = rng::derive_seed(config.seed, rng::Stream::Random);
        return Ok(select_baseline(&inst.graph, &inst.costs, budget, method, seed)?);
    }
    let values = match phi {
        Some(path) => {
            let file = File::open(path).map_err(|e| Error::Io {
                path: path.to_path_buf(),
                source: e,
            })?;
            read_values(&inst.graph, BufReader::new(file), path)?
        }
        None => harness::shapley_for(inst, config)?.values,
    };
    if method == Method::Bimgt {
        return Ok(select_bimgt(&inst.graph, &inst.costs, budget, &values)?);
    }
    let partition = match partition {
        Some(path) => {
            let file = File::open(path).map_err(|e| Error::Io {
                path: path.to_path_buf(),
                source: e,
            })?;
            CommunityPartition::read(&inst.graph, BufReader::new(file), path)?
        }
        None => harness::communities_for(&inst.graph, config)?,
    };
    Ok(select_bimgtc(&inst.graph, &inst.costs, budget, &values, &partition)?)
}

fn with_output(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Failure> {
    let result = match path {
        Some(p) => File::create(p).and_then(|f| {
            let mut w = BufWriter::new(f);
            write(&mut w)?;
            w.flush()
        }),
        None => {
            let mut w = io::stdout().lock();
            write(&mut w)
        }
    };
    result.context("writing output").map_err(runtime)
}
