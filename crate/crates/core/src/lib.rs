//! Budgeted influence maximization as a cooperative game.
//!
//! Nodes of a social network are players; the utility of a coalition is its
//! expected spread under the Maximum Influence Arborescence (MIA) model. The
//! crate estimates every node's Shapley value by permutation sampling and
//! turns the values into a seed set that respects a selection budget, either
//! from one global ranking or community by community.
//!
//! Module map:
//!
//! * [`graph`]: graph storage, edge-list ingestion, probability schemes, costs.
//! * [`mia`]: maximum influence paths, in-arborescences, activation
//!   probabilities and the spread function.
//! * [`shapley`]: the game, sample-count bound, Monte Carlo and exact Shapley.
//! * [`community`]: Louvain detection and modularity.
//! * [`selection`]: the two Shapley-driven selectors and the RAND/MDH/MCCH
//!   baselines.
//! * [`harness`]: experiment configuration, budget sweeps and result files.

pub mod community;
pub mod error;
pub mod exec;
pub mod graph;
pub mod harness;
pub mod mia;
pub mod rng;
pub mod selection;
pub mod shapley;

pub use community::{detect_communities, modularity, CommunityPartition, LouvainConfig};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{CostAssignment, Graph, NodeId, ProbabilityScheme};
pub use mia::{MaxInfluencePath, MiiaCache, MiiaTree};
pub use selection::{Method, SeedSet};
pub use shapley::{BimGame, SamplingPlan, ShapleyEstimate};
