//! Maximum Influence Arborescence diffusion.
//!
//! For a root `v` and threshold `theta`, the in-arborescence `MIIA(v, theta)`
//! is the union of the maximum-probability paths into `v` whose probability
//! is at least `theta`. Paths are found with Dijkstra over reversed arcs
//! using additive weights `-ln P(e)`; among equally good paths the one whose
//! next hop has the smaller index wins, which keeps the union a tree.
//!
//! Given seeds `S`, activation probabilities are evaluated bottom-up:
//!
//! ```text
//! ap(u) = 1                                  if u in S
//! ap(u) = 1 - prod_{w child of u} (1 - ap(w) * P(w, u))   otherwise
//! ```
//!
//! (a non-seed leaf gets the empty product, i.e. 0), and the spread is
//! `sigma(S) = sum_v ap(v, S, MIIA(v, theta))`.

mod cache;
mod path;
mod sweep;
mod tree;

pub use cache::MiiaCache;
pub use path::{max_influence_path, MaxInfluencePath};
pub use sweep::ActivationSweep;
pub use tree::{activation_probability, build_miia, MiiaTree};

/// Default probability threshold for arborescence membership.
pub const DEFAULT_THETA: f64 = 0.01;
