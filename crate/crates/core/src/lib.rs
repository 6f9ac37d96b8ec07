//! Irregularity strength of graphs.
//!
//! The irregularity strength `s(G)` is the least `k` such that the edges of
//! `G` can be weighted from `{1, ..., k}` so that all weighted degrees are
//! pairwise distinct. This crate provides:
//!
//! - [`graph`]: graphs with stable edge indices, the edge-list format and
//!   fixture generators;
//! - [`weighting`]: weightings, the verifier and closed-form bounds;
//! - [`exact`]: exact `s(G)` for small graphs and a randomized heuristic;
//! - [`dense`]: the randomized three-phase weighting with weights
//!   `{1, 2, 3, K}` for graphs of large minimum degree;
//! - [`chernoff`]: concentration-bound calculators used as diagnostics.

pub mod chernoff;
pub mod dense;
pub mod exact;
pub mod graph;
pub mod weighting;

pub use graph::{check_goodness, parse_edge_list, GoodnessReport, Graph};
pub use weighting::{is_irregular, weighted_degrees, EdgeWeighting, WeightedDegrees};
