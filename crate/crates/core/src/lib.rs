//! Meeting-point planning for several users on a weighted graph.
//!
//! Each user's shortest distances to every vertex are computed with one
//! Dijkstra run per user. From those rows the planner scores every vertex by
//! a blend of the total distance travelled and how unequal the individual
//! distances are, and picks the best one. [`sim`] re-runs that choice every
//! tick while users walk towards it.
//!
//! The numeric core is generic over [`Scalar`]; [`Rational`] gives exact
//! answers, `f64` is the default.

pub mod error;
pub mod graph;
pub mod grid;
pub mod maps;
pub mod meetpoint;
pub mod oracle;
pub mod scalar;
pub mod sim;
pub mod sssp;

pub use error::{Error, Result};
pub use graph::{ChannelId, Direction, Edge, DISTANCE};
pub use grid::{parse_grid_map, parse_map, GridMap};
pub use meetpoint::{ObjectiveWeights, PreferenceProfile, ReachabilitySet, ScoreKind};
pub use scalar::{Extended, Rational, Scalar};
pub use sim::{SimState, SimTrace};

pub type Graph = graph::Graph<f64>;
pub type Graph32 = graph::Graph<f32>;
pub type ExactGraph = graph::Graph<Rational>;

pub type AdjacentMatrix = sssp::AdjacentMatrix<f64>;
pub type ExactAdjacentMatrix = sssp::AdjacentMatrix<Rational>;
pub type DistanceRow = sssp::DistanceRow<f64>;
pub type ExactDistanceRow = sssp::DistanceRow<Rational>;

pub type ScoreVector = meetpoint::ScoreVector<f64>;
pub type ExactScoreVector = meetpoint::ScoreVector<Rational>;
pub type Plan = meetpoint::Plan<f64>;
pub type ExactPlan = meetpoint::Plan<Rational>;

pub type FullMatrix = oracle::FullMatrix<f64>;
pub type ExactFullMatrix = oracle::FullMatrix<Rational>;
