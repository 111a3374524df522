//! Solvers for the shortest path most vital edges problem: delete at most
//! `k` edges of an undirected graph so that the distance between two
//! terminals becomes at least `ell`.

pub mod approx;
pub mod cli;
pub mod control;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod kernel;
pub mod poly;

pub use control::{Interrupted, SearchControl};
pub use error::{Error, Result};
pub use graph::{Distance, Edge, EdgeId, Graph};
pub use instance::{Instance, Solution, Violation};
