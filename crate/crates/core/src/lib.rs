//! Separator-based local search on graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: immutable simple graphs, induced subgraph views, generators
//!   and the text file format.
//! - [`oracle`]: value functions, the memoizing query counter and
//!   local-minimum certificates.
//! - [`separators`]: separator providers, the high-degree augmentation and
//!   closed-form size bounds.
//! - [`search`]: steepest descent, randomized steepest descent, min-finders
//!   and the separator-driven divide-and-conquer search.
//! - [`bench`]: multi-trial experiments, CSV output and scaling fits.

pub mod bench;
mod error;
pub mod graph;
pub mod oracle;
pub mod search;
pub mod separators;

pub use error::{Error, Result};
pub use graph::{Graph, SubgraphView, VertexId};
pub use oracle::{CountingOracle, OrderKey, ValueFunction};
