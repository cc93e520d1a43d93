//! Local complementation orbits of graph states.
//!
//! The crate maps the orbits of small graphs under local complementation,
//! both labelled and up to isomorphism, and computes graph and orbit metrics
//! over them. A stabilizer-tableau model of the corresponding local Clifford
//! unitaries cross-checks the graph rule.

pub mod canon;
pub mod census;
pub mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod orbit;
pub mod rankwidth;
pub mod stabilizer;

pub use error::{Error, Result};
pub use graph::Graph;
