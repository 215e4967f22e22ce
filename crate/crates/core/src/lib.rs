//! Connected spanning Eulerian subgraphs with at most ⌊4n/3⌋ − 2 edges in
//! cubic 3-edge-connected graphs, i.e. TSP tours of length at most 4n/3 in
//! the unit-length shortest-path metric of such a graph.
//!
//! The pipeline: a 2-factor with no cycle shorter than five
//! ([`twofactor`]), compression of its 5-cycles into super-vertices
//! ([`compress`]), expansion back into an even subgraph with bounded growth
//! ([`expand`]), and joining the components into one Euler tour
//! ([`assemble`]). [`oracle`] computes exact optima on small graphs.

pub mod assemble;
pub mod compress;
pub mod error;
pub mod expand;
pub mod generate;
pub mod io;
pub mod matching;
pub mod multigraph;
pub mod oracle;
pub mod subgraph;
pub mod twofactor;

pub use assemble::{solve, Certificate, Solution, Tour};
pub use error::{Error, Result};
pub use multigraph::{EdgeId, Multigraph, VertexId};
pub use subgraph::EvenSubgraph;
