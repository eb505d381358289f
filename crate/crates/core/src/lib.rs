//! Combinatorics of fixed-order (q+1)-edge-colored SYK graphs.
//!
//! The crate is organised along the pipeline that relates colored graphs to
//! counting and sampling:
//!
//! * [`graph`]: rooted colored graphs, order, residues and predicates;
//! * [`constellation`]: the bijection with constellations (and its signed
//!   variant for non-bipartite graphs);
//! * [`kernel`]: core pruning, chain decomposition and kernel catalogs;
//! * [`series`]: exact generating functions and asymptotic constants;
//! * [`oracle`]: brute-force enumeration used to cross-validate the series;
//! * [`sampler`]: exact uniform generation at fixed order and size;
//! * [`cli`]: the command line front end.

pub mod cli;
pub mod constellation;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod sampler;
pub mod series;

pub use constellation::{Constellation, SignedConstellation, SignedGraph};
pub use error::{Error, Result};
pub use graph::{ColoredGraph, Violation};
pub use kernel::{EdgeStats, KernelDiagram};
pub use series::Series;
