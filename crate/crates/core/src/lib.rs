//! Spanning trees of C4-free graphs.
//!
//! Builds orthogonal polarity graphs over GF(q), counts their spanning trees
//! exactly with the matrix-tree theorem, evaluates degree-envelope upper bounds
//! on the number of spanning trees of C4-free (and K_{2,t}-, C_{2k}-free)
//! graphs, and determines st(n, C3) and st(n, C4) by exhaustive search for small n.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod field;
pub mod graph;
pub mod plane;
pub mod precise;
pub mod report;
pub mod search;
pub mod trees;

pub use error::{Error, Result};
pub use field::{make_field, FieldElem, FieldSpec};
pub use graph::{DegreeSequence, Graph};
pub use plane::{build_er_graph, er_graph, PolarityGraphBundle, ProjPoint};
pub use search::{exhaustive_st, Forbidden, SearchOptions, SearchResult};
pub use trees::{tau, DetEngine, Engine, TreeCount};
