//! Canonical nested separation systems and the tree-decompositions they
//! induce, distinguishing the k-blocks, tangles and general k-profiles of a
//! small graph.

pub mod automorphism;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod limits;
pub mod parse;
pub mod profile;
pub mod separation;
pub mod strategy;
pub mod treedec;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{components, is_l_connected, Graph};
pub use limits::Limits;
pub use parse::{parse_graph, GraphFormat};
pub use profile::{Orientation, Profile, ProfileKind};
pub use separation::{corner_separations, enumerate_separations, Separation, SeparationSet};
pub use vertex_set::VertexSet;
