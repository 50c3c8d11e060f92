//! Gallai colorings of complete graphs: bit-parallel clique verification,
//! substitution constructions and their certificates, constructive Gallai
//! partitions, exact value-function and ratio-table arithmetic, Ramsey
//! witness catalog with seeded search, and exhaustive weight-bound
//! enumeration.

pub mod bitset;
pub mod canonical;
pub mod catalog;
pub mod certificate;
pub mod clique;
pub mod coloring;
pub mod exhaustive;
pub mod formula;
pub mod partition;
pub mod search;
pub mod substitution;
pub mod weights;

pub use bitset::VertexSet;
pub use coloring::{ColoringBuilder, EdgeColoring};
