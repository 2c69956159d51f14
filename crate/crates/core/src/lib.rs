//! Largest crisp bisimulations of fuzzy labeled graphs.
//!
//! [`compute`] returns the partition of the largest crisp bisimulation and
//! [`s_compute`] the one for the counting-successors variant, both by
//! partition refinement in `O((m log l + n) log n)` time. The [`oracle`]
//! module holds slow reference implementations used for cross-checking.

pub mod bench;
pub mod check;
pub mod cli;
pub mod degree;
pub mod engine;
pub mod graph;
pub(crate) mod list;
pub mod oracle;
pub mod partition;

pub use degree::Degree;
pub use engine::{compute, refine, s_compute, Mode, Refinement, RefinementStats};
pub use graph::{FuzzyGraph, GraphBuilder, GraphError, VertexLabel};
pub use partition::PartitionResult;
