//! Threshold-`k` metric dimension of trees.
//!
//! A sensor measures every vertex within distance `k`; distances beyond `k`
//! all read as `k + 1`. A sensor set is resolving when every vertex is
//! measured and the truncated distance vectors tell all vertices apart.
//!
//! The crate covers verification ([`resolution`]), the attraction structure
//! of a sensor set, the three edge-rewiring transformations that grow a
//! resolved tree without losing resolution ([`transforms`]), closed-form
//! lower bounds ([`bounds`]), construction of maximum-size trees for a
//! given sensor count ([`construct`]), and exhaustive search for the exact
//! dimension ([`solver`]).

pub mod bounds;
pub mod construct;
pub mod error;
pub mod resolution;
pub mod solver;
pub mod transforms;
pub mod tree;

pub use error::{Result, TmdError};
pub use resolution::{SensorPath, SensorSet, TypeHeight, Verdict};
pub use tree::{Edge, Tree, Vertex};
