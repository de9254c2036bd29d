//! Power graphs, enhanced power graphs and difference graphs of finite
//! groups, with exact metric dimension and checks of the closed-form
//! results for nilpotent, dihedral, generalized quaternion and
//! semidihedral groups.

pub mod error;
pub mod formulas;
pub mod graph;
pub mod group;
pub mod metric;
pub mod report;
pub mod twins;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, GraphKind};
pub use group::{Group, GroupSpec};

/// Semantic version used to key cached sweep results.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
