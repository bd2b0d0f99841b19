//! Conversions between bipartite edge-transitive graphs and core-free
//! rank-two coset geometries, with the structural analysis of every
//! edge-transitive subgroup that the two directions support.
//!
//! The pipeline in one sentence: take a connected bipartite graph whose
//! color-preserving automorphism group moves every edge to every other,
//! enumerate the edge-transitive subgroups of that group up to conjugacy,
//! and answer a fixed battery of structural questions about each stabilizer
//! pair, producing one table row per subgroup class; the reverse direction
//! builds the Levi graph of a coset geometry given by a group and two
//! subgroups.

pub mod analysis;
pub mod config;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod perm;

pub use config::RunConfig;
pub use error::{Error, Result};
