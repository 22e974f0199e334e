//! Solvers for adversarial target search with distance-dependent query costs.
//!
//! A target vertex is chosen adversarially on a path (or tree). Each query
//! either hits the target or reveals the direction towards it, and costs an
//! amount that grows with the distance between the query and the target.
//! The library provides:
//!
//! - exact minimax dynamic programs on the line for polynomial distance
//!   costs and for bivariate position-dependent polynomial costs, based on
//!   power-sum sketches of the query history ([`line_solver`]);
//! - a k-cut search-tree dynamic program on trees with interface-vertex
//!   sketches ([`tree_solver`]);
//! - the Binary Search baseline together with its upper and lower cost
//!   bounds and the instances separating it from the optimum
//!   ([`line_solver`]);
//! - search-tree-on-tree (STT) strategies with rotations, promotions and
//!   the k-cut conversion procedure ([`strategy`]);
//! - brute-force minimax oracles on small instances ([`oracle`]).

pub mod cli;
pub mod costs;
pub mod error;
pub mod gen;
pub mod graph;
pub mod line_solver;
pub mod oracle;
pub mod strategy;
pub mod tree_solver;

pub use costs::CostModel;
pub use error::{Error, Result};
pub use graph::{Tree, VertexSet};
pub use strategy::SearchTree;
