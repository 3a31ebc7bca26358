//! Imsets, imset fibers, and covariance-equivalence certificates for directed,
//! possibly cyclic, graphs.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod imset;
pub mod lattice;
pub mod numeric;

pub use error::{Error, Result};
