//! Finite-topology laboratory: finite spaces, the continuous maps between
//! them, Scott-type topologies on lattices of open sets, the function-space
//! topologies they induce, and decision procedures for admissibility and
//! splitting.

pub mod budget;
pub mod checkers;
pub mod duality;
pub mod error;
pub mod explorer;
pub mod finspace;
pub mod fntop;
pub mod hypertop;
pub mod json;
pub mod mapspace;
pub mod par;
pub mod report;

pub use budget::Budget;
pub use error::{Result, TopoError};
pub use finspace::{FinSpace, Subset, SubsetFamily};
