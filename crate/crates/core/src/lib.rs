//! Combinatorial calculus for trisection diagrams of 4-manifolds and
//! Heegaard diagrams of 3-manifolds.

pub mod cli;
pub mod diagram;
pub mod error;
pub mod gprc_ac;
pub mod kirby;
pub mod moves;
pub mod replay;
pub mod surface_core;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::{Verdict, VerdictStatus, Witness};
