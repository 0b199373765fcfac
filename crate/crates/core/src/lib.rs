//! Landau–Ginzburg mirror symmetry for invertible polynomials with
//! non-abelian symmetry groups.

pub mod error;
pub mod polynomial;
pub mod symmetry;
pub mod duality;
pub mod state_space;
pub mod mirror;
pub mod cli;

pub use error::{Error, Result};
