//! Exact verification of t-norms, t-conorms, uninorms and nullnorms, and of
//! the fuzzy, vague and lattice-valued structures built from them.

pub mod cli;
pub mod connective;
pub mod engine;
pub mod error;
pub mod fuzzy;
pub mod io;
pub mod lattice;
pub mod report;
pub mod scalar;
pub mod suite;
pub mod vague;

pub use connective::{Connective, Role};
pub use error::{Error, Result};
pub use report::{PropertyReport, SearchBudget, Verdict};
pub use scalar::{Domain, UnitScalar};
