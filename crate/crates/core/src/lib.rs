//! Exact counting, simulation and cross-checking for the Ulam-Warburton
//! cellular automaton.
//!
//! Generation 1 is the lone origin cell. `u(n)` is the number of cells born
//! at generation `n` and `U(n)` the cumulative count. Closed forms are
//! evaluated on arbitrary-precision integers; the sparse simulator is the
//! ground truth they are checked against.

pub mod automaton;
pub mod budget;
pub mod enumeration;
mod error;
pub mod verification;
pub mod weight_sums;

pub use budget::Budgets;
pub use error::{Error, Result};

/// Generation numbers, multipliers and other non-negative indices.
pub type Index = num_bigint::BigUint;

/// Cell counts: values of `u`, `U`, the weight sum `S` and `a_m`.
pub type CellCount = num_bigint::BigUint;
