//! Exact computations around potential equivalence of matrix representations:
//! m-power characters, power-sum linearizations, uniform power bounds,
//! Weil polynomial enumeration, and finite-quotient test-set simulation.

pub mod arith;
pub mod error;
pub mod exact_algebra;
pub mod faltings_sim;
pub mod local_bound;
pub mod newton;
pub mod poteq;
pub mod weil;

pub use error::{Error, Result};
