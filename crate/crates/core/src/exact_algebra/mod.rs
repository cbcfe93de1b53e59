//! Exact linear algebra over cyclotomic fields.

mod cyclo;
mod matrix;
pub(crate) mod modp;
mod poly;

pub use cyclo::{cyclo_reduce, cyclotomic_poly, root_of_unity_order, CycField, CycQ};
pub use matrix::{are_conjugate, char_poly, invariant_factors, power_charpoly, Matrix};
pub use poly::{CharPoly, CycPoly};
