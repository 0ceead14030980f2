//! Exact polynomial arithmetic over the integers and over prime fields.

pub mod fp;
pub mod int;

pub use fp::FpPolynomial;
pub use int::{discriminant, resultant, IntPolynomial};
