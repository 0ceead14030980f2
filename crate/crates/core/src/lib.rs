pub mod arith;
pub mod dedekind;
pub mod error;
pub mod fields;
pub mod grunwald;
pub mod lattice;
pub mod limits;
pub mod period;
pub mod poly;
pub mod realizations;
pub mod zmodstar;

pub use error::{Error, Result};
pub use fields::{AbelianField, SplittingData};
pub use limits::Limits;
pub use poly::{FpPolynomial, IntPolynomial};
pub use zmodstar::{Subgroup, UnitGroup};
