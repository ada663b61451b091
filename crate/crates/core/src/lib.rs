//! Arbitrary-precision machinery behind Ramanujan-type series for 1/pi:
//! complete elliptic integrals and theta functions, Ramanujan-Weber class
//! invariants and singular values, and a catalog of rapidly convergent
//! series evaluated by direct summation or binary splitting.

pub mod cli;
pub mod elliptic;
pub mod error;
pub mod invariants;
pub mod precision;
pub mod series;

pub use error::{Error, Result};
pub use precision::PrecisionContext;
pub use rug::{Float, Integer, Rational};
