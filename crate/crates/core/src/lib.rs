//! Circuits over the Boolean, arithmetic and tropical semirings: produced
//! polynomials, read-k classification, transformation passes, multilinearity
//! analysis and blocking-lines families.

pub mod boolfun;
pub mod circuit;
pub mod error;
pub mod families;
pub mod multilinear;
mod grid;
pub mod poly;
pub mod random;
pub mod transforms;
pub mod tropical;

pub use error::{Error, Result};
