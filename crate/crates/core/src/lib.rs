pub mod analyzer;
pub mod arith;
pub mod diff;
pub mod diffpoly;
mod error;
pub mod expr;
pub mod newton;
pub mod puiseux;
pub mod riccati;

pub use error::{Error, Result};
