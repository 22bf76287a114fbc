//! Finite-field arithmetic and c-differential analysis of functions over
//! GF(p^n).
//!
//! - [`field`]: explicit GF(p^n) construction and element arithmetic.
//! - [`spectrum`]: c-derivatives, c-DDTs and c-differential uniformity.
//! - [`theory`]: closed-form exponent identities and prediction rules for
//!   known power-map families.
//! - [`harness`]: prediction-vs-computation grids, exponent search and
//!   report output.

mod arith;
pub mod error;
pub mod field;
pub mod harness;
pub mod spectrum;
pub mod theory;

pub use error::{Error, Result};
pub use field::{Element, Field, FieldElement, FieldSpec, Quadrant, Sign};
