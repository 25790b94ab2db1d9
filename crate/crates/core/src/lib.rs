//! Exact computations with one-dimensional inseparable forms of the additive
//! group in characteristic `p`.

pub mod error;
pub mod field;

pub use error::{Error, Result};
pub mod expr;
pub mod ppoly;
pub mod grouplaw;
pub mod torsor;
pub mod hassewitt;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
