//! Exact computation of character tables, minimal faithful quasi-permutation
//! degrees `c(G)` and minimal faithful permutation degrees `mu(G)` for finite
//! p-groups given by presentations.

pub mod analysis;
pub mod arith;
pub mod catalog;
pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod limits;
pub mod permdeg;
pub mod presentation;
pub mod quasiperm;
pub mod verify;

pub use error::{Error, Result};
pub use limits::Limits;
