//! Exact and probabilistic algebraic-degree testing for Boolean functions.
//!
//! The `deg(f) < k` test sums `f` over a random affine space of dimension
//! at most `k`. This crate computes the failure probability of that test
//! exactly, estimates it by sampling, and sweeps it over lists of affine
//! class representatives.

pub mod boolfun;
pub mod catalog;
pub mod degtest;
pub mod error;
pub mod gf2;
pub mod prob;

pub use error::{Error, Result};
pub use prob::ExactProb;
