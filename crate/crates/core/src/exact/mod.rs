//! Exact integer and rational arithmetic.
//!
//! Nothing in this crate touches floating point. Rationals are kept in lowest
//! terms with a positive denominator, so equality is structural.

mod matrix;
mod rational;

pub use matrix::{IntMatrix, Inertia, SmithForm};
pub use rational::Rational;

pub use num_bigint::BigInt;
