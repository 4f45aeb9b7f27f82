//! Exact certificates for non-Hamiltonian circle actions with isolated fixed
//! points, glued from K3 blocks.
//!
//! Everything is exact: integers are [`num_bigint::BigInt`], rationals are
//! [`Rational`]. No floating point is used anywhere in a check.

pub mod blowup;
pub mod dh;
pub mod embeddings;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod par;
pub mod planner;
pub mod report;

pub use error::{Error, Result};
pub use exact::{IntMatrix, Rational};
pub use lattice::{AmbientVector, Lattice};
pub use par::Execution;
pub use planner::{build_certificate, plan, verify, verify_with, ConstructionCertificate, ConstructionPlan};
pub use report::{CheckResult, VerificationReport};
