//! Executable version of the gluing recipe: choose the block sizes and
//! levels, assemble a certificate, and check every claim in it.

mod certificate;
mod plan;
mod verify;

pub use certificate::{
    build_certificate, BlowupCert, ConstructionCertificate, DualCert, LatticeCert, OuterCert,
    FORMAT_VERSION,
};
pub use plan::{plan, ConstructionPlan, STANDARD_B};
pub use verify::{verify, verify_with};
