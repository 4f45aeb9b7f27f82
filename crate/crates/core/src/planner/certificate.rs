use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::plan::ConstructionPlan;
use crate::blowup::{MarkedBlowupModel, PairingTable, Sign};
use crate::dh::DHProfile;
use crate::embeddings::{is_primitive_span, roots_construct, DualWitnesses, RootsData};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::lattice::{k3, AmbientVector, Lattice};

pub const FORMAT_VERSION: &str = "k3glue-certificate/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCert {
    pub kappa_hat: Vec<i64>,
    pub beta: Vec<i64>,
    pub d: Vec<Vec<i64>>,
}

/// Root data for one block, in the fixed K3 basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCert {
    pub k: i64,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub kappa_hat: Vec<i64>,
    pub beta: Vec<i64>,
    pub d: Vec<Vec<i64>>,
    pub duals: DualCert,
    /// Elementary divisors of span{κ̂, β, d₁..d_k}.
    pub snf_divisors: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OuterCert {
    pub sign: Sign,
    pub kappa_hat: Vec<i64>,
    pub eta_hat: Vec<i64>,
    pub pairings: PairingTable,
    /// Elementary divisors of span{κ̂_±, η̂_±}.
    pub snf_divisors: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupCert {
    pub k: i64,
    pub minus: OuterCert,
    pub plus: OuterCert,
}

/// Field order here is the serialized order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub format_version: String,
    pub k: i64,
    pub ell: i64,
    pub parts: Vec<i64>,
    #[serde(rename = "C")]
    pub c: Vec<i64>,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub overlap_width: Rational,
    pub profile: DHProfile,
    pub lattice_certs: Vec<LatticeCert>,
    pub blowup_certs: Vec<BlowupCert>,
}

fn ints(v: &AmbientVector) -> Vec<i64> {
    v.to_i64s().expect("integral vector with small entries")
}

pub(crate) fn vector(v: &[i64]) -> AmbientVector {
    AmbientVector::from_i64s(v)
}

fn divisors(c: &crate::embeddings::PrimitivityCertificate) -> Vec<i64> {
    c.divisors
        .iter()
        .map(|d| d.to_i64().expect("small divisor"))
        .collect()
}

impl LatticeCert {
    pub fn from_roots(l: &Lattice, r: &RootsData) -> Result<Self> {
        let cert = is_primitive_span(l, &r.span(), None)?;
        Ok(LatticeCert {
            k: r.k as i64,
            a: r.a,
            b: r.b,
            kappa_hat: ints(&r.kappa_hat),
            beta: ints(&r.beta),
            d: r.d.iter().map(ints).collect(),
            duals: DualCert {
                kappa_hat: ints(&r.duals.kappa_hat),
                beta: ints(&r.duals.beta),
                d: r.duals.d.iter().map(ints).collect(),
            },
            snf_divisors: divisors(&cert),
        })
    }

    /// The stored vectors as root data, with (k, A, B) taken from the caller.
    pub fn to_roots(&self, k: usize, a: i64, b: i64) -> RootsData {
        RootsData {
            k,
            a,
            b,
            kappa_hat: vector(&self.kappa_hat),
            beta: vector(&self.beta),
            d: self.d.iter().map(|v| vector(v)).collect(),
            duals: DualWitnesses {
                kappa_hat: vector(&self.duals.kappa_hat),
                beta: vector(&self.duals.beta),
                d: self.duals.d.iter().map(|v| vector(v)).collect(),
            },
        }
    }

    fn vectors(&self) -> impl Iterator<Item = &Vec<i64>> {
        [&self.kappa_hat, &self.beta, &self.duals.kappa_hat, &self.duals.beta]
            .into_iter()
            .chain(&self.d)
            .chain(&self.duals.d)
    }
}

impl OuterCert {
    fn from_model(model: &MarkedBlowupModel, sign: Sign) -> Result<Self> {
        let o = model.kappa_eta_outer(sign)?;
        let prim = model.outer_primitivity(sign)?;
        Ok(OuterCert {
            sign,
            kappa_hat: ints(o.kappa_hat.vector()),
            eta_hat: ints(o.eta_hat.vector()),
            pairings: o.table,
            snf_divisors: divisors(&prim.span),
        })
    }

    fn vectors(&self) -> impl Iterator<Item = &Vec<i64>> {
        [&self.kappa_hat, &self.eta_hat].into_iter()
    }
}

/// Builds the full certificate. The plan is not validated here; a bad plan
/// produces a certificate that fails verification.
pub fn build_certificate(plan: &ConstructionPlan) -> Result<ConstructionCertificate> {
    let l = Lattice::k3();
    let profile = plan.expected_profile()?;
    let mut lattice_certs = Vec::with_capacity(plan.parts.len());
    let mut blowup_certs = Vec::with_capacity(plan.parts.len());
    for (j, &kj) in plan.parts.iter().enumerate() {
        let kj_us = usize::try_from(kj).map_err(|_| Error::OutOfRange { name: "k_j", value: kj })?;
        let roots = roots_construct(kj_us, plan.a(j), plan.b)?;
        lattice_certs.push(LatticeCert::from_roots(&l, &roots)?);
        let model = MarkedBlowupModel::new(l.clone(), roots)?;
        blowup_certs.push(BlowupCert {
            k: kj,
            minus: OuterCert::from_model(&model, Sign::Minus)?,
            plus: OuterCert::from_model(&model, Sign::Plus)?,
        });
    }
    Ok(ConstructionCertificate {
        format_version: FORMAT_VERSION.to_string(),
        k: plan.k,
        ell: plan.ell,
        parts: plan.parts.clone(),
        c: plan.c.clone(),
        n: plan.n,
        b: plan.b,
        overlap_width: plan.overlap_width.clone(),
        profile,
        lattice_certs,
        blowup_certs,
    })
}

impl ConstructionCertificate {
    pub fn plan(&self) -> ConstructionPlan {
        ConstructionPlan {
            k: self.k,
            ell: self.ell,
            parts: self.parts.clone(),
            c: self.c.clone(),
            n: self.n,
            b: self.b,
            overlap_width: self.overlap_width.clone(),
        }
    }

    /// Pretty JSON with a trailing newline; deterministic.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    /// Parses and checks the shape the verifier relies on: the format version
    /// and 22 coordinates per stored vector.
    pub fn from_json(text: &str) -> Result<Self> {
        let cert: ConstructionCertificate = serde_json::from_str(text)
            .map_err(|e| Error::InvalidCertificate(e.to_string()))?;
        cert.check_shape()?;
        Ok(cert)
    }

    pub fn check_shape(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::InvalidCertificate(format!(
                "unsupported format_version {:?}",
                self.format_version
            )));
        }
        let lattice = self.lattice_certs.iter().flat_map(LatticeCert::vectors);
        let blowup = self
            .blowup_certs
            .iter()
            .flat_map(|b| b.minus.vectors().chain(b.plus.vectors()));
        for v in lattice.chain(blowup) {
            if v.len() != k3::RANK {
                return Err(Error::InvalidCertificate(format!(
                    "vector with {} entries, expected {}",
                    v.len(),
                    k3::RANK
                )));
            }
        }
        Ok(())
    }
}
