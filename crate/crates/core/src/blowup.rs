//! Marked lattice model of H²(X̂; ℤ) for a K3 surface resolving k isolated
//! ℤ₂ points.
//!
//! Integration over an exceptional curve is evaluated as ∫_{Eᵢ} α = (α, ℰᵢ),
//! where ℰᵢ is marked as the root dᵢ with (dᵢ, dⱼ) = −2δᵢⱼ.

use serde::{Deserialize, Serialize};

use crate::embeddings::{is_primitive_span, PrimitivityCertificate, RootsData};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::lattice::{AmbientVector, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn all() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

/// A rational class in the marked lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupClass(pub AmbientVector);

impl BlowupClass {
    pub fn vector(&self) -> &AmbientVector {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.is_integral()
    }
}

impl From<AmbientVector> for BlowupClass {
    fn from(v: AmbientVector) -> Self {
        BlowupClass(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingTable {
    pub kappa_kappa: Rational,
    pub eta_eta: Rational,
    pub kappa_eta: Rational,
}

impl PairingTable {
    /// The values forced by the root data: A − 8k, B, ∓2k.
    pub fn expected(roots: &RootsData, sign: Sign) -> Self {
        let k = roots.k as i64;
        PairingTable {
            kappa_kappa: Rational::int(roots.a - 8 * k),
            eta_eta: Rational::int(roots.b),
            kappa_eta: Rational::int(-2 * k * sign.value()),
        }
    }
}

/// κ̂_± and η̂_± with their pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterClasses {
    pub sign: Sign,
    pub kappa_hat: BlowupClass,
    pub eta_hat: BlowupClass,
    pub table: PairingTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterPrimitivity {
    /// (coefficient c, certificate for β + c·κ) with c ∈ {−4, −2, 0, 2, 4}.
    pub shifted_nu: Vec<(i64, PrimitivityCertificate)>,
    /// span{κ̂_±, η̂_±}.
    pub span: PrimitivityCertificate,
}

impl OuterPrimitivity {
    pub fn all_primitive(&self) -> bool {
        self.span.is_primitive()
            && self
                .shifted_nu
                .iter()
                .all(|(_, c)| c.is_primitive() && c.dual_identity != Some(false))
    }
}

pub const SHIFT_COEFFICIENTS: [i64; 5] = [-4, -2, 0, 2, 4];

#[derive(Clone, Debug)]
pub struct MarkedBlowupModel {
    lattice: Lattice,
    roots: RootsData,
}

impl MarkedBlowupModel {
    pub fn new(lattice: Lattice, roots: RootsData) -> Result<Self> {
        for v in roots.span() {
            if v.len() != lattice.rank() {
                return Err(Error::DimensionMismatch {
                    expected: lattice.rank(),
                    got: v.len(),
                });
            }
        }
        Ok(MarkedBlowupModel { lattice, roots })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn roots(&self) -> &RootsData {
        &self.roots
    }

    pub fn k(&self) -> usize {
        self.roots.k
    }

    pub fn exceptional(&self) -> &[AmbientVector] {
        &self.roots.d
    }

    /// Image of q*[ν].
    pub fn nu_class(&self) -> BlowupClass {
        BlowupClass(self.roots.beta.clone())
    }

    /// Image of q*[ζ] = κ̂ + ½Σdᵢ.
    pub fn zeta_class(&self) -> BlowupClass {
        BlowupClass(self.roots.kappa())
    }

    /// nᵢ = ∫_{Eᵢ} c = (c, dᵢ).
    pub fn restriction_numbers(&self, c: &BlowupClass) -> Result<Vec<Rational>> {
        self.exceptional()
            .iter()
            .map(|d| self.lattice.pair(&c.0, d))
            .collect()
    }

    /// c + Σ ½·nᵢ·dᵢ, the pull-back of the Euler class of the descended bundle.
    pub fn euler_descent(&self, c: &BlowupClass) -> Result<BlowupClass> {
        let n = self.restriction_numbers(c)?;
        let half = Rational::frac(1, 2);
        let mut out = c.0.clone();
        for (ni, d) in n.iter().zip(self.exceptional()) {
            if !ni.is_zero() {
                out = &out + &d.scale(&(ni * &half));
            }
        }
        Ok(BlowupClass(out))
    }

    /// The descended bundle is a manifold iff every nᵢ is odd.
    pub fn is_manifold_bundle(&self, c: &BlowupClass) -> Result<bool> {
        if !c.is_integral() {
            return Err(Error::NonIntegral);
        }
        Ok(self
            .restriction_numbers(c)?
            .iter()
            .all(Rational::is_odd_integer))
    }

    /// κ̂_± = β + 2Σdᵢ and η̂_± = −κ ± ½Σdᵢ.
    pub fn kappa_eta_outer(&self, sign: Sign) -> Result<OuterClasses> {
        let sum_d = self.roots.sum_d();
        let kappa_hat = &self.roots.beta + &sum_d.scale(&Rational::int(2));
        let eta_hat = &(-&self.roots.kappa()) + &sum_d.scale(&Rational::frac(sign.value(), 2));
        let l = &self.lattice;
        let table = PairingTable {
            kappa_kappa: l.norm(&kappa_hat)?,
            eta_eta: l.norm(&eta_hat)?,
            kappa_eta: l.pair(&kappa_hat, &eta_hat)?,
        };
        Ok(OuterClasses {
            sign,
            kappa_hat: BlowupClass(kappa_hat),
            eta_hat: BlowupClass(eta_hat),
            table,
        })
    }

    /// β + c·κ for c ∈ {−4,−2,0,2,4}, each by SNF and by the witness β′, and
    /// the span of κ̂_±, η̂_±.
    pub fn outer_primitivity(&self, sign: Sign) -> Result<OuterPrimitivity> {
        let l = &self.lattice;
        let kappa = self.roots.kappa();
        let witness = [self.roots.duals.beta.clone()];
        let mut shifted_nu = Vec::with_capacity(SHIFT_COEFFICIENTS.len());
        for c in SHIFT_COEFFICIENTS {
            let v = &self.roots.beta + &kappa.scale(&Rational::int(c));
            if !v.is_integral() {
                return Err(Error::NonIntegral);
            }
            shifted_nu.push((c, is_primitive_span(l, &[v], Some(&witness))?));
        }
        let outer = self.kappa_eta_outer(sign)?;
        let span = is_primitive_span(l, &[outer.kappa_hat.0, outer.eta_hat.0], None)?;
        Ok(OuterPrimitivity { shifted_nu, span })
    }
}
