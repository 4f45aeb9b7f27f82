//! Explicit root data in the K3 lattice and primitivity certification.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Rational};
use crate::lattice::{k3, AmbientVector, Lattice};

/// Integral witnesses pairing to the identity against (κ̂, β, d₁..d_k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWitnesses {
    pub kappa_hat: AmbientVector,
    pub beta: AmbientVector,
    pub d: Vec<AmbientVector>,
}

/// κ̂, β and d₁..d_k in the K3 lattice with
/// (κ̂,κ̂)=B, (β,β)=A, (κ̂,β)=0, (κ̂,dᵢ)=1, (β,dᵢ)=0, (dᵢ,dⱼ)=−2δᵢⱼ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootsData {
    pub k: usize,
    pub a: i64,
    pub b: i64,
    pub kappa_hat: AmbientVector,
    pub beta: AmbientVector,
    pub d: Vec<AmbientVector>,
    pub duals: DualWitnesses,
}

fn vec22(terms: &[(usize, i64)]) -> AmbientVector {
    AmbientVector::combination(k3::RANK, terms)
}

fn root_vector(i: usize) -> AmbientVector {
    use k3::{x, y};
    match i {
        1 => vec22(&[(x(3, 1), 1), (x(3, 2), -1), (x(1, 2), 1)]),
        2..=5 => vec22(&[(y(1, 2 * i - 3), 1), (x(1, 2), 1)]),
        6..=9 => vec22(&[(y(2, 2 * i - 11), 1), (x(1, 2), 1)]),
        _ => unreachable!("root index {i}"),
    }
}

fn root_dual(i: usize) -> AmbientVector {
    use k3::{x, y};
    // Roots 2..5 live in the first −E8 summand, 6..9 mirror them in the second.
    let e8_dual = |s: usize, r: usize| match r {
        0 => vec22(&[(y(s, 2), 1), (y(s, 4), -1), (y(s, 8), 1)]),
        1 => vec22(&[(y(s, 4), 1), (y(s, 8), -1)]),
        2 => vec22(&[(y(s, 8), 1)]),
        3 => vec22(&[(y(s, 6), 1), (y(s, 8), -1)]),
        _ => unreachable!(),
    };
    match i {
        1 => vec22(&[(x(3, 2), 1)]),
        2..=5 => e8_dual(1, i - 2),
        6..=9 => e8_dual(2, i - 6),
        _ => unreachable!("root index {i}"),
    }
}

/// Builds the root data for `k` exceptional classes. For k < 9 the roots
/// d₁..d_k are kept and d_{k+1}..d₉ dropped.
pub fn roots_construct(k: usize, a: i64, b: i64) -> Result<RootsData> {
    if k > 9 {
        return Err(Error::OutOfRange {
            name: "k",
            value: k as i64,
        });
    }
    if a % 2 != 0 {
        return Err(Error::OddParameter { name: "A", value: a });
    }
    if b % 2 != 0 {
        return Err(Error::OddParameter { name: "B", value: b });
    }
    use k3::x;
    Ok(RootsData {
        k,
        a,
        b,
        kappa_hat: vec22(&[(x(1, 1), 1), (x(1, 2), b / 2)]),
        beta: vec22(&[(x(2, 1), 1), (x(2, 2), a / 2)]),
        d: (1..=k).map(root_vector).collect(),
        duals: DualWitnesses {
            kappa_hat: vec22(&[(x(1, 2), 1)]),
            beta: vec22(&[(x(2, 2), 1)]),
            d: (1..=k).map(root_dual).collect(),
        },
    })
}

impl RootsData {
    /// κ̂, β, d₁..d_k in that order.
    pub fn span(&self) -> Vec<AmbientVector> {
        let mut v = vec![self.kappa_hat.clone(), self.beta.clone()];
        v.extend(self.d.iter().cloned());
        v
    }

    pub fn dual_span(&self) -> Vec<AmbientVector> {
        let mut v = vec![self.duals.kappa_hat.clone(), self.duals.beta.clone()];
        v.extend(self.duals.d.iter().cloned());
        v
    }

    pub fn sum_d(&self) -> AmbientVector {
        AmbientVector::sum(k3::RANK, &self.d).expect("root vectors share a length")
    }

    /// κ = κ̂ + ½Σdᵢ, the projection of κ̂ onto K^⊥.
    pub fn kappa(&self) -> AmbientVector {
        &self.kappa_hat + &self.sum_d().scale(&Rational::frac(1, 2))
    }

    /// Every defining pairing identity that fails, as a readable witness.
    pub fn pairing_violations(&self, l: &Lattice) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let mut expect = |what: String, got: Rational, want: Rational| {
            if got != want {
                bad.push(format!("{what} = {got}, expected {want}"));
            }
        };
        expect("(κ̂,κ̂)".into(), l.norm(&self.kappa_hat)?, Rational::int(self.b));
        expect("(β,β)".into(), l.norm(&self.beta)?, Rational::int(self.a));
        expect("(κ̂,β)".into(), l.pair(&self.kappa_hat, &self.beta)?, Rational::zero());
        for (i, di) in self.d.iter().enumerate() {
            let n = i + 1;
            expect(format!("(κ̂,d{n})"), l.pair(&self.kappa_hat, di)?, Rational::one());
            expect(format!("(β,d{n})"), l.pair(&self.beta, di)?, Rational::zero());
            for (j, dj) in self.d.iter().enumerate() {
                let want = if i == j { -2 } else { 0 };
                expect(format!("(d{n},d{})", j + 1), l.pair(di, dj)?, Rational::int(want));
            }
        }
        Ok(bad)
    }
}

/// Outcome of a primitivity test on an integral family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityCertificate {
    /// Elementary divisors of the coordinate matrix.
    pub divisors: Vec<BigInt>,
    pub snf_primitive: bool,
    /// Whether the supplied witnesses pair to the identity matrix.
    pub dual_identity: Option<bool>,
}

impl PrimitivityCertificate {
    /// A valid dual witness can only exist for a primitive span.
    pub fn methods_agree(&self) -> Option<bool> {
        self.dual_identity.map(|d| d == self.snf_primitive)
    }

    pub fn is_primitive(&self) -> bool {
        self.snf_primitive
    }
}

fn coordinate_matrix(vectors: &[AmbientVector]) -> Result<IntMatrix> {
    let cols = vectors[0].len();
    let mut data = Vec::with_capacity(vectors.len() * cols);
    for v in vectors {
        if v.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: v.len(),
            });
        }
        data.extend(v.to_integers().ok_or(Error::NonIntegral)?);
    }
    IntMatrix::new(vectors.len(), cols, data)
}

/// Decides whether the span of `vectors` is saturated in ℤⁿ, by Smith normal
/// form, and optionally checks dual witnesses (vᵢ, wⱼ) = δᵢⱼ.
pub fn is_primitive_span(
    l: &Lattice,
    vectors: &[AmbientVector],
    duals: Option<&[AmbientVector]>,
) -> Result<PrimitivityCertificate> {
    if vectors.is_empty() {
        return Err(Error::EmptyMatrix { rows: 0, cols: l.rank() });
    }
    for v in vectors {
        if v.len() != l.rank() {
            return Err(Error::DimensionMismatch {
                expected: l.rank(),
                got: v.len(),
            });
        }
    }
    let m = coordinate_matrix(vectors)?;
    let snf = m.smith_normal_form();
    let divisors = snf.elementary_divisors();
    if divisors.len() < vectors.len() {
        return Err(Error::LinearlyDependent {
            rank: divisors.len(),
            count: vectors.len(),
        });
    }
    let snf_primitive = divisors.iter().all(One::is_one);
    let dual_identity = match duals {
        None => None,
        Some(ws) => {
            if ws.len() != vectors.len() || ws.iter().any(|w| !w.is_integral()) {
                Some(false)
            } else {
                let p = l.pairing_matrix(vectors, ws)?;
                Some(p.iter().enumerate().all(|(i, row)| {
                    row.iter().enumerate().all(|(j, x)| {
                        if i == j {
                            *x == Rational::one()
                        } else {
                            x.is_zero()
                        }
                    })
                }))
            }
        }
    };
    Ok(PrimitivityCertificate {
        divisors,
        snf_primitive,
        dual_identity,
    })
}

/// Individual verdicts for the period-point preconditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub k_negative_definite: bool,
    pub k_primitive: bool,
    pub kappa_orthogonal_to_k: bool,
    pub beta_orthogonal_to_k: bool,
    pub kappa_norm: Rational,
    pub beta_norm: Rational,
    pub kappa_beta: Rational,
}

impl PeriodReport {
    pub fn kappa_positive(&self) -> bool {
        self.kappa_norm.is_positive()
    }

    pub fn beta_positive(&self) -> bool {
        self.beta_norm.is_positive()
    }

    pub fn kappa_beta_orthogonal(&self) -> bool {
        self.kappa_beta.is_zero()
    }

    /// (name, passed) in a fixed order.
    pub fn items(&self) -> [(&'static str, bool); 7] {
        [
            ("K negative definite", self.k_negative_definite),
            ("K primitive", self.k_primitive),
            ("κ ∈ K^⊥", self.kappa_orthogonal_to_k),
            ("β ∈ K^⊥", self.beta_orthogonal_to_k),
            ("(κ,κ) > 0", self.kappa_positive()),
            ("(β,β) > 0", self.beta_positive()),
            ("(κ,β) = 0", self.kappa_beta_orthogonal()),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.items().iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.items().iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }
}

pub fn period_preconditions(
    l: &Lattice,
    kappa: &AmbientVector,
    beta: &AmbientVector,
    roots: &[AmbientVector],
) -> Result<PeriodReport> {
    let (k_negative_definite, k_primitive) = if roots.is_empty() {
        (true, true)
    } else {
        let integral = roots.iter().all(AmbientVector::is_integral);
        let neg_def = integral && l.sublattice(roots)?.signature().is_negative_definite();
        let primitive = integral
            && matches!(is_primitive_span(l, roots, None), Ok(c) if c.is_primitive());
        (neg_def, primitive)
    };
    let mut kappa_orthogonal_to_k = true;
    let mut beta_orthogonal_to_k = true;
    for d in roots {
        kappa_orthogonal_to_k &= l.pair(kappa, d)?.is_zero();
        beta_orthogonal_to_k &= l.pair(beta, d)?.is_zero();
    }
    Ok(PeriodReport {
        k_negative_definite,
        k_primitive,
        kappa_orthogonal_to_k,
        beta_orthogonal_to_k,
        kappa_norm: l.norm(kappa)?,
        beta_norm: l.norm(beta)?,
        kappa_beta: l.pair(kappa, beta)?,
    })
}

/// The norm −2 vectors of K = span(roots), as vectors of the ambient lattice.
pub fn root_system(l: &Lattice, roots: &[AmbientVector]) -> Result<Vec<AmbientVector>> {
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let k = l.sublattice(roots)?;
    let mut out = Vec::new();
    for c in k.vectors_of_norm(-2)? {
        let mut v = AmbientVector::zero(l.rank());
        for (coef, r) in c.coords().iter().zip(roots) {
            if !coef.is_zero() {
                v = &v + &r.scale(coef);
            }
        }
        out.push(v);
    }
    out.sort();
    Ok(out)
}
