use crate::dh::{DHProfile, Domain, Interval, Piece, PieceKind, QuadPoly, Wall};
use crate::error::{Error, Result};
use crate::exact::Rational;

pub const STANDARD_B: i64 = -2;

/// Block sizes k₁..k_ℓ with centres Cⱼ, the free-region constant N, and B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub k: i64,
    pub ell: i64,
    pub parts: Vec<i64>,
    /// C₀..C_ℓ.
    pub c: Vec<i64>,
    pub n: i64,
    pub b: i64,
    pub overlap_width: Rational,
}

/// C₀ = −k_ℓ and Cⱼ = kⱼ + Σ_{i<j} 2kᵢ.
pub fn centres(parts: &[i64]) -> Vec<i64> {
    let mut c = Vec::with_capacity(parts.len() + 1);
    c.push(-parts.last().copied().unwrap_or(0));
    let mut acc = 0;
    for &p in parts {
        c.push(p + acc);
        acc += 2 * p;
    }
    c
}

fn default_parts(k: i64) -> Vec<i64> {
    let ell = (k + 8) / 9;
    let (q, r) = (k / ell, k % ell);
    (0..ell).map(|i| if i < r { q + 1 } else { q }).collect()
}

fn minimal_n(parts: &[i64]) -> i64 {
    2 * parts.iter().map(|&p| p * (p - 4)).max().unwrap_or(0) + 2
}

/// Deterministic plan for `k ≥ 5` fixed-point pairs. The default splits k
/// into ⌈k/9⌉ parts as equal as possible (larger first) and takes the
/// smallest admissible even N.
pub fn plan(k: i64, parts_override: Option<Vec<i64>>, n_override: Option<i64>) -> Result<ConstructionPlan> {
    if k < 5 {
        return Err(Error::InvalidPlan(format!("k = {k}: need k ≥ 5")));
    }
    let parts = match parts_override {
        None => default_parts(k),
        Some(p) => {
            if p.is_empty() || p.iter().any(|x| !(5..=9).contains(x)) {
                return Err(Error::InvalidPlan(format!("parts {p:?} must lie in 5..=9")));
            }
            if p.iter().sum::<i64>() != k {
                return Err(Error::InvalidPlan(format!("parts {p:?} do not sum to {k}")));
            }
            p
        }
    };
    let floor = minimal_n(&parts) - 2;
    let n = match n_override {
        None => floor + 2,
        Some(n) => {
            if n % 2 != 0 || n <= floor {
                return Err(Error::InvalidPlan(format!(
                    "N = {n} must be even and exceed max 2kⱼ(kⱼ−4) = {floor}"
                )));
            }
            n
        }
    };
    Ok(ConstructionPlan::from_parts(parts, n, STANDARD_B, Rational::frac(1, 2)))
}

impl ConstructionPlan {
    /// Assembles a plan without validating it.
    pub fn from_parts(parts: Vec<i64>, n: i64, b: i64, overlap_width: Rational) -> Self {
        ConstructionPlan {
            k: parts.iter().sum(),
            ell: parts.len() as i64,
            c: centres(&parts),
            parts,
            n,
            b,
            overlap_width,
        }
    }

    /// Aⱼ = N − 2kⱼ(kⱼ − 4).
    pub fn a(&self, j: usize) -> i64 {
        let kj = self.parts[j];
        self.n - 2 * kj * (kj - 4)
    }

    /// Cⱼ for block j (0-based), i.e. c[j + 1].
    pub fn centre(&self, j: usize) -> i64 {
        self.c[j + 1]
    }

    pub fn period(&self) -> i64 {
        2 * self.k
    }

    pub fn invariant_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.k < 5 {
            bad.push(format!("k = {} < 5", self.k));
        }
        if self.ell != self.parts.len() as i64 {
            bad.push(format!("ell = {} but {} parts", self.ell, self.parts.len()));
        }
        if self.parts.is_empty() {
            bad.push("no parts".into());
            return bad;
        }
        if self.parts.iter().sum::<i64>() != self.k {
            bad.push(format!("parts {:?} do not sum to k = {}", self.parts, self.k));
        }
        for (j, &p) in self.parts.iter().enumerate() {
            if !(5..=9).contains(&p) {
                bad.push(format!("k_{} = {p} outside 5..=9", j + 1));
            }
        }
        let want = centres(&self.parts);
        if self.c != want {
            bad.push(format!("C = {:?}, expected {:?}", self.c, want));
        } else if self.c[self.c.len() - 1] - self.c[0] != 2 * self.k {
            bad.push(format!("C_ℓ − C_0 = {} ≠ 2k", self.c[self.c.len() - 1] - self.c[0]));
        }
        if self.n % 2 != 0 {
            bad.push(format!("N = {} is odd", self.n));
        }
        if self.b % 2 != 0 {
            bad.push(format!("B = {} is odd", self.b));
        }
        for (j, &p) in self.parts.iter().enumerate() {
            let floor = 2 * p * (p - 4);
            if self.n <= floor {
                bad.push(format!("N = {} ≤ 2k_{}(k_{}−4) = {floor}", self.n, j + 1, j + 1));
            }
            let a = self.a(j);
            if a <= 0 || a % 2 != 0 {
                bad.push(format!("A_{} = {a} is not a positive even integer", j + 1));
            }
            if 2 * self.b <= -p {
                bad.push(format!("B = {} ≤ −k_{}/2", self.b, j + 1));
            }
        }
        if !(self.overlap_width.is_positive() && self.overlap_width < Rational::one()) {
            bad.push(format!("overlap width {} not in (0, 1)", self.overlap_width));
        }
        bad
    }

    /// The circle profile the plan prescribes: per block a free piece, a
    /// fixed-middle piece and two collars, walls at Cⱼ ∓ 4.
    ///
    /// Needs `c.len() == parts.len() + 1`.
    pub fn expected_profile(&self) -> Result<DHProfile> {
        if self.c.len() != self.parts.len() + 1 || self.parts.is_empty() {
            return Err(Error::InvalidPlan("C must have ℓ + 1 entries".into()));
        }
        let r = Rational::int;
        let w = &self.overlap_width;
        let mut pieces = Vec::new();
        let mut walls = Vec::new();
        for (j, &kj) in self.parts.iter().enumerate() {
            let cj = r(self.centre(j));
            let prev = r(self.c[j]);
            let four = r(4);
            let aj = self.a(j);
            pieces.push(Piece {
                kind: PieceKind::Free,
                interval: Interval::finite(&prev + &four, &cj - &four),
                poly: QuadPoly::centered_square(r(self.n), r(-2), &(&cj - &r(kj))),
            });
            pieces.push(Piece {
                kind: PieceKind::FixedMiddle,
                interval: Interval::finite(&cj - &four, &cj + &four),
                poly: QuadPoly::centered_square(r(aj), r(self.b) + Rational::frac(kj, 2), &cj),
            });
            pieces.push(Piece {
                kind: PieceKind::FixedOuter,
                interval: Interval::finite(&(&cj - &four) - w, &cj - &four),
                poly: QuadPoly::from_ints(aj - 8 * kj, -4 * kj, self.b).translate(&cj),
            });
            pieces.push(Piece {
                kind: PieceKind::FixedOuter,
                interval: Interval::finite(&cj + &four, &(&cj + &four) + w),
                poly: QuadPoly::from_ints(aj - 8 * kj, 4 * kj, self.b).translate(&cj),
            });
            walls.push(Wall::uniform(&cj - &four, kj as usize, [2, -1, -1])?);
            walls.push(Wall::uniform(&cj + &four, kj as usize, [-2, 1, 1])?);
        }
        pieces.sort_by(|a, b| {
            a.interval
                .lo
                .cmp(&b.interval.lo)
                .then(a.kind.cmp(&b.kind))
        });
        Ok(DHProfile {
            domain: Domain::Circle {
                period: r(self.period()),
            },
            pieces,
            walls,
        })
    }
}
