//! Integral lattices with a fixed basis, and vectors in their rational span.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Inertia, IntMatrix, Rational};

/// The lattices with hard-coded bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardLattice {
    /// Hyperbolic plane.
    H,
    E8,
    MinusE8,
    /// H ⊕ H ⊕ H ⊕ (−E8) ⊕ (−E8).
    K3,
}

impl FromStr for StandardLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" => Ok(Self::H),
            "E8" => Ok(Self::E8),
            "minusE8" => Ok(Self::MinusE8),
            "K3" => Ok(Self::K3),
            _ => Err(Error::UnknownLattice(s.to_string())),
        }
    }
}

/// Basis positions in the K3 lattice, order
/// x_{1,1}, x_{1,2}, x_{2,1}, x_{2,2}, x_{3,1}, x_{3,2}, y_{1,1..8}, y_{2,1..8}.
pub mod k3 {
    pub const RANK: usize = 22;

    /// x_{i,a}, i in 1..=3, a in 1..=2.
    pub const fn x(i: usize, a: usize) -> usize {
        assert!(1 <= i && i <= 3 && 1 <= a && a <= 2);
        2 * (i - 1) + (a - 1)
    }

    /// y_{i,j}, i in 1..=2, j in 1..=8.
    pub const fn y(i: usize, j: usize) -> usize {
        assert!(1 <= i && i <= 2 && 1 <= j && j <= 8);
        6 + 8 * (i - 1) + (j - 1)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    labels: Vec<String>,
    even: bool,
    unimodular: bool,
}

impl Lattice {
    pub fn new(gram: IntMatrix, labels: Vec<String>) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if labels.len() != gram.rows() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                got: labels.len(),
            });
        }
        let even = (0..gram.rows()).all(|i| (gram.get(i, i) % 2u8).is_zero());
        let unimodular = gram.determinant()?.abs().is_one();
        Ok(Lattice {
            gram,
            labels,
            even,
            unimodular,
        })
    }

    /// Lattice with generic labels e_1..e_n.
    pub fn from_gram(gram: IntMatrix) -> Result<Self> {
        let labels = (1..=gram.rows()).map(|i| format!("e_{i}")).collect();
        Self::new(gram, labels)
    }

    pub fn standard(which: StandardLattice) -> Self {
        match which {
            StandardLattice::H => Self::hyperbolic_plane(),
            StandardLattice::E8 => {
                let minus = Self::minus_e8(1);
                let labels = (1..=8).map(|j| format!("e_{j}")).collect();
                Self::new(minus.gram.neg(), labels).expect("E8 Gram is symmetric")
            }
            StandardLattice::MinusE8 => Self::minus_e8(1),
            StandardLattice::K3 => Self::k3(),
        }
    }

    fn hyperbolic_block() -> IntMatrix {
        IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn minus_e8_block() -> IntMatrix {
        let mut g = IntMatrix::zeros(8, 8);
        for j in 0..8 {
            g.set(j, j, BigInt::from(-2));
        }
        let edges = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)];
        for (a, b) in edges {
            g.set(a - 1, b - 1, BigInt::one());
            g.set(b - 1, a - 1, BigInt::one());
        }
        g
    }

    fn hyperbolic_plane() -> Self {
        Self::new(
            Self::hyperbolic_block(),
            vec!["x_{1,1}".into(), "x_{1,2}".into()],
        )
        .unwrap()
    }

    fn minus_e8(summand: usize) -> Self {
        let labels = (1..=8).map(|j| format!("y_{{{summand},{j}}}")).collect();
        Self::new(Self::minus_e8_block(), labels).unwrap()
    }

    pub fn k3() -> Self {
        let h = Self::hyperbolic_block();
        let e = Self::minus_e8_block();
        let gram = IntMatrix::direct_sum(&[&h, &h, &h, &e, &e]);
        let mut labels = Vec::with_capacity(k3::RANK);
        for i in 1..=3 {
            for a in 1..=2 {
                labels.push(format!("x_{{{i},{a}}}"));
            }
        }
        for i in 1..=2 {
            for j in 1..=8 {
                labels.push(format!("y_{{{i},{j}}}"));
            }
        }
        Self::new(gram, labels).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("Gram matrix is square")
    }

    pub fn signature(&self) -> Inertia {
        self.gram.signature().expect("Gram matrix is symmetric")
    }

    pub fn basis_vector(&self, i: usize) -> AmbientVector {
        AmbientVector::basis(self.rank(), i)
    }

    fn check_len(&self, v: &AmbientVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// The bilinear form vᵀ·G·w.
    pub fn pair(&self, v: &AmbientVector, w: &AmbientVector) -> Result<Rational> {
        self.check_len(v)?;
        self.check_len(w)?;
        let mut total = Rational::zero();
        for i in 0..self.rank() {
            if v.coords[i].is_zero() {
                continue;
            }
            let mut gw = Rational::zero();
            for j in 0..self.rank() {
                let g = self.gram.get(i, j);
                if !g.is_zero() && !w.coords[j].is_zero() {
                    gw += &(Rational::int(g.clone()) * &w.coords[j]);
                }
            }
            total += &(&v.coords[i] * &gw);
        }
        Ok(total)
    }

    pub fn norm(&self, v: &AmbientVector) -> Result<Rational> {
        self.pair(v, v)
    }

    /// Matrix of pairings (vᵢ, wⱼ).
    pub fn pairing_matrix(
        &self,
        vs: &[AmbientVector],
        ws: &[AmbientVector],
    ) -> Result<Vec<Vec<Rational>>> {
        vs.iter()
            .map(|v| ws.iter().map(|w| self.pair(v, w)).collect())
            .collect()
    }

    /// The lattice spanned by integral vectors, with the induced Gram matrix.
    pub fn sublattice(&self, vectors: &[AmbientVector]) -> Result<Lattice> {
        if vectors.is_empty() {
            return Err(Error::EmptyMatrix { rows: 0, cols: 0 });
        }
        let mut data = Vec::with_capacity(vectors.len() * vectors.len());
        for v in vectors {
            if !v.is_integral() {
                return Err(Error::NonIntegral);
            }
            for w in vectors {
                data.push(self.pair(v, w)?.to_integer().expect("integral pairing"));
            }
        }
        let gram = IntMatrix::new(vectors.len(), vectors.len(), data)?;
        Lattice::from_gram(gram)
    }

    /// All integral vectors of norm `m` (m < 0) in a negative-definite lattice.
    ///
    /// Fincke-Pohst enumeration over an exact square-completion of −G; the
    /// result is sorted lexicographically by coordinates.
    pub fn vectors_of_norm(&self, m: i64) -> Result<Vec<AmbientVector>> {
        if m >= 0 {
            return Err(Error::NonNegativeNorm(m));
        }
        let sig = self.signature();
        if !sig.is_negative_definite() {
            return Err(Error::NotNegativeDefinite {
                plus: sig.plus,
                minus: sig.minus,
                zero: sig.zero,
            });
        }
        let target = Rational::int(-m);
        if self.even && (-m) % 2 != 0 {
            return Ok(Vec::new());
        }
        let q = square_completion(&self.gram.neg());
        let n = self.rank();
        let mut x = vec![BigInt::zero(); n];
        let mut found = Vec::new();
        enumerate_level(&q, n, &target, &mut x, &mut found);
        found.sort();
        Ok(found
            .into_iter()
            .map(AmbientVector::from_integers)
            .collect())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("rank", &self.rank())
            .field("even", &self.even)
            .field("unimodular", &self.unimodular)
            .finish()
    }
}

/// Coefficients with Q(x) = Σᵢ q[i][i]·(xᵢ + Σ_{j>i} q[i][j]·xⱼ)².
fn square_completion(gram: &IntMatrix) -> Vec<Vec<Rational>> {
    let n = gram.rows();
    let mut q = gram.to_rational_rows();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= &v;
            }
        }
    }
    q
}

/// Fills coordinates `level-1` down to 0, with `budget` the norm still available.
fn enumerate_level(
    q: &[Vec<Rational>],
    level: usize,
    budget: &Rational,
    x: &mut Vec<BigInt>,
    found: &mut Vec<Vec<BigInt>>,
) {
    if level == 0 {
        if budget.is_zero() {
            found.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let n = q.len();
    let center: Rational = (i + 1..n)
        .map(|j| &q[i][j] * &Rational::int(x[j].clone()))
        .sum();
    let cost = |xi: &BigInt| {
        let s = Rational::int(xi.clone()) + &center;
        &q[i][i] * &(&s * &s)
    };
    let start = (-&center).floor();

    let mut xi = start.clone();
    loop {
        let c = cost(&xi);
        if &c > budget {
            break;
        }
        x[i] = xi.clone();
        enumerate_level(q, i, &(budget - &c), x, found);
        xi -= 1;
    }
    let mut xi = start + 1;
    loop {
        let c = cost(&xi);
        if &c > budget {
            break;
        }
        x[i] = xi.clone();
        enumerate_level(q, i, &(budget - &c), x, found);
        xi += 1;
    }
    x[i] = BigInt::zero();
}

/// Exact rational coordinate vector in a lattice basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmbientVector {
    coords: Vec<Rational>,
    integral: bool,
}

impl AmbientVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        let integral = coords.iter().all(Rational::is_integer);
        AmbientVector { coords, integral }
    }

    pub fn from_integers(coords: Vec<BigInt>) -> Self {
        AmbientVector {
            coords: coords.into_iter().map(Rational::int).collect(),
            integral: true,
        }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::from_integers(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(len: usize) -> Self {
        AmbientVector {
            coords: vec![Rational::zero(); len],
            integral: true,
        }
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.coords[i] = Rational::one();
        v
    }

    /// Σ cᵢ·e_{idx_i} for (idx, c) pairs.
    pub fn combination(len: usize, terms: &[(usize, i64)]) -> Self {
        let mut v = Self::zero(len);
        for &(i, c) in terms {
            v.coords[i] += &Rational::int(c);
        }
        v.integral = true;
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coords.iter().map(Rational::to_integer).collect()
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(Rational::to_i64).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coords.iter().map(|x| x * c).collect())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Self::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        ))
    }

    /// Σ vᵢ over a nonempty (or `len`-sized zero) family.
    pub fn sum(len: usize, vs: &[AmbientVector]) -> Result<Self> {
        vs.iter().try_fold(Self::zero(len), |acc, v| acc.checked_add(v))
    }
}

impl std::ops::Neg for &AmbientVector {
    type Output = AmbientVector;
    fn neg(self) -> AmbientVector {
        AmbientVector {
            coords: self.coords.iter().map(|x| -x).collect(),
            integral: self.integral,
        }
    }
}

impl std::ops::Add for &AmbientVector {
    type Output = AmbientVector;
    fn add(self, rhs: &AmbientVector) -> AmbientVector {
        self.checked_add(rhs).expect("vector lengths differ")
    }
}

impl std::ops::Sub for &AmbientVector {
    type Output = AmbientVector;
    fn sub(self, rhs: &AmbientVector) -> AmbientVector {
        self.checked_sub(rhs).expect("vector lengths differ")
    }
}

impl fmt::Debug for AmbientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}
