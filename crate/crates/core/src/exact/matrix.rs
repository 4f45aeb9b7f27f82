use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal<T: Clone + Into<BigInt>>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone().into());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[&IntMatrix]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.smith_normal_form().rank()
    }

    /// Smith normal form by Euclidean row and column reduction.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (r, c) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(r);
        let mut v = IntMatrix::identity(c);

        for t in 0..r.min(c) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let Some((pi, pj)) = d.min_abs_entry(t) else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            loop {
                let mut changed = false;

                for i in t + 1..r {
                    let q = d.get(i, t).div_floor(d.get(t, t));
                    if !q.is_zero() {
                        let f = -q;
                        d.add_row(i, t, &f);
                        u.add_row(i, t, &f);
                    }
                    if !d.get(i, t).is_zero() {
                        changed = true;
                    }
                }
                for j in t + 1..c {
                    let q = d.get(t, j).div_floor(d.get(t, t));
                    if !q.is_zero() {
                        let f = -q;
                        d.add_col(j, t, &f);
                        v.add_col(j, t, &f);
                    }
                    if !d.get(t, j).is_zero() {
                        changed = true;
                    }
                }

                if !changed {
                    // Pivot must divide the whole trailing block.
                    let bad = (t + 1..r)
                        .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                        .find(|&(i, j)| !d.get(i, j).is_multiple_of(d.get(t, t)));
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            let one = BigInt::one();
                            d.add_row(t, i, &one);
                            u.add_row(t, i, &one);
                            continue;
                        }
                    }
                }

                // A remainder is smaller than the pivot in absolute value; move it.
                if let Some((pi, pj)) = d.min_abs_in_cross(t) {
                    d.swap_rows(t, pi);
                    u.swap_rows(t, pi);
                    d.swap_cols(t, pj);
                    v.swap_cols(t, pj);
                }
            }

            if d.get(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
        }

        SmithForm { u, d, v }
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest nonzero entry in row t / column t (pivot included).
    fn min_abs_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let cells = (t..self.rows)
            .map(|i| (i, t))
            .chain((t + 1..self.cols).map(|j| (t, j)));
        let mut best: Option<(usize, usize)> = None;
        for (i, j) in cells {
            let x = self.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < self.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
        best
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().cloned().map(Rational::int).collect())
            .collect()
    }

    /// Inertia of a symmetric matrix by exact congruence diagonalization.
    pub fn signature(&self) -> Result<Inertia> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Inertia::of_symmetric(self.to_rational_rows()))
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions do not match")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `u * m * v == d` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `d`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Nonzero diagonal entries.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.elementary_divisors().len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.plus + self.minus + self.zero
    }

    pub fn is_negative_definite(&self) -> bool {
        self.plus == 0 && self.zero == 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.minus == 0 && self.zero == 0
    }

    /// Symmetric Gaussian elimination over the rationals. Zero diagonals are
    /// handled by folding a partner row/column into the pivot, which turns the
    /// hyperbolic block [[0, b], [b, 0]] into one with diagonal 2b.
    pub fn of_symmetric(mut a: Vec<Vec<Rational>>) -> Inertia {
        let n = a.len();
        let mut out = Inertia {
            plus: 0,
            minus: 0,
            zero: 0,
        };
        for i in 0..n {
            if a[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(i, j);
                    for row in a.iter_mut() {
                        row.swap(i, j);
                    }
                } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                    // row_i += row_j, col_i += col_j
                    let row_j = a[j].clone();
                    for (x, v) in a[i].iter_mut().zip(&row_j) {
                        *x += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[i] += &v;
                    }
                } else {
                    out.zero += 1;
                    continue;
                }
            }
            let pivot = a[i][i].clone();
            if pivot.is_positive() {
                out.plus += 1;
            } else {
                out.minus += 1;
            }
            for j in i + 1..n {
                if a[j][i].is_zero() {
                    continue;
                }
                let f = &a[j][i] / &pivot;
                let row_i = a[i][i..].to_vec();
                for (x, v) in a[j][i..].iter_mut().zip(&row_i) {
                    *x -= &(&f * v);
                }
                for row in a.iter_mut().skip(i) {
                    let v = &f * &row[i];
                    row[j] -= &v;
                }
            }
        }
        out
    }
}
