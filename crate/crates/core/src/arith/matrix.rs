use std::ops::{Index, IndexMut};

use super::Scalar;
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<N> {
    rows: usize,
    cols: usize,
    data: Vec<N>,
}

impl<N: Scalar> IntMatrix<N> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![N::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = N::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows<R: AsRef<[N]>>(rows: &[R], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::InconsistentDimensions(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<N>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| N::from_i64(v)).collect())
            .collect();
        Self::from_rows(&rows, cols).expect("rectangular literal")
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

    pub fn row(&self, i: usize) -> &[N] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [N] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<N> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<N>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InconsistentDimensions(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = other.transpose();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = N::dot(self.row(i), t.row(j))?;
            }
        }
        Ok(out)
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul_vec(&self, v: &[N]) -> Result<Vec<N>> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![N::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                if !m.is_zero() {
                    *o = o.add(&vi.mul(m)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<N> {
        if !self.is_square() {
            return Err(Error::InconsistentDimensions(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(N::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = N::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(N::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[(i, j)] = N::mul_sub_div(&a[(k, k)], &a[(i, j)], &a[(i, k)], &a[(k, j)], &prev)?;
                }
                a[(i, k)] = N::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            d.neg()
        } else {
            Ok(d)
        }
    }

    /// Returns `(N, D)` with `self * N = D * I` and `D = |det self|`.
    ///
    /// Fraction-free Gauss-Jordan on `[M | I]`: the left block ends as
    /// `d * I` with `d = ±det M` and the right block as `d * M^-1`.
    pub fn invert_with_denominator(&self) -> Result<(Self, N)> {
        if !self.is_square() {
            return Err(Error::InconsistentDimensions(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok((Self::zeros(0, 0), N::one()));
        }
        let w = 2 * n;
        let mut a = Self::zeros(n, w);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = self[(i, j)].clone();
            }
            a[(i, n + i)] = N::one();
        }
        let mut prev = N::one();
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !a[(i, k)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap_rows(p, k);
            for i in 0..n {
                if i == k {
                    continue;
                }
                for j in 0..w {
                    if j == k {
                        continue;
                    }
                    a[(i, j)] = N::mul_sub_div(&a[(k, k)], &a[(i, j)], &a[(i, k)], &a[(k, j)], &prev)?;
                }
                a[(i, k)] = N::zero();
            }
            prev = a[(k, k)].clone();
        }
        // every diagonal entry now equals the last pivot
        let d = prev;
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            debug_assert_eq!(a[(i, i)], d);
            for j in 0..n {
                inv[(i, j)] = a[(i, n + j)].clone();
            }
        }
        if d.is_negative() {
            for v in inv.data.iter_mut() {
                *v = v.neg()?;
            }
            Ok((inv, d.neg()?))
        } else {
            Ok((inv, d))
        }
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> Result<usize> {
        let mut a = self.clone();
        let (mut r, mut prev) = (0, N::one());
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    a[(i, j)] = N::mul_sub_div(&a[(r, c)], &a[(i, j)], &a[(i, c)], &a[(r, j)], &prev)?;
                }
                a[(i, c)] = N::zero();
            }
            prev = a[(r, c)].clone();
            r += 1;
        }
        Ok(r)
    }
}

impl<N> Index<(usize, usize)> for IntMatrix<N> {
    type Output = N;
    fn index(&self, (i, j): (usize, usize)) -> &N {
        &self.data[i * self.cols + j]
    }
}

impl<N> IndexMut<(usize, usize)> for IntMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut N {
        &mut self.data[i * self.cols + j]
    }
}

pub fn det<N: Scalar>(m: &IntMatrix<N>) -> Result<N> {
    m.det()
}

pub fn invert_with_denominator<N: Scalar>(m: &IntMatrix<N>) -> Result<(IntMatrix<N>, N)> {
    m.invert_with_denominator()
}

/// Incrementally maintained row echelon form, used to pick linearly
/// independent vectors from a stream.
#[derive(Debug, Clone)]
pub struct EchelonBasis<N> {
    dim: usize,
    rows: Vec<(usize, Vec<N>)>,
}

impl<N: Scalar> EchelonBasis<N> {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn reduce(&self, v: &[N]) -> Result<Vec<N>> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let (pv, rv) = (row[*pivot].clone(), v[*pivot].clone());
            for (x, r) in v.iter_mut().zip(row) {
                *x = N::mul_sub(&pv, x, &rv, r)?;
            }
            super::lattice::divide_by_content(&mut v)?;
        }
        Ok(v)
    }

    /// True iff `v` lies in the span of the inserted vectors.
    pub fn contains(&self, v: &[N]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Scalar::is_zero))
    }

    /// Inserts `v`; returns whether it increased the rank.
    pub fn insert(&mut self, v: &[N]) -> Result<bool> {
        let r = self.reduce(v)?;
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, r));
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

/// Indices of a maximal linearly independent subfamily, chosen greedily in
/// input order.
pub fn independent_subset<N: Scalar, V: AsRef<[N]>>(vectors: &[V], dim: usize) -> Result<Vec<usize>> {
    let mut basis = EchelonBasis::new(dim);
    let mut picked = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if basis.is_full() {
            break;
        }
        if basis.insert(v.as_ref())? {
            picked.push(i);
        }
    }
    Ok(picked)
}

pub fn rank_of<N: Scalar, V: AsRef<[N]>>(vectors: &[V], dim: usize) -> Result<usize> {
    Ok(independent_subset(vectors, dim)?.len())
}
