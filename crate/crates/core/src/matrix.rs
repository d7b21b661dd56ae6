//! Dense constant matrices over `K` and Gaussian elimination.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// Row-major constant matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Result of row reduction: reduced row echelon form plus pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize, field: &PrimeField) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<FieldElement>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from signed integer rows, reduced mod p.
    pub fn from_i64_rows(field: &PrimeField, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| field.from_i64(rows[i][j]))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElement] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn add(&self, other: &Self, field: &PrimeField) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self, field: &PrimeField) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self, field: &PrimeField) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement, field: &PrimeField) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field.mul(a, c)).collect(),
        }
    }

    /// Schoolbook product with delayed reduction.
    pub fn mul(&self, other: &Self, field: &PrimeField) -> Self {
        assert_eq!(self.cols, other.rows, "constant matrix product dimensions");
        let mut out = Matrix::zeros(self.rows, other.cols);
        self.mul_into(other, field, &mut out);
        out
    }

    /// Writes `self * other` into `out`, which must already have the right shape.
    pub fn mul_into(&self, other: &Self, field: &PrimeField, out: &mut Matrix) {
        let p = field.modulus() as u128;
        let n = other.cols;
        let mut acc = vec![0u128; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a = a.0;
                for (slot, b) in acc.iter_mut().zip(other.row(k)) {
                    *slot += (a * b.0) as u128;
                }
            }
            for (dst, a) in out.row_mut(i).iter_mut().zip(&acc) {
                *dst = FieldElement((a % p) as u64);
            }
        }
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[FieldElement], m: &Matrix, field: &PrimeField) -> Vec<FieldElement> {
        assert_eq!(v.len(), m.rows);
        let mut out = vec![field.zero(); m.cols];
        for (k, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(m.row(k)) {
                *o = field.mul_add(*o, a, b);
            }
        }
        out
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)])
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    /// Reduced row echelon form.
    pub fn echelon(&self, field: &PrimeField) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = field.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = field.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)];
                for j in c..m.cols {
                    let v = field.mul(factor, m[(r, j)]);
                    m[(i, j)] = field.sub(m[(i, j)], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        self.echelon(field).pivots.len()
    }

    pub fn det(&self, field: &PrimeField) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(field.zero());
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = field.neg(det);
            }
            let piv = m[(c, c)];
            det = field.mul(det, piv);
            let inv = field.inv(piv)?;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = field.mul(m[(i, c)], inv);
                for j in c..n {
                    let v = field.mul(factor, m[(c, j)]);
                    m[(i, j)] = field.sub(m[(i, j)], v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self, field: &PrimeField) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)]
            } else if j - n == i {
                field.one()
            } else {
                field.zero()
            }
        });
        let e = aug.echelon(field);
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(Error::SingularInput);
        }
        Ok(Self::from_fn(n, n, |i, j| e.reduced[(i, n + j)]))
    }

    /// Basis (as rows) of `{ v : M v = 0 }`.
    pub fn right_kernel(&self, field: &PrimeField) -> Self {
        let e = self.echelon(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(free.len(), self.cols);
        for (t, &fc) in free.iter().enumerate() {
            k[(t, fc)] = field.one();
            for (r, &pc) in e.pivots.iter().enumerate() {
                k[(t, pc)] = field.neg(e.reduced[(r, fc)]);
            }
        }
        k
    }

    /// Basis (as rows) of `{ v : v M = 0 }`.
    pub fn left_kernel(&self, field: &PrimeField) -> Self {
        self.transpose().right_kernel(field)
    }

    /// Indices of a maximal set of linearly independent rows, greedily from the top.
    pub fn independent_rows(&self, field: &PrimeField) -> Vec<usize> {
        self.transpose().echelon(field).pivots
    }

    /// Indices of a maximal set of linearly independent columns, greedily from the left.
    pub fn independent_cols(&self, field: &PrimeField) -> Vec<usize> {
        self.echelon(field).pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut impl Rng, f: &PrimeField, r: usize, c: usize) -> Matrix {
        Matrix::from_fn(r, c, |_, _| f.elem(rng.gen()))
    }

    #[test]
    fn product_and_inverse() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random(&mut rng, &f, 6, 6);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&inv, &f), Matrix::identity(6, &f));
        let d = a.det(&f).unwrap();
        assert_ne!(d, f.zero());
        let b = random(&mut rng, &f, 6, 6);
        assert_eq!(a.mul(&b, &f).det(&f).unwrap(), f.mul(d, b.det(&f).unwrap()));
    }

    #[test]
    fn kernels() {
        let f = PrimeField::new(97).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(&f), 2);
        assert_eq!(m.det(&f).unwrap(), f.zero());
        let k = m.left_kernel(&f);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&m, &f).is_zero());
        let k = m.right_kernel(&f);
        assert_eq!(k.rows(), 1);
        assert!(m.mul(&k.transpose(), &f).is_zero());
        assert_eq!(m.independent_rows(&f), vec![0, 2]);
        assert!(m.inverse(&f).is_err());
    }

    #[test]
    fn det_sign_with_swaps() {
        let f = PrimeField::new(97).unwrap();
        let m = Matrix::from_i64_rows(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(&f).unwrap(), f.from_i64(-1));
    }
}
