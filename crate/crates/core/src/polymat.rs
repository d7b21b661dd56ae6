//! Polynomial matrices, truncated power-series matrices, and the basic
//! predicates on them (row degrees, leading row matrix, row-reducedness,
//! unimodularity).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::Matrix;
use crate::ntt::NttPlan;
use crate::poly::Polynomial;

/// Row degrees of a polynomial matrix, `None` marking a zero row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowDegreeProfile(pub Vec<Option<usize>>);

impl RowDegreeProfile {
    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sorted(&self) -> Vec<Option<usize>> {
        let mut v = self.0.clone();
        v.sort();
        v
    }

    /// Sum of the degrees of the nonzero rows.
    pub fn sum(&self) -> usize {
        self.0.iter().flatten().sum()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.iter().flatten().copied().max()
    }
}

/// An `n x m` matrix over `K[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    degree: Option<usize>,
}

fn max_degree(entries: &[Polynomial]) -> Option<usize> {
    entries.iter().filter_map(|p| p.degree()).max()
}

impl PolyMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            rows,
            cols,
            entries: vec![Polynomial::zero(); rows * cols],
            degree: None,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| {
            if i == j {
                Polynomial::one(&field)
            } else {
                Polynomial::zero()
            }
        })
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::from_entries(field, rows, cols, entries)
    }

    /// Row-major entries.
    pub fn from_entries(field: PrimeField, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let degree = max_degree(&entries);
        PolyMatrix {
            field,
            rows,
            cols,
            entries,
            degree,
        }
    }

    /// Each entry given by its signed coefficient list, low degree first.
    pub fn from_i64(field: PrimeField, rows: &[&[&[i64]]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(field, r, c, |i, j| Polynomial::from_i64s(&field, rows[i][j]))
    }

    pub fn from_constant(field: PrimeField, m: &Matrix) -> Self {
        Self::from_fn(field, m.rows(), m.cols(), |i, j| Polynomial::constant(m[(i, j)]))
    }

    /// `sum_k coeffs[k] x^k`.
    pub fn from_coeff_matrices(field: PrimeField, rows: usize, cols: usize, coeffs: &[Matrix]) -> Self {
        Self::from_fn(field, rows, cols, |i, j| {
            Polynomial::from_coeffs(coeffs.iter().map(|m| m[(i, j)]).collect())
        })
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
        self.degree = max_degree(&self.entries);
    }

    /// Maximum entry degree, `None` for the zero matrix.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    /// Coefficient matrix of `x^k`.
    pub fn coeff_matrix(&self, k: usize) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).coeff(k))
    }

    pub fn coeff_matrices(&self) -> Vec<Matrix> {
        match self.degree {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff_matrix(k)).collect(),
        }
    }

    pub fn row_degrees(&self) -> RowDegreeProfile {
        RowDegreeProfile(
            (0..self.rows)
                .map(|i| (0..self.cols).filter_map(|j| self.entry(i, j).degree()).max())
                .collect(),
        )
    }

    pub fn col_degrees(&self) -> Vec<Option<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter_map(|i| self.entry(i, j).degree()).max())
            .collect()
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::PrimeMismatch(self.field.modulus(), other.field.modulus()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        Ok(Self::from_entries(
            f,
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b, &f))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self::from_entries(
            f,
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a.neg(&f)).collect(),
        )
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let f = self.field;
        Self::from_entries(
            f,
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a.scale(c, &f)).collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    /// Exact product over `K[x]`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(multiply(self, other))
    }

    /// Product with a forced algorithm; `Ntt` and `DistinctPoints` fall back
    /// to `CoefficientBlocks` when the field cannot support them.
    pub fn mul_using(&self, other: &Self, strategy: MulStrategy) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let len = self.degree.unwrap_or(0) + other.degree.unwrap_or(0) + 1;
        let strategy = match strategy {
            MulStrategy::Ntt if !self.field.supports_ntt(len.next_power_of_two()) => MulStrategy::CoefficientBlocks,
            MulStrategy::DistinctPoints if (self.field.modulus() as usize) <= len => MulStrategy::CoefficientBlocks,
            s => s,
        };
        Ok(mul_with(self, other, strategy))
    }

    /// Left multiplication by a constant matrix.
    pub fn mul_constant_left(&self, m: &Matrix) -> Self {
        assert_eq!(m.cols(), self.rows);
        let f = self.field;
        let coeffs: Vec<Matrix> = self.coeff_matrices().iter().map(|c| m.mul(c, &f)).collect();
        Self::from_coeff_matrices(f, m.rows(), self.cols, &coeffs)
    }

    /// Entry-wise evaluation.
    pub fn eval(&self, x0: FieldElement) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).eval(x0, &self.field))
    }

    /// `A(x + x0)`.
    pub fn shift_var(&self, x0: FieldElement) -> Self {
        let f = self.field;
        Self::from_entries(
            f,
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a.shift_var(x0, &f)).collect(),
        )
    }

    /// `A mod x^k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::from_entries(
            self.field,
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a.truncate(k)).collect(),
        )
    }

    /// `x^k A`.
    pub fn shift_up(&self, k: usize) -> Self {
        Self::from_entries(
            self.field,
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a.shift_up(k)).collect(),
        )
    }

    /// Exact quotient by `x^k`, or `None` when some low coefficient is nonzero.
    pub fn div_x_pow(&self, k: usize) -> Option<Self> {
        if self.entries.iter().any(|a| !a.truncate(k).is_zero()) {
            return None;
        }
        Some(Self::from_entries(
            self.field,
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a.shift_down(k)).collect(),
        ))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field, idx.len(), self.cols, |i, j| self.entry(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field, self.rows, idx.len(), |i, j| self.entry(i, idx[j]).clone())
    }

    /// Contiguous block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self.entry(r0 + i, c0 + j).clone())
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self::from_entries(
            self.field,
            self.rows + other.rows,
            self.cols,
            entries,
        ))
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.entry(i, j).clone()
            } else {
                other.entry(i, j - self.cols).clone()
            }
        }))
    }

    /// Block diagonal matrix from square or rectangular blocks.
    pub fn block_diag(field: PrimeField, blocks: &[PolyMatrix]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = vec![Polynomial::zero(); rows * cols];
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i) * cols + c0 + j] = b.entry(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Self::from_entries(field, rows, cols, out)
    }

    /// Whether every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.entry(i, j).is_zero()))
    }

    /// Constant matrix of the coefficients of `x^{d_i}` in each row `i`.
    pub fn leading_row_matrix(&self) -> Result<Matrix> {
        let degs = self.row_degrees();
        let mut lead = Matrix::zeros(self.rows, self.cols);
        for (i, d) in degs.0.iter().enumerate() {
            let d = d.ok_or(Error::ZeroRow(i))?;
            for j in 0..self.cols {
                lead[(i, j)] = self.entry(i, j).coeff(d);
            }
        }
        Ok(lead)
    }

    /// Row leading matrix for a column shift `s`: row `i` keeps the
    /// coefficients reaching `max_j (deg a_ij + s_j)`.
    pub fn shifted_leading_row_matrix(&self, shift: &[i64]) -> Result<Matrix> {
        assert_eq!(shift.len(), self.cols);
        let mut lead = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let sdeg = (0..self.cols)
                .filter_map(|j| self.entry(i, j).degree().map(|d| d as i64 + shift[j]))
                .max()
                .ok_or(Error::ZeroRow(i))?;
            for j in 0..self.cols {
                let k = sdeg - shift[j];
                if k >= 0 {
                    lead[(i, j)] = self.entry(i, j).coeff(k as usize);
                }
            }
        }
        Ok(lead)
    }

    /// Full row rank of the leading row matrix.
    pub fn is_row_reduced(&self) -> Result<bool> {
        let lead = self.leading_row_matrix()?;
        Ok(lead.rank(&self.field) == self.rows)
    }

    /// `det U` is a nonzero constant.
    pub fn is_unimodular(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let det = crate::oracle::det_by_interpolation(self)?;
        Ok(det.degree() == Some(0))
    }

    pub fn row(&self, i: usize) -> Self {
        self.select_rows(&[i])
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// multiplication

/// How a product was (or would be) computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MulStrategy {
    /// `C_k = sum_i A_i B_{k-i}` over coefficient matrices.
    CoefficientBlocks,
    /// Evaluation/interpolation at roots of unity.
    Ntt,
    /// Evaluation at `0, 1, ..., D-1` and Newton interpolation.
    DistinctPoints,
}

pub(crate) fn choose_strategy(field: &PrimeField, n: usize, k: usize, m: usize, da: usize, db: usize) -> MulStrategy {
    let len = da + db + 1;
    let block_cost = (n * k * m) as f64 * ((da + 1) * (db + 1)) as f64;
    let ntt_len = len.next_power_of_two();
    if field.supports_ntt(ntt_len) {
        let log = (ntt_len.trailing_zeros() as f64).max(1.0);
        let ntt_cost = (n * k * m) as f64 * ntt_len as f64 + ((n * k + k * m + n * m) * ntt_len) as f64 * log * 1.5;
        if ntt_cost < block_cost {
            return MulStrategy::Ntt;
        }
    } else if (field.modulus() as usize) > len {
        let pts_cost = (n * k * m) as f64 * len as f64
            + ((n * k) * (da + 1) + (k * m) * (db + 1)) as f64 * len as f64
            + (n * m) as f64 * (len * len) as f64 * 2.0;
        if pts_cost < block_cost {
            return MulStrategy::DistinctPoints;
        }
    }
    MulStrategy::CoefficientBlocks
}

fn multiply(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let (Some(da), Some(db)) = (a.degree, b.degree) else {
        return PolyMatrix::zero(a.field, a.rows, b.cols);
    };
    mul_with(a, b, choose_strategy(&a.field, a.rows, a.cols, b.cols, da, db))
}

pub(crate) fn mul_with(a: &PolyMatrix, b: &PolyMatrix, strategy: MulStrategy) -> PolyMatrix {
    let (Some(da), Some(db)) = (a.degree, b.degree) else {
        return PolyMatrix::zero(a.field, a.rows, b.cols);
    };
    match strategy {
        MulStrategy::CoefficientBlocks => mul_blocks(a, b),
        MulStrategy::Ntt => mul_ntt(a, b, (da + db + 1).next_power_of_two()),
        MulStrategy::DistinctPoints => mul_points(a, b, da + db + 1),
    }
}

fn mul_blocks(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let f = a.field;
    let ac = a.coeff_matrices();
    let bc = b.coeff_matrices();
    let len = ac.len() + bc.len() - 1;
    let mut out = vec![Matrix::zeros(a.rows, b.cols); len];
    let mut tmp = Matrix::zeros(a.rows, b.cols);
    for (i, ai) in ac.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in bc.iter().enumerate() {
            ai.mul_into(bj, &f, &mut tmp);
            out[i + j] = out[i + j].add(&tmp, &f);
        }
    }
    PolyMatrix::from_coeff_matrices(f, a.rows, b.cols, &out)
}

/// Evaluation matrices of `a` at the `len` roots of unity.
fn ntt_evaluations(a: &PolyMatrix, plan: &NttPlan) -> Vec<Matrix> {
    let len = plan.len();
    let mut evals = vec![Matrix::zeros(a.rows, a.cols); len];
    let mut buf = vec![FieldElement::ZERO; len];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let e = a.entry(i, j);
            if e.is_zero() {
                continue;
            }
            buf.iter_mut().for_each(|x| *x = FieldElement::ZERO);
            buf[..e.coeffs().len()].copy_from_slice(e.coeffs());
            plan.forward(&mut buf);
            for (t, v) in buf.iter().enumerate() {
                evals[t][(i, j)] = *v;
            }
        }
    }
    evals
}

fn mul_ntt(a: &PolyMatrix, b: &PolyMatrix, len: usize) -> PolyMatrix {
    let f = a.field;
    let plan = NttPlan::new(&f, len);
    let ea = ntt_evaluations(a, &plan);
    let eb = ntt_evaluations(b, &plan);
    let prods: Vec<Matrix> = ea.iter().zip(&eb).map(|(x, y)| x.mul(y, &f)).collect();
    let out_len = a.degree.unwrap() + b.degree.unwrap() + 1;
    let mut buf = vec![FieldElement::ZERO; len];
    PolyMatrix::from_fn(f, a.rows, b.cols, |i, j| {
        for (t, m) in prods.iter().enumerate() {
            buf[t] = m[(i, j)];
        }
        plan.inverse(&mut buf);
        Polynomial::from_coeffs(buf[..out_len].to_vec())
    })
}

fn mul_points(a: &PolyMatrix, b: &PolyMatrix, len: usize) -> PolyMatrix {
    let f = a.field;
    let points: Vec<FieldElement> = (0..len as u64).map(|x| f.elem(x)).collect();
    let ea: Vec<Matrix> = points.iter().map(|&x| a.eval(x)).collect();
    let eb: Vec<Matrix> = points.iter().map(|&x| b.eval(x)).collect();
    let prods: Vec<Matrix> = ea.iter().zip(&eb).map(|(x, y)| x.mul(y, &f)).collect();
    PolyMatrix::from_fn(f, a.rows, b.cols, |i, j| {
        let pts: Vec<(FieldElement, FieldElement)> = points.iter().zip(&prods).map(|(&x, m)| (x, m[(i, j)])).collect();
        Polynomial::interpolate(&pts, &f).expect("abscissae are distinct")
    })
}

// ---------------------------------------------------------------------------
// power series

/// Truncated power series `F_0 + F_1 x + ... + F_{s-1} x^{s-1}` with
/// declared order `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    coeffs: Vec<Matrix>,
}

impl SeriesMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, coeffs: Vec<Matrix>) -> Self {
        assert!(coeffs.iter().all(|c| c.rows() == rows && c.cols() == cols));
        SeriesMatrix {
            field,
            rows,
            cols,
            coeffs,
        }
    }

    /// The first `order` coefficients of a polynomial matrix.
    pub fn from_poly(a: &PolyMatrix, order: usize) -> Self {
        let coeffs = (0..order).map(|k| a.coeff_matrix(k)).collect();
        SeriesMatrix::new(*a.field(), a.rows(), a.cols(), coeffs)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Matrix {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// Polynomial matrix `F mod x^k` (`k` may not exceed the order).
    pub fn truncate(&self, k: usize) -> PolyMatrix {
        assert!(k <= self.order(), "truncation beyond stored order");
        PolyMatrix::from_coeff_matrices(self.field, self.rows, self.cols, &self.coeffs[..k])
    }

    pub fn to_poly(&self) -> PolyMatrix {
        self.truncate(self.order())
    }

    /// Keeps the first `k` coefficients.
    pub fn with_order(&self, k: usize) -> Self {
        assert!(k <= self.order());
        SeriesMatrix::new(self.field, self.rows, self.cols, self.coeffs[..k].to_vec())
    }

    /// Coefficients `start .. start + len` as a new series.
    pub fn window(&self, start: usize, len: usize) -> Self {
        SeriesMatrix::new(
            self.field,
            self.rows,
            self.cols,
            self.coeffs[start..start + len].to_vec(),
        )
    }

    /// `(A F) mod x^order`.
    pub fn mul_poly_left(&self, a: &PolyMatrix) -> Self {
        assert_eq!(a.cols(), self.rows);
        let prod = multiply(a, &self.to_poly());
        Self::from_poly(&prod, self.order())
    }

    /// `(F B) mod x^order`.
    pub fn mul_poly_right(&self, b: &PolyMatrix) -> Self {
        assert_eq!(b.rows(), self.cols);
        let prod = multiply(&self.to_poly(), b);
        Self::from_poly(&prod, self.order())
    }

    /// `[self; other]`, truncated to the smaller order.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let k = self.order().min(other.order());
        let coeffs = (0..k).map(|i| self.coeffs[i].vstack(&other.coeffs[i])).collect();
        SeriesMatrix::new(self.field, self.rows + other.rows, self.cols, coeffs)
    }
}
