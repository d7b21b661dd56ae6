//! Recovering a left fraction `V^{-1} U` from the first terms of its expansion.
//!
//! If `F` is the expansion of a strictly proper `H` which has a left
//! fraction of degree `dl` and a right one of degree `dr`, the rows of degree
//! at most `dl` in an order basis of `[-I; F]` at order `dl + dr + 1` are
//! exactly `n` rows `[U V]` with `V F = U`, and `V^{-1} U = H`.

use crate::approx::pmbasis;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polymat::{PolyMatrix, SeriesMatrix};

/// `H = V^{-1} U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftFactorization {
    numerator: PolyMatrix,
    denominator: PolyMatrix,
}

impl LeftFactorization {
    pub fn new(numerator: PolyMatrix, denominator: PolyMatrix) -> Result<Self> {
        if numerator.rows() != denominator.rows() || !denominator.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "numerator {}x{}, denominator {}x{}",
                numerator.rows(),
                numerator.cols(),
                denominator.rows(),
                denominator.cols()
            )));
        }
        Ok(LeftFactorization { numerator, denominator })
    }

    /// `U`
    pub fn numerator(&self) -> &PolyMatrix {
        &self.numerator
    }

    /// `V`
    pub fn denominator(&self) -> &PolyMatrix {
        &self.denominator
    }

    pub fn into_parts(self) -> (PolyMatrix, PolyMatrix) {
        (self.numerator, self.denominator)
    }

    /// The block row `[U V]`.
    pub fn stacked(&self) -> PolyMatrix {
        self.numerator.hstack(&self.denominator).expect("row counts agree")
    }

    /// Scales each row so that the leading coefficient vector of its
    /// denominator part starts with 1.
    pub fn normalized(&self) -> Self {
        let field = *self.denominator.field();
        let n = self.denominator.rows();
        let degs = self.denominator.row_degrees();
        let scale = Matrix::from_fn(n, n, |i, j| {
            if i != j {
                return field.zero();
            }
            let Some(d) = degs.as_slice()[i] else {
                return field.one();
            };
            let lead = (0..n)
                .map(|c| self.denominator.entry(i, c).coeff(d))
                .find(|c| !c.is_zero())
                .expect("row of degree d has a coefficient of degree d");
            field.inv(lead).expect("nonzero")
        });
        LeftFactorization {
            numerator: self.numerator.mul_constant_left(&scale),
            denominator: self.denominator.mul_constant_left(&scale),
        }
    }
}

/// Left fraction `V^{-1} U` of the series `F` from one order basis of
/// `[-I; F]` at order `dl + dr + 1`.
pub fn matfrac_rec(f: &SeriesMatrix, dl: usize, dr: usize) -> Result<LeftFactorization> {
    let field = *f.field();
    let (n, m) = (f.rows(), f.cols());
    let order = dl + dr + 1;
    if f.order() < order {
        return Err(Error::OrderExceedsData {
            requested: order,
            available: f.order(),
        });
    }
    let minus_id = SeriesMatrix::from_poly(&PolyMatrix::identity(field, m).neg(), order);
    let stacked = minus_id.vstack(&f.with_order(order));
    let basis = pmbasis(&stacked, order, None)?.into_basis();
    let keep: Vec<usize> = basis
        .row_degrees()
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_some_and(|d| d <= dl))
        .map(|(i, _)| i)
        .collect();
    if keep.len() != n {
        return Err(Error::WrongRowCount {
            expected: n,
            found: keep.len(),
            bound: dl,
        });
    }
    let rows = basis.select_rows(&keep);
    LeftFactorization::new(rows.block(0, n, 0, m), rows.block(0, n, m, m + n))
}

/// Whether `V^{-1} U = B A^{-1}`, that is `U A = V B`.
pub fn verify_left_factorization(u: &PolyMatrix, v: &PolyMatrix, b: &PolyMatrix, a: &PolyMatrix) -> Result<bool> {
    if u.cols() != a.rows() || v.cols() != b.rows() || u.rows() != v.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "U {}x{}, V {}x{}, B {}x{}, A {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols(),
            b.rows(),
            b.cols(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(u.mul(a)? == v.mul(b)?)
}
