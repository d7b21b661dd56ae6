//! Minimal approximant bases (order bases).
//!
//! For a series matrix `F` with `n` rows and an order `s`, the approximants
//! are the row vectors `v` over `K[x]` with `v F = 0 mod x^s`. They form a
//! free module of rank `n`; a basis of it with minimal row degrees is
//! computed either one order at a time ([`mbasis`]) or by divide and
//! conquer ([`pmbasis`]), which splits the order in two halves and
//! multiplies the two partial bases.
//!
//! Both routines accept an optional column shift. Row `i` of a basis is
//! then measured by its shifted degree `max_j (deg p_ij + s_j)`.

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::polymat::{PolyMatrix, RowDegreeProfile, SeriesMatrix};

/// Orders at or below this are handled by the iterative algorithm.
pub const DEFAULT_PMBASIS_THRESHOLD: usize = 16;

/// A non-singular `n x n` basis of the approximants of `F` at some order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximantBasis {
    basis: PolyMatrix,
    order: usize,
    row_degrees: RowDegreeProfile,
    shift: Vec<i64>,
    shifted_degrees: Vec<i64>,
}

impl ApproximantBasis {
    pub(crate) fn new(basis: PolyMatrix, order: usize, shift: Vec<i64>, shifted_degrees: Vec<i64>) -> Self {
        let row_degrees = basis.row_degrees();
        ApproximantBasis {
            basis,
            order,
            row_degrees,
            shift,
            shifted_degrees,
        }
    }

    pub fn basis(&self) -> &PolyMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> PolyMatrix {
        self.basis
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn row_degrees(&self) -> &RowDegreeProfile {
        &self.row_degrees
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    /// Shifted row degrees `max_j (deg p_ij + s_j)`.
    pub fn shifted_degrees(&self) -> &[i64] {
        &self.shifted_degrees
    }

    /// Sorted row degrees; for the zero shift these are the minimal indices.
    pub fn minimal_indices(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .row_degrees
            .as_slice()
            .iter()
            .map(|d| d.expect("basis rows are nonzero"))
            .collect();
        d.sort_unstable();
        d
    }

    /// Checks `N F = 0 mod x^order`.
    pub fn annihilates(&self, f: &SeriesMatrix) -> bool {
        f.with_order(self.order)
            .mul_poly_left(&self.basis)
            .coeffs()
            .iter()
            .all(Matrix::is_zero)
    }
}

fn check_inputs(f: &SeriesMatrix, order: usize, shift: Option<&[i64]>) -> Result<Vec<i64>> {
    if order > f.order() {
        return Err(Error::OrderExceedsData {
            requested: order,
            available: f.order(),
        });
    }
    match shift {
        None => Ok(vec![0; f.rows()]),
        Some(s) if s.len() == f.rows() => Ok(s.to_vec()),
        Some(s) => Err(Error::DimensionMismatch(format!(
            "shift of length {} for {} rows",
            s.len(),
            f.rows()
        ))),
    }
}

/// Iterative order basis, one order per step.
pub fn mbasis(f: &SeriesMatrix, order: usize, shift: Option<&[i64]>) -> Result<ApproximantBasis> {
    let shift = check_inputs(f, order, shift)?;
    let (basis, sdeg) = mbasis_core(f, order, &shift);
    Ok(ApproximantBasis::new(basis, order, shift, sdeg))
}

/// Divide-and-conquer order basis with the default base-case threshold.
pub fn pmbasis(f: &SeriesMatrix, order: usize, shift: Option<&[i64]>) -> Result<ApproximantBasis> {
    pmbasis_with_threshold(f, order, shift, DEFAULT_PMBASIS_THRESHOLD)
}

pub fn pmbasis_with_threshold(
    f: &SeriesMatrix,
    order: usize,
    shift: Option<&[i64]>,
    threshold: usize,
) -> Result<ApproximantBasis> {
    let shift = check_inputs(f, order, shift)?;
    let (basis, sdeg) = pmbasis_rec(f, order, &shift, threshold.max(1));
    Ok(ApproximantBasis::new(basis, order, shift, sdeg))
}

fn pmbasis_rec(f: &SeriesMatrix, order: usize, shift: &[i64], threshold: usize) -> (PolyMatrix, Vec<i64>) {
    if order <= threshold {
        return mbasis_core(f, order, shift);
    }
    let low = order.div_ceil(2);
    let (p1, s1) = pmbasis_rec(f, low, shift, threshold);
    // residual x^-low (P1 F mod x^order)
    let prod = p1.mul(&f.truncate(order)).expect("shapes agree");
    let coeffs = (low..order).map(|k| prod.coeff_matrix(k)).collect();
    let residual = SeriesMatrix::new(*f.field(), f.rows(), f.cols(), coeffs);
    let (p2, s2) = pmbasis_rec(&residual, order - low, &s1, threshold);
    (p2.mul(&p1).expect("shapes agree"), s2)
}

/// Row-wise state of the iterative algorithm: coefficient-major flat
/// vectors, entry `k * width + j` holding the coefficient of `x^k` in column `j`.
struct Rows {
    width: usize,
    data: Vec<Vec<FieldElement>>,
}

impl Rows {
    /// `row[t] += c * row[s]`.
    fn axpy(&mut self, t: usize, s: usize, c: FieldElement, field: &PrimeField) {
        let src = std::mem::take(&mut self.data[s]);
        let dst = &mut self.data[t];
        if dst.len() < src.len() {
            dst.resize(src.len(), FieldElement::ZERO);
        }
        for (d, &v) in dst.iter_mut().zip(&src) {
            *d = field.mul_add(*d, c, v);
        }
        self.data[s] = src;
    }

    /// Multiplies a row by `x`, optionally truncating to `cap` coefficients.
    fn shift(&mut self, i: usize, cap: Option<usize>) {
        let w = self.width;
        let row = &mut self.data[i];
        match cap {
            Some(cap) => {
                debug_assert_eq!(row.len(), cap * w);
                row.rotate_right(w);
                row[..w].iter_mut().for_each(|c| *c = FieldElement::ZERO);
            }
            None => {
                row.splice(0..0, std::iter::repeat_n(FieldElement::ZERO, w));
            }
        }
    }
}

fn mbasis_core(f: &SeriesMatrix, order: usize, shift: &[i64]) -> (PolyMatrix, Vec<i64>) {
    let field = *f.field();
    let (n, m) = (f.rows(), f.cols());
    let mut basis = Rows {
        width: n,
        data: (0..n)
            .map(|i| {
                let mut r = vec![FieldElement::ZERO; n];
                r[i] = field.one();
                r
            })
            .collect(),
    };
    let mut residual = Rows {
        width: m,
        data: (0..n)
            .map(|i| {
                let mut r = Vec::with_capacity(order * m);
                for k in 0..order {
                    r.extend_from_slice(f.coeff(k).row(i));
                }
                r
            })
            .collect(),
    };
    let mut sdeg = shift.to_vec();

    for k in 0..order {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| (sdeg[i], i));

        // Eliminate the constant residual rows in increasing shifted degree;
        // each row either becomes a pivot or reduces to zero using earlier pivots.
        let mut pivots: Vec<(usize, usize, Vec<FieldElement>)> = Vec::new(); // (row, col, reduced)
        let mut combos: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); n];
        let mut kernel_rows = Vec::new();
        for &i in &perm {
            let mut v: Vec<FieldElement> = residual.data[i][k * m..(k + 1) * m].to_vec();
            // combination (over original rows) expressing v
            let mut combo: Vec<(usize, FieldElement)> = Vec::new();
            for (pi, (_, col, reduced)) in pivots.iter().enumerate() {
                let c = v[*col];
                if c.is_zero() {
                    continue;
                }
                let factor = field.neg(c);
                for (x, &y) in v.iter_mut().zip(reduced) {
                    *x = field.mul_add(*x, factor, y);
                }
                // reduced pivot pi = sum of combos[row of pi]
                let prow = pivots[pi].0;
                for &(r, a) in combos[prow].iter() {
                    merge(&mut combo, r, field.mul(factor, a), &field);
                }
            }
            merge(&mut combo, i, field.one(), &field);
            match v.iter().position(|c| !c.is_zero()) {
                Some(col) => {
                    let inv = field.inv(v[col]).expect("nonzero pivot");
                    v.iter_mut().for_each(|x| *x = field.mul(*x, inv));
                    combo.iter_mut().for_each(|(_, a)| *a = field.mul(*a, inv));
                    combos[i] = combo;
                    pivots.push((i, col, v));
                }
                None => {
                    combos[i] = combo;
                    kernel_rows.push(i);
                }
            }
        }

        // kernel rows absorb the combination; all other rows enter it unchanged
        for &t in &kernel_rows {
            for &(s, c) in combos[t].iter() {
                if s != t && !c.is_zero() {
                    basis.axpy(t, s, c, &field);
                    residual.axpy(t, s, c, &field);
                }
            }
        }
        for &(i, _, _) in &pivots {
            basis.shift(i, None);
            residual.shift(i, Some(order));
            sdeg[i] += 1;
        }
    }

    let polys: Vec<Polynomial> = {
        let mut out = vec![Polynomial::zero(); n * n];
        for (i, row) in basis.data.iter().enumerate() {
            let len = row.len() / n;
            for j in 0..n {
                out[i * n + j] = Polynomial::from_coeffs((0..len).map(|k| row[k * n + j]).collect());
            }
        }
        out
    };
    (PolyMatrix::from_entries(field, n, n, polys), sdeg)
}

fn merge(combo: &mut Vec<(usize, FieldElement)>, row: usize, c: FieldElement, field: &PrimeField) {
    match combo.iter_mut().find(|(r, _)| *r == row) {
        Some((_, a)) => *a = field.add(*a, c),
        None => combo.push((row, c)),
    }
}

/// Pivot degrees (indexed by column) of a weak Popov form of a row-reduced
/// square matrix, using the rightmost entry of maximal degree as pivot.
fn pivot_degrees(reduced: &PolyMatrix) -> Result<Vec<usize>> {
    let field = *reduced.field();
    let n = reduced.rows();
    let mut lead = reduced.leading_row_matrix()?;
    let degs: Vec<usize> = reduced.row_degrees().as_slice().iter().map(|d| d.unwrap()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (degs[i], i));
    let mut owner: Vec<Option<usize>> = vec![None; reduced.cols()];
    let mut out = vec![0; reduced.cols()];
    for &i in &order {
        loop {
            let c = (0..lead.cols())
                .rev()
                .find(|&c| !lead[(i, c)].is_zero())
                .ok_or_else(|| Error::Verification("basis is not row-reduced".into()))?;
            match owner[c] {
                None => {
                    owner[c] = Some(i);
                    out[c] = degs[i];
                    break;
                }
                Some(j) => {
                    let alpha = field.div(lead[(i, c)], lead[(j, c)])?;
                    for t in 0..lead.cols() {
                        let v = field.mul(alpha, lead[(j, t)]);
                        lead[(i, t)] = field.sub(lead[(i, t)], v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The unique order basis in Popov form: row `j` has a monic pivot in
/// column `j` whose degree exceeds every other entry of column `j` and
/// bounds the entries of row `j` in the sense of the `-pivot` shift.
pub fn popov_basis(f: &SeriesMatrix, order: usize) -> Result<ApproximantBasis> {
    let reduced = pmbasis(f, order, None)?;
    let delta = pivot_degrees(reduced.basis())?;
    let neg: Vec<i64> = delta.iter().map(|&d| -(d as i64)).collect();
    let shifted = pmbasis(f, order, Some(&neg))?;
    let lead = shifted.basis().shifted_leading_row_matrix(&neg)?;
    let inv = lead
        .inverse(f.field())
        .map_err(|_| Error::Verification("shifted leading matrix of the order basis is singular".into()))?;
    let popov = shifted.basis().mul_constant_left(&inv);
    let sdeg = vec![0; f.rows()];
    Ok(ApproximantBasis::new(popov, order, neg, sdeg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::minimal_basis_bruteforce;
    use crate::random::random_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn series(field: PrimeField, rows: &[&[&[i64]]], order: usize) -> SeriesMatrix {
        SeriesMatrix::from_poly(&PolyMatrix::from_i64(field, rows), order)
    }

    fn random_series(f: &PrimeField, n: usize, m: usize, order: usize, rng: &mut impl Rng) -> SeriesMatrix {
        SeriesMatrix::new(*f, n, m, (0..order).map(|_| random_matrix(f, n, m, rng)).collect())
    }

    fn check(b: &ApproximantBasis, f: &SeriesMatrix) {
        assert!(b.annihilates(f));
        assert!(b.basis().is_row_reduced().unwrap());
    }

    #[test]
    fn zero_series_gives_identity() {
        let f = PrimeField::default();
        let s = SeriesMatrix::new(f, 3, 2, vec![Matrix::zeros(3, 2); 4]);
        let b = mbasis(&s, 4, None).unwrap();
        assert_eq!(b.basis(), &PolyMatrix::identity(f, 3));
        assert_eq!(b.minimal_indices(), vec![0, 0, 0]);
    }

    #[test]
    fn column_x_one() {
        let f = PrimeField::default();
        let s = series(f, &[&[&[0, 1]], &[&[1]]], 2);
        for b in [mbasis(&s, 2, None).unwrap(), pmbasis(&s, 2, None).unwrap()] {
            check(&b, &s);
            assert_eq!(b.minimal_indices(), vec![1, 1]);
        }
        let oracle = minimal_basis_bruteforce(&s, 2).unwrap();
        assert_eq!(oracle.minimal_indices(), vec![1, 1]);
        // the basis quoted as one valid answer
        let n = PolyMatrix::from_i64(f, &[&[&[1], &[0, -1]], &[&[0, 1], &[]]]);
        let hand = ApproximantBasis::new(n, 2, vec![0, 0], vec![1, 1]);
        check(&hand, &s);
    }

    #[test]
    fn scalar_one() {
        let f = PrimeField::default();
        let s = series(f, &[&[&[1]]], 3);
        let b = mbasis(&s, 3, None).unwrap();
        assert_eq!(b.basis(), &PolyMatrix::from_i64(f, &[&[&[0, 0, 0, 1]]]));
        assert_eq!(b.minimal_indices(), vec![3]);
    }

    #[test]
    fn order_exceeding_data() {
        let f = PrimeField::default();
        let s = series(f, &[&[&[1]]], 3);
        assert_eq!(
            mbasis(&s, 4, None),
            Err(Error::OrderExceedsData {
                requested: 4,
                available: 3
            })
        );
        assert!(pmbasis(&s, 4, None).is_err());
    }

    #[test]
    fn pmbasis_matches_mbasis() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let s = random_series(&f, 4, 4, 32, &mut rng);
        let a = mbasis(&s, 32, None).unwrap();
        let b = pmbasis(&s, 32, None).unwrap();
        check(&a, &s);
        check(&b, &s);
        assert_eq!(a.minimal_indices(), b.minimal_indices());
        for _ in 0..200 {
            let n = rng.gen_range(1..5);
            let m = rng.gen_range(1..4);
            let order = rng.gen_range(1..24);
            let s = random_series(&f, n, m, order, &mut rng);
            let a = mbasis(&s, order, None).unwrap();
            let b = pmbasis_with_threshold(&s, order, None, 3).unwrap();
            assert!(a.annihilates(&s) && b.annihilates(&s));
            assert_eq!(a.minimal_indices(), b.minimal_indices());
            assert_eq!(a.basis().row_degrees().sum(), b.basis().row_degrees().sum());
        }
    }

    #[test]
    fn order_one_is_the_base_case() {
        let f = PrimeField::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let s = random_series(&f, 3, 2, 1, &mut rng);
        assert_eq!(
            mbasis(&s, 1, None).unwrap(),
            pmbasis_with_threshold(&s, 1, None, 1).unwrap()
        );
    }

    #[test]
    fn determinant_is_a_power_of_x() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..10 {
            let s = random_series(&f, 3, 2, 7, &mut rng);
            let b = pmbasis_with_threshold(&s, 7, None, 2).unwrap();
            let det = crate::oracle::det_by_interpolation(b.basis()).unwrap();
            let k = det.degree().unwrap();
            assert_eq!(det, Polynomial::monomial(det.leading_coeff(), k));
            assert_eq!(k, b.basis().row_degrees().sum());
        }
    }

    #[test]
    fn shifted_bases() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..30 {
            let s = random_series(&f, 3, 1, 9, &mut rng);
            let shift: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..5)).collect();
            let a = mbasis(&s, 9, Some(&shift)).unwrap();
            let b = pmbasis_with_threshold(&s, 9, Some(&shift), 2).unwrap();
            assert!(a.annihilates(&s) && b.annihilates(&s));
            let mut sa = a.shifted_degrees().to_vec();
            let mut sb = b.shifted_degrees().to_vec();
            sa.sort();
            sb.sort();
            assert_eq!(sa, sb);
            for basis in [&a, &b] {
                let lead = basis.basis().shifted_leading_row_matrix(&shift).unwrap();
                assert_eq!(lead.rank(&f), 3);
            }
        }
    }

    #[test]
    fn popov_form_is_canonical() {
        let f = PrimeField::new(97).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..40 {
            let n = rng.gen_range(1..4);
            let m = rng.gen_range(1..3);
            let order = rng.gen_range(1..10);
            let s = random_series(&f, n, m, order, &mut rng);
            let p = popov_basis(&s, order).unwrap();
            assert!(p.annihilates(&s));
            let pm = p.basis();
            for j in 0..n {
                let piv = pm.entry(j, j);
                let dj = piv.degree().unwrap();
                assert_eq!(piv.leading_coeff(), f.one());
                for i in 0..n {
                    if i != j {
                        assert!(pm.entry(i, j).degree().is_none_or(|d| d < dj));
                    }
                }
            }
            // any other basis of the module normalizes to the same matrix
            let other = mbasis(&s, order, None).unwrap();
            let mix = crate::random::random_invertible(&f, n, &mut rng);
            let perturbed = other.basis().mul_constant_left(&mix);
            assert!(perturbed.mul(&s.truncate(order)).unwrap().truncate(order).is_zero());
            assert_eq!(popov_basis(&s, order).unwrap().basis(), pm);
        }
    }
}
