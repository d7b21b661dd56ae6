//! Determinant, inverse, row reduction and factorization.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fraction::{proper_tail, with_shift};
use crate::nullspace::{general_nullspace, minimal_vectors_up_to, rank};
use crate::oracle::det_by_interpolation;
use crate::poly::Polynomial;
use crate::polymat::PolyMatrix;
use crate::random::random_element;
use crate::reconstruct::{matfrac_rec, LeftFactorization};

/// `U A = B` with `B` diagonal, so that `A^{-1} = B^{-1} U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseRepresentation {
    transform: PolyMatrix,
    diagonal: PolyMatrix,
}

impl InverseRepresentation {
    /// `U`
    pub fn transform(&self) -> &PolyMatrix {
        &self.transform
    }

    /// `B`
    pub fn diagonal(&self) -> &PolyMatrix {
        &self.diagonal
    }

    pub fn into_parts(self) -> (PolyMatrix, PolyMatrix) {
        (self.transform, self.diagonal)
    }

    /// `U A = B`, `B` diagonal with nonzero diagonal.
    pub fn verify(&self, a: &PolyMatrix) -> bool {
        self.diagonal.is_diagonal()
            && (0..self.diagonal.rows()).all(|i| !self.diagonal.entry(i, i).is_zero())
            && self.transform.mul(a).is_ok_and(|p| p == self.diagonal)
    }
}

fn require_power_of_two(a: &PolyMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if !a.rows().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(a.rows()));
    }
    Ok(())
}

/// Singularity test: a random evaluation, confirmed exactly when it fails.
fn is_singular(a: &PolyMatrix, rng: &mut impl Rng) -> Result<bool> {
    if rank(a, rng)? == a.rows() {
        return Ok(false);
    }
    Ok(det_by_interpolation(a)?.is_zero())
}

/// Minimal nullspace of `m`, required to have `rows` vectors all of degree `degree`.
fn generic_kernel(m: &PolyMatrix, rows: usize, degree: usize) -> Result<PolyMatrix> {
    let n = minimal_vectors_up_to(m, degree);
    if n.len() != rows || n.kronecker_degrees().iter().any(|&k| k != degree) {
        return Err(Error::GenericityFailure(format!(
            "expected {rows} kernel vectors of degree {degree}, found degrees {:?}",
            n.kronecker_degrees()
        )));
    }
    Ok(n.into_matrix())
}

/// Splits `M = [L R]` and returns the kernel bases of `R` and of `L`.
fn halve(m: &PolyMatrix, degree: usize) -> Result<(PolyMatrix, PolyMatrix, PolyMatrix, PolyMatrix)> {
    let s = m.rows();
    let half = s / 2;
    let left = m.block(0, s, 0, half);
    let right = m.block(0, s, half, s);
    let upper = generic_kernel(&right, half, degree)?;
    let lower = generic_kernel(&left, half, degree)?;
    Ok((upper, lower, left, right))
}

/// Diagonalizes a generic square matrix whose size is a power of two.
///
/// Each round splits every diagonal block `M = [L R]` and multiplies it on
/// the left by `[N_R; N_L]`, the stacked minimal kernels of `R` and `L`, which
/// turns `M` into `diag(N_R L, N_L R)`. For generic input all kernel vectors
/// have degree equal to the current block degree; anything else is reported
/// as [`Error::GenericityFailure`].
pub fn generic_inverse(a: &PolyMatrix, rng: &mut impl Rng) -> Result<InverseRepresentation> {
    require_power_of_two(a)?;
    let field = *a.field();
    let n = a.rows();
    if is_singular(a, rng)? {
        return Err(Error::SingularInput);
    }
    let mut blocks = vec![a.clone()];
    let mut transform = PolyMatrix::identity(field, n);
    let mut degree = a.degree().unwrap_or(0);
    while blocks[0].rows() > 1 {
        let mut next = Vec::with_capacity(2 * blocks.len());
        let mut steps = Vec::with_capacity(blocks.len());
        for m in &blocks {
            let (upper, lower, left, right) = halve(m, degree)?;
            next.push(upper.mul(&left)?);
            next.push(lower.mul(&right)?);
            steps.push(upper.vstack(&lower)?);
        }
        transform = PolyMatrix::block_diag(field, &steps).mul(&transform)?;
        blocks = next;
        degree *= 2;
    }
    let rep = InverseRepresentation {
        diagonal: PolyMatrix::block_diag(field, &blocks),
        transform,
    };
    if !rep.verify(a) {
        return Err(Error::Verification("U A is not the computed diagonal".into()));
    }
    Ok(rep)
}

/// Determinant of a generic square matrix whose size is a power of two,
/// following only the upper-left block of the diagonalization.
pub fn generic_det(a: &PolyMatrix, rng: &mut impl Rng) -> Result<Polynomial> {
    require_power_of_two(a)?;
    let field = *a.field();
    let det0 = a.coeff_matrix(0).det(&field)?;
    if det0.is_zero() {
        return Err(Error::SingularAtZero);
    }
    let mut m = a.clone();
    let mut degree = a.degree().unwrap_or(0);
    while m.rows() > 1 {
        let s = m.rows();
        let left = m.block(0, s, 0, s / 2);
        let right = m.block(0, s, s / 2, s);
        let upper = generic_kernel(&right, s / 2, degree)?;
        m = upper.mul(&left)?;
        degree *= 2;
    }
    let corner = m.entry(0, 0).clone();
    let at_zero = corner.coeff(0);
    if at_zero.is_zero() {
        return Err(Error::GenericityFailure("corner entry vanishes at zero".into()));
    }
    let det = corner.scale(field.div(det0, at_zero)?, &field);
    let x0 = random_element(&field, rng);
    if det.eval(x0, &field) != a.eval(x0).det(&field)? {
        return Err(Error::Verification("determinant disagrees at a random point".into()));
    }
    Ok(det)
}

/// Data certifying a row reduction `R` of `A`: the fraction `H = R^{-1} S`
/// reconstructed from the expansion of `A^{-1}` shifted to `x + shift`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub reduced: PolyMatrix,
    pub numerator: PolyMatrix,
    pub shift: crate::FieldElement,
    pub start: usize,
}

/// A row-reduced `R = W A` with `W` unimodular.
///
/// The tail of `A^{-1}` past order `(n - 1) d + 1` is a strictly proper
/// fraction whose left denominators are exactly the matrices `W A`; one of
/// them is reconstructed from `2d + 1` terms. If `A(0)` is singular the
/// variable is shifted first and shifted back at the end.
pub fn row_reduce(a: &PolyMatrix, rng: &mut impl Rng) -> Result<RowReduction> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let field = *a.field();
    let n = a.rows();
    let d = a.degree().unwrap_or(0);
    let start = n.saturating_sub(1) * d + 1;
    let (fraction, x0) = with_shift(a, rng, |shifted| {
        let tail = proper_tail(shifted, start, 2 * d + 1)?;
        matfrac_rec(tail.tail(), d, d).map_err(|e| match e {
            Error::WrongRowCount { .. } => Error::ReconstructionFailure(e.to_string()),
            e => e,
        })
    })?;
    let (num, den) = fraction.into_parts();
    let back = field.neg(x0);
    let reduced = den.shift_var(back);
    if !reduced.is_row_reduced()? {
        return Err(Error::Verification(
            "reconstructed denominator is not row-reduced".into(),
        ));
    }
    Ok(RowReduction {
        reduced,
        numerator: num.shift_var(back),
        shift: x0,
        start,
    })
}

/// Left fraction `V^{-1} U` equal to the right fraction `B A^{-1}`, from a
/// nullspace basis of `[-A; B]`. Not necessarily coprime.
pub fn left_factorization(b: &PolyMatrix, a: &PolyMatrix, rng: &mut impl Rng) -> Result<LeftFactorization> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if b.cols() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "B has {} columns, A has {}",
            b.cols(),
            a.cols()
        )));
    }
    if is_singular(a, rng)? {
        return Err(Error::SingularInput);
    }
    let m = a.rows();
    let n = b.rows();
    let stacked = a.neg().vstack(b)?;
    let basis = general_nullspace(&stacked, rng)?.into_matrix();
    if basis.rows() != n {
        return Err(Error::Verification(format!(
            "nullspace has {} rows, expected {n}",
            basis.rows()
        )));
    }
    let u = basis.block(0, n, 0, m);
    let v = basis.block(0, n, m, m + n);
    if u.mul(a)? != v.mul(b)? {
        return Err(Error::Verification("U A differs from V B".into()));
    }
    LeftFactorization::new(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::oracle::unimodular_equiv_check;
    use crate::random::{random_invertible, random_poly_matrix, rng_from_seed};
    use rand::Rng;

    fn pm(f: PrimeField, rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_i64(f, rows)
    }

    fn anchor(f: PrimeField) -> PolyMatrix {
        pm(f, &[&[&[1], &[0, 1]], &[&[0, 1], &[1]]])
    }

    fn monic(p: &Polynomial, f: &PrimeField) -> Polynomial {
        p.scale(f.inv(p.leading_coeff()).unwrap(), f)
    }

    #[test]
    fn inverse_of_constant() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(50);
        let c = PolyMatrix::from_constant(f, &random_invertible(&f, 4, &mut rng));
        let rep = generic_inverse(&c, &mut rng).unwrap();
        assert!(rep.verify(&c));
        assert_eq!(rep.diagonal().degree(), Some(0));
    }

    #[test]
    fn inverse_anchor() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(51);
        let a = anchor(f);
        let rep = generic_inverse(&a, &mut rng).unwrap();
        assert!(rep.verify(&a));
        let target = Polynomial::from_i64s(&f, &[1, 0, -1]);
        for i in 0..2 {
            assert_eq!(monic(rep.diagonal().entry(i, i), &f), monic(&target, &f));
        }
        assert_eq!(generic_det(&a, &mut rng).unwrap(), target);
    }

    #[test]
    fn inverse_random_generic() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(52);
        for &(n, d) in &[(4, 2), (8, 1), (2, 3)] {
            let a = random_poly_matrix(&f, n, n, d, &mut rng);
            let rep = generic_inverse(&a, &mut rng).unwrap();
            let det = det_by_interpolation(&a).unwrap();
            for i in 0..n {
                assert_eq!(rep.diagonal().entry(i, i).degree(), Some(n * d));
                assert_eq!(monic(rep.diagonal().entry(i, i), &f), monic(&det, &f));
            }
            // b_ii(x0) / det A(x0) does not depend on x0
            let ratios: Vec<_> = (0..3)
                .map(|_| {
                    let x0 = random_element(&f, &mut rng);
                    f.div(rep.diagonal().entry(0, 0).eval(x0, &f), det.eval(x0, &f))
                        .unwrap()
                })
                .collect();
            assert!(ratios.windows(2).all(|w| w[0] == w[1]));
            assert_eq!(generic_det(&a, &mut rng).unwrap(), det);
        }
    }

    #[test]
    fn inverse_preconditions() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(53);
        let a = random_poly_matrix(&f, 3, 3, 1, &mut rng);
        assert_eq!(generic_inverse(&a, &mut rng), Err(Error::NotPowerOfTwo(3)));
        assert_eq!(generic_det(&a, &mut rng), Err(Error::NotPowerOfTwo(3)));
        let sing = pm(f, &[&[&[1, 1], &[1, 1]], &[&[2], &[2]]]);
        assert_eq!(generic_inverse(&sing, &mut rng), Err(Error::SingularInput));
        let zero_at_zero = pm(f, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        assert_eq!(generic_det(&zero_at_zero, &mut rng), Err(Error::SingularAtZero));
        // diag(1, x^2) has unbalanced kernels
        let unbalanced = pm(f, &[&[&[1], &[]], &[&[], &[1, 0, 1]]]);
        assert!(matches!(
            generic_inverse(&unbalanced, &mut rng),
            Err(Error::GenericityFailure(_))
        ));
    }

    #[test]
    fn determinant_of_constant() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(54);
        let m = random_invertible(&f, 4, &mut rng);
        let det = generic_det(&PolyMatrix::from_constant(f, &m), &mut rng).unwrap();
        assert_eq!(det, Polynomial::constant(m.det(&f).unwrap()));
    }

    #[test]
    fn row_reduce_examples() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(55);
        let a = pm(f, &[&[&[1], &[]], &[&[], &[1, 1]]]);
        let r = row_reduce(&a, &mut rng).unwrap().reduced;
        assert!(r.is_row_reduced().unwrap());
        assert_eq!(r.row_degrees().sorted(), vec![Some(0), Some(1)]);

        let unimodular = pm(f, &[&[&[1], &[0, 1]], &[&[0, 1], &[1, 0, 1]]]);
        let r = row_reduce(&unimodular, &mut rng).unwrap().reduced;
        assert_eq!(r.degree(), Some(0));
        assert_eq!(r.eval(f.zero()).rank(&f), 2);

        let r = row_reduce(&anchor(f), &mut rng).unwrap().reduced;
        assert!(r.is_row_reduced().unwrap());
        assert_eq!(det_by_interpolation(&r).unwrap().degree(), Some(2));
    }

    #[test]
    fn row_reduce_random() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(56);
        for _ in 0..15 {
            let n = rng.gen_range(1..5);
            let d = rng.gen_range(1..4);
            // low rank leading matrix, so the input is usually not reduced
            let a = random_poly_matrix(&f, n, n, d, &mut rng)
                .mul(&random_poly_matrix(&f, n, n, 1, &mut rng))
                .unwrap();
            let r = row_reduce(&a, &mut rng).unwrap().reduced;
            assert!(r.is_row_reduced().unwrap());
            assert_eq!(
                det_by_interpolation(&r).unwrap().degree(),
                det_by_interpolation(&a).unwrap().degree()
            );
            assert!(unimodular_equiv_check(&a, &r).unwrap());
        }
    }

    #[test]
    fn row_reduce_singular_at_zero() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(57);
        let a = pm(f, &[&[&[0, 1], &[0, 0, 1]], &[&[1], &[1, 1]]]);
        let red = row_reduce(&a, &mut rng).unwrap();
        assert!(!red.shift.is_zero());
        assert!(red.reduced.is_row_reduced().unwrap());
        assert!(unimodular_equiv_check(&a, &red.reduced).unwrap());
    }

    #[test]
    fn factorization_examples() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(58);
        let a = pm(f, &[&[&[1, -1]]]);
        let one = pm(f, &[&[&[1]]]);
        let lf = left_factorization(&one, &a, &mut rng).unwrap().normalized();
        // c (1, 1 - x) scaled to a monic denominator
        assert_eq!(lf.numerator(), &one.neg());
        assert_eq!(lf.denominator(), &pm(f, &[&[&[-1, 1]]]));

        let a2 = random_poly_matrix(&f, 2, 2, 2, &mut rng);
        let lf = left_factorization(&PolyMatrix::zero(f, 2, 2), &a2, &mut rng).unwrap();
        assert!(lf.numerator().is_zero());
        assert_eq!(lf.denominator().eval(f.elem(7)).rank(&f), 2);

        let lf = left_factorization(&a2, &a2, &mut rng).unwrap();
        assert_eq!(lf.numerator().mul(&a2).unwrap(), lf.denominator().mul(&a2).unwrap());

        let sing = pm(f, &[&[&[1, 1], &[1, 1]], &[&[2], &[2]]]);
        assert_eq!(left_factorization(&a2, &sing, &mut rng), Err(Error::SingularInput));
    }

    #[test]
    fn factorization_random() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(59);
        for _ in 0..15 {
            let n = rng.gen_range(1..4);
            let d = rng.gen_range(1..4);
            let a = random_poly_matrix(&f, n, n, d, &mut rng);
            let b = random_poly_matrix(&f, n, n, d, &mut rng);
            let lf = left_factorization(&b, &a, &mut rng).unwrap();
            assert_eq!(lf.numerator().mul(&a).unwrap(), lf.denominator().mul(&b).unwrap());
            let x0 = random_element(&f, &mut rng);
            assert_eq!(lf.denominator().eval(x0).rank(&f), n);
        }
    }
}
