//! Power series expansions of matrix fractions `A^{-1} B`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::det_by_interpolation;
use crate::polymat::{PolyMatrix, SeriesMatrix};
use crate::random::random_element;
use crate::FieldElement;

/// Attempts made by [`with_shift`] to find a point where `A` is invertible.
pub const SHIFT_ATTEMPTS: usize = 8;

/// The coefficients `F_h, ..., F_{h+len-1}` of `A^{-1} B = sum F_i x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionSlice {
    start: usize,
    coeffs: Vec<Matrix>,
}

impl ExpansionSlice {
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn into_coeffs(self) -> Vec<Matrix> {
        self.coeffs
    }
}

/// How [`expansion_slice_with`] reaches the start of the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpansionMethod {
    /// Expand `A^{-1}` to order `h + len` and read off the window.
    #[default]
    Baseline,
    /// Jump to order `h` with residues `x^{-k} (I - A (A^{-1} mod x^k))`,
    /// doubling `k` at each level; cost logarithmic in `h`.
    HighOrder,
}

/// The tail `H` of `A^{-1} = (A^{-1} mod x^h) + x^h H` with its numerator `A H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperFractionData {
    tail: SeriesMatrix,
    numerator: PolyMatrix,
    start: usize,
}

impl ProperFractionData {
    /// First coefficients of `H`.
    pub fn tail(&self) -> &SeriesMatrix {
        &self.tail
    }

    /// `B = A H`, a polynomial matrix of degree below `deg A`.
    pub fn numerator(&self) -> &PolyMatrix {
        &self.numerator
    }

    pub fn start(&self) -> usize {
        self.start
    }
}

fn check_square(a: &PolyMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare(a.rows(), a.cols()))
    }
}

/// `A^{-1} mod x^k` by Newton iteration.
pub fn truncated_inverse(a: &PolyMatrix, k: usize) -> Result<SeriesMatrix> {
    check_square(a)?;
    let field = *a.field();
    let n = a.rows();
    let a0inv = a.coeff_matrix(0).inverse(&field).map_err(|_| Error::SingularAtZero)?;
    if k == 0 {
        return Ok(SeriesMatrix::new(field, n, n, Vec::new()));
    }
    let mut x = PolyMatrix::from_constant(field, &a0inv);
    let mut prec = 1;
    let identity = PolyMatrix::identity(field, n);
    while prec < k {
        prec *= 2;
        // X <- X + X (I - A X) mod x^prec
        let ax = a.truncate(prec).mul(&x)?.truncate(prec);
        let err = identity.sub(&ax)?;
        x = x.add(&x.mul(&err)?.truncate(prec))?;
    }
    Ok(SeriesMatrix::from_poly(&x, k))
}

/// The window `F_h .. F_{h+len-1}` of `A^{-1} B`, expanding all the way.
pub fn expansion_slice(a: &PolyMatrix, b: &PolyMatrix, h: usize, len: usize) -> Result<ExpansionSlice> {
    expansion_slice_with(a, b, h, len, ExpansionMethod::Baseline)
}

pub fn expansion_slice_with(
    a: &PolyMatrix,
    b: &PolyMatrix,
    h: usize,
    len: usize,
    method: ExpansionMethod,
) -> Result<ExpansionSlice> {
    check_square(a)?;
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "numerator has {} rows, denominator {}",
            b.rows(),
            a.rows()
        )));
    }
    match method {
        ExpansionMethod::Baseline => {
            let inv = truncated_inverse(a, h + len)?;
            let full = inv.mul_poly_right(b);
            Ok(ExpansionSlice {
                start: h,
                coeffs: full.coeffs()[h..].to_vec(),
            })
        }
        ExpansionMethod::HighOrder => high_order_slice(a, b, h, len),
    }
}

/// Coefficients of `x^k` and above, shifted down.
fn high_part(p: &PolyMatrix, k: usize) -> PolyMatrix {
    let coeffs = p.coeff_matrices();
    let top = if coeffs.len() > k { &coeffs[k..] } else { &[] };
    PolyMatrix::from_coeff_matrices(*p.field(), p.rows(), p.cols(), top)
}

/// Residue machinery for `A` with `d = deg A >= 1`: `R_k = x^{-k} (I - A X_k)`
/// where `X_k = A^{-1} mod x^k`. Each `R_k` has degree below `d`, and the
/// expansion of `A^{-1}` from order `k` on is that of `A^{-1} R_k`.
struct Lifter<'a> {
    a: &'a PolyMatrix,
    d: usize,
    /// `A^{-1}` truncated at some order `>= d`
    head: PolyMatrix,
}

impl Lifter<'_> {
    /// `R_{k+s}` from `R_k`, together with `(X_s R_k) mod x^s`, which holds the
    /// coefficients `k .. k+s-1` of `A^{-1}`.
    fn step(&self, r: &PolyMatrix, s: usize) -> Result<(PolyMatrix, PolyMatrix)> {
        let y = self.head.truncate(s).mul(r)?.truncate(s);
        let diff = r.sub(&self.a.mul(&y)?)?;
        let next = diff.div_x_pow(s).ok_or(Error::NonPolynomialQuotient(s))?;
        Ok((next, y))
    }

    fn residue(&self, k: usize) -> Result<PolyMatrix> {
        let field = *self.a.field();
        let n = self.a.rows();
        if k == 0 {
            return Ok(PolyMatrix::identity(field, n));
        }
        if k <= 2 * self.d {
            let x = truncated_inverse(self.a, k)?.to_poly();
            let diff = PolyMatrix::identity(field, n).sub(&self.a.mul(&x)?)?;
            return diff.div_x_pow(k).ok_or(Error::NonPolynomialQuotient(k));
        }
        let d = self.d;
        let b = k.div_ceil(2);
        let a_len = k - b;
        let rc = self.residue(b - d)?;
        let (rb, window) = self.step(&rc, d)?;
        let ra = if a_len == b {
            rb.clone()
        } else {
            self.step(&rc, d - 1)?.0
        };
        // R_{a+b} = R_b R_a + A quo(W_b R_a, x^d)
        let carry = high_part(&window.mul(&ra)?, d);
        rb.mul(&ra)?.add(&self.a.mul(&carry)?)
    }
}

fn high_order_slice(a: &PolyMatrix, b: &PolyMatrix, h: usize, len: usize) -> Result<ExpansionSlice> {
    let field = *a.field();
    if a.coeff_matrix(0).rank(&field) < a.rows() {
        return Err(Error::SingularAtZero);
    }
    let d = a.degree().unwrap_or(0);
    let width = d.max(b.degree().unwrap_or(0)).max(1);
    if d == 0 || h <= 2 * width {
        return expansion_slice_with(a, b, h, len, ExpansionMethod::Baseline);
    }
    let lifter = Lifter {
        a,
        d,
        head: truncated_inverse(a, width.max(len))?.to_poly(),
    };
    // residue of the fraction itself: A^{-1} B = (A^{-1} B mod x^h) + x^h A^{-1} R^B
    let r = lifter.residue(h - width)?;
    let (rh, window) = lifter.step(&r, width)?;
    let carry = high_part(&window.mul(b)?, width);
    let rb = rh.mul(b)?.add(&a.mul(&carry)?)?;
    let slice = lifter.head.truncate(len).mul(&rb)?;
    Ok(ExpansionSlice {
        start: h,
        coeffs: (0..len).map(|k| slice.coeff_matrix(k)).collect(),
    })
}

/// Splits `A^{-1}` at order `h` into a polynomial part and the tail `H`,
/// returning `len` coefficients of `H` and the numerator `A H`.
///
/// When `h > (n - 1) deg A`, `H` is strictly proper and `A H` is left
/// coprime with `A`.
pub fn proper_tail(a: &PolyMatrix, h: usize, len: usize) -> Result<ProperFractionData> {
    check_square(a)?;
    let field = *a.field();
    let n = a.rows();
    let x = truncated_inverse(a, h)?.to_poly();
    let diff = PolyMatrix::identity(field, n).sub(&a.mul(&x)?)?;
    let numerator = diff.div_x_pow(h).ok_or(Error::NonPolynomialQuotient(h))?;
    let inv = truncated_inverse(a, len)?;
    let tail = inv.mul_poly_right(&numerator);
    Ok(ProperFractionData {
        tail,
        numerator,
        start: h,
    })
}

/// Runs `solve` on `A(x + x0)` for some `x0` with `A(x0)` invertible,
/// preferring `x0 = 0`. Returns the result and the shift used.
pub fn with_shift<T>(
    a: &PolyMatrix,
    rng: &mut impl Rng,
    mut solve: impl FnMut(&PolyMatrix) -> Result<T>,
) -> Result<(T, FieldElement)> {
    check_square(a)?;
    let field = *a.field();
    let n = a.rows();
    let mut point = field.zero();
    for attempt in 0..=SHIFT_ATTEMPTS {
        if attempt > 0 {
            point = random_element(&field, rng);
        }
        if a.eval(point).rank(&field) == n {
            let shifted = if point.is_zero() { a.clone() } else { a.shift_var(point) };
            return Ok((solve(&shifted)?, point));
        }
    }
    let bound = (n * a.degree().unwrap_or(0) + 1) as u64;
    if field.modulus() <= bound {
        return Err(Error::FieldTooSmall(format!(
            "p = {} leaves too few candidate shifts",
            field.modulus()
        )));
    }
    if det_by_interpolation(a)?.is_zero() {
        return Err(Error::SingularInput);
    }
    Err(Error::SingularAtZero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::random::{random_poly_matrix, rng_from_seed};
    use rand::Rng;

    fn pm(f: PrimeField, rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_i64(f, rows)
    }

    fn swap(f: &PrimeField) -> Matrix {
        Matrix::from_i64_rows(f, &[&[0, -1], &[-1, 0]])
    }

    /// Random `A` with `A(0)` invertible.
    fn random_denominator(f: &PrimeField, n: usize, d: usize, rng: &mut impl Rng) -> PolyMatrix {
        let mut a = random_poly_matrix(f, n, n, d, rng);
        while a.coeff_matrix(0).rank(f) < n {
            a = random_poly_matrix(f, n, n, d, rng);
        }
        a
    }

    #[test]
    fn truncated_inverse_examples() {
        let f = PrimeField::default();
        let id = truncated_inverse(&PolyMatrix::identity(f, 3), 5).unwrap();
        assert_eq!(id.coeff(0), &Matrix::identity(3, &f));
        assert!(id.coeffs()[1..].iter().all(Matrix::is_zero));
        let geo = truncated_inverse(&pm(f, &[&[&[1, -1]]]), 4).unwrap();
        assert!(geo.coeffs().iter().all(|c| c[(0, 0)] == f.one()));
        let a = pm(f, &[&[&[1], &[0, 1]], &[&[0, 1], &[1]]]);
        let s = truncated_inverse(&a, 4).unwrap();
        let i2 = Matrix::identity(2, &f);
        assert_eq!(s.coeffs(), &[i2.clone(), swap(&f), i2, swap(&f)]);
        let singular = pm(f, &[&[&[0, 1]]]);
        assert_eq!(truncated_inverse(&singular, 3), Err(Error::SingularAtZero));
    }

    #[test]
    fn truncated_inverse_random() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(20);
        for _ in 0..100 {
            let n = rng.gen_range(1..9);
            let d = rng.gen_range(0..9);
            let k = rng.gen_range(0..65);
            let a = random_denominator(&f, n, d, &mut rng);
            let s = truncated_inverse(&a, k).unwrap();
            let prod = s.mul_poly_left(&a);
            for (t, c) in prod.coeffs().iter().enumerate() {
                let expect = if t == 0 {
                    Matrix::identity(n, &f)
                } else {
                    Matrix::zeros(n, n)
                };
                assert_eq!(c, &expect);
            }
        }
    }

    #[test]
    fn slice_examples() {
        let f = PrimeField::default();
        let a = pm(f, &[&[&[1], &[0, 1]], &[&[0, 1], &[1]]]);
        for method in [ExpansionMethod::Baseline, ExpansionMethod::HighOrder] {
            let s = expansion_slice_with(&a, &a, 0, 1, method).unwrap();
            assert_eq!(s.coeffs(), &[Matrix::identity(2, &f)]);
            let s = expansion_slice_with(&a, &PolyMatrix::identity(f, 2), 2, 2, method).unwrap();
            assert_eq!(s.coeffs(), &[Matrix::identity(2, &f), swap(&f)]);
            let geo = pm(f, &[&[&[1, -1]]]);
            let s = expansion_slice_with(&geo, &PolyMatrix::identity(f, 1), 100, 3, method).unwrap();
            assert_eq!(s.start(), 100);
            assert!(s.coeffs().iter().all(|c| c[(0, 0)] == f.one()));
        }
    }

    #[test]
    fn high_order_matches_baseline() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(21);
        for _ in 0..60 {
            let n = rng.gen_range(1..6);
            let m = rng.gen_range(1..4);
            let d = rng.gen_range(0..6);
            let db = rng.gen_range(0..8);
            let a = random_denominator(&f, n, d, &mut rng);
            let b = random_poly_matrix(&f, n, m, db, &mut rng);
            let h = rng.gen_range(0..=4 * n * d.max(1) + 20);
            let len = rng.gen_range(0..20);
            let base = expansion_slice(&a, &b, h, len).unwrap();
            let fast = expansion_slice_with(&a, &b, h, len, ExpansionMethod::HighOrder).unwrap();
            assert_eq!(base, fast, "n={n} d={d} db={db} h={h} len={len}");
        }
    }

    #[test]
    fn proper_tail_examples() {
        let f = PrimeField::default();
        let geo = pm(f, &[&[&[1, -1]]]);
        let t = proper_tail(&geo, 1, 3).unwrap();
        assert!(t.tail().coeffs().iter().all(|c| c[(0, 0)] == f.one()));
        assert_eq!(t.numerator(), &PolyMatrix::identity(f, 1));

        let a = pm(f, &[&[&[1], &[0, 1]], &[&[0, 1], &[1]]]);
        let t = proper_tail(&a, 2, 3).unwrap();
        assert_eq!(t.numerator(), &PolyMatrix::identity(f, 2));
        assert_eq!(t.tail(), &truncated_inverse(&a, 3).unwrap());

        let t = proper_tail(&PolyMatrix::identity(f, 2), 1, 3).unwrap();
        assert!(t.numerator().is_zero());
        assert!(t.tail().coeffs().iter().all(Matrix::is_zero));
    }

    #[test]
    fn proper_tail_random() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(22);
        for _ in 0..30 {
            let n = rng.gen_range(1..5);
            let d = rng.gen_range(1..4);
            let a = random_denominator(&f, n, d, &mut rng);
            let h = (n - 1) * d + 1;
            let t = proper_tail(&a, h, 2 * d + 1).unwrap();
            assert!(t.numerator().degree().is_none_or(|k| k < d));
            let window = expansion_slice(&a, &PolyMatrix::identity(f, n), h, 2 * d + 1).unwrap();
            assert_eq!(t.tail().coeffs(), window.coeffs());
            // A H = B on the stored coefficients
            let ah = t.tail().mul_poly_left(&a);
            assert_eq!(ah, SeriesMatrix::from_poly(t.numerator(), 2 * d + 1));
        }
    }

    #[test]
    fn shift_retry() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(23);
        let a = pm(f, &[&[&[0, 1], &[1]], &[&[1], &[0, 1]]]);
        // A(0) = [[0, 1], [1, 0]] is invertible, so no shift is needed
        let (_, x0) = with_shift(&a, &mut rng, |s| truncated_inverse(s, 2)).unwrap();
        assert!(x0.is_zero());
        let b = pm(f, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        let (s, x0) = with_shift(&b, &mut rng, |s| truncated_inverse(s, 2)).unwrap();
        assert!(!x0.is_zero());
        assert_eq!(s.order(), 2);
        let sing = pm(f, &[&[&[0, 1], &[0, 1]], &[&[1], &[1]]]);
        assert_eq!(
            with_shift(&sing, &mut rng, |s| truncated_inverse(s, 2)).unwrap_err(),
            Error::SingularInput
        );
    }
}
