//! Slow, direct reference implementations.
//!
//! Everything here works straight from the definitions with dense linear
//! algebra over the base field. Inputs beyond a small size are rejected
//! with [`Error::OracleTooLarge`] instead of running for hours.

use crate::approx::ApproximantBasis;
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::matrix::Matrix;
use crate::nullspace::NullspaceBasis;
use crate::poly::Polynomial;
use crate::polymat::{PolyMatrix, SeriesMatrix};

/// Largest dense system (unknowns times equations) the oracles accept.
const MAX_SYSTEM: usize = 400_000;

/// Triple loop over entries with schoolbook coefficient products.
pub fn naive_mul(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.field() != b.field() {
        return Err(Error::PrimeMismatch(a.field().modulus(), b.field().modulus()));
    }
    let f = *a.field();
    Ok(PolyMatrix::from_fn(f, a.rows(), b.cols(), |i, j| {
        let mut acc = Vec::new();
        for k in 0..a.cols() {
            let (p, q) = (a.entry(i, k).coeffs(), b.entry(k, j).coeffs());
            if p.is_empty() || q.is_empty() {
                continue;
            }
            if acc.len() < p.len() + q.len() - 1 {
                acc.resize(p.len() + q.len() - 1, FieldElement::ZERO);
            }
            for (s, &x) in p.iter().enumerate() {
                for (t, &y) in q.iter().enumerate() {
                    acc[s + t] = f.mul_add(acc[s + t], x, y);
                }
            }
        }
        Polynomial::from_coeffs(acc)
    }))
}

/// Determinant from its values at `n d + 1` points.
pub fn det_by_interpolation(a: &PolyMatrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let f = *a.field();
    let n = a.rows();
    let Some(d) = a.degree() else {
        return Ok(if n == 0 {
            Polynomial::one(&f)
        } else {
            Polynomial::zero()
        });
    };
    let count = n * d + 1;
    if (count as u64) > f.modulus() {
        return Err(Error::FieldTooSmall(format!(
            "need {count} evaluation points, field has {}",
            f.modulus()
        )));
    }
    let points = (0..count as u64)
        .map(|t| {
            let x0 = f.elem(t);
            Ok((x0, a.eval(x0).det(&f)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::interpolate(&points, &f)
}

/// Exact rank over `K(x)`: the largest rank among enough evaluations.
pub fn rank_exact(a: &PolyMatrix) -> Result<usize> {
    let f = *a.field();
    let Some(d) = a.degree() else { return Ok(0) };
    let r = a.rows().min(a.cols());
    let count = r * d + 1;
    if (count as u64) > f.modulus() {
        return Err(Error::FieldTooSmall(format!(
            "need {count} evaluation points, field has {}",
            f.modulus()
        )));
    }
    let mut best = 0;
    for t in 0..count as u64 {
        best = best.max(a.eval(f.elem(t)).rank(&f));
        if best == r {
            break;
        }
    }
    Ok(best)
}

/// Coefficient vector of a degree-`<= t` row vector, coefficient-major.
fn to_poly_row(v: &[FieldElement], n: usize) -> Vec<Polynomial> {
    let len = v.len() / n;
    (0..n)
        .map(|i| Polynomial::from_coeffs((0..len).map(|k| v[k * n + i]).collect()))
        .collect()
}

/// Greedy selection of minimal-degree generators from the nested spaces
/// `V_0 ⊆ V_1 ⊆ ...` of degree-bounded solutions. `space(t)` returns a basis
/// of `V_t` as rows of length `n (t + 1)`. Stops once `target` rows are found
/// or after `cap`.
fn greedy_minimal(
    field: &PrimeField,
    n: usize,
    target: usize,
    cap: usize,
    mut space: impl FnMut(usize) -> Matrix,
) -> Vec<(usize, Vec<FieldElement>)> {
    let mut chosen: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    let mut prev: Option<Matrix> = None;
    for t in 0..=cap {
        if chosen.len() >= target {
            break;
        }
        let width = n * (t + 1);
        let mut span: Vec<FieldElement> = Vec::new();
        let mut span_rows = 0;
        if let Some(p) = &prev {
            for r in 0..p.rows() {
                // v and x v
                let mut low = p.row(r).to_vec();
                low.resize(width, FieldElement::ZERO);
                let mut high = vec![FieldElement::ZERO; n];
                high.extend_from_slice(p.row(r));
                span.extend(low);
                span.extend(high);
                span_rows += 2;
            }
        }
        let mut rank = Matrix::from_vec(span_rows, width, span.clone()).rank(field);
        let vt = space(t);
        for r in 0..vt.rows() {
            let mut trial = span.clone();
            trial.extend_from_slice(vt.row(r));
            let m = Matrix::from_vec(span_rows + 1, width, trial.clone());
            let new_rank = m.rank(field);
            if new_rank > rank {
                rank = new_rank;
                span = trial;
                span_rows += 1;
                chosen.push((t, vt.row(r).to_vec()));
                if chosen.len() >= target {
                    break;
                }
            }
        }
        prev = Some(vt);
    }
    chosen
}

fn rows_to_matrix(field: PrimeField, n: usize, rows: &[(usize, Vec<FieldElement>)]) -> PolyMatrix {
    let mut entries = Vec::with_capacity(rows.len() * n);
    for (_, v) in rows {
        entries.extend(to_poly_row(v, n));
    }
    PolyMatrix::from_entries(field, rows.len(), n, entries)
}

/// Minimal approximant basis straight from the definition: for each degree
/// bound `t`, solve for all approximants of degree `<= t` and keep those not
/// generated by lower-degree ones.
pub fn minimal_basis_bruteforce(f: &SeriesMatrix, order: usize) -> Result<ApproximantBasis> {
    if order > f.order() {
        return Err(Error::OrderExceedsData {
            requested: order,
            available: f.order(),
        });
    }
    let field = *f.field();
    let (n, m) = (f.rows(), f.cols());
    let size = n * (order + 1) * m * order.max(1);
    if size > MAX_SYSTEM {
        return Err(Error::OracleTooLarge(format!("{n}x{m} series at order {order}")));
    }
    let rows = greedy_minimal(&field, n, n, order, |t| {
        // unknown (j, i) -> coefficient j of entry i; equation (k, c)
        let mut sys = Matrix::zeros(n * (t + 1), m * order);
        for j in 0..=t {
            for k in j..order {
                let fk = f.coeff(k - j);
                for i in 0..n {
                    for c in 0..m {
                        sys[(j * n + i, k * m + c)] = fk[(i, c)];
                    }
                }
            }
        }
        sys.left_kernel(&field)
    });
    debug_assert_eq!(rows.len(), n, "x^order I is always an approximant basis");
    let basis = rows_to_matrix(field, n, &rows);
    let sdeg = rows.iter().map(|(t, _)| *t as i64).collect();
    Ok(ApproximantBasis::new(basis, order, vec![0; n], sdeg))
}

/// All minimal left nullspace vectors, degree by degree up to `cap`.
///
/// Fails with [`Error::CapTooSmall`] when the nullspace is not exhausted by
/// vectors of degree at most `cap`; `needed` then reports the nullity.
pub fn nullspace_bruteforce(a: &PolyMatrix, cap: usize) -> Result<NullspaceBasis> {
    let field = *a.field();
    let (n, m) = (a.rows(), a.cols());
    let d = a.degree().unwrap_or(0);
    let size = n * (cap + 1) * m * (cap + d + 1);
    if size > MAX_SYSTEM {
        return Err(Error::OracleTooLarge(format!("{n}x{m} matrix with degree cap {cap}")));
    }
    let nullity = n - rank_exact(a)?;
    let rows = greedy_minimal(&field, n, nullity, cap, |t| {
        let mut sys = Matrix::zeros(n * (t + 1), m * (t + d + 1));
        for j in 0..=t {
            for i in 0..n {
                for c in 0..m {
                    for (s, &v) in a.entry(i, c).coeffs().iter().enumerate() {
                        sys[(j * n + i, (j + s) * m + c)] = v;
                    }
                }
            }
        }
        sys.left_kernel(&field)
    });
    if rows.len() < nullity {
        return Err(Error::CapTooSmall { cap, needed: nullity });
    }
    Ok(NullspaceBasis::new(rows_to_matrix(field, n, &rows), true))
}

/// Sorted Kronecker indices of `A` (minimal degrees of its left nullspace).
pub fn kronecker_indices(a: &PolyMatrix) -> Result<Vec<usize>> {
    let cap = a.rows() * a.degree().unwrap_or(0);
    Ok(nullspace_bruteforce(a, cap)?.kronecker_degrees().to_vec())
}

/// Coefficients of `A^{-1} mod x^k`, one order at a time.
fn series_inverse(a: &PolyMatrix, k: usize) -> Result<Vec<Matrix>> {
    let f = *a.field();
    let a0inv = a.coeff_matrix(0).inverse(&f).map_err(|_| Error::SingularAtZero)?;
    let coeffs = a.coeff_matrices();
    let mut out: Vec<Matrix> = Vec::with_capacity(k);
    for t in 0..k {
        if t == 0 {
            out.push(a0inv.clone());
            continue;
        }
        let mut acc = Matrix::zeros(a.rows(), a.rows());
        for j in 1..=t.min(coeffs.len().saturating_sub(1)) {
            acc = acc.add(&coeffs[j].mul(&out[t - j], &f), &f);
        }
        out.push(a0inv.mul(&acc, &f).neg(&f));
    }
    Ok(out)
}

/// Whether `R = U A` for some unimodular `U`.
///
/// `U = R A^{-1}` is recovered from the series expansion of `A^{-1}` up to
/// the Cramer degree bound `deg R + (n - 1) deg A` and checked exactly.
pub fn unimodular_equiv_check(a: &PolyMatrix, r: &PolyMatrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if r.rows() != a.rows() || r.cols() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} against {}x{}",
            r.rows(),
            r.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let f = *a.field();
    let n = a.rows();
    if det_by_interpolation(a)?.is_zero() {
        return Err(Error::SingularInput);
    }
    // move to a point where A is invertible
    let x0 = (0..f.modulus())
        .map(|t| f.elem(t))
        .find(|&t| a.eval(t).rank(&f) == n)
        .ok_or(Error::SingularInput)?;
    let (a, r) = (a.shift_var(x0), r.shift_var(x0));
    let Some(dr) = r.degree() else { return Ok(false) };
    let bound = dr + n.saturating_sub(1) * a.degree().unwrap_or(0);
    let inv = series_inverse(&a, bound + 1)?;
    let inv = PolyMatrix::from_coeff_matrices(f, n, n, &inv);
    let u = naive_mul(&r, &inv)?.truncate(bound + 1);
    if naive_mul(&u, &a)? != r {
        return Ok(false);
    }
    u.is_unimodular()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_poly_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pm(f: PrimeField, rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_i64(f, rows)
    }

    #[test]
    fn naive_mul_identities() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_poly_matrix(&f, 3, 3, 4, &mut rng);
        assert_eq!(naive_mul(&a, &PolyMatrix::identity(f, 3)).unwrap(), a);
        assert!(naive_mul(&a, &PolyMatrix::zero(f, 3, 2)).unwrap().is_zero());
        assert!(matches!(
            naive_mul(&a, &PolyMatrix::zero(f, 2, 2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn determinant_examples() {
        let f = PrimeField::default();
        assert_eq!(
            det_by_interpolation(&PolyMatrix::identity(f, 3)).unwrap(),
            Polynomial::one(&f)
        );
        let target = Polynomial::from_i64s(&f, &[1, 0, -1]);
        let a = pm(f, &[&[&[1], &[0, 1]], &[&[0, 1], &[1]]]);
        assert_eq!(det_by_interpolation(&a).unwrap(), target);
        let diag = pm(f, &[&[&[1, -1], &[]], &[&[], &[1, 1]]]);
        assert_eq!(det_by_interpolation(&diag).unwrap(), target);
        let small = PrimeField::new(3).unwrap();
        let big = pm(small, &[&[&[0, 0, 1], &[]], &[&[], &[0, 1]]]);
        assert!(matches!(det_by_interpolation(&big), Err(Error::FieldTooSmall(_))));
    }

    #[test]
    fn determinant_is_multiplicative() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = random_poly_matrix(&f, 3, 3, 2, &mut rng);
            let b = random_poly_matrix(&f, 3, 3, 3, &mut rng);
            let ab = det_by_interpolation(&naive_mul(&a, &b).unwrap()).unwrap();
            let prod = det_by_interpolation(&a)
                .unwrap()
                .mul(&det_by_interpolation(&b).unwrap(), &f);
            assert_eq!(ab, prod);
        }
    }

    #[test]
    fn bruteforce_basis_examples() {
        let f = PrimeField::default();
        let zero = SeriesMatrix::new(f, 2, 1, vec![Matrix::zeros(2, 1); 3]);
        let b = minimal_basis_bruteforce(&zero, 3).unwrap();
        assert_eq!(b.basis(), &PolyMatrix::identity(f, 2));
        let col = SeriesMatrix::from_poly(&pm(f, &[&[&[0, 1]], &[&[1]]]), 2);
        assert_eq!(minimal_basis_bruteforce(&col, 2).unwrap().minimal_indices(), vec![1, 1]);
        let one = SeriesMatrix::from_poly(&pm(f, &[&[&[1]]]), 3);
        assert_eq!(minimal_basis_bruteforce(&one, 3).unwrap().minimal_indices(), vec![3]);
    }

    #[test]
    fn bruteforce_nullspace_examples() {
        let f = PrimeField::default();
        let id = PolyMatrix::identity(f, 3);
        assert_eq!(nullspace_bruteforce(&id, 2).unwrap().matrix().rows(), 0);
        let a = pm(f, &[&[&[0, 1], &[0, 0, 1]], &[&[1], &[0, 1]]]);
        let n = nullspace_bruteforce(&a, 1).unwrap();
        assert_eq!(n.kronecker_degrees(), &[1]);
        assert!(naive_mul(n.matrix(), &a).unwrap().is_zero());
        let z = PolyMatrix::zero(f, 2, 2);
        assert_eq!(nullspace_bruteforce(&z, 0).unwrap().kronecker_degrees(), &[0, 0]);
        // the nullspace vector of [[x, x^2], [1, x]] has degree 1, so cap 0 is too small
        assert_eq!(
            nullspace_bruteforce(&a, 0),
            Err(Error::CapTooSmall { cap: 0, needed: 1 })
        );
    }

    #[test]
    fn unimodular_equivalence_examples() {
        let f = PrimeField::default();
        let a = pm(f, &[&[&[1, 2], &[0, 1]], &[&[3], &[1, 0, 1]]]);
        assert!(unimodular_equiv_check(&a, &a).unwrap());
        let u = pm(f, &[&[&[1], &[0, 1]], &[&[], &[1]]]);
        assert!(unimodular_equiv_check(&a, &naive_mul(&u, &a).unwrap()).unwrap());
        let d1 = pm(f, &[&[&[1], &[]], &[&[], &[1, -1]]]);
        let d2 = pm(f, &[&[&[1], &[]], &[&[], &[1, 1]]]);
        assert!(!unimodular_equiv_check(&d1, &d2).unwrap());
        // singular at zero is handled by moving the expansion point
        let s = pm(f, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        assert!(unimodular_equiv_check(&s, &naive_mul(&u, &s).unwrap()).unwrap());
        let sing = pm(f, &[&[&[0, 1], &[0, 1]], &[&[1], &[1]]]);
        assert_eq!(unimodular_equiv_check(&sing, &sing), Err(Error::SingularInput));
    }
}
