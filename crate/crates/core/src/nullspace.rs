//! Left nullspaces of polynomial matrices.
//!
//! Minimal nullspace vectors of degree at most `t` are exactly the rows of
//! degree at most `t` in an order basis of `A` at order `t + deg A + 1`;
//! everything here is built on that fact. The randomized routines verify
//! their output (`N A = 0`, full row rank) and retry, so a returned basis is
//! always correct.

use rand::Rng;

use crate::approx::pmbasis;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::polymat::{PolyMatrix, SeriesMatrix};
use crate::random::random_element;

/// Attempts before a randomized routine gives up.
pub const MAX_RETRIES: usize = 8;

/// Full-row-rank `N` with `N A = 0`, rows sorted by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullspaceBasis {
    matrix: PolyMatrix,
    kronecker_degrees: Vec<usize>,
    certified_minimal: bool,
}

impl NullspaceBasis {
    pub(crate) fn new(matrix: PolyMatrix, certified_minimal: bool) -> Self {
        let degs = matrix.row_degrees();
        let mut order: Vec<usize> = (0..matrix.rows()).collect();
        order.sort_by_key(|&i| (degs.as_slice()[i], i));
        let matrix = matrix.select_rows(&order);
        let kronecker_degrees = order
            .iter()
            .map(|&i| degs.as_slice()[i].expect("nullspace rows are nonzero"))
            .collect();
        NullspaceBasis {
            matrix,
            kronecker_degrees,
            certified_minimal,
        }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.matrix
    }

    /// Row degrees in increasing order.
    pub fn kronecker_degrees(&self) -> &[usize] {
        &self.kronecker_degrees
    }

    /// Whether the degrees are known to be the Kronecker indices of the input.
    pub fn certified_minimal(&self) -> bool {
        self.certified_minimal
    }

    pub fn len(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.rows() == 0
    }

    /// `N A = 0` and `N` has full row rank at `x0`.
    pub fn verify_at(&self, a: &PolyMatrix, x0: crate::FieldElement) -> bool {
        let field = a.field();
        self.matrix.mul(a).is_ok_and(|p| p.is_zero()) && self.matrix.eval(x0).rank(field) == self.len()
    }
}

fn check_field(a: &PolyMatrix) -> Result<()> {
    let n = a.rows().max(a.cols()) as u64;
    let d = a.degree().unwrap_or(0) as u64;
    if a.field().modulus() <= 2 * n * d {
        return Err(Error::FieldTooSmall(format!(
            "p = {} but 2nd = {}",
            a.field().modulus(),
            2 * n * d
        )));
    }
    Ok(())
}

/// Rank over `K(x)`, estimated by evaluating at two random points.
///
/// Never overestimates; underestimates with probability at most `(nd/p)^2`.
pub fn rank(a: &PolyMatrix, rng: &mut impl Rng) -> Result<usize> {
    check_field(a)?;
    let f = a.field();
    Ok((0..2)
        .map(|_| a.eval(random_element(f, rng)).rank(f))
        .max()
        .unwrap_or(0))
}

/// The minimal nullspace vectors of degree at most `bound`.
pub fn minimal_vectors_up_to(a: &PolyMatrix, bound: usize) -> NullspaceBasis {
    let d = a.degree().unwrap_or(0);
    let order = bound + d + 1;
    let basis = pmbasis(&SeriesMatrix::from_poly(a, order), order, None)
        .expect("series built with the requested order")
        .into_basis();
    let keep: Vec<usize> = basis
        .row_degrees()
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, deg)| deg.is_some_and(|deg| deg <= bound))
        .map(|(i, _)| i)
        .collect();
    NullspaceBasis::new(basis.select_rows(&keep), true)
}

/// Complete minimal nullspace basis, deterministic: Kronecker indices never
/// exceed `rows * deg A`.
pub fn minimal_nullspace(a: &PolyMatrix) -> NullspaceBasis {
    minimal_vectors_up_to(a, a.rows() * a.degree().unwrap_or(0))
}

/// All minimal nullspace vectors of degree at most `bound` for a matrix
/// with more rows than columns and full column rank.
pub fn partial_nullspace(a: &PolyMatrix, bound: usize, rng: &mut impl Rng) -> Result<NullspaceBasis> {
    if a.rows() < a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "expected at least as many rows as columns, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if rank(a, rng)? < a.cols() {
        return Err(Error::RankDeficient);
    }
    let found = minimal_vectors_up_to(a, bound);
    let field = a.field();
    for _ in 0..MAX_RETRIES {
        if found.verify_at(a, random_element(field, rng)) {
            return Ok(found);
        }
    }
    Err(Error::RetriesExhausted(MAX_RETRIES))
}

/// Embeds the columns of `m` at positions `idx` of a width-`n` matrix.
fn scatter_cols(m: &PolyMatrix, idx: &[usize], n: usize) -> PolyMatrix {
    let mut out = PolyMatrix::zero(*m.field(), m.rows(), n);
    for i in 0..m.rows() {
        for (j, &c) in idx.iter().enumerate() {
            out.set(i, c, m.entry(i, j).clone());
        }
    }
    out
}

/// A full-row-rank nullspace basis for matrices whose Kronecker indices may
/// be far apart.
///
/// After fixing `r` independent columns and `r` independent rows `T`, the
/// other rows `S` are handled in rounds with degree bounds `d, 2d, 4d, ...`
/// up to `nd`. Each round collects the minimal vectors of the rows `T`
/// together with the rows of `S` still uncovered, then retires one row of `S`
/// per vector found, chosen so that the collected vectors stay independent.
/// The result is minimal (and flagged so) when the first round finds everything.
pub fn general_nullspace(a: &PolyMatrix, rng: &mut impl Rng) -> Result<NullspaceBasis> {
    check_field(a)?;
    let field = *a.field();
    let n = a.rows();
    let Some(d) = a.degree() else {
        return Ok(NullspaceBasis::new(PolyMatrix::identity(field, n), true));
    };
    for _ in 0..MAX_RETRIES {
        let x0 = random_element(&field, rng);
        let a0 = a.eval(x0);
        let cols = a0.independent_cols(&field);
        let r = cols.len();
        if r == n {
            // one point of full rank settles it
            return Ok(NullspaceBasis::new(PolyMatrix::zero(field, 0, n), true));
        }
        let ac = a.select_cols(&cols);
        let top = ac.eval(x0).independent_rows(&field);
        let mut rest: Vec<usize> = (0..n).filter(|i| !top.contains(i)).collect();

        let mut found: Vec<PolyMatrix> = Vec::new();
        let mut count = 0;
        let mut bound = d;
        let mut rounds = 0;
        let mut failed = false;
        loop {
            rounds += 1;
            let idx: Vec<usize> = top.iter().chain(rest.iter()).copied().collect();
            let sub = minimal_vectors_up_to(&ac.select_rows(&idx), bound);
            if !sub.is_empty() {
                let vectors = scatter_cols(sub.matrix(), &idx, n);
                let x1 = random_element(&field, rng);
                let on_rest = vectors.select_cols(&rest).eval(x1);
                let pivots = on_rest.independent_cols(&field);
                if pivots.len() < sub.len() {
                    failed = true;
                    break;
                }
                let retired: Vec<usize> = pivots.iter().map(|&p| rest[p]).collect();
                rest.retain(|i| !retired.contains(i));
                count += sub.len();
                found.push(vectors);
            }
            if count == n - r || bound >= n * d {
                break;
            }
            bound = (2 * bound).min(n * d);
        }
        if failed || count != n - r {
            continue;
        }
        let mut matrix = PolyMatrix::zero(field, 0, n);
        for block in &found {
            matrix = matrix.vstack(block)?;
        }
        let basis = NullspaceBasis::new(matrix, rounds == 1);
        if basis.verify_at(a, random_element(&field, rng)) {
            return Ok(basis);
        }
    }
    Err(Error::RetriesExhausted(MAX_RETRIES))
}

/// Solves `u N = v` over `K[x]` for a row-reduced square `N` by removing
/// leading terms of `v` against rows of `N`; `None` when no polynomial `u` exists.
pub fn solve_row_reduced(n: &PolyMatrix, v: &PolyMatrix) -> Option<PolyMatrix> {
    let field = *n.field();
    let lead = n.leading_row_matrix().ok()?;
    let lead_inv = lead.inverse(&field).ok()?;
    let degs: Vec<usize> = n.row_degrees().as_slice().iter().map(|d| d.unwrap()).collect();
    let mut rem = v.clone();
    let mut u = PolyMatrix::zero(field, 1, n.rows());
    while let Some(dv) = rem.degree() {
        // coefficient row of x^dv in the remainder
        let top = Matrix::from_fn(1, n.cols(), |_, j| rem.entry(0, j).coeff(dv));
        let c = top.mul(&lead_inv, &field);
        let mut step = PolyMatrix::zero(field, 1, n.rows());
        for i in 0..n.rows() {
            let ci = c[(0, i)];
            if ci.is_zero() {
                continue;
            }
            if degs[i] > dv {
                return None;
            }
            step.set(0, i, Polynomial::monomial(ci, dv - degs[i]));
        }
        rem = rem.sub(&step.mul(n).ok()?).ok()?;
        u = u.add(&step).ok()?;
    }
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::oracle::{nullspace_bruteforce, rank_exact};
    use crate::random::{planted_rank, random_matrix, random_poly_matrix, rng_from_seed};
    use rand::Rng;

    fn pm(f: PrimeField, rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_i64(f, rows)
    }

    fn example(f: PrimeField) -> PolyMatrix {
        pm(f, &[&[&[0, 1], &[0, 0, 1]], &[&[1], &[0, 1]]])
    }

    #[test]
    fn rank_examples() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(5);
        assert_eq!(rank(&PolyMatrix::identity(f, 4), &mut rng).unwrap(), 4);
        assert_eq!(rank(&example(f), &mut rng).unwrap(), 1);
        assert_eq!(rank(&PolyMatrix::zero(f, 3, 2), &mut rng).unwrap(), 0);
        let small = PrimeField::new(3).unwrap();
        let a = PolyMatrix::from_fn(small, 2, 2, |_, _| Polynomial::from_i64s(&small, &[1, 1]));
        assert!(matches!(rank(&a, &mut rng), Err(Error::FieldTooSmall(_))));
    }

    #[test]
    fn minimal_vectors_examples() {
        let f = PrimeField::default();
        assert!(minimal_vectors_up_to(&PolyMatrix::identity(f, 3), 4).is_empty());
        let a = example(f);
        let n = minimal_vectors_up_to(&a, 1);
        assert_eq!(n.kronecker_degrees(), &[1]);
        assert!(n.matrix().mul(&a).unwrap().is_zero());
        let col = pm(f, &[&[&[0, 1]], &[&[1]]]);
        let n = minimal_vectors_up_to(&col, 1);
        assert_eq!(n.kronecker_degrees(), &[1]);
        assert!(n.matrix().mul(&col).unwrap().is_zero());
        assert!(minimal_vectors_up_to(&col, 0).is_empty());
    }

    #[test]
    fn partial_nullspace_examples() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(6);
        let stacked = PolyMatrix::identity(f, 3).vstack(&PolyMatrix::zero(f, 2, 3)).unwrap();
        let n = partial_nullspace(&stacked, 0, &mut rng).unwrap();
        assert_eq!(n.kronecker_degrees(), &[0, 0]);
        assert!(n.matrix().mul(&stacked).unwrap().is_zero());

        let col = pm(f, &[&[&[0, 1]], &[&[1]]]);
        let n = partial_nullspace(&col, 1, &mut rng).unwrap();
        let first = n.matrix().entry(0, 0).leading_coeff();
        let expected = pm(f, &[&[&[1], &[0, -1]]]).scale(first);
        assert_eq!(n.matrix(), &expected);

        let c = random_poly_matrix(&f, 3, 3, 2, &mut rng);
        let dm = random_matrix(&f, 2, 3, &mut rng);
        let a = c.vstack(&c.mul_constant_left(&dm)).unwrap();
        let n = partial_nullspace(&a, 0, &mut rng).unwrap();
        assert_eq!(n.kronecker_degrees(), &[0, 0]);
        assert!(n.matrix().mul(&a).unwrap().is_zero());

        let deficient = col.hstack(&col).unwrap();
        assert_eq!(partial_nullspace(&deficient, 1, &mut rng), Err(Error::RankDeficient));
    }

    #[test]
    fn general_nullspace_examples() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(7);
        let a = random_poly_matrix(&f, 3, 3, 2, &mut rng);
        assert!(general_nullspace(&a, &mut rng).unwrap().is_empty());

        let n = general_nullspace(&example(f), &mut rng).unwrap();
        assert_eq!(n.len(), 1);
        assert_eq!(n.kronecker_degrees(), &[1]);

        let u = random_poly_matrix(&f, 4, 1, 1, &mut rng);
        let v = random_poly_matrix(&f, 1, 4, 1, &mut rng);
        let outer = u.mul(&v).unwrap();
        let n = general_nullspace(&outer, &mut rng).unwrap();
        assert_eq!(n.len(), 3);
        assert!(n.matrix().mul(&outer).unwrap().is_zero());
        assert_eq!(n.matrix().eval(f.elem(12345)).rank(&f), 3);
        assert!(n.kronecker_degrees().iter().all(|&k| k <= 4 * 2));
    }

    #[test]
    fn unbalanced_nullspace() {
        let f = PrimeField::default();
        for seed in 0..10 {
            let a = crate::random::rand_instance(&f, 6, 6, 2, seed, crate::random::Profile::PlantedUnbalanced);
            let mut rng = rng_from_seed(100 + seed);
            let n = general_nullspace(&a, &mut rng).unwrap();
            let nullity = 6 - rank_exact(&a).unwrap();
            assert_eq!(n.len(), nullity);
            assert!(n.matrix().mul(&a).unwrap().is_zero());
            assert!(n.kronecker_degrees().iter().all(|&k| k <= 12));
            let oracle = nullspace_bruteforce(&a, 12).unwrap();
            assert!(n.kronecker_degrees().iter().sum::<usize>() >= oracle.kronecker_degrees().iter().sum());
            if n.certified_minimal() {
                assert_eq!(n.kronecker_degrees(), oracle.kronecker_degrees());
            }
        }
    }

    #[test]
    fn agrees_with_oracle_on_planted_rank() {
        let f = PrimeField::default();
        let mut rng = rng_from_seed(8);
        for _ in 0..30 {
            let n = rng.gen_range(2..5);
            let r = rng.gen_range(0..n);
            let d = rng.gen_range(1..3);
            let a = planted_rank(&f, n, n, d, r, &mut rng);
            let oracle = nullspace_bruteforce(&a, n * d).unwrap();
            let full = minimal_nullspace(&a);
            assert_eq!(full.kronecker_degrees(), oracle.kronecker_degrees());
            let general = general_nullspace(&a, &mut rng).unwrap();
            assert_eq!(general.len(), n - r);
            assert!(general.matrix().mul(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn completeness_of_order_bases() {
        let f = PrimeField::new(97).unwrap();
        let mut rng = rng_from_seed(9);
        for _ in 0..50 {
            let n = rng.gen_range(1..4);
            let m = rng.gen_range(1..3);
            let order = rng.gen_range(1..6);
            let s = SeriesMatrix::new(f, n, m, (0..order).map(|_| random_matrix(&f, n, m, &mut rng)).collect());
            let basis = pmbasis(&s, order, None).unwrap().into_basis();
            // any combination of approximants is an approximant
            let mix = random_poly_matrix(&f, 1, n, 2, &mut rng);
            let v = mix.mul(&basis).unwrap();
            let u = solve_row_reduced(&basis, &v).expect("approximant lies in the row space");
            assert_eq!(u.mul(&basis).unwrap(), v);
            // x^order e_i is always an approximant
            let mut e = PolyMatrix::zero(f, 1, n);
            e.set(0, n - 1, Polynomial::monomial(f.one(), order));
            assert!(solve_row_reduced(&basis, &e).is_some());
        }
    }
}
