//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldElement, PrimeField};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::polymat::PolyMatrix;

/// The generator every randomized routine is driven by.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(field: &PrimeField, rng: &mut impl Rng) -> FieldElement {
    field.elem(rng.gen_range(0..field.modulus()))
}

pub fn random_nonzero(field: &PrimeField, rng: &mut impl Rng) -> FieldElement {
    field.elem(rng.gen_range(1..field.modulus()))
}

pub fn random_matrix(field: &PrimeField, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_element(field, rng))
}

/// Invertible constant matrix, by rejection.
pub fn random_invertible(field: &PrimeField, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.rank(field) == n {
            return m;
        }
    }
}

pub fn random_poly(field: &PrimeField, degree: usize, rng: &mut impl Rng) -> Polynomial {
    Polynomial::from_coeffs((0..=degree).map(|_| random_element(field, rng)).collect())
}

/// Entries with independent uniform coefficients up to `degree`.
pub fn random_poly_matrix(
    field: &PrimeField,
    rows: usize,
    cols: usize,
    degree: usize,
    rng: &mut impl Rng,
) -> PolyMatrix {
    PolyMatrix::from_fn(*field, rows, cols, |_, _| random_poly(field, degree, rng))
}

/// Instance families for `rand_instance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Uniform coefficients.
    Dense,
    /// Product of random `n x r` and `r x m` factors.
    PlantedRank(usize),
    /// Square matrix whose left nullspace mixes one high-degree vector with
    /// several degree-`d` ones; falls back to rank `n - 1` for `n < 3`.
    PlantedUnbalanced,
}

/// Deterministic for a fixed seed.
pub fn rand_instance(field: &PrimeField, n: usize, m: usize, d: usize, seed: u64, profile: Profile) -> PolyMatrix {
    let mut rng = rng_from_seed(seed);
    match profile {
        Profile::Dense => random_poly_matrix(field, n, m, d, &mut rng),
        Profile::PlantedRank(r) => planted_rank(field, n, m, d, r, &mut rng),
        Profile::PlantedUnbalanced => planted_unbalanced(field, n, d, &mut rng),
    }
}

pub fn planted_rank(field: &PrimeField, n: usize, m: usize, d: usize, r: usize, rng: &mut impl Rng) -> PolyMatrix {
    let left = random_poly_matrix(field, n, r, d.div_ceil(2), rng);
    let right = random_poly_matrix(field, r, m, d / 2, rng);
    left.mul(&right).expect("shapes agree")
}

fn planted_unbalanced(field: &PrimeField, n: usize, d: usize, rng: &mut impl Rng) -> PolyMatrix {
    if n < 3 {
        return planted_rank(field, n, n, d, n.saturating_sub(1), rng);
    }
    // (k+1) x k block: one kernel vector of degree k*d
    let k = n / 2;
    let tall = random_poly_matrix(field, k + 1, k, d, rng);
    // rank-one square block: kernel vectors of degree at most d
    let rest = n - k - 1;
    let u = random_poly_matrix(field, rest, 1, d.div_ceil(2), rng);
    let v = random_poly_matrix(field, 1, rest + 1, d / 2, rng);
    let low = u.mul(&v).expect("shapes agree");
    let block = PolyMatrix::block_diag(*field, &[tall, low]);
    let p = random_invertible(field, n, rng);
    let q = random_invertible(field, n, rng);
    block
        .mul_constant_left(&p)
        .transpose()
        .mul_constant_left(&q.transpose())
        .transpose()
}
