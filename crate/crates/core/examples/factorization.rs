//! Turn a right fraction B A^{-1} into a left one V^{-1} U.

use polymat::random::{random_poly_matrix, rng_from_seed};
use polymat::solvers::left_factorization;
use polymat::PrimeField;

fn main() -> polymat::Result<()> {
    let field = PrimeField::default();
    let mut rng = rng_from_seed(6);
    let (n, d) = (3, 2);
    let a = random_poly_matrix(&field, n, n, d, &mut rng);
    let b = random_poly_matrix(&field, 2, n, d, &mut rng);

    let lf = left_factorization(&b, &a, &mut rng)?;
    let (u, v) = (lf.numerator(), lf.denominator());
    println!("U is {}x{}, V is {}x{}", u.rows(), u.cols(), v.rows(), v.cols());
    println!("row degrees of [U V]: {:?}", lf.stacked().row_degrees().as_slice());
    println!("U A = V B: {}", u.mul(&a)? == v.mul(&b)?);
    Ok(())
}
