//! Determinants by block elimination, checked against interpolation.

use polymat::oracle::det_by_interpolation;
use polymat::random::{random_poly_matrix, rng_from_seed};
use polymat::solvers::generic_det;
use polymat::{Error, PolyMatrix, PrimeField};
use std::time::Instant;

fn main() -> polymat::Result<()> {
    let field = PrimeField::default();
    let mut rng = rng_from_seed(9);

    let a = PolyMatrix::from_i64(field, &[&[&[1], &[0, 1]], &[&[0, 1], &[1]]]);
    println!("det [[1, x], [x, 1]] = {}", generic_det(&a, &mut rng)?);

    for (n, d) in [(4, 4), (8, 4), (16, 2)] {
        let a = random_poly_matrix(&field, n, n, d, &mut rng);
        let start = Instant::now();
        let det = generic_det(&a, &mut rng)?;
        let fast = start.elapsed();
        let start = Instant::now();
        let reference = det_by_interpolation(&a)?;
        println!(
            "n={n} d={d}: degree {:?}, {fast:?} vs interpolation {:?}, equal: {}",
            det.degree(),
            start.elapsed(),
            det == reference
        );
    }

    // singular at zero: the caller falls back to interpolation
    let b = PolyMatrix::from_i64(field, &[&[&[0, 1], &[1]], &[&[], &[1, 1]]]);
    match generic_det(&b, &mut rng) {
        Err(Error::SingularAtZero) => println!("singular at zero, by interpolation: {}", det_by_interpolation(&b)?),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
