//! Multiply two random polynomial matrices with each algorithm and check
//! they agree with the schoolbook reference.

use polymat::oracle::naive_mul;
use polymat::random::{random_poly_matrix, rng_from_seed};
use polymat::{MulStrategy, PrimeField};
use std::time::Instant;

fn main() -> polymat::Result<()> {
    let field = PrimeField::default();
    let mut rng = rng_from_seed(1);
    let a = random_poly_matrix(&field, 8, 6, 40, &mut rng);
    let b = random_poly_matrix(&field, 6, 5, 40, &mut rng);

    let reference = naive_mul(&a, &b)?;
    for strategy in [
        MulStrategy::CoefficientBlocks,
        MulStrategy::Ntt,
        MulStrategy::DistinctPoints,
    ] {
        let start = Instant::now();
        let c = a.mul_using(&b, strategy)?;
        println!(
            "{strategy:?}: {:?}, agrees with reference: {}",
            start.elapsed(),
            c == reference
        );
    }
    println!(
        "product is {}x{} of degree {:?}",
        reference.rows(),
        reference.cols(),
        reference.degree()
    );
    Ok(())
}
