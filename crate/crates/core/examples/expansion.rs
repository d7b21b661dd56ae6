//! Coefficients deep in the expansion of A^{-1} B, computed without the
//! terms before them.

use polymat::fraction::{expansion_slice_with, truncated_inverse, ExpansionMethod};
use polymat::random::{random_poly_matrix, rng_from_seed};
use polymat::{PolyMatrix, PrimeField};
use std::time::Instant;

fn main() -> polymat::Result<()> {
    let field = PrimeField::default();

    // A = [[1, x], [x, 1]]: A^{-1} = (1 - x^2)^{-1} [[1, -x], [-x, 1]]
    let a = PolyMatrix::from_i64(field, &[&[&[1], &[0, 1]], &[&[0, 1], &[1]]]);
    let id = PolyMatrix::identity(field, 2);
    let slice = expansion_slice_with(&a, &id, 2, 2, ExpansionMethod::HighOrder)?;
    for (k, c) in slice.coeffs().iter().enumerate() {
        let rows: Vec<Vec<u64>> = (0..2).map(|i| c.row(i).iter().map(|e| e.value()).collect()).collect();
        println!("coefficient {}: {rows:?}", slice.start() + k);
    }

    let mut rng = rng_from_seed(5);
    let (n, d) = (8, 8);
    let mut a = random_poly_matrix(&field, n, n, d, &mut rng);
    while a.coeff_matrix(0).rank(&field) < n {
        a = random_poly_matrix(&field, n, n, d, &mut rng);
    }
    let b = random_poly_matrix(&field, n, 2, d, &mut rng);
    let (h, len) = (2000, 16);
    let mut results = Vec::new();
    for method in [ExpansionMethod::Baseline, ExpansionMethod::HighOrder] {
        let start = Instant::now();
        results.push(expansion_slice_with(&a, &b, h, len, method)?);
        println!("{method:?}: coefficients {h}..{} in {:?}", h + len, start.elapsed());
    }
    println!("methods agree: {}", results[0] == results[1]);
    let full = truncated_inverse(&a, h + len)?.mul_poly_right(&b);
    println!(
        "matches the full expansion: {}",
        full.window(h, len).coeffs() == results[1].coeffs()
    );
    Ok(())
}
