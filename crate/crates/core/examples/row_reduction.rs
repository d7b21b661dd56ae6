//! Row-reduce a matrix by reconstructing the tail of its inverse.

use polymat::oracle::{det_by_interpolation, unimodular_equiv_check};
use polymat::random::{random_poly_matrix, rng_from_seed};
use polymat::solvers::row_reduce;
use polymat::{PolyMatrix, PrimeField};

fn main() -> polymat::Result<()> {
    let field = PrimeField::default();
    let mut rng = rng_from_seed(2);

    // unimodular, so its reduced form is a constant matrix
    let a = PolyMatrix::from_i64(field, &[&[&[1], &[0, 1]], &[&[0, 1], &[1, 0, 1]]]);
    let r = row_reduce(&a, &mut rng)?;
    print!("reduced form of [[1, x], [x, 1 + x^2]]:\n{}", r.reduced);

    // a matrix with a degree drop hidden by a unimodular left factor
    let inner = random_poly_matrix(&field, 3, 3, 1, &mut rng);
    let w = PolyMatrix::from_i64(
        field,
        &[&[&[1], &[0, 0, 1], &[]], &[&[], &[1], &[]], &[&[], &[0, 1], &[1]]],
    );
    let a = w.mul(&inner)?;
    let r = row_reduce(&a, &mut rng)?;
    println!("row degrees before {:?}", a.row_degrees().as_slice());
    println!("row degrees after  {:?}", r.reduced.row_degrees().as_slice());
    println!("row-reduced: {}", r.reduced.is_row_reduced()?);
    println!("unimodularly equivalent: {}", unimodular_equiv_check(&a, &r.reduced)?);
    println!(
        "deg det: {:?} and {:?}",
        det_by_interpolation(&a)?.degree(),
        det_by_interpolation(&r.reduced)?.degree()
    );
    Ok(())
}
