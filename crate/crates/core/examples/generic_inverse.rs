//! Diagonalize a generic matrix: U A = B with B diagonal, so A^{-1} = B^{-1} U.

use polymat::random::{random_poly_matrix, rng_from_seed};
use polymat::solvers::generic_inverse;
use polymat::{PolyMatrix, PrimeField};

fn main() -> polymat::Result<()> {
    let field = PrimeField::default();
    let mut rng = rng_from_seed(4);

    let a = PolyMatrix::from_i64(field, &[&[&[1], &[0, 1]], &[&[0, 1], &[1]]]);
    let rep = generic_inverse(&a, &mut rng)?;
    for i in 0..2 {
        println!("b_{i}{i} = {}", rep.diagonal().entry(i, i));
    }

    for (n, d) in [(4, 2), (8, 3)] {
        let a = random_poly_matrix(&field, n, n, d, &mut rng);
        let rep = generic_inverse(&a, &mut rng)?;
        let degs: Vec<Option<usize>> = (0..n).map(|i| rep.diagonal().entry(i, i).degree()).collect();
        println!("n={n} d={d}: diagonal degrees {degs:?}, U A = B: {}", rep.verify(&a));
    }
    Ok(())
}
