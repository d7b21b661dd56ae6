//! Recover a left fraction V^{-1} U from the first terms of its expansion.

use polymat::fraction::proper_tail;
use polymat::oracle::det_by_interpolation;
use polymat::random::{random_poly_matrix, rng_from_seed};
use polymat::reconstruct::matfrac_rec;
use polymat::{Matrix, PrimeField, SeriesMatrix};

fn main() -> polymat::Result<()> {
    let field = PrimeField::default();

    // 1 + 2x + 3x^2 + ... = 1 / (1 - x)^2
    let s = SeriesMatrix::new(
        field,
        1,
        1,
        (1..=5).map(|k| Matrix::from_i64_rows(&field, &[&[k]])).collect(),
    );
    let r = matfrac_rec(&s, 2, 2)?.normalized();
    println!("denominator {}", r.denominator().entry(0, 0));
    println!("numerator   {}", r.numerator().entry(0, 0));

    // the strictly proper tail of A^{-1} for a random 3x3 A of degree 2
    let mut rng = rng_from_seed(11);
    let (n, d) = (3, 2);
    let a = random_poly_matrix(&field, n, n, d, &mut rng);
    let tail = proper_tail(&a, (n - 1) * d + 1, 2 * d + 1)?;
    let lf = matfrac_rec(tail.tail(), d, d)?;
    let vd = det_by_interpolation(lf.denominator())?;
    let ad = det_by_interpolation(&a)?;
    println!("deg det V = {:?}, deg det A = {:?}", vd.degree(), ad.degree());
    println!("V row-reduced: {}", lf.denominator().is_row_reduced()?);
    Ok(())
}
