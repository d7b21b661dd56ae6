//! Order bases of a small series: plain, shifted and canonical.

use polymat::oracle::minimal_basis_bruteforce;
use polymat::{mbasis, pmbasis, popov_basis, Matrix, PrimeField, SeriesMatrix};

fn main() -> polymat::Result<()> {
    let field = PrimeField::new(97)?;
    // F = [1 + x + 2x^2 + 3x^3 ; 5 + x^2] truncated at order 4
    let coeffs = [[1, 5], [1, 0], [2, 1], [3, 0]]
        .iter()
        .map(|c| Matrix::from_i64_rows(&field, &[&[c[0]], &[c[1]]]))
        .collect();
    let f = SeriesMatrix::new(field, 2, 1, coeffs);
    let order = 4;

    let iterative = mbasis(&f, order, None)?;
    let recursive = pmbasis(&f, order, None)?;
    let brute = minimal_basis_bruteforce(&f, order)?;
    println!("minimal degrees (mbasis)  {:?}", iterative.minimal_indices());
    println!("minimal degrees (pmbasis) {:?}", recursive.minimal_indices());
    println!("minimal degrees (search)  {:?}", brute.minimal_indices());
    println!("N F = 0 mod x^{order}: {}", recursive.annihilates(&f));

    let shifted = pmbasis(&f, order, Some(&[0, 3]))?;
    println!("shift [0, 3] gives shifted degrees {:?}", shifted.shifted_degrees());

    let popov = popov_basis(&f, order)?;
    print!("Popov basis:\n{}", popov.basis());
    Ok(())
}
