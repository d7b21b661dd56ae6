//! Left kernels of rank-deficient matrices: the minimal vectors up to a
//! degree bound, and a full basis with its degree profile.

use polymat::nullspace::{general_nullspace, minimal_vectors_up_to, rank};
use polymat::oracle::kronecker_indices;
use polymat::random::{rand_instance, rng_from_seed, Profile};
use polymat::PrimeField;

fn main() -> polymat::Result<()> {
    let field = PrimeField::default();
    let mut rng = rng_from_seed(7);

    let a = rand_instance(&field, 6, 4, 2, 7, Profile::PlantedRank(3));
    println!("6x4 matrix of degree 2, rank {}", rank(&a, &mut rng)?);
    for bound in 0..=3 {
        let n = minimal_vectors_up_to(&a, bound);
        println!("  vectors of degree <= {bound}: {:?}", n.kronecker_degrees());
    }
    println!("  exact kernel degrees: {:?}", kronecker_indices(&a)?);

    let b = rand_instance(&field, 7, 7, 2, 3, Profile::PlantedUnbalanced);
    let n = general_nullspace(&b, &mut rng)?;
    println!(
        "unbalanced 7x7: degrees {:?}, certified minimal {}, N A = 0: {}",
        n.kronecker_degrees(),
        n.certified_minimal(),
        n.matrix().mul(&b)?.is_zero()
    );
    Ok(())
}
