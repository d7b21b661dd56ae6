//! Exact linear algebra over `K[x]` for prime fields `K`.
//!
//! Polynomial matrices, order bases, nullspaces, matrix fractions and the
//! solvers built on them: determinants, inversion of generic matrices, row
//! reduction and coprime factorization.

pub mod approx;
pub mod bench;
pub mod cli;
pub mod error;
pub mod field;
pub mod format;
pub mod fraction;
pub mod matrix;
pub mod ntt;
pub mod nullspace;
pub mod oracle;
pub mod poly;
pub mod polymat;
pub mod random;
pub mod reconstruct;
pub mod solvers;

pub use approx::{mbasis, pmbasis, popov_basis, ApproximantBasis};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField, DEFAULT_PRIME};
pub use matrix::Matrix;
pub use nullspace::NullspaceBasis;
pub use poly::Polynomial;
pub use polymat::{MulStrategy, PolyMatrix, RowDegreeProfile, SeriesMatrix};
