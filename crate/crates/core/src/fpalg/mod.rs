//! Exact linear and polynomial algebra over prime fields.

mod echelon;
mod factor;
mod field;
mod matrix;
mod poly;

pub use echelon::Echelon;
pub use factor::{distinct_degree, equal_degree, is_irreducible, poly_factor, squarefree, Factorization, FACTOR_SEED};
pub use field::{is_prime, FpScalar, PrimeField};
pub use matrix::{rref_kernel, FpMatrix, Rref};
pub use poly::FpPoly;

/// Characteristic polynomial of a square matrix.
pub fn charpoly(m: &FpMatrix) -> crate::Result<FpPoly> {
    m.charpoly()
}
