//! Exact dense linear algebra over finite fields.

mod field;
mod matrix;
mod poly;
mod subspace;

pub use field::{is_prime, multiplicative_order, prime_factors, Elem, FField};
pub use matrix::{FFMatrix, Rref};
pub use poly::{crt_idempotents, factor_squarefree, squarefree_parts, Poly};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("field {p}^{m} is too large for packed element storage")]
    TooLarge { p: u64, m: u32 },
    #[error("modulus is not a monic irreducible polynomial over the prime field")]
    BadModulus,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}
