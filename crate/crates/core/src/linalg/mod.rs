//! Exact scalars and the linear-algebra kernel shared by every other module.

mod matrix;
mod scalar;
mod sparse;

use thiserror::Error;

pub use matrix::{span_membership, Matrix, Solution};
pub use scalar::{is_prime, Field, Scalar};
pub(crate) use sparse::accumulate as sparse_accumulate;
pub use sparse::{kernel_of_rows, solve_sparse, tensor, transpose_columns, Echelon, Quotient, Rref, SparseVec, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("no solution: right-hand side is outside the column space")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
}
