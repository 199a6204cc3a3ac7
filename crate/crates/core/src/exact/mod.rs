//! Exact scalars, sparse vectors and tensors, and dense linear algebra.

mod matrix;
mod scalar;
mod tensor;
mod vector;

pub use matrix::{LinearError, Matrix, Solution, Subspace};
pub use scalar::{Field, Scalar};
pub use tensor::{SparseTensor, TensorError};
pub use vector::Vector;

/// Solves `matrix · x = rhs`, distinguishing inconsistent from underdetermined systems.
pub fn solve_linear(matrix: &Matrix, rhs: &[Scalar]) -> Result<Solution, LinearError> {
    matrix.solve(rhs)
}
