//! Exact linear algebra over the rationals.

mod matrix;
mod rational;
mod sparse;

pub use matrix::{RationalMatrix, Rref};
pub use rational::{ParseRationalError, Rational};
pub use sparse::{
    axpy, dense_to_sparse, sparse_kernel, sparse_left_kernel, sparse_rank, sparse_to_dense, sparse_transpose, SparseEchelon, SparseVec,
};
