//! Exact arithmetic: rationals, permutations with Koszul signs, and sparse
//! linear algebra over the rationals.

mod matrix;
mod perm;
mod scalar;

pub use matrix::{kernel_basis, rank, rank_mod_p, SparseMatrix, SparseVector};
pub use perm::{koszul_sign, unshuffles, Permutation};
pub use scalar::{binomial, factorial, Scalar};
