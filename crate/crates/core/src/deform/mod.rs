//! The operads `O`, `Q` and `Perm`, and the deformation operad `D∞` with its
//! differential, dimension formulas and homology.

mod dinf;
mod perm;
mod q;
mod word;

pub use dinf::{
    basis_d, differential_d, differential_matrix, dim_d, dim_delta, dim_formula, generated_rank, homology_d,
    homology_d_bounded, DInfinity, LambdaProfile, HOMOLOGY_BOUND,
};
pub use perm::{Perm, PermKey};
pub use q::{basis_sperm, sperm_tuple, QOperad, SPerm};
pub use word::{compose_o, distribute, DerivationWord, WordTuple};

#[cfg(test)]
mod tests;
