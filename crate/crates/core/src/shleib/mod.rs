//! The sh-Leibniz operad, its binary model, and the derived-bracket map to
//! `Lie ⊗ D∞`.

mod binary;
mod derived;
mod regular;
mod theta;
mod tree_diff;
mod zinbiel;

pub use binary::{
    binary_dims, free_binary, lie_sperm, odd_leibniz_identity, psi_generator, BinaryDims, LeibnizIdentity, LieQ,
};
pub use derived::{evaluate, HKey, NormalDerivedBracket, WordContext};
pub use regular::{regular_part, RegularPart};
pub use theta::{
    lie_d, normal_bracket_rank, theta, verify_chain_map, verify_iso, ChainMapReport, IsoReport, LieD, Theta,
};
pub use tree_diff::{shleib_operad, tree_diff, tree_diff_generator};
pub use zinbiel::{zinbiel_coproduct, Splitting};

#[cfg(test)]
mod tests;
