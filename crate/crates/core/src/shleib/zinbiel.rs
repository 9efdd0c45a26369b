use crate::error::{Error, Result};
use crate::exact::{koszul_sign, unshuffles, Scalar};

/// One term `ε(σ) (x_{σ(1)},…,x_{σ(i)}) ⊗ (x_{σ(i+1)},…,x_{σ(n)},x_{n+1})`.
/// Indices are 1-based positions in the input word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub sign: Scalar,
}

/// Coproduct of the cofree Zinbiel coalgebra on the word `x_1 ⋯ x_{n+1}`
/// with the given degrees. The last letter always stays on the right.
///
/// This coproduct is not coassociative; it satisfies the dual Zinbiel
/// relation `(id⊗Δ)Δ = (Δ⊗id)Δ + (τ⊗id)(Δ⊗id)Δ`.
pub fn zinbiel_coproduct(degrees: &[i64]) -> Result<Vec<Splitting>> {
    if degrees.len() < 2 {
        return Err(Error::arg("the coproduct needs a word of length at least 2"));
    }
    let n = degrees.len() - 1;
    let mut out = Vec::new();
    for i in 1..=n {
        for sigma in unshuffles(i, n - i) {
            let sign = koszul_sign(&sigma.inverse(), &degrees[..n])?;
            let images = sigma.images();
            let mut right = images[i..].to_vec();
            right.push(n + 1);
            out.push(Splitting {
                left: images[..i].to_vec(),
                right,
                sign,
            });
        }
    }
    Ok(out)
}
