use super::tree_diff::generator_terms;
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::operad::{Element, TreeMonomial};

#[derive(Clone, Debug)]
pub struct RegularPart {
    pub arity: usize,
    /// Terms of `d_t T_n` whose unshuffle is the identity.
    pub regular: Element<TreeMonomial>,
    pub non_regular: Element<TreeMonomial>,
    /// `Σ_{i+j−1=n} i`: one term per grafting position, as in the
    /// associahedral differential.
    pub expected_count: usize,
}

impl RegularPart {
    pub fn pass(&self) -> bool {
        self.regular.len() == self.expected_count
    }
}

pub fn regular_part(n: usize, bound: usize) -> Result<RegularPart> {
    if n > bound {
        return Err(Error::Resource(format!("arity {n} is above the bound {bound}")));
    }
    let mut regular = Element::zero(n);
    let mut non_regular = Element::zero(n);
    for (term, is_regular) in generator_terms(n) {
        let target = if is_regular { &mut regular } else { &mut non_regular };
        target.add_term(term, -Scalar::one());
    }
    let expected_count = (2..n).map(|j| n - j + 1).sum();
    Ok(RegularPart {
        arity: n,
        regular,
        non_regular,
        expected_count,
    })
}
