use crate::error::{Error, Result};
use crate::exact::{unshuffles, Permutation, Scalar};
use crate::operad::{differential, Element, FreeOperad, Generators, TreeMonomial};
use crate::trees::{LabeledTree, PlanarTree};

/// `T_i` with `T_j` grafted at planar position `p`, leaves labelled in
/// planar order by `labels`.
fn two_vertex(i: usize, p: usize, j: usize, labels: Vec<usize>) -> TreeMonomial {
    let shape = PlanarTree::corolla(i)
        .and_then(|t| t.graft(p, &PlanarTree::corolla(j)?))
        .expect("arities ≥ 2");
    let tree = LabeledTree::new(
        shape,
        Permutation::from_images(labels).expect("labels are a permutation"),
    )
    .expect("sizes match");
    TreeMonomial::undecorated(tree)
}

/// `d_t T_n = −Σ_{i+j−1=n} Σ_{k=j}^{n} Σ_σ T_i ∘_{k−j+1} T_j`, where `σ`
/// runs over the `(k−j, j−1)`-unshuffles of `1..k−1`. The leaves of `T_i`
/// before the grafting slot get `σ(1..k−j)`, the leaves of `T_j` get
/// `σ(k−j+1..k−1), k`, and the remaining leaves get `k+1..n`. Labels are
/// even, so the unshuffle signs are all `+1`.
pub fn tree_diff_generator(n: usize) -> Element<TreeMonomial> {
    let mut out = Element::zero(n);
    for (term, _) in generator_terms(n) {
        out.add_term(term, -Scalar::one());
    }
    out
}

/// The monomials of `−d_t T_n`, each flagged when its unshuffle is the
/// identity.
pub(crate) fn generator_terms(n: usize) -> Vec<(TreeMonomial, bool)> {
    let mut out = Vec::new();
    for j in 2..n {
        let i = n - j + 1;
        for k in j..=n {
            for sigma in unshuffles(k - j, j - 1) {
                let s = sigma.images();
                let mut labels = s.to_vec();
                labels.push(k);
                labels.extend(k + 1..=n);
                out.push((two_vertex(i, k - j + 1, j, labels), sigma.is_identity()));
            }
        }
    }
    out
}

/// The free operad on corollas `T_k` of degree +1 with the tree differential.
pub fn shleib_operad() -> FreeOperad {
    FreeOperad::new("sΛLeib∞", Generators::Corollas { degree: 1 })
        .expect("corolla generators are valid")
        .with_differential(|k, _| tree_diff_generator(k))
}

/// `d_t` on a combination of tree monomials.
pub fn tree_diff(x: &Element<TreeMonomial>) -> Result<Element<TreeMonomial>> {
    if let Some(k) = x.keys().find(|k| k.decorations().iter().any(|&d| d != 0)) {
        return Err(Error::arg(format!("`{k}` is not a corolla monomial")));
    }
    Ok(differential(&shleib_operad(), x))
}
