use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use rayon::prelude::*;

use super::derived::{HKey, NormalDerivedBracket};
use super::tree_diff::shleib_operad;
use crate::deform::DInfinity;
use crate::error::{Error, Result};
use crate::exact::{rank, Permutation, Scalar, SparseMatrix};
use crate::lie::Lie;
use crate::operad::{
    differential, free_operad_basis, image_standard, symmetric_action, Element, Generators, Hadamard, Operad,
    TreeMonomial,
};
use crate::trees::PlanarTree;

pub type LieD = Hadamard<Lie, DInfinity>;

pub fn lie_d() -> LieD {
    Hadamard::new(Lie, DInfinity)
}

/// The morphism `sΛLeib∞ → Lie ⊗ D∞` sending `T_k` to the normal derived
/// bracket `{d_{k−1}(1),2,…,k}`. Images of standard-labelled shapes are
/// cached.
pub struct Theta {
    target: LieD,
    cache: RwLock<HashMap<PlanarTree, Element<HKey>>>,
}

impl Default for Theta {
    fn default() -> Self {
        Self::new()
    }
}

impl Theta {
    pub fn new() -> Self {
        Theta {
            target: lie_d(),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn target(&self) -> &LieD {
        &self.target
    }

    pub fn generator_image(k: usize) -> Element<HKey> {
        if k < 2 {
            return lie_d().unit_element();
        }
        NormalDerivedBracket::new(Permutation::identity(k))
            .expect("k ≥ 2")
            .to_element()
    }

    fn standard_image(&self, shape: &PlanarTree) -> Element<HKey> {
        if let Some(e) = self.cache.read().expect("cache lock").get(shape) {
            return e.clone();
        }
        let decorations = vec![0; shape.vertex_count()];
        let e = image_standard(&self.target, shape, &decorations, &|k, _| Self::generator_image(k));
        self.cache.write().expect("cache lock").insert(shape.clone(), e.clone());
        e
    }

    pub fn apply_key(&self, x: &TreeMonomial) -> Result<Element<HKey>> {
        if x.decorations().iter().any(|&d| d != 0) {
            return Err(Error::arg(format!("`{x}` is not a corolla monomial")));
        }
        symmetric_action(&self.target, x.labels(), &self.standard_image(x.shape()))
    }

    pub fn apply(&self, x: &Element<TreeMonomial>) -> Result<Element<HKey>> {
        let mut out = Element::zero(x.arity());
        for (k, c) in x.iter() {
            out.add_scaled(&self.apply_key(k)?, c);
        }
        Ok(out)
    }
}

pub fn theta(x: &Element<TreeMonomial>) -> Result<Element<HKey>> {
    Theta::new().apply(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub arity: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl IsoReport {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

/// Ranks the matrix of `θ` in arity `n`. Rows and columns split into blocks
/// by multiset of corolla arities, which `θ` sends to the multiset of letters
/// `d_{k−1}`; the blocks are ranked in parallel.
pub fn verify_iso(n: usize, max_cells: u64) -> Result<IsoReport> {
    if n < 1 {
        return Err(Error::arg("arity must be at least 1"));
    }
    let theta = Theta::new();
    let source = free_operad_basis(&Generators::Corollas { degree: 1 }, n)?;
    let target = theta.target().basis(n)?;
    let mut blocks: BTreeMap<Vec<usize>, Vec<&TreeMonomial>> = BTreeMap::new();
    for x in &source {
        let mut profile = x.shape().vertex_arities();
        profile.sort_unstable();
        blocks.entry(profile).or_default().push(x);
    }
    let largest = blocks.values().map(Vec::len).max().unwrap_or(0) as u64;
    if largest.saturating_mul(largest) > max_cells {
        return Err(Error::Resource(format!(
            "arity {n} needs a {largest}×{largest} block, above the cap of {max_cells} cells"
        )));
    }
    let ranks: Vec<usize> = blocks
        .par_iter()
        .map(|(_, rows)| -> Result<usize> {
            let mut columns: HashMap<HKey, usize> = HashMap::new();
            let mut triplets = Vec::new();
            for (r, x) in rows.iter().enumerate() {
                for (key, c) in theta.apply_key(x)?.into_terms() {
                    let next = columns.len();
                    let col = *columns.entry(key).or_insert(next);
                    triplets.push((r, col, c));
                }
            }
            Ok(rank(&SparseMatrix::from_triplets(rows.len(), columns.len(), triplets)?))
        })
        .collect::<Result<_>>()?;
    Ok(IsoReport {
        arity: n,
        source_dim: source.len(),
        target_dim: target.len(),
        rank: ranks.iter().sum(),
    })
}

#[derive(Clone, Debug)]
pub struct ChainMapReport {
    pub arity: usize,
    pub checked: usize,
    /// A monomial with `θ(d_t x) ≠ ∂ θ(x)`, with both sides.
    pub failure: Option<(TreeMonomial, Element<HKey>, Element<HKey>)>,
}

/// Checks `θ ∘ d_t = ∂ ∘ θ` on every monomial of arity `n`.
pub fn verify_chain_map(n: usize) -> Result<ChainMapReport> {
    let theta = Theta::new();
    let source_op = shleib_operad();
    let source = free_operad_basis(&Generators::Corollas { degree: 1 }, n)?;
    let failure = source
        .par_iter()
        .map(|x| -> Result<Option<(TreeMonomial, Element<HKey>, Element<HKey>)>> {
            let ex = Element::basis(n, x.clone());
            let lhs = theta.apply(&differential(&source_op, &ex))?;
            let rhs = differential(theta.target(), &theta.apply_key(x)?);
            Ok((lhs != rhs).then(|| (x.clone(), lhs, rhs)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(ChainMapReport {
        arity: n,
        checked: source.len(),
        failure,
    })
}

/// Rank of the span of all normal derived brackets of arity `n`.
pub fn normal_bracket_rank(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::arg("normal derived brackets have arity at least 2"));
    }
    let mut columns: HashMap<HKey, usize> = HashMap::new();
    let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
    let perms = Permutation::all(n);
    for (r, sigma) in perms.iter().enumerate() {
        for (key, c) in NormalDerivedBracket::new(sigma.clone())?.to_element().into_terms() {
            let next = columns.len();
            let col = *columns.entry(key).or_insert(next);
            triplets.push((r, col, c));
        }
    }
    Ok(rank(&SparseMatrix::from_triplets(
        perms.len(),
        columns.len(),
        triplets,
    )?))
}
