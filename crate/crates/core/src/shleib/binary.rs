use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::derived::{evaluate, HKey, WordContext};
use crate::deform::{DerivationWord, SPerm, WordTuple};
use crate::error::{Error, Result};
use crate::exact::{factorial, kernel_basis, rank, rank_mod_p, unshuffles, Permutation, Scalar, SparseMatrix};
use crate::lie::{left_fold_labels, normalize, Derived, Lie};
use crate::operad::{
    compose_partial, free_operad_basis, image_standard, symmetric_action, Element, FreeOperad, Generators, Hadamard,
    HadamardKey, Operad, TreeMonomial,
};
use crate::trees::PlanarTree;

pub type LieQ = Hadamard<Lie, SPerm>;

pub fn lie_sperm() -> LieQ {
    Hadamard::new(Lie, SPerm)
}

/// The free operad on one odd binary generator `T2`.
pub fn free_binary() -> FreeOperad {
    FreeOperad::new("T(sΛLeib(2))", binary_generators()).expect("valid generators")
}

fn binary_generators() -> Generators {
    Generators::Finite(BTreeMap::from([(2, vec![1])]))
}

/// `{d_0(1),2} = {1,2} ⊗ (d_0⊗1)`.
pub fn psi_generator() -> Element<HKey> {
    let tuple = WordTuple::new(vec![DerivationWord::new(vec![0]), DerivationWord::empty()]).expect("arity 2");
    let lie = normalize(&left_fold_labels(&[1, 2]).expect("nonempty")).expect("multilinear");
    Element::from_terms(
        2,
        lie.into_terms().map(|(k, c)| (HadamardKey::new(k, tuple.clone()), c)),
    )
}

/// Images under `ψ : T(sΛLeib(2)) → Lie ⊗ sΛPerm` of every monomial of
/// arity `n`, in basis order.
fn psi_images(n: usize) -> Result<(Vec<TreeMonomial>, Vec<Element<HKey>>)> {
    let target = lie_sperm();
    let source = free_operad_basis(&binary_generators(), n)?;
    let mut by_shape: HashMap<PlanarTree, Element<HKey>> = HashMap::new();
    for x in &source {
        by_shape
            .entry(x.shape().clone())
            .or_insert_with(|| image_standard(&target, x.shape(), x.decorations(), &|_, _| psi_generator()));
    }
    let images = source
        .par_iter()
        .map(|x| symmetric_action(&target, x.labels(), &by_shape[x.shape()]))
        .collect::<Result<_>>()?;
    Ok((source, images))
}

/// Matrix with one column per source monomial and one row per target key.
fn psi_transpose(images: &[Element<HKey>]) -> Result<SparseMatrix> {
    let mut rows: HashMap<&HKey, usize> = HashMap::new();
    let mut triplets = Vec::new();
    for (col, e) in images.iter().enumerate() {
        for (k, c) in e.iter() {
            let next = rows.len();
            triplets.push((*rows.entry(k).or_insert(next), col, c.clone()));
        }
    }
    SparseMatrix::from_triplets(rows.len(), images.len(), triplets)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDims {
    pub arity: usize,
    /// `dim (Lie ⊗ sΛPerm)(n)`.
    pub model: usize,
    /// Rank of `ψ` in arity `n`: the part generated by arity 2.
    pub generated: usize,
    /// `dim T(n)/(R)(n)` for the ideal generated by the odd Leibniz
    /// relations, when computed.
    pub quotient: Option<usize>,
    pub expected: u128,
}

impl BinaryDims {
    pub fn pass(&self) -> bool {
        let e = self.expected;
        self.model as u128 == e && self.generated as u128 == e && self.quotient.is_none_or(|q| q as u128 == e)
    }
}

/// Dimensions of the binary model in arities `1..=max_n`. The quotient of
/// the free operad by the ideal generated by `ker ψ_3` is computed up to
/// `quotient_max`.
pub fn binary_dims(max_n: usize, quotient_max: usize) -> Result<Vec<BinaryDims>> {
    let mut out = Vec::new();
    // basis of the ideal in each arity, as vectors over the monomial basis
    let mut ideal: BTreeMap<usize, Vec<Element<TreeMonomial>>> = BTreeMap::new();
    let mut monomials: BTreeMap<usize, Vec<TreeMonomial>> = BTreeMap::new();
    for n in 1..=max_n {
        let model = lie_sperm().basis(n)?.len();
        let (source, images) = psi_images(n)?;
        let m = psi_transpose(&images)?;
        let generated = if n == 1 { 1 } else { rank(&m) };
        let mut quotient = None;
        if n <= quotient_max {
            let kernel_dim = source.len() - generated;
            let dim_ideal = match n {
                0..=2 => 0,
                3 => kernel_dim,
                _ => ideal_rank(n, &ideal, &monomials, kernel_dim)?,
            };
            quotient = Some(source.len() - dim_ideal);
            // I(n) ⊆ ker ψ_n, so equal dimensions make them equal
            if kernel_dim != dim_ideal {
                return Err(Error::arg(format!(
                    "arity {n}: ideal has dimension {dim_ideal}, kernel of ψ has {kernel_dim}"
                )));
            }
            if n >= 3 && n < quotient_max {
                let kernel = kernel_basis(&m)
                    .into_iter()
                    .map(|v| Element::from_terms(n, v.entries().iter().map(|(c, x)| (source[*c].clone(), x.clone()))))
                    .collect();
                ideal.insert(n, kernel);
            }
        }
        monomials.insert(n, source);
        out.push(BinaryDims {
            arity: n,
            model,
            generated,
            quotient,
            expected: factorial(n as u64).try_into().unwrap_or(u128::MAX),
        });
    }
    Ok(out)
}

/// Permutations of `1..n` increasing on the block `i..i+m−1` and on its
/// complement.
fn block_shuffles(n: usize, i: usize, m: usize) -> Vec<Permutation> {
    unshuffles(m, n - m)
        .into_iter()
        .map(|pi| {
            let s = pi.images();
            let (block, rest) = s.split_at(m);
            let mut images = rest[..i - 1].to_vec();
            images.extend_from_slice(block);
            images.extend_from_slice(&rest[i - 1..]);
            Permutation::from_images(images).expect("a permutation")
        })
        .collect()
}

/// Rank of the ideal in arity `n ≥ 4`, known to be at most `upper`, spanned by shuffled composites
/// `I(n−1) ∘_i T2` and `T2 ∘_i I(n−1)`. These suffice: a binary tree with a
/// relation inserted either has a cherry outside the relation or is a comb
/// whose root lies outside it.
fn ideal_rank(
    n: usize,
    ideal: &BTreeMap<usize, Vec<Element<TreeMonomial>>>,
    monomials: &BTreeMap<usize, Vec<TreeMonomial>>,
    upper: usize,
) -> Result<usize> {
    let free = free_binary();
    let index: HashMap<TreeMonomial, usize> = free_operad_basis(&binary_generators(), n)?
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    let mut jobs: Vec<(Element<TreeMonomial>, usize, Element<TreeMonomial>, usize)> = Vec::new();
    for k in [2, n - 1] {
        let m = n + 1 - k;
        for i in 1..=k {
            for a in ideal.get(&k).into_iter().flatten() {
                for b in &monomials[&m] {
                    jobs.push((a.clone(), i, Element::basis(m, b.clone()), m));
                }
            }
            for a in &monomials[&k] {
                for b in ideal.get(&m).into_iter().flatten() {
                    jobs.push((Element::basis(k, a.clone()), i, b.clone(), m));
                }
            }
        }
    }
    let rows: Vec<Vec<(usize, Scalar)>> = jobs
        .par_iter()
        .map(|(a, i, b, m)| -> Result<Vec<Vec<(usize, Scalar)>>> {
            let c = compose_partial(&free, a, *i, b)?;
            block_shuffles(n, *i, *m)
                .iter()
                .map(|sigma| {
                    let e = symmetric_action(&free, sigma, &c)?;
                    Ok(e.into_terms().map(|(x, c)| (index[&x], c)).collect())
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let triplets = rows
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x.clone())));
    let m = SparseMatrix::from_triplets(rows.len(), index.len(), triplets)?;
    // the rank mod p is a lower bound and `upper` an upper bound
    if rank_mod_p(&m, PRIME) == Some(upper) {
        return Ok(upper);
    }
    Ok(rank(&m))
}

const PRIME: u64 = 2_147_483_647;

#[derive(Clone, Debug)]
pub struct LeibnizIdentity {
    pub lhs: Element<HKey>,
    /// `{{d_0(1),d_0(2)},3} − {d_0(2),{d_0(1),3}}`.
    pub middle: Element<HKey>,
    /// `−{d_0{d_0(1),2},3} − {d_0(2),{d_0(1),3}}`.
    pub rhs: Element<HKey>,
    /// `d_0{1,2}` and `{d_0(1),2} + {1,d_0(2)}`.
    pub derivation: (Element<HKey>, Element<HKey>),
}

impl LeibnizIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.middle && self.lhs == self.rhs && self.derivation.0 == self.derivation.1
    }
}

fn q(text: &str) -> Result<Element<HKey>> {
    evaluate(&text.parse::<Derived>()?, WordContext::Q)
}

/// Evaluates both sides of the odd Leibniz identity for the derived bracket
/// `{d_0(1),2}` in `Lie ⊗ sΛPerm`.
pub fn odd_leibniz_identity() -> Result<LeibnizIdentity> {
    let lhs = q("{d0(1),{d0(2),3}}")?;
    let cross = q("{d0(2),{d0(1),3}}")?;
    let middle = q("{{d0(1),d0(2)},3}")?.sub(&cross);
    let rhs = q("{d0{d0(1),2},3}")?.neg().sub(&cross);
    let mut sum = q("{d0(1),2}")?;
    sum.add(&q("{1,d0(2)}")?);
    Ok(LeibnizIdentity {
        lhs,
        middle,
        rhs,
        derivation: (q("d0{1,2}")?, sum),
    })
}
