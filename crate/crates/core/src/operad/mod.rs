//! Operads with explicit bases and the generic operations built on them.

mod element;
mod free;
mod hadamard;
mod suspension;

pub mod axioms;

pub use element::{parse_element, Element};
pub use free::{extend_morphism, free_operad_basis, image_standard, FreeOperad, Generators, TreeMonomial};
pub use hadamard::{Hadamard, HadamardKey};
pub use suspension::{desuspend, suspend, LineKey, LineOperad, Suspension};

use std::fmt::{Debug, Display};

use crate::error::{Error, Result};
use crate::exact::{Permutation, Scalar};

/// An operad presented by a canonical basis in each arity.
///
/// Structure maps are given on basis keys and extended bilinearly by the
/// free functions of this module. Implementations are immutable, so they can
/// be shared across threads.
pub trait Operad: Send + Sync {
    type Key: Clone + Ord + Debug + Display + Send + Sync;

    fn name(&self) -> String;

    fn key_arity(&self, key: &Self::Key) -> usize;

    fn key_degree(&self, key: &Self::Key) -> i64;

    /// The basis of arity `n`, sorted.
    fn basis(&self, n: usize) -> Result<Vec<Self::Key>>;

    fn unit(&self) -> Self::Key;

    /// `p ∘_i q` on basis keys, with `1 ≤ i ≤ arity(p)` already checked.
    fn compose_keys(&self, p: &Self::Key, i: usize, q: &Self::Key) -> Element<Self::Key>;

    /// The right action `σ · p`, with sizes already checked.
    fn act_key(&self, sigma: &Permutation, p: &Self::Key) -> Element<Self::Key>;

    fn has_differential(&self) -> bool {
        false
    }

    /// Differential of a basis key; of degree +1.
    fn differential_key(&self, p: &Self::Key) -> Element<Self::Key> {
        Element::zero(self.key_arity(p))
    }

    fn unit_element(&self) -> Element<Self::Key> {
        Element::basis(1, self.unit())
    }

    fn element(&self, key: Self::Key) -> Element<Self::Key> {
        Element::basis(self.key_arity(&key), key)
    }
}

/// The common degree of all terms, if the element is homogeneous and nonzero.
pub fn degree<O: Operad>(op: &O, p: &Element<O::Key>) -> Option<i64> {
    let mut degrees = p.keys().map(|k| op.key_degree(k));
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

fn check_keys<O: Operad>(op: &O, p: &Element<O::Key>) -> Result<()> {
    for k in p.keys() {
        let found = op.key_arity(k);
        if found != p.arity() {
            return Err(Error::ArityMismatch {
                expected: p.arity(),
                found,
            });
        }
    }
    Ok(())
}

pub fn compose_partial<O: Operad>(
    op: &O,
    p: &Element<O::Key>,
    i: usize,
    q: &Element<O::Key>,
) -> Result<Element<O::Key>> {
    if i == 0 || i > p.arity() {
        return Err(Error::IndexOutOfRange {
            index: i,
            arity: p.arity(),
        });
    }
    check_keys(op, p)?;
    check_keys(op, q)?;
    let mut out = Element::zero(p.arity() + q.arity() - 1);
    for (a, ca) in p.iter() {
        for (b, cb) in q.iter() {
            out.add_scaled(&op.compose_keys(a, i, b), &(ca * cb));
        }
    }
    Ok(out)
}

pub fn symmetric_action<O: Operad>(op: &O, sigma: &Permutation, p: &Element<O::Key>) -> Result<Element<O::Key>> {
    if sigma.size() != p.arity() {
        return Err(Error::ArityMismatch {
            expected: p.arity(),
            found: sigma.size(),
        });
    }
    check_keys(op, p)?;
    let mut out = Element::zero(p.arity());
    for (k, c) in p.iter() {
        out.add_scaled(&op.act_key(sigma, k), c);
    }
    Ok(out)
}

/// Applies the differential; zero when the operad carries none.
pub fn differential<O: Operad>(op: &O, p: &Element<O::Key>) -> Element<O::Key> {
    let mut out = Element::zero(p.arity());
    if !op.has_differential() {
        return out;
    }
    for (k, c) in p.iter() {
        out.add_scaled(&op.differential_key(k), c);
    }
    out
}

/// The permutation `τ` with `(σ·p) ∘_{σ(i)} q = τ · (p ∘_i q)`, where
/// `p` has arity `sigma.size()` and `q` has arity `m`.
pub fn block_permutation(sigma: &Permutation, i: usize, m: usize) -> Permutation {
    let n = sigma.size();
    let si = sigma.apply(i);
    let place = |label: usize| if label < si { label } else { label + m - 1 };
    let mut images = Vec::with_capacity(n + m - 1);
    for j in 1..=n {
        if j == i {
            images.extend((0..m).map(|t| si + t));
        } else {
            images.push(place(sigma.apply(j)));
        }
    }
    Permutation::from_images(images).expect("block permutation is a bijection")
}

/// The permutation `id ∘_i ρ` of arity `n + ρ.size() − 1`.
pub fn insert_permutation(n: usize, i: usize, rho: &Permutation) -> Permutation {
    let m = rho.size();
    let mut images: Vec<usize> = (1..i).collect();
    images.extend((1..=m).map(|t| i - 1 + rho.apply(t)));
    images.extend((i + 1..=n).map(|j| j + m - 1));
    Permutation::from_images(images).expect("inserted permutation is a bijection")
}

pub(crate) fn sign(exponent: i64) -> Scalar {
    Scalar::sign(exponent)
}

#[cfg(test)]
mod tests;
