use std::fmt;
use std::str::FromStr;

use super::{sign, Element, Operad};
use crate::error::{Error, Result};
use crate::exact::Permutation;

/// Basis key `p ⊗ q` of a Hadamard product, written `p#q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HadamardKey<A, B> {
    pub left: A,
    pub right: B,
}

impl<A, B> HadamardKey<A, B> {
    pub fn new(left: A, right: B) -> Self {
        HadamardKey { left, right }
    }
}

impl<A: fmt::Display, B: fmt::Display> fmt::Display for HadamardKey<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.left, self.right)
    }
}

impl<A, B> FromStr for HadamardKey<A, B>
where
    A: FromStr<Err = Error>,
    B: FromStr<Err = Error>,
{
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pos = s.find('#').ok_or_else(|| Error::parse(1, "expected `left#right`"))?;
        let left = s[..pos].parse()?;
        let right = s[pos + 1..].parse().map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse {
                offset: offset + s[..=pos].chars().count(),
                message,
            },
            e => e,
        })?;
        Ok(HadamardKey { left, right })
    }
}

/// The arity-wise tensor product `P ⊗ Q` with diagonal action.
#[derive(Clone, Debug)]
pub struct Hadamard<P, Q> {
    left: P,
    right: Q,
}

impl<P: Operad, Q: Operad> Hadamard<P, Q> {
    pub fn new(left: P, right: Q) -> Self {
        Hadamard { left, right }
    }

    pub fn left(&self) -> &P {
        &self.left
    }

    pub fn right(&self) -> &Q {
        &self.right
    }

    /// `a ⊗ b` extended bilinearly.
    pub fn tensor(&self, a: &Element<P::Key>, b: &Element<Q::Key>) -> Element<HadamardKey<P::Key, Q::Key>> {
        debug_assert_eq!(a.arity(), b.arity());
        let mut out = Element::zero(a.arity());
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_term(HadamardKey::new(x.clone(), y.clone()), cx * cy);
            }
        }
        out
    }
}

impl<P: Operad, Q: Operad> Operad for Hadamard<P, Q> {
    type Key = HadamardKey<P::Key, Q::Key>;

    fn name(&self) -> String {
        format!("{}⊗{}", self.left.name(), self.right.name())
    }

    fn key_arity(&self, key: &Self::Key) -> usize {
        self.left.key_arity(&key.left)
    }

    fn key_degree(&self, key: &Self::Key) -> i64 {
        self.left.key_degree(&key.left) + self.right.key_degree(&key.right)
    }

    fn basis(&self, n: usize) -> Result<Vec<Self::Key>> {
        let left = self.left.basis(n)?;
        let right = self.right.basis(n)?;
        let mut out = Vec::with_capacity(left.len() * right.len());
        for a in &left {
            for b in &right {
                out.push(HadamardKey::new(a.clone(), b.clone()));
            }
        }
        Ok(out)
    }

    fn unit(&self) -> Self::Key {
        HadamardKey::new(self.left.unit(), self.right.unit())
    }

    fn compose_keys(&self, p: &Self::Key, i: usize, q: &Self::Key) -> Element<Self::Key> {
        let a = self.left.compose_keys(&p.left, i, &q.left);
        let b = self.right.compose_keys(&p.right, i, &q.right);
        let s = sign(self.right.key_degree(&p.right) * self.left.key_degree(&q.left));
        self.tensor(&a, &b).scaled(&s)
    }

    fn act_key(&self, sigma: &Permutation, p: &Self::Key) -> Element<Self::Key> {
        self.tensor(&self.left.act_key(sigma, &p.left), &self.right.act_key(sigma, &p.right))
    }

    fn has_differential(&self) -> bool {
        self.left.has_differential() || self.right.has_differential()
    }

    fn differential_key(&self, p: &Self::Key) -> Element<Self::Key> {
        let n = self.key_arity(p);
        let a = Element::basis(n, p.left.clone());
        let b = Element::basis(n, p.right.clone());
        let mut out = Element::zero(n);
        if self.left.has_differential() {
            out.add(&self.tensor(&self.left.differential_key(&p.left), &b));
        }
        if self.right.has_differential() {
            let s = sign(self.left.key_degree(&p.left));
            out.add_scaled(&self.tensor(&a, &self.right.differential_key(&p.right)), &s);
        }
        out
    }
}
