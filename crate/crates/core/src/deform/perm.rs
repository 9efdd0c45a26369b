use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Permutation;
use crate::operad::{Element, Operad};

/// `e_k ∈ Perm(n)`: the product whose distinguished input is `k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PermKey {
    pub arity: usize,
    pub special: usize,
}

impl fmt::Display for PermKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}/{}", self.special, self.arity)
    }
}

/// The operad of permutation algebras, with `Perm(n)` spanned by `e_1, …, e_n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Perm;

impl Operad for Perm {
    type Key = PermKey;

    fn name(&self) -> String {
        "Perm".into()
    }

    fn key_arity(&self, key: &PermKey) -> usize {
        key.arity
    }

    fn key_degree(&self, _: &PermKey) -> i64 {
        0
    }

    fn basis(&self, n: usize) -> Result<Vec<PermKey>> {
        if n == 0 {
            return Err(Error::arg("arity must be at least 1"));
        }
        Ok((1..=n).map(|special| PermKey { arity: n, special }).collect())
    }

    fn unit(&self) -> PermKey {
        PermKey { arity: 1, special: 1 }
    }

    fn compose_keys(&self, p: &PermKey, i: usize, q: &PermKey) -> Element<PermKey> {
        let arity = p.arity + q.arity - 1;
        let special = match i.cmp(&p.special) {
            std::cmp::Ordering::Equal => p.special + q.special - 1,
            std::cmp::Ordering::Less => p.special + q.arity - 1,
            std::cmp::Ordering::Greater => p.special,
        };
        Element::basis(arity, PermKey { arity, special })
    }

    fn act_key(&self, sigma: &Permutation, p: &PermKey) -> Element<PermKey> {
        Element::basis(
            p.arity,
            PermKey {
                arity: p.arity,
                special: sigma.apply(p.special),
            },
        )
    }
}
