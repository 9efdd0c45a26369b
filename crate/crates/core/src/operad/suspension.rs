use std::fmt;

use super::{sign, Element, Operad};
use crate::error::{Error, Result};
use crate::exact::{Permutation, Scalar};

/// The single basis element `f_n` of a line operad in arity `n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LineKey(pub usize);

impl fmt::Display for LineKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// Endomorphism operad of a line concentrated in degree `−shift`:
/// `f_n` has degree `shift·(n−1)`, `S_n` acts by the sign character and
/// `f_m ∘_i f_k = (−1)^{(k−1)(i−1)} f_{m+k−1}`.
#[derive(Clone, Copy, Debug)]
pub struct LineOperad {
    shift: i64,
}

impl LineOperad {
    pub fn new(shift: i64) -> Result<Self> {
        if shift != 1 && shift != -1 {
            return Err(Error::arg(format!("line operad shift must be ±1, got {shift}")));
        }
        Ok(LineOperad { shift })
    }
}

impl Operad for LineOperad {
    type Key = LineKey;

    fn name(&self) -> String {
        format!("Line({})", self.shift)
    }

    fn key_arity(&self, key: &LineKey) -> usize {
        key.0
    }

    fn key_degree(&self, key: &LineKey) -> i64 {
        self.shift * (key.0 as i64 - 1)
    }

    fn basis(&self, n: usize) -> Result<Vec<LineKey>> {
        if n == 0 {
            return Err(Error::arg("arity must be at least 1"));
        }
        Ok(vec![LineKey(n)])
    }

    fn unit(&self) -> LineKey {
        LineKey(1)
    }

    fn compose_keys(&self, p: &LineKey, i: usize, q: &LineKey) -> Element<LineKey> {
        let exponent = (q.0 as i64 - 1) * (i as i64 - 1);
        Element::term(p.0 + q.0 - 1, LineKey(p.0 + q.0 - 1), sign(exponent))
    }

    fn act_key(&self, sigma: &Permutation, p: &LineKey) -> Element<LineKey> {
        Element::term(p.0, *p, Scalar::from_int(sigma.sign()))
    }
}

/// Operadic suspension `ΛP` (`shift = 1`) or its inverse (`shift = −1`).
///
/// Equal to `P ⊗ LineOperad(shift)` with the line factor dropped from keys.
#[derive(Clone, Debug)]
pub struct Suspension<P> {
    inner: P,
    shift: i64,
}

pub fn suspend<P: Operad>(inner: P) -> Suspension<P> {
    Suspension { inner, shift: 1 }
}

pub fn desuspend<P: Operad>(inner: P) -> Suspension<P> {
    Suspension { inner, shift: -1 }
}

impl<P: Operad> Suspension<P> {
    pub fn inner(&self) -> &P {
        &self.inner
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }
}

impl<P: Operad> Operad for Suspension<P> {
    type Key = P::Key;

    fn name(&self) -> String {
        let symbol = if self.shift == 1 { "Λ" } else { "Λ⁻¹" };
        format!("{symbol}{}", self.inner.name())
    }

    fn key_arity(&self, key: &P::Key) -> usize {
        self.inner.key_arity(key)
    }

    fn key_degree(&self, key: &P::Key) -> i64 {
        self.inner.key_degree(key) + self.shift * (self.inner.key_arity(key) as i64 - 1)
    }

    fn basis(&self, n: usize) -> Result<Vec<P::Key>> {
        self.inner.basis(n)
    }

    fn unit(&self) -> P::Key {
        self.inner.unit()
    }

    fn compose_keys(&self, p: &P::Key, i: usize, q: &P::Key) -> Element<P::Key> {
        let m = self.inner.key_arity(p) as i64;
        let k = self.inner.key_arity(q) as i64;
        let exponent = (m - 1) * self.inner.key_degree(q) + (k - 1) * (i as i64 - 1);
        self.inner.compose_keys(p, i, q).scaled(&sign(exponent))
    }

    fn act_key(&self, sigma: &Permutation, p: &P::Key) -> Element<P::Key> {
        self.inner.act_key(sigma, p).scaled(&Scalar::from_int(sigma.sign()))
    }

    fn has_differential(&self) -> bool {
        self.inner.has_differential()
    }

    fn differential_key(&self, p: &P::Key) -> Element<P::Key> {
        self.inner.differential_key(p)
    }
}
