use std::fmt;

use crate::error::{Error, Result};

use super::Scalar;

/// A bijection of `{1, …, n}`, stored by its images `σ(1), …, σ(n)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::arg(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// The transposition exchanging `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::arg(format!("transposition ({a} {b}) outside S_{n}")));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation(images))
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::ArityMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(Permutation(other.0.iter().map(|&i| self.0[i - 1]).collect()))
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// The sign character `sgn(σ) = ±1`.
    pub fn sign(&self) -> i64 {
        if self.inversions() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All of `S_n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sign picked up when the homogeneous factor in position `i` is moved to
/// position `perm(i)`: one factor `(-1)^{|a_i||a_j|}` per inverted pair.
pub fn koszul_sign(perm: &Permutation, degrees: &[i64]) -> Result<Scalar> {
    if degrees.len() != perm.size() {
        return Err(Error::ArityMismatch {
            expected: perm.size(),
            found: degrees.len(),
        });
    }
    Ok(Scalar::sign(koszul_exponent(perm.images(), degrees)))
}

pub(crate) fn koszul_exponent(images: &[usize], degrees: &[i64]) -> i64 {
    let mut exponent = 0;
    for i in 0..images.len() {
        if degrees[i] % 2 == 0 {
            continue;
        }
        for j in i + 1..images.len() {
            if images[i] > images[j] && degrees[j] % 2 != 0 {
                exponent += 1;
            }
        }
    }
    exponent
}

/// All `(p, q)`-unshuffles: `σ(1) < … < σ(p)` and `σ(p+1) < … < σ(p+q)`,
/// ordered lexicographically by images.
pub fn unshuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == p {
            let mut images = chosen.clone();
            images.extend((1..=n).filter(|x| !chosen.contains(x)));
            out.push(Permutation(images));
            return;
        }
        let remaining = p - chosen.len();
        for x in start..=n + 1 - remaining {
            chosen.push(x);
            rec(x + 1, n, p, chosen, out);
            chosen.pop();
        }
    }
    rec(1, n, p, &mut chosen, &mut out);
    out
}
