//! The Lie operad in the right-normed basis, bracket words over labels and
//! odd symbols `δ_k`, and elimination of the `δ`'s.

mod derived;
mod elim;
mod word;

pub use derived::{adjoint_embed, Derived};
pub use elim::{eliminate, reexpand, t_weight, weight, Decomposition, TWord};
pub use word::{
    expand, expand_combination, left_fold, left_fold_labels, right_normed, word_degree, Bracket, BracketWord, Letter,
};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{factorial, rank, Permutation, Scalar, SparseMatrix};
use crate::operad::{parse_element, Element, Operad};

/// The right-normed word `{u_1,{u_2,…,{u_{n−1},n}}}`, stored as `u`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LieKey(Vec<usize>);

impl LieKey {
    /// `u` must be a permutation of `1..=n−1`.
    pub fn new(u: Vec<usize>) -> Result<Self> {
        Permutation::from_images(u.clone())?;
        Ok(LieKey(u))
    }

    pub fn unit() -> Self {
        LieKey(Vec::new())
    }

    pub fn prefix(&self) -> &[usize] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len() + 1
    }

    pub fn word(&self) -> BracketWord {
        let mut labels = self.0.clone();
        labels.push(self.arity());
        right_normed(&labels).expect("nonempty")
    }
}

impl fmt::Display for LieKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

impl FromStr for LieKey {
    type Err = Error;

    /// Accepts only right-normed words ending in the largest label.
    fn from_str(s: &str) -> Result<Self> {
        let w: BracketWord = s.parse()?;
        let labels = multilinear_labels(&w)?;
        let key = LieKey(labels[..labels.len() - 1].to_vec());
        if labels.last() != Some(&labels.len()) || key.word() != w {
            return Err(Error::parse(1, format!("`{s}` is not a right-normed basis word")));
        }
        Ok(key)
    }
}

/// Leaf labels of `w` from left to right, checked to be `1..n` once each.
fn multilinear_labels(w: &BracketWord) -> Result<Vec<usize>> {
    let mut labels = Vec::new();
    for l in w.leaves() {
        match l {
            Letter::Label(x) => labels.push(*x),
            Letter::Delta(_) => return Err(Error::arg(format!("`{w}` contains a δ symbol"))),
        }
    }
    Permutation::from_images(labels.clone())
        .map_err(|_| Error::arg(format!("`{w}` is not multilinear in 1..{}", labels.len())))?;
    Ok(labels)
}

fn contains(w: &BracketWord, label: usize) -> bool {
    w.leaves().iter().any(|l| **l == Letter::Label(label))
}

/// Associative expansion of an even word, as (word, coefficient) pairs.
fn full(w: &BracketWord) -> Vec<(Vec<usize>, i64)> {
    match w {
        Bracket::Leaf(Letter::Label(l)) => vec![(vec![*l], 1)],
        Bracket::Leaf(Letter::Delta(_)) => unreachable!("checked multilinear"),
        Bracket::Node(a, b) => {
            let (ea, eb) = (full(a), full(b));
            let mut out = Vec::with_capacity(2 * ea.len() * eb.len());
            for (x, cx) in &ea {
                for (y, cy) in &eb {
                    out.push(([x.as_slice(), y].concat(), cx * cy));
                    out.push(([y.as_slice(), x].concat(), -cx * cy));
                }
            }
            out
        }
    }
}

/// The part of the expansion made of words ending in `last`.
fn restricted(w: &BracketWord, last: usize) -> Vec<(Vec<usize>, i64)> {
    match w {
        Bracket::Leaf(_) => vec![(vec![last], 1)],
        Bracket::Node(a, b) => {
            let (outer, inner, s) = if contains(b, last) { (a, b, 1) } else { (b, a, -1) };
            let eo = full(outer);
            let ei = restricted(inner, last);
            let mut out = Vec::with_capacity(eo.len() * ei.len());
            for (x, cx) in &eo {
                for (y, cy) in &ei {
                    out.push(([x.as_slice(), y].concat(), s * cx * cy));
                }
            }
            out
        }
    }
}

/// Expresses a multilinear label word in the right-normed basis.
///
/// The coefficient of `{u_1,{…,{u_{n−1},n}}}` equals the coefficient of the
/// associative word `u_1⋯u_{n−1}n` in the expansion.
pub fn normalize(w: &BracketWord) -> Result<Element<LieKey>> {
    let labels = multilinear_labels(w)?;
    let n = labels.len();
    let mut out = Element::zero(n);
    for (word, c) in restricted(w, n) {
        out.add_term(LieKey(word[..n - 1].to_vec()), Scalar::from_int(c));
    }
    Ok(out)
}

pub fn normalize_combination<'a>(
    terms: impl IntoIterator<Item = (&'a BracketWord, &'a Scalar)>,
) -> Result<Element<LieKey>> {
    let mut out: Option<Element<LieKey>> = None;
    for (w, c) in terms {
        let e = normalize(w)?;
        match &mut out {
            None => out = Some(e.scaled(c)),
            Some(o) => {
                if o.arity() != e.arity() {
                    return Err(Error::ArityMismatch {
                        expected: o.arity(),
                        found: e.arity(),
                    });
                }
                o.add_scaled(&e, c)
            }
        }
    }
    out.ok_or_else(|| Error::arg("empty combination"))
}

/// Replaces each label `l` by `sigma(l)`.
pub fn relabel(w: &BracketWord, sigma: &Permutation) -> BracketWord {
    w.map(&mut |l| match l {
        Letter::Label(x) => Letter::Label(sigma.apply(*x)),
        d => *d,
    })
}

/// `dim Lie(n) = (n−1)!`.
pub fn lie_dim(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::arg("arity must be at least 1"));
    }
    factorial(n as u64 - 1)
        .try_into()
        .map_err(|_| Error::Resource(format!("(n−1)! does not fit in 128 bits for n = {n}")))
}

/// Rank of the associative expansions of all right-normed words of arity `n`
/// inside the `n!`-dimensional multilinear space.
pub fn lie_expansion_rank(n: usize) -> Result<usize> {
    let basis = Lie.basis(n)?;
    let mut columns: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut triplets = Vec::new();
    for (r, key) in basis.iter().enumerate() {
        for (word, c) in full(&key.word()) {
            let next = columns.len();
            let col = *columns.entry(word).or_insert(next);
            triplets.push((r, col, Scalar::from_int(c)));
        }
    }
    let m = SparseMatrix::from_triplets(basis.len(), columns.len().max(1), triplets)?;
    Ok(rank(&m))
}

/// The Lie operad: one bracket of degree 0, antisymmetric, with Jacobi.
#[derive(Clone, Copy, Debug, Default)]
pub struct Lie;

impl Lie {
    /// Parses a combination of bracket words and normalizes it.
    pub fn parse_element(&self, text: &str) -> Result<Element<LieKey>> {
        parse_element(text, |term| normalize(&term.parse()?))
    }
}

/// `p ∘_i q` on bracket words: substitute `q` for label `i` and shift labels.
pub fn substitute(p: &BracketWord, i: usize, q: &BracketWord, m: usize) -> BracketWord {
    p.flat_map(&mut |l| match *l {
        Letter::Label(j) if j == i => q.map(&mut |x| match *x {
            Letter::Label(t) => Letter::Label(t + i - 1),
            d => d,
        }),
        Letter::Label(j) if j > i => Bracket::Leaf(Letter::Label(j + m - 1)),
        other => Bracket::Leaf(other),
    })
}

impl Operad for Lie {
    type Key = LieKey;

    fn name(&self) -> String {
        "Lie".into()
    }

    fn key_arity(&self, key: &LieKey) -> usize {
        key.arity()
    }

    fn key_degree(&self, _: &LieKey) -> i64 {
        0
    }

    fn basis(&self, n: usize) -> Result<Vec<LieKey>> {
        if n == 0 {
            return Err(Error::arg("arity must be at least 1"));
        }
        Ok(Permutation::all(n - 1)
            .into_iter()
            .map(|p| LieKey(p.images().to_vec()))
            .collect())
    }

    fn unit(&self) -> LieKey {
        LieKey::unit()
    }

    fn compose_keys(&self, p: &LieKey, i: usize, q: &LieKey) -> Element<LieKey> {
        normalize(&substitute(&p.word(), i, &q.word(), q.arity())).expect("substitution stays multilinear")
    }

    fn act_key(&self, sigma: &Permutation, p: &LieKey) -> Element<LieKey> {
        if sigma.apply(p.arity()) == p.arity() {
            return Element::basis(p.arity(), LieKey(p.0.iter().map(|&l| sigma.apply(l)).collect()));
        }
        normalize(&relabel(&p.word(), sigma)).expect("relabelling stays multilinear")
    }
}
