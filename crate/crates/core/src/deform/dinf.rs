use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use super::word::{compose_o, DerivationWord, WordTuple};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rank, Permutation, Scalar, SparseMatrix};
use crate::operad::{compose_partial, parse_element, Element, Operad};

/// Default arity bound for homology computations.
pub const HOMOLOGY_BOUND: usize = 5;

/// The deformation operad: the weight-zero part of `O`, with `∂`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DInfinity;

/// Ordered compositions of `total` into positive parts.
fn compositions(total: usize) -> Vec<Vec<u8>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first as u8);
            out.push(rest);
        }
    }
    out
}

/// Tuples of `n` words over `d_1, d_2, …` with letter-index sum `n − 1`,
/// optionally restricted to `degree` letters. Sorted.
pub fn basis_d(n: usize, degree: Option<usize>) -> Result<Vec<WordTuple>> {
    if n == 0 {
        return Err(Error::arg("arity must be at least 1"));
    }
    if n > 255 {
        return Err(Error::Resource(format!("arity {n} is too large for word tuples")));
    }
    if let Some(a) = degree {
        if n == 1 && a != 0 || n > 1 && !(1..n).contains(&a) {
            return Err(Error::arg(format!("degree {a} out of range for arity {n}")));
        }
    }
    // words by weight
    let words: Vec<Vec<DerivationWord>> = (0..n)
        .map(|w| compositions(w).into_iter().map(DerivationWord::new).collect())
        .collect();
    let mut out = Vec::new();
    let mut slots = Vec::with_capacity(n);
    fn fill(
        n: usize,
        remaining: usize,
        words: &[Vec<DerivationWord>],
        degree: Option<usize>,
        slots: &mut Vec<DerivationWord>,
        out: &mut Vec<WordTuple>,
    ) {
        if slots.len() == n {
            if remaining == 0 && degree.is_none_or(|a| slots.iter().map(DerivationWord::len).sum::<usize>() == a) {
                out.push(WordTuple::new(slots.clone()).expect("n ≥ 1"));
            }
            return;
        }
        for w in 0..=remaining {
            for word in &words[w] {
                slots.push(word.clone());
                fill(n, remaining - w, words, degree, slots, out);
                slots.pop();
            }
        }
    }
    fill(n, n - 1, &words, degree, &mut slots, &mut out);
    out.sort();
    Ok(out)
}

/// `C(n+a−1, a) · C(n−2, a−1)`.
pub fn dim_formula(n: usize, a: usize) -> Result<u128> {
    if n < 2 || a == 0 || a >= n {
        return Err(Error::arg(format!(
            "dim_formula needs n ≥ 2 and 1 ≤ a ≤ n−1, got n = {n}, a = {a}"
        )));
    }
    let v = binomial((n + a - 1) as u64, a as u64) * binomial((n - 2) as u64, (a - 1) as u64);
    v.to_u128()
        .ok_or_else(|| Error::Resource("dimension exceeds 128 bits".into()))
}

/// `dim D(n)`: 1 at `n = 1`, otherwise the sum of `dim_formula` over degrees.
pub fn dim_d(n: usize) -> Result<u128> {
    match n {
        0 => Err(Error::arg("arity must be at least 1")),
        1 => Ok(1),
        _ => (1..n).map(|a| dim_formula(n, a)).sum(),
    }
}

/// Letter multiplicities `λ_1, λ_2, …` of `d_1, d_2, …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LambdaProfile(Vec<u64>);

impl LambdaProfile {
    pub fn new(mut multiplicities: Vec<u64>) -> Self {
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        LambdaProfile(multiplicities)
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.0
    }

    /// Number of letters.
    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `Σ i·λ_i`.
    pub fn weight(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &l)| (i as u64 + 1) * l).sum()
    }

    /// All profiles of weight `n − 1`, i.e. partitions of `n − 1`.
    pub fn all(n: usize) -> Vec<LambdaProfile> {
        fn go(total: usize, max: usize, acc: &mut Vec<u64>, out: &mut Vec<LambdaProfile>) {
            if total == 0 {
                out.push(LambdaProfile::new(acc.clone()));
                return;
            }
            for k in (1..=total.min(max)).rev() {
                acc[k - 1] += 1;
                go(total - k, k, acc, out);
                acc[k - 1] -= 1;
            }
        }
        let mut out = Vec::new();
        if n >= 1 {
            let mut acc = vec![0; n.saturating_sub(1)];
            go(n - 1, n - 1, &mut acc, &mut out);
        }
        out
    }
}

impl fmt::Display for LambdaProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for LambdaProfile {
    type Err = Error;

    /// `(2,0)` or `2,0`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut v = Vec::new();
        for part in t.split(',') {
            v.push(
                part.trim()
                    .parse()
                    .map_err(|_| Error::parse(1, format!("bad multiplicity `{part}`")))?,
            );
        }
        Ok(LambdaProfile::new(v))
    }
}

/// Number of tuples in `D(n)` whose letters form the multiset `profile`:
/// `C(n+a−1, a) · a! / ∏ λ_i!`.
pub fn dim_delta(profile: &LambdaProfile, n: usize) -> Result<u128> {
    if n == 0 || profile.weight() != n as u64 - 1 {
        return Err(Error::arg(format!(
            "profile {profile} has weight {} but arity {n} needs {}",
            profile.weight(),
            n.saturating_sub(1)
        )));
    }
    let a = profile.degree();
    let mut v = binomial(n as u64 + a - 1, a) * factorial(a);
    for &l in profile.multiplicities() {
        v /= factorial(l);
    }
    v.to_u128()
        .ok_or_else(|| Error::Resource("dimension exceeds 128 bits".into()))
}

/// `∂d_n = −Σ_{i+j=n} d_i d_j` extended to a word as a derivation.
fn differential_word(w: &DerivationWord) -> Vec<(DerivationWord, Scalar)> {
    let letters = w.letters();
    let mut out = Vec::new();
    for (pos, &k) in letters.iter().enumerate() {
        let s = -Scalar::sign(pos as i64);
        for a in 1..k {
            let mut v = letters[..pos].to_vec();
            v.push(a);
            v.push(k - a);
            v.extend_from_slice(&letters[pos + 1..]);
            out.push((DerivationWord::new(v), s.clone()));
        }
    }
    out
}

/// `∂` on a tuple: slot by slot with sign `(−1)^{|x_1|+⋯+|x_{i−1}|}`.
pub fn differential_d(x: &WordTuple) -> Element<WordTuple> {
    let mut out = Element::zero(x.arity());
    let mut before = 0i64;
    for (j, w) in x.slots().iter().enumerate() {
        let s = Scalar::sign(before);
        for (dw, c) in differential_word(w) {
            let mut slots = x.slots().to_vec();
            slots[j] = dw;
            out.add_term(WordTuple::new(slots).expect("nonempty"), c * &s);
        }
        before += w.len() as i64;
    }
    out
}

impl DInfinity {
    pub fn parse_element(&self, text: &str) -> Result<Element<WordTuple>> {
        parse_element(text, |term| {
            let t: WordTuple = term.parse()?;
            self.check(&t)?;
            Ok(Element::basis(t.arity(), t))
        })
    }

    pub fn check(&self, t: &WordTuple) -> Result<()> {
        if t.slots().iter().any(|w| w.letters().contains(&0)) {
            return Err(Error::arg(format!("`{t}` uses d0, which only exists in the Q model")));
        }
        if t.weight() != 0 {
            return Err(Error::arg(format!("`{t}` has weight {}, not 0", t.weight())));
        }
        Ok(())
    }
}

impl Operad for DInfinity {
    type Key = WordTuple;

    fn name(&self) -> String {
        "D∞".into()
    }

    fn key_arity(&self, key: &WordTuple) -> usize {
        key.arity()
    }

    fn key_degree(&self, key: &WordTuple) -> i64 {
        key.degree()
    }

    fn basis(&self, n: usize) -> Result<Vec<WordTuple>> {
        basis_d(n, None)
    }

    fn unit(&self) -> WordTuple {
        WordTuple::unit()
    }

    fn compose_keys(&self, p: &WordTuple, i: usize, q: &WordTuple) -> Element<WordTuple> {
        compose_o(p, i, q)
    }

    fn act_key(&self, sigma: &Permutation, p: &WordTuple) -> Element<WordTuple> {
        let (t, s) = p.permute(sigma).expect("size checked by caller");
        Element::term(t.arity(), t, s)
    }

    fn has_differential(&self) -> bool {
        true
    }

    fn differential_key(&self, p: &WordTuple) -> Element<WordTuple> {
        differential_d(p)
    }
}

fn index(basis: &[WordTuple]) -> HashMap<&WordTuple, usize> {
    basis.iter().enumerate().map(|(k, t)| (t, k)).collect()
}

/// Matrix of `∂: D^a(n) → D^{a+1}(n)` with one row per source basis tuple.
pub fn differential_matrix(n: usize, a: usize) -> Result<SparseMatrix> {
    let source = basis_d(n, Some(a))?;
    let target = if a + 1 < n {
        basis_d(n, Some(a + 1))?
    } else {
        Vec::new()
    };
    let idx = index(&target);
    let mut triplets = Vec::new();
    for (r, t) in source.iter().enumerate() {
        for (k, c) in differential_d(t).iter() {
            triplets.push((r, idx[k], c.clone()));
        }
    }
    SparseMatrix::from_triplets(source.len(), target.len(), triplets)
}

/// `dim H^a(D(n), ∂)` for `a = 1..n−1`, with the default arity bound.
pub fn homology_d(n: usize) -> Result<Vec<usize>> {
    homology_d_bounded(n, HOMOLOGY_BOUND)
}

pub fn homology_d_bounded(n: usize, bound: usize) -> Result<Vec<usize>> {
    if n < 2 {
        return Err(Error::arg("homology needs arity at least 2"));
    }
    if n > bound {
        return Err(Error::Resource(format!("arity {n} exceeds the homology bound {bound}")));
    }
    let ranks: Vec<usize> = (1..n)
        .map(|a| differential_matrix(n, a).map(|m| rank(&m)))
        .collect::<Result<_>>()?;
    Ok((1..n)
        .map(|a| {
            let dim = basis_d(n, Some(a)).expect("in range").len();
            let incoming = if a >= 2 { ranks[a - 2] } else { 0 };
            dim - ranks[a - 1] - incoming
        })
        .collect())
}

/// Rank of the span of `D^1(n)` together with all compositions of lower
/// arity basis elements. Equals `dim D(n)` when `D` is generated by `D^1`
/// in arities up to `n`.
pub fn generated_rank(n: usize) -> Result<usize> {
    let target = basis_d(n, None)?;
    let idx = index(&target);
    let generators = if n == 1 { target.clone() } else { basis_d(n, Some(1))? };
    let mut rows: Vec<Element<WordTuple>> = generators.into_iter().map(|t| Element::basis(n, t)).collect();
    for k in 2..n {
        let m = n + 1 - k;
        let left = basis_d(k, None)?;
        let right = basis_d(m, None)?;
        for p in &left {
            for q in &right {
                for i in 1..=k {
                    rows.push(compose_partial(
                        &DInfinity,
                        &Element::basis(k, p.clone()),
                        i,
                        &Element::basis(m, q.clone()),
                    )?);
                }
            }
        }
    }
    let triplets: Vec<(usize, usize, Scalar)> = rows
        .iter()
        .enumerate()
        .flat_map(|(r, e)| e.iter().map(|(k, c)| (r, idx[k], c.clone())).collect::<Vec<_>>())
        .collect();
    Ok(rank(&SparseMatrix::from_triplets(rows.len(), target.len(), triplets)?))
}
