use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{koszul_sign, Permutation, Scalar};
use crate::operad::Element;

/// A word `d_{k_1} d_{k_2} ⋯` of unary operators, outermost letter first.
/// Every letter has degree +1; `d_0` belongs to the `Q` model only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DerivationWord(Vec<u8>);

impl DerivationWord {
    pub fn empty() -> Self {
        DerivationWord(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        DerivationWord(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of letter indices.
    pub fn weight(&self) -> i64 {
        self.0.iter().map(|&k| k as i64).sum()
    }

    pub fn prepend(&self, letter: u8) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        DerivationWord(v)
    }
}

impl fmt::Display for DerivationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, k) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(".")?;
            }
            write!(f, "d{k}")?;
        }
        Ok(())
    }
}

fn parse_word(s: &str, offset: usize) -> Result<DerivationWord> {
    let t = s.trim();
    let lead = offset + s.len() - s.trim_start().len();
    if t == "1" {
        return Ok(DerivationWord::empty());
    }
    if t.is_empty() {
        return Err(Error::parse(lead + 1, "empty slot; write `1` for the empty word"));
    }
    let mut letters = Vec::new();
    let mut at = lead;
    for part in t.split('.') {
        let digits = part
            .strip_prefix('d')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| Error::parse(at + 1, format!("expected a letter `d<k>`, found `{part}`")))?;
        letters.push(
            digits
                .parse()
                .map_err(|_| Error::parse(at + 2, "letter index too large"))?,
        );
        at += part.chars().count() + 1;
    }
    Ok(DerivationWord(letters))
}

impl FromStr for DerivationWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s, 0)
    }
}

/// `x_1 ⊗ ⋯ ⊗ x_n`, written `x_1|⋯|x_n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WordTuple(Vec<DerivationWord>);

impl WordTuple {
    pub fn new(slots: Vec<DerivationWord>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::arg("a word tuple needs at least one slot"));
        }
        Ok(WordTuple(slots))
    }

    pub fn unit() -> Self {
        WordTuple(vec![DerivationWord::empty()])
    }

    /// All slots empty.
    pub fn empty(n: usize) -> Self {
        WordTuple(vec![DerivationWord::empty(); n])
    }

    pub fn slots(&self) -> &[DerivationWord] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Total number of letters.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|w| w.len() as i64).sum()
    }

    /// `Σ w(d_k) + 1 − n`.
    pub fn weight(&self) -> i64 {
        self.0.iter().map(DerivationWord::weight).sum::<i64>() + 1 - self.arity() as i64
    }

    /// Letter multiplicities: entry `k − 1` counts `d_k`.
    pub fn profile(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for w in &self.0 {
            for &k in w.letters() {
                let k = k as usize;
                if k == 0 {
                    continue;
                }
                if out.len() < k {
                    out.resize(k, 0);
                }
                out[k - 1] += 1;
            }
        }
        out
    }

    fn with_slot(&self, j: usize, w: DerivationWord) -> WordTuple {
        let mut slots = self.0.clone();
        slots[j] = w;
        WordTuple(slots)
    }

    /// Moves the word in slot `j` to slot `σ(j)`, with the Koszul sign of
    /// the word degrees.
    pub fn permute(&self, sigma: &Permutation) -> Result<(WordTuple, Scalar)> {
        if sigma.size() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: sigma.size(),
            });
        }
        let degrees: Vec<i64> = self.0.iter().map(|w| w.len() as i64).collect();
        let s = koszul_sign(sigma, &degrees)?;
        let mut slots = vec![DerivationWord::empty(); self.arity()];
        for (j, w) in self.0.iter().enumerate() {
            slots[sigma.apply(j + 1) - 1] = w.clone();
        }
        Ok((WordTuple(slots), s))
    }
}

impl fmt::Display for WordTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, w) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("|")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for WordTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut slots = Vec::new();
        let mut offset = 0;
        for part in s.split('|') {
            slots.push(parse_word(part, offset)?);
            offset += part.chars().count() + 1;
        }
        WordTuple::new(slots)
    }
}

/// Applies one letter as a derivation over the slots:
/// `d(z_1⊗⋯⊗z_m) = Σ_j (−1)^{|z_1|+⋯+|z_{j−1}|} z_1⊗⋯⊗d z_j⊗⋯⊗z_m`.
pub fn distribute(letter: u8, x: &Element<WordTuple>) -> Element<WordTuple> {
    let mut out = Element::zero(x.arity());
    for (t, c) in x.iter() {
        let mut before = 0i64;
        for (j, w) in t.slots().iter().enumerate() {
            out.add_term(t.with_slot(j, w.prepend(letter)), c * Scalar::sign(before));
            before += w.len() as i64;
        }
    }
    out
}

/// Partial composition in the operad `O`: the slots of `q` replace slot `i`
/// of `p`, and the word in slot `i` acts on them letter by letter, innermost
/// first. The block `q` passes the slots of `p` after slot `i`.
pub fn compose_o(p: &WordTuple, i: usize, q: &WordTuple) -> Element<WordTuple> {
    let n = p.arity();
    let m = q.arity();
    let mut inner = Element::basis(m, q.clone());
    for &letter in p.slots()[i - 1].letters().iter().rev() {
        inner = distribute(letter, &inner);
    }
    let after: i64 = p.slots()[i..].iter().map(|w| w.len() as i64).sum();
    let s = Scalar::sign(q.degree() * after);
    let mut out = Element::zero(n + m - 1);
    for (t, c) in inner.iter() {
        let mut slots = p.slots()[..i - 1].to_vec();
        slots.extend_from_slice(t.slots());
        slots.extend_from_slice(&p.slots()[i..]);
        out.add_term(WordTuple(slots), c * &s);
    }
    out
}
