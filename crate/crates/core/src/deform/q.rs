use super::word::{compose_o, DerivationWord, WordTuple};
use crate::error::{Error, Result};
use crate::exact::Permutation;
use crate::operad::{parse_element, Element, Operad};

/// The operad `Q`: tuples of words in a single odd letter `d_0` with
/// `d_0 d_0 = 0`, so every slot is `1` or `d0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct QOperad;

fn d0() -> DerivationWord {
    DerivationWord::new(vec![0])
}

fn check_q(t: &WordTuple) -> Result<()> {
    if t.slots().iter().any(|w| w.letters().iter().any(|&k| k != 0)) {
        return Err(Error::arg(format!("`{t}` uses letters other than d0")));
    }
    Ok(())
}

/// Drops tuples with a slot `d0 d0 ⋯`.
fn reduce(e: Element<WordTuple>) -> Element<WordTuple> {
    e.filter(|t| t.slots().iter().all(|w| w.len() <= 1))
}

impl QOperad {
    /// Parses tuples over `d0`; words with a repeated `d0` are zero.
    pub fn parse_element(&self, text: &str) -> Result<Element<WordTuple>> {
        parse_element(text, |term| {
            let t: WordTuple = term.parse()?;
            check_q(&t)?;
            Ok(reduce(Element::basis(t.arity(), t)))
        })
    }
}

impl Operad for QOperad {
    type Key = WordTuple;

    fn name(&self) -> String {
        "Q".into()
    }

    fn key_arity(&self, key: &WordTuple) -> usize {
        key.arity()
    }

    fn key_degree(&self, key: &WordTuple) -> i64 {
        key.degree()
    }

    fn basis(&self, n: usize) -> Result<Vec<WordTuple>> {
        if n == 0 {
            return Err(Error::arg("arity must be at least 1"));
        }
        if n > 20 {
            return Err(Error::Resource(format!("Q({n}) has 2^{n} basis elements")));
        }
        let mut out: Vec<WordTuple> = (0u32..1 << n)
            .map(|mask| {
                let slots = (0..n)
                    .map(|j| {
                        if mask >> j & 1 == 1 {
                            d0()
                        } else {
                            DerivationWord::empty()
                        }
                    })
                    .collect();
                WordTuple::new(slots).expect("n ≥ 1")
            })
            .collect();
        out.sort();
        Ok(out)
    }

    fn unit(&self) -> WordTuple {
        WordTuple::unit()
    }

    fn compose_keys(&self, p: &WordTuple, i: usize, q: &WordTuple) -> Element<WordTuple> {
        reduce(compose_o(p, i, q))
    }

    fn act_key(&self, sigma: &Permutation, p: &WordTuple) -> Element<WordTuple> {
        let (t, s) = p.permute(sigma).expect("size checked by caller");
        Element::term(t.arity(), t, s)
    }
}

/// The `n` tuples of `Q^{n−1}(n)`: `d0` in every slot but one.
pub fn basis_sperm(n: usize) -> Result<Vec<WordTuple>> {
    if n == 0 {
        return Err(Error::arg("arity must be at least 1"));
    }
    let mut out: Vec<WordTuple> = (1..=n).map(|k| sperm_tuple(n, k)).collect();
    out.sort();
    Ok(out)
}

/// The tuple of `Q^{n−1}(n)` whose empty slot is `k`.
pub fn sperm_tuple(n: usize, k: usize) -> WordTuple {
    let slots = (1..=n)
        .map(|j| if j == k { DerivationWord::empty() } else { d0() })
        .collect();
    WordTuple::new(slots).expect("n ≥ 1")
}

/// The suboperad `(Q^{n−1}(n))_n` of `Q`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SPerm;

impl SPerm {
    pub fn parse_element(&self, text: &str) -> Result<Element<WordTuple>> {
        let e = QOperad.parse_element(text)?;
        if let Some(t) = e.keys().find(|t| t.degree() + 1 != t.arity() as i64) {
            return Err(Error::arg(format!("`{t}` is not in Q^{{n−1}}(n)")));
        }
        Ok(e)
    }
}

impl Operad for SPerm {
    type Key = WordTuple;

    fn name(&self) -> String {
        "sΛPerm".into()
    }

    fn key_arity(&self, key: &WordTuple) -> usize {
        key.arity()
    }

    fn key_degree(&self, key: &WordTuple) -> i64 {
        key.degree()
    }

    fn basis(&self, n: usize) -> Result<Vec<WordTuple>> {
        basis_sperm(n)
    }

    fn unit(&self) -> WordTuple {
        WordTuple::unit()
    }

    fn compose_keys(&self, p: &WordTuple, i: usize, q: &WordTuple) -> Element<WordTuple> {
        QOperad.compose_keys(p, i, q)
    }

    fn act_key(&self, sigma: &Permutation, p: &WordTuple) -> Element<WordTuple> {
        QOperad.act_key(sigma, p)
    }
}
