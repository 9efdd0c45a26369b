use std::fmt;

use crate::deform::{DerivationWord, WordTuple};
use crate::error::{Error, Result};
use crate::exact::{koszul_sign, Permutation, Scalar};
use crate::lie::{left_fold_labels, normalize, Bracket, BracketWord, Derived, Letter, LieKey};
use crate::operad::{Element, HadamardKey};

pub type HKey = HadamardKey<LieKey, WordTuple>;

/// Which operad of word tuples the derivation letters live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordContext {
    /// Letters `d_1, d_2, …`; results must have weight 0.
    D,
    /// The single letter `d_0` with `d_0 d_0 = 0`.
    Q,
}

type Term = (BracketWord, Vec<DerivationWord>, Scalar);

/// Terms with one derivation word per leaf, leaves in reading order.
fn eval(x: &Derived) -> Vec<Term> {
    match x {
        Derived::Label(l) => vec![(
            Bracket::Leaf(Letter::Label(*l)),
            vec![DerivationWord::empty()],
            Scalar::one(),
        )],
        Derived::Bracket(a, b) => {
            let (ea, eb) = (eval(a), eval(b));
            let mut out = Vec::with_capacity(ea.len() * eb.len());
            for (wa, la, ca) in &ea {
                for (wb, lb, cb) in &eb {
                    out.push((
                        Bracket::node(wa.clone(), wb.clone()),
                        [la.as_slice(), lb].concat(),
                        ca * cb,
                    ));
                }
            }
            out
        }
        Derived::Apply(letters, inner) => {
            let mut terms = eval(inner);
            for &letter in letters.iter().rev() {
                let letter = u8::try_from(letter).unwrap_or(u8::MAX);
                let mut next = Vec::new();
                for (w, words, c) in &terms {
                    let mut before = 0i64;
                    for j in 0..words.len() {
                        let mut v = words.clone();
                        v[j] = words[j].prepend(letter);
                        next.push((w.clone(), v, c * Scalar::sign(before)));
                        before += words[j].len() as i64;
                    }
                }
                terms = next;
            }
            terms
        }
    }
}

/// Evaluates a derived-bracket expression in the Hadamard basis
/// `Lie ⊗ D∞` or `Lie ⊗ Q`.
///
/// Derivation words are attached to leaves in reading order; moving them to
/// the slots of their labels contributes the Koszul sign of that reordering.
pub fn evaluate(x: &Derived, context: WordContext) -> Result<Element<HKey>> {
    let labels = x.labels();
    let n = labels.len();
    let reading = Permutation::from_images(labels.clone())
        .map_err(|_| Error::arg(format!("`{x}` is not multilinear in 1..{n}")))?;
    let mut out = Element::zero(n);
    for (word, words, c) in eval(x) {
        for w in &words {
            for &k in w.letters() {
                match context {
                    WordContext::D if k == 0 => return Err(Error::arg("d0 only exists in the Q model")),
                    WordContext::Q if k != 0 => return Err(Error::arg(format!("d{k} does not exist in the Q model"))),
                    _ => {}
                }
            }
        }
        if context == WordContext::Q && words.iter().any(|w| w.len() > 1) {
            continue;
        }
        let degrees: Vec<i64> = words.iter().map(|w| w.len() as i64).collect();
        let s = koszul_sign(&reading, &degrees)?;
        let mut slots = vec![DerivationWord::empty(); n];
        for (p, w) in words.into_iter().enumerate() {
            slots[labels[p] - 1] = w;
        }
        let tuple = WordTuple::new(slots)?;
        if context == WordContext::D && tuple.weight() != 0 {
            return Err(Error::arg(format!("`{x}` has weight {}, not 0", tuple.weight())));
        }
        for (key, lc) in normalize(&word)?.into_terms() {
            out.add_term(HadamardKey::new(key, tuple.clone()), lc * &c * &s);
        }
    }
    Ok(out)
}

/// `{d_{n−1}(l_1), l_2, …, l_n}`: left-normed, with the derivation on the
/// leftmost leaf.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NormalDerivedBracket {
    labels: Permutation,
}

impl NormalDerivedBracket {
    pub fn new(labels: Permutation) -> Result<Self> {
        if labels.size() < 2 {
            return Err(Error::arg("a normal derived bracket needs arity at least 2"));
        }
        Ok(NormalDerivedBracket { labels })
    }

    pub fn arity(&self) -> usize {
        self.labels.size()
    }

    pub fn labels(&self) -> &Permutation {
        &self.labels
    }

    pub fn to_derived(&self) -> Derived {
        let l = self.labels.images();
        let mut items = vec![Derived::apply(vec![self.arity() - 1], Derived::label(l[0]))];
        items.extend(l[1..].iter().map(|&x| Derived::label(x)));
        Derived::fold(items).expect("nonempty")
    }

    /// `normalize({l_1,…,l_n}) ⊗ (d_{n−1} in slot l_1)`.
    pub fn to_element(&self) -> Element<HKey> {
        let n = self.arity();
        let l = self.labels.images();
        let mut slots = vec![DerivationWord::empty(); n];
        slots[l[0] - 1] = DerivationWord::new(vec![(n - 1) as u8]);
        let tuple = WordTuple::new(slots).expect("n ≥ 2");
        let lie = normalize(&left_fold_labels(l).expect("nonempty")).expect("multilinear");
        Element::from_terms(
            n,
            lie.into_terms().map(|(k, c)| (HadamardKey::new(k, tuple.clone()), c)),
        )
    }
}

impl fmt::Display for NormalDerivedBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_derived())
    }
}
