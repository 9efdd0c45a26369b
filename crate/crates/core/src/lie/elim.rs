use std::collections::BTreeMap;
use std::fmt;

use super::word::{left_fold, Bracket, BracketWord, Letter};
use crate::exact::Scalar;

/// `{δ_k, l_1, …, l_f}`, the left-normed bracket of a `δ` with labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TWord {
    pub delta: usize,
    pub labels: Vec<usize>,
}

impl TWord {
    pub fn word(&self) -> BracketWord {
        let mut leaves = vec![Bracket::Leaf(Letter::Delta(self.delta))];
        leaves.extend(self.labels.iter().map(|&l| Bracket::Leaf(Letter::Label(l))));
        left_fold(&leaves).expect("nonempty")
    }

    pub fn weight(&self) -> i64 {
        self.delta as i64 + 1 - self.labels.len() as i64
    }
}

impl fmt::Display for TWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return write!(f, "D{}", self.delta);
        }
        write!(f, "{{D{}", self.delta)?;
        for l in &self.labels {
            write!(f, ",{l}")?;
        }
        f.write_str("}")
    }
}

type Combination<L> = BTreeMap<Bracket<L>, Scalar>;

/// A word over `Δ ⊔ N` split into brackets of `T`-words and a pure-label
/// part.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub t_part: Combination<TWord>,
    pub n_part: Combination<Letter>,
}

fn add<L: Ord + Clone>(into: &mut Combination<L>, key: Bracket<L>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let entry = into.entry(key.clone()).or_insert_with(Scalar::zero);
    *entry += c;
    if entry.is_zero() {
        into.remove(&key);
    }
}

/// `[x, l]` for a label `l`, pushing `l` into the `T`-words.
fn extend(x: &Bracket<TWord>, l: usize) -> Combination<TWord> {
    let mut out = Combination::new();
    match x {
        Bracket::Leaf(t) => {
            let mut t = t.clone();
            t.labels.push(l);
            add(&mut out, Bracket::Leaf(t), Scalar::one());
        }
        // [[a,b],l] = [[a,l],b] + [a,[b,l]]
        Bracket::Node(a, b) => {
            for (k, c) in extend(a, l) {
                add(&mut out, Bracket::node(k, (**b).clone()), c);
            }
            for (k, c) in extend(b, l) {
                add(&mut out, Bracket::node((**a).clone(), k), c);
            }
        }
    }
    out
}

/// `[X, B]` for a pure-label word `B`.
fn ad(x: &Combination<TWord>, b: &BracketWord) -> Combination<TWord> {
    let mut out = Combination::new();
    match b {
        Bracket::Leaf(Letter::Label(l)) => {
            for (k, c) in x {
                for (e, ce) in extend(k, *l) {
                    add(&mut out, e, ce * c);
                }
            }
        }
        Bracket::Leaf(Letter::Delta(_)) => unreachable!("pure words have no δ"),
        // [X,[b1,b2]] = [[X,b1],b2] − [[X,b2],b1]
        Bracket::Node(b1, b2) => {
            for (k, c) in ad(&ad(x, b1), b2) {
                add(&mut out, k, c);
            }
            for (k, c) in ad(&ad(x, b2), b1) {
                add(&mut out, k, -c);
            }
        }
    }
    out
}

enum Part {
    Pure(BracketWord),
    T(Combination<TWord>),
}

fn go(w: &BracketWord) -> Part {
    match w {
        Bracket::Leaf(Letter::Label(_)) => Part::Pure(w.clone()),
        Bracket::Leaf(Letter::Delta(k)) => Part::T(Combination::from([(
            Bracket::Leaf(TWord {
                delta: *k,
                labels: Vec::new(),
            }),
            Scalar::one(),
        )])),
        Bracket::Node(a, b) => match (go(a), go(b)) {
            (Part::Pure(_), Part::Pure(_)) => Part::Pure(w.clone()),
            (Part::T(x), Part::Pure(b)) => Part::T(ad(&x, &b)),
            // labels are even: [a, Y] = −[Y, a]
            (Part::Pure(a), Part::T(y)) => Part::T(ad(&y, &a).into_iter().map(|(k, c)| (k, -c)).collect()),
            (Part::T(x), Part::T(y)) => {
                let mut out = Combination::new();
                for (kx, cx) in &x {
                    for (ky, cy) in &y {
                        add(&mut out, Bracket::node(kx.clone(), ky.clone()), cx * cy);
                    }
                }
                Part::T(out)
            }
        },
    }
}

/// Rewrites `w` by antisymmetry and Jacobi into brackets of `T`-words, or
/// returns it unchanged as the pure part when it has no `δ`.
pub fn eliminate(w: &BracketWord) -> Decomposition {
    match go(w) {
        Part::Pure(p) => Decomposition {
            t_part: Combination::new(),
            n_part: Combination::from([(p, Scalar::one())]),
        },
        Part::T(t) => Decomposition {
            t_part: t,
            n_part: Combination::new(),
        },
    }
}

/// The decomposition written back as words over `Δ ⊔ N`.
pub fn reexpand(d: &Decomposition) -> Vec<(BracketWord, Scalar)> {
    let mut out: Vec<(BracketWord, Scalar)> = d
        .t_part
        .iter()
        .map(|(k, c)| (k.flat_map(&mut |t: &TWord| t.word()), c.clone()))
        .collect();
    out.extend(d.n_part.iter().map(|(k, c)| (k.clone(), c.clone())));
    out
}

/// `w(δ_n) = n + 1`, labels weigh 0 and each bracket −1.
pub fn weight(w: &BracketWord) -> i64 {
    let leaves: i64 = w
        .leaves()
        .iter()
        .map(|l| match l {
            Letter::Delta(k) => *k as i64 + 1,
            Letter::Label(_) => 0,
        })
        .sum();
    leaves - w.bracket_count() as i64
}

pub fn t_weight(w: &Bracket<TWord>) -> i64 {
    w.leaves().iter().map(|t| t.weight()).sum::<i64>() - w.bracket_count() as i64
}
