use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Scalar;

/// A leaf of a bracket word: an input label or an odd symbol `δ_k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    Label(usize),
    Delta(usize),
}

impl Letter {
    pub fn degree(self) -> i64 {
        match self {
            Letter::Label(_) => 0,
            Letter::Delta(_) => 1,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Label(l) => write!(f, "{l}"),
            Letter::Delta(k) => write!(f, "D{k}"),
        }
    }
}

/// A binary bracket tree over leaves of type `L`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Bracket<L> {
    Leaf(L),
    Node(Box<Bracket<L>>, Box<Bracket<L>>),
}

pub type BracketWord = Bracket<Letter>;

impl<L> Bracket<L> {
    pub fn node(a: Bracket<L>, b: Bracket<L>) -> Self {
        Bracket::Node(Box::new(a), Box::new(b))
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<&L> {
        let mut out = Vec::new();
        fn go<'a, L>(b: &'a Bracket<L>, out: &mut Vec<&'a L>) {
            match b {
                Bracket::Leaf(l) => out.push(l),
                Bracket::Node(x, y) => {
                    go(x, out);
                    go(y, out);
                }
            }
        }
        go(self, &mut out);
        out
    }

    pub fn bracket_count(&self) -> usize {
        match self {
            Bracket::Leaf(_) => 0,
            Bracket::Node(x, y) => 1 + x.bracket_count() + y.bracket_count(),
        }
    }

    pub fn map<M>(&self, f: &mut impl FnMut(&L) -> M) -> Bracket<M> {
        match self {
            Bracket::Leaf(l) => Bracket::Leaf(f(l)),
            Bracket::Node(x, y) => Bracket::node(x.map(f), y.map(f)),
        }
    }

    /// Substitutes a bracket for every leaf.
    pub fn flat_map<M: Clone>(&self, f: &mut impl FnMut(&L) -> Bracket<M>) -> Bracket<M> {
        match self {
            Bracket::Leaf(l) => f(l),
            Bracket::Node(x, y) => Bracket::node(x.flat_map(f), y.flat_map(f)),
        }
    }
}

impl<L: fmt::Display> fmt::Display for Bracket<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Leaf(l) => write!(f, "{l}"),
            Bracket::Node(x, y) => write!(f, "{{{x},{y}}}"),
        }
    }
}

/// `{a_1,…,a_k}` read as the left fold `{{a_1,a_2},…,a_k}`.
pub fn left_fold<L: Clone>(items: &[Bracket<L>]) -> Result<Bracket<L>> {
    let (first, rest) = items
        .split_first()
        .ok_or_else(|| Error::arg("left fold of an empty sequence"))?;
    Ok(rest.iter().fold(first.clone(), |acc, b| Bracket::node(acc, b.clone())))
}

pub fn left_fold_labels(labels: &[usize]) -> Result<BracketWord> {
    let leaves: Vec<BracketWord> = labels.iter().map(|&l| Bracket::Leaf(Letter::Label(l))).collect();
    left_fold(&leaves)
}

/// `{u_1,{u_2,…,{u_{k−1},u_k}}}`.
pub fn right_normed(labels: &[usize]) -> Result<BracketWord> {
    let (last, rest) = labels
        .split_last()
        .ok_or_else(|| Error::arg("right-normed word of an empty sequence"))?;
    Ok(rest.iter().rev().fold(Bracket::Leaf(Letter::Label(*last)), |acc, &l| {
        Bracket::node(Bracket::Leaf(Letter::Label(l)), acc)
    }))
}

pub(crate) struct Parser {
    chars: Vec<char>,
    pub(crate) pos: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Parser {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos + 1, message)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::parse(start + 1, "number too large"))
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.peek().is_some() {
            Err(self.error("trailing input"))
        } else {
            Ok(())
        }
    }

    /// A brace list `{a,b,…}` of items, folded to the left.
    pub(crate) fn brace_list<L: Clone>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<Bracket<L>>,
    ) -> Result<Bracket<L>> {
        self.expect('{')?;
        let mut items = vec![item(self)?];
        while self.eat(',') {
            items.push(item(self)?);
        }
        if items.len() < 2 {
            return Err(self.error("a bracket needs at least two entries"));
        }
        self.expect('}')?;
        left_fold(&items)
    }

    fn bracket_word(&mut self) -> Result<BracketWord> {
        self.skip_ws();
        match self.peek() {
            Some('{') => self.brace_list(|p| p.bracket_word()),
            Some('D') => {
                self.pos += 1;
                Ok(Bracket::Leaf(Letter::Delta(self.number()?)))
            }
            Some(c) if c.is_ascii_digit() => Ok(Bracket::Leaf(Letter::Label(self.number()?))),
            _ => Err(self.error("expected `{`, a label or `D<k>`")),
        }
    }
}

impl FromStr for BracketWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let w = p.bracket_word()?;
        p.finish()?;
        Ok(w)
    }
}

/// Total degree: the number of `δ` leaves.
pub fn word_degree(w: &BracketWord) -> i64 {
    w.leaves().iter().map(|l| l.degree()).sum()
}

/// Expansion in the free associative algebra, with
/// `{a,b} ↦ ab − (−1)^{|a||b|} ba`.
pub fn expand(w: &BracketWord) -> BTreeMap<Vec<Letter>, Scalar> {
    match w {
        Bracket::Leaf(l) => BTreeMap::from([(vec![*l], Scalar::one())]),
        Bracket::Node(a, b) => {
            let (ea, eb) = (expand(a), expand(b));
            let s = Scalar::sign(word_degree(a) * word_degree(b));
            let mut out = BTreeMap::new();
            let mut push = |word: Vec<Letter>, c: Scalar| {
                let entry = out.entry(word).or_insert_with(Scalar::zero);
                *entry += c;
            };
            for (x, cx) in &ea {
                for (y, cy) in &eb {
                    push([x.as_slice(), y].concat(), cx * cy);
                    push([y.as_slice(), x].concat(), -(&s * cx * cy));
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        }
    }
}

/// Expansion of a combination of words.
pub fn expand_combination<'a>(
    terms: impl IntoIterator<Item = (&'a BracketWord, &'a Scalar)>,
) -> BTreeMap<Vec<Letter>, Scalar> {
    let mut out: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
    for (w, c) in terms {
        for (word, x) in expand(w) {
            *out.entry(word).or_insert_with(Scalar::zero) += x * c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
