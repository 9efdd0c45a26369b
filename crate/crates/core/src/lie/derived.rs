use std::fmt;
use std::str::FromStr;

use super::word::{Bracket, BracketWord, Letter, Parser};
use crate::error::{Error, Result};

/// A bracket expression whose subterms may carry derivation words, such as
/// `{d2.d1(1),2,3}` or `d1{d1(1),2}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Derived {
    Label(usize),
    /// Letters `d_k`, outermost first, applied to a subterm.
    Apply(Vec<usize>, Box<Derived>),
    Bracket(Box<Derived>, Box<Derived>),
}

impl Derived {
    pub fn label(l: usize) -> Self {
        Derived::Label(l)
    }

    pub fn apply(letters: Vec<usize>, inner: Derived) -> Self {
        if letters.is_empty() {
            return inner;
        }
        Derived::Apply(letters, Box::new(inner))
    }

    pub fn bracket(a: Derived, b: Derived) -> Self {
        Derived::Bracket(Box::new(a), Box::new(b))
    }

    /// `{a_1,…,a_k}` folded to the left.
    pub fn fold(items: Vec<Derived>) -> Result<Self> {
        let mut it = items.into_iter();
        let first = it.next().ok_or_else(|| Error::arg("empty bracket"))?;
        Ok(it.fold(first, Derived::bracket))
    }

    /// Labels from left to right.
    pub fn labels(&self) -> Vec<usize> {
        match self {
            Derived::Label(l) => vec![*l],
            Derived::Apply(_, x) => x.labels(),
            Derived::Bracket(a, b) => [a.labels(), b.labels()].concat(),
        }
    }

    fn parse(p: &mut Parser) -> Result<Derived> {
        p.skip_ws();
        match p.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Derived::Label(p.number()?)),
            Some('{') => {
                p.pos += 1;
                let mut items = vec![Derived::parse(p)?];
                while p.eat(',') {
                    items.push(Derived::parse(p)?);
                }
                if items.len() < 2 {
                    return Err(p.error("a bracket needs at least two entries"));
                }
                p.expect('}')?;
                Derived::fold(items)
            }
            Some('d') => {
                let mut letters = Vec::new();
                loop {
                    p.expect('d')?;
                    letters.push(p.number()?);
                    if p.peek() == Some('.') && p.peek_at(1) == Some('d') {
                        p.pos += 1;
                    } else {
                        break;
                    }
                }
                p.skip_ws();
                let inner = match p.peek() {
                    Some('(') => {
                        p.pos += 1;
                        let x = Derived::parse(p)?;
                        p.expect(')')?;
                        x
                    }
                    Some('{') => Derived::parse(p)?,
                    _ => return Err(p.error("expected `(` or `{` after a derivation word")),
                };
                Ok(Derived::Apply(letters, Box::new(inner)))
            }
            _ => Err(p.error("expected a label, `{` or `d<k>`")),
        }
    }
}

impl FromStr for Derived {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let d = Derived::parse(&mut p)?;
        p.finish()?;
        Ok(d)
    }
}

impl fmt::Display for Derived {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derived::Label(l) => write!(f, "{l}"),
            Derived::Apply(letters, x) => {
                let word: Vec<String> = letters.iter().map(|k| format!("d{k}")).collect();
                match **x {
                    Derived::Bracket(..) => write!(f, "{}{x}", word.join(".")),
                    _ => write!(f, "{}({x})", word.join(".")),
                }
            }
            Derived::Bracket(a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

/// Replaces each application of `d_k` by bracketing with `δ_k` from the
/// left, innermost letter first.
pub fn adjoint_embed(x: &Derived) -> BracketWord {
    match x {
        Derived::Label(l) => Bracket::Leaf(Letter::Label(*l)),
        Derived::Apply(letters, inner) => letters.iter().rev().fold(adjoint_embed(inner), |acc, &k| {
            Bracket::node(Bracket::Leaf(Letter::Delta(k)), acc)
        }),
        Derived::Bracket(a, b) => Bracket::node(adjoint_embed(a), adjoint_embed(b)),
    }
}
