use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{compose_partial, sign, Element, Operad};
use crate::error::{Error, Result};
use crate::exact::Permutation;
use crate::trees::{enumerate_trees, LabeledTree, PlanarTree};

/// A labelled planar tree whose internal vertices carry generators.
///
/// `decorations[v]` is the index of the generator at the `v`-th internal
/// vertex in preorder, among the generators of that vertex's arity. All signs
/// are computed relative to this vertex order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TreeMonomial {
    tree: LabeledTree,
    decorations: Vec<u8>,
}

impl TreeMonomial {
    pub fn new(tree: LabeledTree, decorations: Vec<u8>) -> Result<Self> {
        if decorations.len() != tree.shape().vertex_count() {
            return Err(Error::ArityMismatch {
                expected: tree.shape().vertex_count(),
                found: decorations.len(),
            });
        }
        Ok(TreeMonomial { tree, decorations })
    }

    /// A monomial with the first generator at every vertex.
    pub fn undecorated(tree: LabeledTree) -> Self {
        let decorations = vec![0; tree.shape().vertex_count()];
        TreeMonomial { tree, decorations }
    }

    /// The generator `T_k(1,…,k)` with decoration `index`.
    pub fn generator(k: usize, index: u8) -> Result<Self> {
        let tree = LabeledTree::standard(PlanarTree::corolla(k)?);
        Ok(TreeMonomial {
            tree,
            decorations: vec![index],
        })
    }

    pub fn identity() -> Self {
        TreeMonomial {
            tree: LabeledTree::standard(PlanarTree::leaf()),
            decorations: Vec::new(),
        }
    }

    pub fn tree(&self) -> &LabeledTree {
        &self.tree
    }

    pub fn shape(&self) -> &PlanarTree {
        self.tree.shape()
    }

    pub fn labels(&self) -> &Permutation {
        self.tree.labels()
    }

    pub fn decorations(&self) -> &[u8] {
        &self.decorations
    }

    pub fn arity(&self) -> usize {
        self.tree.arity()
    }

    /// The same shape and decorations with labels `1..n` in planar order.
    pub fn standardized(&self) -> TreeMonomial {
        TreeMonomial {
            tree: LabeledTree::standard(self.shape().clone()),
            decorations: self.decorations.clone(),
        }
    }

    pub fn is_generator(&self) -> bool {
        self.decorations.len() == 1
    }

    pub fn relabel(&self, sigma: &Permutation) -> Result<TreeMonomial> {
        Ok(TreeMonomial {
            tree: self.tree.relabel(sigma)?,
            decorations: self.decorations.clone(),
        })
    }

    /// Grafts `other` onto the leaf labelled `i` and returns the monomial
    /// with the Koszul exponent `|other| · (degree of the vertices of self
    /// after that leaf)`, given per-vertex degrees.
    pub(crate) fn graft(
        &self,
        i: usize,
        other: &TreeMonomial,
        degree: impl Fn(usize, u8) -> i64,
    ) -> Result<(TreeMonomial, i64)> {
        let pos = self.tree.position_of(i)?;
        let code = self.shape().code();
        let leaf_at = code
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 0)
            .nth(pos - 1)
            .map(|(p, _)| p)
            .expect("leaf position in range");
        let before = code[..leaf_at].iter().filter(|&&a| a != 0).count();
        let host: i64 = code[leaf_at + 1..]
            .iter()
            .filter(|&&a| a != 0)
            .zip(&self.decorations[before..])
            .map(|(&a, &d)| degree(a as usize, d))
            .sum();
        let guest: i64 = other
            .shape()
            .vertex_arities()
            .into_iter()
            .zip(&other.decorations)
            .map(|(a, &d)| degree(a, d))
            .sum();
        let mut decorations = self.decorations[..before].to_vec();
        decorations.extend_from_slice(&other.decorations);
        decorations.extend_from_slice(&self.decorations[before..]);
        let tree = self.tree.graft(i, &other.tree)?;
        Ok((TreeMonomial { tree, decorations }, host * guest))
    }
}

impl fmt::Display for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct Walk<'a> {
            code: &'a [u8],
            labels: &'a [usize],
            decorations: &'a [u8],
            pos: usize,
            leaf: usize,
            vertex: usize,
        }
        fn go(w: &mut Walk<'_>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let a = w.code[w.pos];
            w.pos += 1;
            if a == 0 {
                write!(f, "{}", w.labels[w.leaf])?;
                w.leaf += 1;
                return Ok(());
            }
            let d = w.decorations[w.vertex];
            w.vertex += 1;
            if d == 0 {
                write!(f, "T{a}(")?;
            } else {
                write!(f, "T{a}_{d}(")?;
            }
            for k in 0..a {
                if k > 0 {
                    f.write_str(",")?;
                }
                go(w, f)?;
            }
            f.write_str(")")
        }
        let mut w = Walk {
            code: self.shape().code(),
            labels: self.labels().images(),
            decorations: &self.decorations,
            pos: 0,
            leaf: 0,
            vertex: 0,
        };
        go(&mut w, f)
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos + 1, message)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize> {
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

    fn monomial(&mut self) -> Result<TreeMonomial> {
        let mut code = Vec::new();
        let mut labels = Vec::new();
        let mut decorations = Vec::new();
        self.vertex(&mut code, &mut labels, &mut decorations)?;
        let start = self.pos;
        let labels = Permutation::from_images(labels)
            .map_err(|_| Error::parse(start + 1, "leaf labels must be 1..n, each once"))?;
        let shape = PlanarTree::from_code(code).map_err(|e| self.error(e.to_string()))?;
        TreeMonomial::new(LabeledTree::new(shape, labels)?, decorations)
    }

    fn vertex(&mut self, code: &mut Vec<u8>, labels: &mut Vec<usize>, decorations: &mut Vec<u8>) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                code.push(0);
                labels.push(self.number()?);
            }
            Some('T') => {
                self.pos += 1;
                let at = self.pos;
                let k = self.number()?;
                if !(2..=255).contains(&k) {
                    return Err(Error::parse(at + 1, format!("generator arity {k} out of range")));
                }
                let d = if self.peek() == Some('_') {
                    self.pos += 1;
                    let d = self.number()?;
                    u8::try_from(d).map_err(|_| self.error("decoration index too large"))?
                } else {
                    0
                };
                code.push(k as u8);
                decorations.push(d);
                self.expect('(')?;
                for c in 0..k {
                    if c > 0 {
                        self.skip_ws();
                        self.expect(',')?;
                    }
                    self.vertex(code, labels, decorations)?;
                }
                self.skip_ws();
                self.expect(')')?;
            }
            _ => return Err(self.error("expected a label or a generator `T<k>(…)`")),
        }
        Ok(())
    }
}

impl FromStr for TreeMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut c = Cursor {
            chars: s.chars().collect(),
            pos: 0,
        };
        let m = c.monomial()?;
        c.skip_ws();
        if c.peek().is_some() {
            return Err(c.error("trailing input"));
        }
        Ok(m)
    }
}

/// Generators of a free operad. Every generator spans a free `S_k`-orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    /// Generator degrees listed by arity.
    Finite(BTreeMap<usize, Vec<i64>>),
    /// One generator `T_k` in each arity `k ≥ 2`, all of the same degree.
    Corollas { degree: i64 },
}

impl Generators {
    fn degrees(&self, arity: usize) -> Vec<i64> {
        match self {
            Generators::Finite(map) => map.get(&arity).cloned().unwrap_or_default(),
            Generators::Corollas { degree } => {
                if arity >= 2 {
                    vec![*degree]
                } else {
                    Vec::new()
                }
            }
        }
    }

    fn degree(&self, arity: usize, index: u8) -> i64 {
        match self {
            Generators::Corollas { degree } => *degree,
            Generators::Finite(map) => map[&arity][index as usize],
        }
    }
}

type GeneratorDifferential = Arc<dyn Fn(usize, u8) -> Element<TreeMonomial> + Send + Sync>;

/// The free operad on a collection of generators, optionally with a
/// differential prescribed on generators and extended as a derivation.
#[derive(Clone)]
pub struct FreeOperad {
    name: String,
    generators: Generators,
    differential: Option<GeneratorDifferential>,
}

impl fmt::Debug for FreeOperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeOperad")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("differential", &self.differential.is_some())
            .finish()
    }
}

impl FreeOperad {
    pub fn new(name: impl Into<String>, generators: Generators) -> Result<Self> {
        if let Generators::Finite(map) = &generators {
            for (&k, degrees) in map {
                if !(2..=255).contains(&k) {
                    return Err(Error::arg(format!("generators must have arity 2..=255, got {k}")));
                }
                if degrees.len() > 255 {
                    return Err(Error::arg("at most 255 generators per arity"));
                }
            }
        }
        Ok(FreeOperad {
            name: name.into(),
            generators,
            differential: None,
        })
    }

    /// `d` sends `(k, index)` to the differential of the standard generator.
    pub fn with_differential(mut self, d: impl Fn(usize, u8) -> Element<TreeMonomial> + Send + Sync + 'static) -> Self {
        self.differential = Some(Arc::new(d));
        self
    }

    pub fn generators(&self) -> &Generators {
        &self.generators
    }

    pub fn generator_element(&self, k: usize, index: u8) -> Result<Element<TreeMonomial>> {
        if index as usize >= self.generators.degrees(k).len() {
            return Err(Error::arg(format!("no generator {index} in arity {k}")));
        }
        Ok(Element::basis(k, TreeMonomial::generator(k, index)?))
    }

    fn check_decorations(&self, m: &TreeMonomial) -> Result<()> {
        for (a, &d) in m.shape().vertex_arities().into_iter().zip(m.decorations()) {
            if d as usize >= self.generators.degrees(a).len() {
                return Err(Error::arg(format!("`{m}` uses a generator not in {}", self.name)));
            }
        }
        Ok(())
    }

    /// Parses a combination whose terms are monomials or left-associated
    /// graftings `a@i:b@j:c`.
    pub fn parse_element(&self, text: &str) -> Result<Element<TreeMonomial>> {
        super::parse_element(text, |term| self.parse_expression(term))
    }

    fn parse_expression(&self, text: &str) -> Result<Element<TreeMonomial>> {
        let mut acc: Option<Element<TreeMonomial>> = None;
        let mut offset = 0usize;
        let mut index: Option<usize> = None;
        for (n, piece) in text.split('@').enumerate() {
            let (idx, body, skip) = if n == 0 {
                (None, piece, 0)
            } else {
                let colon = piece
                    .find(':')
                    .ok_or_else(|| Error::parse(offset + 1, "expected `@i:`"))?;
                let idx: usize = piece[..colon]
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(offset + 1, "bad grafting index"))?;
                (Some(idx), &piece[colon + 1..], piece[..=colon].chars().count())
            };
            let key: TreeMonomial = body.parse().map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: offset + skip + o,
                    message,
                },
                e => e,
            })?;
            self.check_decorations(&key)?;
            let term = Element::basis(key.arity(), key);
            acc = Some(match (acc, idx.or(index)) {
                (None, _) => term,
                (Some(a), Some(i)) => compose_partial(self, &a, i, &term)?,
                (Some(_), None) => unreachable!(),
            });
            index = None;
            offset += piece.chars().count() + 1;
        }
        acc.ok_or_else(|| Error::parse(1, "empty expression"))
    }

    fn vertex_degree(&self) -> impl Fn(usize, u8) -> i64 + '_ {
        |a, d| self.generators.degree(a, d)
    }

    /// Differential of a standard-labelled monomial, built vertex by vertex
    /// from the root with the dg Leibniz rule.
    fn differential_standard(&self, m: &TreeMonomial, d: &GeneratorDifferential) -> Element<TreeMonomial> {
        let shape = m.shape();
        if shape.is_leaf() {
            return Element::zero(1);
        }
        let k = shape.root_arity();
        let mut acc = Element::basis(k, TreeMonomial::generator(k, m.decorations[0]).expect("root arity ≥ 2"));
        let mut acc_degree = self.generators.degree(k, m.decorations[0]);
        let mut d_acc = d(k, m.decorations[0]);
        let mut pos = 1;
        let mut vertex = 1;
        for child in shape.children() {
            if child.is_leaf() {
                pos += 1;
                continue;
            }
            let count = child.vertex_count();
            let c = TreeMonomial {
                tree: LabeledTree::standard(child.clone()),
                decorations: m.decorations[vertex..vertex + count].to_vec(),
            };
            vertex += count;
            let c_degree = self.key_degree(&c);
            let dc = self.differential_standard(&c, d);
            let c = Element::basis(c.arity(), c);
            let mut next_d = compose_partial(self, &d_acc, pos, &c).expect("valid slot");
            next_d.add_scaled(
                &compose_partial(self, &acc, pos, &dc).expect("valid slot"),
                &sign(acc_degree),
            );
            d_acc = next_d;
            acc = compose_partial(self, &acc, pos, &c).expect("valid slot");
            acc_degree += c_degree;
            pos += child.leaves();
        }
        debug_assert_eq!(acc, Element::basis(m.arity(), m.clone()));
        d_acc
    }
}

impl Operad for FreeOperad {
    type Key = TreeMonomial;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn key_arity(&self, key: &TreeMonomial) -> usize {
        key.arity()
    }

    fn key_degree(&self, key: &TreeMonomial) -> i64 {
        key.shape()
            .vertex_arities()
            .into_iter()
            .zip(&key.decorations)
            .map(|(a, &d)| self.generators.degree(a, d))
            .sum()
    }

    fn basis(&self, n: usize) -> Result<Vec<TreeMonomial>> {
        free_operad_basis(&self.generators, n)
    }

    fn unit(&self) -> TreeMonomial {
        TreeMonomial::identity()
    }

    fn compose_keys(&self, p: &TreeMonomial, i: usize, q: &TreeMonomial) -> Element<TreeMonomial> {
        let (m, exponent) = p.graft(i, q, self.vertex_degree()).expect("slot checked by caller");
        Element::term(m.arity(), m, sign(exponent))
    }

    fn act_key(&self, sigma: &Permutation, p: &TreeMonomial) -> Element<TreeMonomial> {
        let m = p.relabel(sigma).expect("size checked by caller");
        Element::basis(m.arity(), m)
    }

    fn has_differential(&self) -> bool {
        self.differential.is_some()
    }

    fn differential_key(&self, p: &TreeMonomial) -> Element<TreeMonomial> {
        let Some(d) = &self.differential else {
            return Element::zero(p.arity());
        };
        let standard = self.differential_standard(&p.standardized(), d);
        let mut out = Element::zero(p.arity());
        for (k, c) in standard.iter() {
            out.add_term(k.relabel(p.labels()).expect("same arity"), c.clone());
        }
        out
    }
}

/// The image of `x` under the operad morphism out of a free operad that
/// sends the standard generator `(k, index)` to `image(k, index)`.
pub fn extend_morphism<O: Operad>(
    target: &O,
    x: &TreeMonomial,
    image: &impl Fn(usize, u8) -> Element<O::Key>,
) -> Element<O::Key> {
    let standard = image_standard(target, x.shape(), x.decorations(), image);
    super::symmetric_action(target, x.labels(), &standard).expect("same arity")
}

/// Image of the standard-labelled tree with the given shape: the root
/// generator composed with its subtrees from left to right. Those graftings
/// carry no sign in the free operad.
pub fn image_standard<O: Operad>(
    target: &O,
    shape: &PlanarTree,
    decorations: &[u8],
    image: &impl Fn(usize, u8) -> Element<O::Key>,
) -> Element<O::Key> {
    if shape.is_leaf() {
        return target.unit_element();
    }
    let mut acc = image(shape.root_arity(), decorations[0]);
    let mut pos = 1;
    let mut vertex = 1;
    for child in shape.children() {
        if child.is_leaf() {
            pos += 1;
            continue;
        }
        let count = child.vertex_count();
        let c = image_standard(target, &child, &decorations[vertex..vertex + count], image);
        vertex += count;
        acc = compose_partial(target, &acc, pos, &c).expect("valid slot");
        pos += child.leaves();
    }
    acc
}

/// All decorated, labelled trees of arity `n`, sorted.
pub fn free_operad_basis(generators: &Generators, n: usize) -> Result<Vec<TreeMonomial>> {
    let shapes = enumerate_trees(n)?;
    let perms = Permutation::all(n);
    let mut out = Vec::new();
    for shape in shapes {
        let choices: Vec<usize> = shape
            .vertex_arities()
            .into_iter()
            .map(|a| generators.degrees(a).len())
            .collect();
        if choices.contains(&0) {
            continue;
        }
        let mut decorations = vec![0u8; choices.len()];
        loop {
            for sigma in &perms {
                let tree = LabeledTree::new(shape.clone(), sigma.clone())?;
                out.push(TreeMonomial {
                    tree,
                    decorations: decorations.clone(),
                });
            }
            // odometer over decoration choices
            let mut v = 0;
            while v < choices.len() {
                decorations[v] += 1;
                if (decorations[v] as usize) < choices[v] {
                    break;
                }
                decorations[v] = 0;
                v += 1;
            }
            if v == choices.len() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}
