//! Planar rooted trees whose internal vertices have arity at least two.
//!
//! A tree is stored as its preorder arity word: `0` for a leaf and `k` for
//! an internal vertex with `k` children. This word is the canonical form, so
//! equality, hashing and ordering are all comparisons of words.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, Permutation};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarTree {
    code: Vec<u8>,
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree { code: vec![0] }
    }

    /// The corolla `c_k`: one internal vertex with `k ≥ 2` leaves.
    pub fn corolla(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::arg(format!("corolla arity {k} < 2")));
        }
        let mut code = vec![k as u8];
        code.extend(std::iter::repeat(0).take(k));
        Ok(PlanarTree { code })
    }

    pub fn from_children(children: Vec<PlanarTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::arg("internal vertices need at least two children"));
        }
        let mut code = vec![children.len() as u8];
        for c in children {
            code.extend(c.code);
        }
        Ok(PlanarTree { code })
    }

    /// Validates a preorder arity word.
    pub fn from_code(code: Vec<u8>) -> Result<Self> {
        let mut open: i64 = 1;
        for (k, &a) in code.iter().enumerate() {
            if open == 0 {
                return Err(Error::arg(format!("arity word has trailing symbols at {k}")));
            }
            if a == 1 {
                return Err(Error::arg("unary vertices are not allowed"));
            }
            open += a as i64 - 1;
        }
        if open != 0 || code.is_empty() {
            return Err(Error::arg("arity word does not describe a complete tree"));
        }
        Ok(PlanarTree { code })
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn is_leaf(&self) -> bool {
        self.code == [0]
    }

    pub fn leaves(&self) -> usize {
        self.code.iter().filter(|&&a| a == 0).count()
    }

    pub fn vertex_count(&self) -> usize {
        self.code.iter().filter(|&&a| a != 0).count()
    }

    /// Arities of the internal vertices in preorder.
    pub fn vertex_arities(&self) -> Vec<usize> {
        self.code.iter().filter(|&&a| a != 0).map(|&a| a as usize).collect()
    }

    pub fn root_arity(&self) -> usize {
        self.code[0] as usize
    }

    /// The subtrees hanging off the root, left to right.
    pub fn children(&self) -> Vec<PlanarTree> {
        if self.is_leaf() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.root_arity());
        let mut pos = 1;
        while pos < self.code.len() {
            let end = subtree_end(&self.code, pos);
            out.push(PlanarTree {
                code: self.code[pos..end].to_vec(),
            });
            pos = end;
        }
        out
    }

    /// Position in the arity word of the `i`-th leaf (1-based).
    pub(crate) fn leaf_position(&self, i: usize) -> Result<usize> {
        self.code
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 0)
            .nth(i.wrapping_sub(1))
            .map(|(p, _)| p)
            .ok_or(Error::IndexOutOfRange {
                index: i,
                arity: self.leaves(),
            })
    }

    /// Grafts `other` onto the `i`-th leaf in planar order.
    pub fn graft(&self, i: usize, other: &PlanarTree) -> Result<PlanarTree> {
        let p = self.leaf_position(i)?;
        let mut code = Vec::with_capacity(self.code.len() + other.code.len() - 1);
        code.extend_from_slice(&self.code[..p]);
        code.extend_from_slice(&other.code);
        code.extend_from_slice(&self.code[p + 1..]);
        Ok(PlanarTree { code })
    }

    /// Number of vertices of each arity: entry `k - 2` counts vertices of arity `k`.
    pub fn corolla_profile(&self) -> CorollaMultiset {
        let mut mult = vec![0u64; self.leaves().saturating_sub(1)];
        for a in self.vertex_arities() {
            mult[a - 2] += 1;
        }
        CorollaMultiset::new(mult)
    }

    /// Text form with `.` for leaves.
    pub fn to_ascii(&self) -> String {
        self.render(".")
    }

    fn render(&self, leaf: &str) -> String {
        fn go(code: &[u8], pos: usize, leaf: &str, out: &mut String) -> usize {
            let a = code[pos];
            if a == 0 {
                out.push_str(leaf);
                return pos + 1;
            }
            out.push('(');
            let mut p = pos + 1;
            for _ in 0..a {
                p = go(code, p, leaf, out);
            }
            out.push(')');
            p
        }
        let mut out = String::new();
        go(&self.code, 0, leaf, &mut out);
        out
    }
}

fn subtree_end(code: &[u8], start: usize) -> usize {
    let mut open = 1i64;
    let mut p = start;
    while open > 0 {
        open += code[p] as i64 - 1;
        p += 1;
    }
    p
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("∙"))
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarTree({self})")
    }
}

impl FromStr for PlanarTree {
    type Err = Error;

    /// Parses `(∙∙(∙∙∙))`, or the same with `.` for leaves.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut code = Vec::new();
        let mut stack: Vec<(usize, u8)> = Vec::new();
        for (k, &c) in chars.iter().enumerate() {
            match c {
                '∙' | '.' => {
                    code.push(0);
                    if let Some(top) = stack.last_mut() {
                        top.1 += 1;
                    } else if k + 1 != chars.len() {
                        return Err(Error::parse(k + 2, "unexpected input after tree"));
                    }
                }
                '(' => {
                    if stack.is_empty() && k != 0 {
                        return Err(Error::parse(k + 1, "unexpected input after tree"));
                    }
                    stack.push((code.len(), 0));
                    code.push(0);
                }
                ')' => {
                    let Some((pos, count)) = stack.pop() else {
                        return Err(Error::parse(k + 1, "unbalanced `)`"));
                    };
                    if count < 2 {
                        return Err(Error::parse(k + 1, "vertex with fewer than two children"));
                    }
                    code[pos] = count;
                    if let Some(top) = stack.last_mut() {
                        top.1 += 1;
                    }
                }
                _ => return Err(Error::parse(k + 1, format!("unexpected `{c}`"))),
            }
        }
        if !stack.is_empty() {
            return Err(Error::parse(chars.len() + 1, "unclosed `(`"));
        }
        PlanarTree::from_code(code).map_err(|e| Error::parse(1, e.to_string()))
    }
}

/// All planar rooted trees with `n` leaves, sorted by arity word.
pub fn enumerate_trees(n: usize) -> Result<Vec<PlanarTree>> {
    if n == 0 {
        return Err(Error::arg("trees need at least one leaf"));
    }
    let mut table: Vec<Vec<PlanarTree>> = vec![Vec::new(), vec![PlanarTree::leaf()]];
    for m in 2..=n {
        let mut trees = Vec::new();
        for k in 2..=m {
            for parts in compositions(m, k) {
                let mut partial: Vec<Vec<u8>> = vec![vec![k as u8]];
                for &p in &parts {
                    partial = partial
                        .into_iter()
                        .flat_map(|prefix| {
                            table[p].iter().map(move |t| {
                                let mut c = prefix.clone();
                                c.extend_from_slice(&t.code);
                                c
                            })
                        })
                        .collect();
                }
                trees.extend(partial.into_iter().map(|code| PlanarTree { code }));
            }
        }
        trees.sort();
        table.push(trees);
    }
    Ok(table.swap_remove(n))
}

/// Compositions of `m` into exactly `k` positive parts.
fn compositions(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![m]];
    }
    (1..=m + 1 - k)
        .flat_map(|first| {
            compositions(m - first, k - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// The small Schröder number: the number of planar rooted trees with `n`
/// leaves. Counted by dynamic programming over forests, independently of
/// [`enumerate_trees`].
pub fn schroeder(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::arg("schroeder(n) needs n ≥ 1"));
    }
    // forests[k][m]: sequences of k trees with m leaves in total
    let mut trees = vec![0u128; n + 1];
    trees[1] = 1;
    let mut forests = vec![vec![0u128; n + 1]; n + 1];
    forests[0][0] = 1;
    for m in 1..=n {
        // forests of k ≥ 2 trees only involve trees with fewer than m leaves
        for k in 2..=m {
            forests[k][m] = (1..m).map(|last| forests[k - 1][m - last] * trees[last]).sum();
        }
        if m >= 2 {
            trees[m] = (2..=m).map(|k| forests[k][m]).sum();
        }
        forests[1][m] = trees[m];
    }
    Ok(trees[n])
}

/// A tree whose leaves carry the labels `1..=n` in planar order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabeledTree {
    shape: PlanarTree,
    labels: Permutation,
}

impl LabeledTree {
    pub fn new(shape: PlanarTree, labels: Permutation) -> Result<Self> {
        if shape.leaves() != labels.size() {
            return Err(Error::ArityMismatch {
                expected: shape.leaves(),
                found: labels.size(),
            });
        }
        Ok(LabeledTree { shape, labels })
    }

    pub fn standard(shape: PlanarTree) -> Self {
        let n = shape.leaves();
        LabeledTree {
            shape,
            labels: Permutation::identity(n),
        }
    }

    pub fn shape(&self) -> &PlanarTree {
        &self.shape
    }

    pub fn labels(&self) -> &Permutation {
        &self.labels
    }

    pub fn arity(&self) -> usize {
        self.labels.size()
    }

    /// Planar position (1-based) of the leaf labelled `label`.
    pub fn position_of(&self, label: usize) -> Result<usize> {
        self.labels
            .images()
            .iter()
            .position(|&l| l == label)
            .map(|p| p + 1)
            .ok_or(Error::IndexOutOfRange {
                index: label,
                arity: self.arity(),
            })
    }

    /// `self ∘_i other`: graft onto the leaf labelled `i`; the labels of
    /// `other` move into slot `i` and the later labels of `self` shift up.
    pub fn graft(&self, i: usize, other: &LabeledTree) -> Result<LabeledTree> {
        let pos = self.position_of(i)?;
        let m = other.arity();
        let shape = self.shape.graft(pos, &other.shape)?;
        let mut labels = Vec::with_capacity(self.arity() + m - 1);
        for (k, &l) in self.labels.images().iter().enumerate() {
            if k + 1 == pos {
                labels.extend(other.labels.images().iter().map(|&x| x + i - 1));
            } else if l < i {
                labels.push(l);
            } else {
                labels.push(l + m - 1);
            }
        }
        Ok(LabeledTree {
            shape,
            labels: Permutation::from_images(labels)?,
        })
    }

    /// Replaces every label `l` by `sigma(l)`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<LabeledTree> {
        if sigma.size() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: sigma.size(),
            });
        }
        let labels = self.labels.images().iter().map(|&l| sigma.apply(l)).collect();
        Ok(LabeledTree {
            shape: self.shape.clone(),
            labels: Permutation::from_images(labels)?,
        })
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(
            code: &[u8],
            pos: usize,
            labels: &[usize],
            next: &mut usize,
            f: &mut fmt::Formatter<'_>,
        ) -> std::result::Result<usize, fmt::Error> {
            let a = code[pos];
            if a == 0 {
                write!(f, "{}", labels[*next])?;
                *next += 1;
                return Ok(pos + 1);
            }
            f.write_str("(")?;
            let mut p = pos + 1;
            for k in 0..a {
                if k > 0 {
                    f.write_str(",")?;
                }
                p = go(code, p, labels, next, f)?;
            }
            f.write_str(")")?;
            Ok(p)
        }
        let mut next = 0;
        go(self.shape.code(), 0, self.labels.images(), &mut next, f).map(|_| ())
    }
}

/// Multiplicities `λ_1, λ_2, …`, where `λ_i` counts copies of the corolla `c_{i+1}`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct CorollaMultiset {
    multiplicities: Vec<u64>,
}

impl CorollaMultiset {
    pub fn new(mut multiplicities: Vec<u64>) -> Self {
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        CorollaMultiset { multiplicities }
    }

    /// `λ_i` copies of `c_{i+1}`; out-of-range indices are zero.
    pub fn multiplicity(&self, corolla_arity: usize) -> u64 {
        corolla_arity
            .checked_sub(2)
            .and_then(|i| self.multiplicities.get(i).copied())
            .unwrap_or(0)
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// `Λ = Σ λ_i`, the number of vertices.
    pub fn total(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    /// `|T| = Σ i·λ_i + 1`, the number of leaves of every generated tree.
    pub fn leaves(&self) -> u64 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &l)| (i as u64 + 1) * l)
            .sum::<u64>()
            + 1
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// All multisets generating trees with exactly `leaves` leaves.
    pub fn all_with_leaves(leaves: usize) -> Vec<CorollaMultiset> {
        fn rec(remaining: usize, part: usize, current: &mut Vec<u64>, out: &mut Vec<CorollaMultiset>) {
            if remaining == 0 {
                out.push(CorollaMultiset::new(current.clone()));
                return;
            }
            if part > remaining {
                return;
            }
            for count in (0..=remaining / part).rev() {
                current[part - 1] = count as u64;
                rec(remaining - count * part, part + 1, current, out);
            }
            current[part - 1] = 0;
        }
        if leaves < 2 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut current = vec![0u64; leaves - 1];
        rec(leaves - 1, 1, &mut current, &mut out);
        out
    }
}

impl FromStr for CorollaMultiset {
    type Err = Error;

    /// Parses specs such as `c2:1,c3:1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut mult: Vec<u64> = Vec::new();
        let mut offset = 1;
        for item in s.split(',') {
            let trimmed = item.trim();
            let err = |m: &str| Error::parse(offset, format!("{m} in `{trimmed}`"));
            let body = trimmed
                .strip_prefix('c')
                .ok_or_else(|| err("expected `c<k>:<count>`"))?;
            let (k, count) = body.split_once(':').ok_or_else(|| err("missing `:`"))?;
            let k: usize = k.trim().parse().map_err(|_| err("bad corolla arity"))?;
            let count: u64 = count.trim().parse().map_err(|_| err("bad multiplicity"))?;
            if k < 2 {
                return Err(err("corolla arity must be at least 2"));
            }
            if mult.len() < k - 1 {
                mult.resize(k - 1, 0);
            }
            mult[k - 2] += count;
            offset += item.chars().count() + 1;
        }
        Ok(CorollaMultiset::new(mult))
    }
}

impl fmt::Display for CorollaMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &l) in self.multiplicities.iter().enumerate() {
            if l == 0 {
                continue;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "c{}:{}", i + 2, l)?;
        }
        Ok(())
    }
}

/// `(1/|T|) · C(|T|+Λ−1, Λ) · Λ! / (λ_1! ⋯ λ_{n−1}!)`.
pub fn count_trees_from_corollas(c: &CorollaMultiset) -> Result<u128> {
    if c.is_empty() {
        return Err(Error::arg("corolla multiset is empty"));
    }
    let leaves = c.leaves();
    let total = c.total();
    let mut numerator = binomial(leaves + total - 1, total) * factorial(total);
    for &l in c.multiplicities() {
        numerator /= factorial(l);
    }
    let (q, r) = numerator.div_rem(&BigUint::from(leaves));
    if !r.is_zero() {
        return Err(Error::arg(format!("count for {c} is not an integer")));
    }
    q.to_u128()
        .ok_or_else(|| Error::Resource(format!("count for {c} exceeds u128")))
}

/// Same count, by filtering [`enumerate_trees`] on the vertex-arity multiset.
pub fn count_trees_by_enumeration(c: &CorollaMultiset) -> Result<u128> {
    if c.is_empty() {
        return Err(Error::arg("corolla multiset is empty"));
    }
    let trees = enumerate_trees(c.leaves() as usize)?;
    Ok(trees.iter().filter(|t| t.corolla_profile() == *c).count() as u128)
}

/// Number of planar trees built from `m` copies of `c_k`.
pub fn fuss_catalan(k: usize, m: usize) -> Result<u128> {
    if k < 2 || m < 1 {
        return Err(Error::arg(format!(
            "fuss_catalan needs k ≥ 2 and m ≥ 1, got k={k}, m={m}"
        )));
    }
    let mut mult = vec![0u64; k - 1];
    mult[k - 2] = m as u64;
    count_trees_from_corollas(&CorollaMultiset::new(mult))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TABLE_1: [u128; 10] = [1, 1, 3, 11, 45, 197, 903, 4279, 20793, 103049];

    fn t(s: &str) -> PlanarTree {
        s.parse().unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_trees(1).unwrap(), vec![PlanarTree::leaf()]);
        let three = enumerate_trees(3).unwrap();
        assert_eq!(three.len(), 3);
        assert!(three.contains(&PlanarTree::corolla(3).unwrap()));
        assert!(three.contains(&t("((∙∙)∙)")));
        assert!(three.contains(&t("(∙(∙∙))")));
        assert_eq!(enumerate_trees(5).unwrap().len(), 45);
        assert!(enumerate_trees(0).is_err());
    }

    #[test]
    fn schroeder_table() {
        for (k, &s) in TABLE_1.iter().enumerate() {
            assert_eq!(schroeder(k + 1).unwrap(), s);
        }
        for n in 1..=8 {
            assert_eq!(enumerate_trees(n).unwrap().len() as u128, schroeder(n).unwrap());
        }
        assert!(schroeder(0).is_err());
    }

    #[test]
    fn text_form() {
        let x = t("(∙∙(∙∙∙))");
        assert_eq!(x.leaves(), 5);
        assert_eq!(x.code(), &[3, 0, 0, 3, 0, 0, 0]);
        assert_eq!(x.to_string(), "(∙∙(∙∙∙))");
        assert_eq!(x.to_ascii(), "(..(...))");
        assert_eq!(t("(..(...))"), x);
        assert_eq!(t("∙"), PlanarTree::leaf());
        assert!(matches!("(∙)".parse::<PlanarTree>(), Err(Error::Parse { .. })));
        assert!(matches!(
            "(∙∙".parse::<PlanarTree>(),
            Err(Error::Parse { offset: 4, .. })
        ));
        assert!(matches!(
            "(∙∙)x".parse::<PlanarTree>(),
            Err(Error::Parse { offset: 5, .. })
        ));
    }

    #[test]
    fn graft_examples() {
        let c2 = PlanarTree::corolla(2).unwrap();
        let c3 = PlanarTree::corolla(3).unwrap();
        assert_eq!(PlanarTree::leaf().graft(1, &c3).unwrap(), c3);
        let g = c2.graft(1, &c3).unwrap();
        assert_eq!(g.leaves(), 4);
        assert_eq!(g, t("((∙∙∙)∙)"));
        // sequential: (c2 ∘_1 c2) ∘_2 c2 = c2 ∘_1 (c2 ∘_2 c2)
        let lhs = c2.graft(1, &c2).unwrap().graft(2, &c2).unwrap();
        let rhs = c2.graft(1, &c2.graft(2, &c2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // parallel: (c2 ∘_1 c2) ∘_3 c2 = (c2 ∘_2 c2) ∘_1 c2
        let lhs = c2.graft(1, &c2).unwrap().graft(3, &c2).unwrap();
        let rhs = c2.graft(2, &c2).unwrap().graft(1, &c2).unwrap();
        assert_eq!(lhs, rhs);
        assert!(c2.graft(3, &c2).is_err());
    }

    #[test]
    fn labeled_graft_relabels() {
        let a = LabeledTree::new(
            PlanarTree::corolla(2).unwrap(),
            Permutation::from_images(vec![2, 1]).unwrap(),
        )
        .unwrap();
        let b = LabeledTree::standard(PlanarTree::corolla(2).unwrap());
        // (2,1) ∘_1 (1,2) = (3,(1,2))
        let g = a.graft(1, &b).unwrap();
        assert_eq!(g.to_string(), "(3,(1,2))");
        let g = a.graft(2, &b).unwrap();
        assert_eq!(g.to_string(), "((2,3),1)");
    }

    #[test]
    fn corolla_counts() {
        let c = |s: &str| s.parse::<CorollaMultiset>().unwrap();
        assert_eq!(count_trees_from_corollas(&c("c2:1,c3:1")).unwrap(), 5);
        assert_eq!(count_trees_from_corollas(&c("c2:1")).unwrap(), 1);
        let brute = count_trees_by_enumeration(&c("c3:2")).unwrap();
        assert_eq!(count_trees_from_corollas(&c("c3:2")).unwrap(), brute);
        assert_eq!(brute, 3);
        assert!(count_trees_from_corollas(&CorollaMultiset::new(vec![0, 0])).is_err());
        assert!("c1:2".parse::<CorollaMultiset>().is_err());
        assert_eq!(c("c2:1,c3:1").to_string(), "c2:1,c3:1");
    }

    #[test]
    fn exhaustive_corolla_counts_up_to_eight_leaves() {
        for leaves in 2..=8 {
            let multisets = CorollaMultiset::all_with_leaves(leaves);
            let mut sum = 0;
            for c in &multisets {
                let count = count_trees_from_corollas(c).unwrap();
                assert_eq!(count, count_trees_by_enumeration(c).unwrap(), "{c} {:?}", c);
                sum += count;
            }
            assert_eq!(sum, schroeder(leaves).unwrap());
        }
    }

    #[test]
    fn fuss_catalan_numbers() {
        // binary trees with m+1 leaves, enumerated
        for m in 1..=6 {
            let binary = enumerate_trees(m + 1)
                .unwrap()
                .into_iter()
                .filter(|t| t.vertex_arities().iter().all(|&a| a == 2))
                .count() as u128;
            assert_eq!(fuss_catalan(2, m).unwrap(), binary);
        }
        assert_eq!(fuss_catalan(2, 3).unwrap(), 5);
        assert_eq!(fuss_catalan(2, 1).unwrap(), 1);
        assert_eq!(
            fuss_catalan(3, 2).unwrap(),
            count_trees_by_enumeration(&"c3:2".parse().unwrap()).unwrap()
        );
        assert!(fuss_catalan(1, 2).is_err());
    }

    fn arb_tree(max_leaves: usize) -> impl Strategy<Value = PlanarTree> {
        (1..=max_leaves).prop_flat_map(|n| {
            let trees = enumerate_trees(n).unwrap();
            proptest::sample::select(trees)
        })
    }

    proptest! {
        #[test]
        fn grafting_is_associative(a in arb_tree(4), b in arb_tree(3), c in arb_tree(3), seed in 0usize..1000) {
            let (la, lb) = (a.leaves(), b.leaves());
            // sequential: c lands inside b
            let i = seed % la + 1;
            let j = seed / la % lb + 1;
            let lhs = a.graft(i, &b).unwrap().graft(i + j - 1, &c).unwrap();
            let rhs = a.graft(i, &b.graft(j, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            // parallel: b and c land on distinct leaves of a
            if la >= 2 {
                let (i, k) = (seed % (la - 1) + 1, la);
                let lhs = a.graft(i, &b).unwrap().graft(k + lb - 1, &c).unwrap();
                let rhs = a.graft(k, &c).unwrap().graft(i, &b).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
