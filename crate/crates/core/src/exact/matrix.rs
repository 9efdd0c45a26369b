use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::Scalar;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVector {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn new() -> Self {
        SparseVector::default()
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut pairs: Vec<(usize, Scalar)> = pairs.into_iter().collect();
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, x) in pairs {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y += x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        SparseVector { entries }
    }

    pub fn unit(index: usize) -> Self {
        SparseVector {
            entries: vec![(index, Scalar::one())],
        }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> Scalar {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }
}

/// A sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVector::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(SparseVector::unit).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Result<Self> {
        for r in &rows {
            if let Some(i) = r.max_index() {
                if i >= cols {
                    return Err(Error::IndexOutOfRange { index: i, arity: cols });
                }
            }
        }
        Ok(SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix from `(row, col, value)` triples, summing duplicates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, x) in triplets {
            if r >= rows {
                return Err(Error::IndexOutOfRange { index: r, arity: rows });
            }
            if c >= cols {
                return Err(Error::IndexOutOfRange { index: c, arity: cols });
            }
            buckets[r].push((c, x));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            data: buckets.into_iter().map(SparseVector::from_pairs).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVector {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVector::nnz).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, x) in row.entries() {
                buckets[*c].push((r, x.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(|entries| SparseVector { entries }).collect(),
        }
    }

    /// `M · v` for a vector indexed by columns.
    pub fn mul_vector(&self, v: &SparseVector) -> SparseVector {
        SparseVector::from_pairs(self.data.iter().enumerate().filter_map(|(r, row)| {
            let mut acc = Scalar::zero();
            for (c, x) in row.entries() {
                let y = v.get(*c);
                if !y.is_zero() {
                    acc += x * &y;
                }
            }
            (!acc.is_zero()).then_some((r, acc))
        }))
    }
}

/// Integer arithmetic used by the fraction-free elimination. The `i64`
/// instance reports overflow, after which the computation restarts on `BigInt`.
trait EliminationInt: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn mul(a: &Self, x: &Self) -> Option<Self>;
    fn is_one(&self) -> bool;
}

impl EliminationInt for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        *self / *other
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn mul(a: &Self, x: &Self) -> Option<Self> {
        a.checked_mul(*x)
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl EliminationInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn mul(a: &Self, x: &Self) -> Option<Self> {
        Some(a * x)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

type IntRow<T> = Vec<(usize, T)>;

/// Divides out the content and makes the leading entry positive.
fn make_primitive<T: EliminationInt>(row: &mut IntRow<T>) {
    let Some((_, first)) = row.first() else { return };
    let mut g = first.clone();
    for (_, x) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    let flip = first.is_negative();
    if !g.is_one() || flip {
        let g = if flip { g.neg() } else { g };
        for (_, x) in row.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// `a·row − b·pivot` merged by column; `None` on overflow.
fn combine<T: EliminationInt>(a: &T, row: &IntRow<T>, b: &T, pivot: &IntRow<T>) -> Option<IntRow<T>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, T::mul(a, &row[i].1)?));
            i += 1;
        } else if cj < ci {
            out.push((cj, T::mul(b, &pivot[j].1)?.neg()));
            j += 1;
        } else {
            let v = T::mul_sub(a, &row[i].1, b, &pivot[j].1)?;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Incremental fraction-free elimination. Each incoming row is reduced
/// against the pivot rows in order of its leading column; `None` on overflow.
fn echelon<T: EliminationInt>(rows: Vec<IntRow<T>>, cols: usize) -> Option<Vec<IntRow<T>>> {
    let mut pivot_of: Vec<Option<usize>> = vec![None; cols];
    let mut basis: Vec<IntRow<T>> = Vec::new();
    for mut r in rows {
        make_primitive(&mut r);
        while let Some((lead, b)) = r.first().cloned() {
            match pivot_of[lead] {
                Some(p) => {
                    let a = basis[p][0].1.clone();
                    let g = a.gcd(&b);
                    r = combine(&a.div_exact(&g), &r, &b.div_exact(&g), &basis[p])?;
                    make_primitive(&mut r);
                }
                None => {
                    pivot_of[lead] = Some(basis.len());
                    basis.push(r);
                    break;
                }
            }
        }
    }
    Some(basis)
}

/// Scales a rational row to a primitive integer row.
fn integer_row(v: &SparseVector) -> IntRow<BigInt> {
    let lcm = v.entries().iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    v.entries()
        .iter()
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .collect()
}

fn echelon_big(matrix: &SparseMatrix) -> Vec<IntRow<BigInt>> {
    let rows: Vec<IntRow<BigInt>> = matrix.data.iter().map(integer_row).collect();
    let small: Option<Vec<IntRow<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|(c, x)| x.to_i64().map(|x| (*c, x))).collect())
        .collect();
    if let Some(echelon) = small.and_then(|small| echelon(small, matrix.cols)) {
        return echelon
            .into_iter()
            .map(|r| r.into_iter().map(|(c, x)| (c, BigInt::from(x))).collect())
            .collect();
    }
    echelon(rows, matrix.cols).expect("BigInt elimination cannot overflow")
}

/// Exact rank over the rationals.
pub fn rank(matrix: &SparseMatrix) -> usize {
    echelon_big(matrix).len()
}

/// Rank over `F_p` for a prime `p < 2^32`, or `None` when some denominator
/// is divisible by `p`. It never exceeds the rational rank.
pub fn rank_mod_p(matrix: &SparseMatrix, p: u64) -> Option<usize> {
    let reduce = |x: &BigInt| -> u64 { x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p") };
    let inverse = |a: u64| -> u64 {
        // Fermat; p is prime
        let (mut base, mut exp, mut acc) = (a, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut pivot_of: Vec<Option<usize>> = vec![None; matrix.cols];
    let mut basis: Vec<Vec<(usize, u64)>> = Vec::new();
    for v in &matrix.data {
        let mut r: Vec<(usize, u64)> = Vec::with_capacity(v.nnz());
        for (c, x) in v.entries() {
            let d = reduce(x.denom());
            if d == 0 {
                return None;
            }
            let y = reduce(x.numer()) * inverse(d) % p;
            if y != 0 {
                r.push((*c, y));
            }
        }
        while let Some(&(lead, b)) = r.first() {
            match pivot_of[lead] {
                Some(k) => {
                    let pivot = &basis[k];
                    let mut out = Vec::with_capacity(r.len() + pivot.len());
                    let (mut i, mut j) = (0, 0);
                    while i < r.len() || j < pivot.len() {
                        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
                        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
                        if ci < cj {
                            out.push(r[i]);
                            i += 1;
                        } else if cj < ci {
                            out.push((cj, (p - b * pivot[j].1 % p) % p));
                            j += 1;
                        } else {
                            let y = (r[i].1 + p - b * pivot[j].1 % p) % p;
                            if y != 0 {
                                out.push((ci, y));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    r = out;
                }
                None => {
                    let inv = inverse(b);
                    for e in r.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    pivot_of[lead] = Some(basis.len());
                    basis.push(r);
                    break;
                }
            }
        }
    }
    Some(basis.len())
}

/// A basis of `{v : M v = 0}`, one vector per non-pivot column, each with
/// a `1` in its own free column.
pub fn kernel_basis(matrix: &SparseMatrix) -> Vec<SparseVector> {
    let mut echelon: Vec<Vec<(usize, Scalar)>> = echelon_big(matrix)
        .into_iter()
        .map(|r| {
            let lead = Scalar::from(r[0].1.clone());
            let inv = lead.recip().expect("pivot is nonzero");
            r.into_iter().map(|(c, x)| (c, Scalar::from(x) * &inv)).collect()
        })
        .collect();
    echelon.sort_by_key(|r| r[0].0);
    // back substitution to reduced row echelon form
    for k in (0..echelon.len()).rev() {
        let lead = echelon[k][0].0;
        let pivot = echelon[k].clone();
        for upper in echelon.iter_mut().take(k) {
            let factor = SparseVector { entries: upper.clone() }.get(lead);
            if factor.is_zero() {
                continue;
            }
            let merged = upper
                .iter()
                .cloned()
                .chain(pivot.iter().map(|(c, x)| (*c, -(x * &factor))));
            *upper = SparseVector::from_pairs(merged).entries;
        }
    }
    let mut is_pivot = vec![false; matrix.cols];
    for r in &echelon {
        is_pivot[r[0].0] = true;
    }
    (0..matrix.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut pairs = vec![(f, Scalar::one())];
            for r in &echelon {
                let x = SparseVector { entries: r.clone() }.get(f);
                if !x.is_zero() {
                    pairs.push((r[0].0, -x));
                }
            }
            SparseVector::from_pairs(pairs)
        })
        .collect()
}
