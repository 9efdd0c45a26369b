//! Dimension and Schröder tables, computed by enumeration with closed
//! forms alongside.

use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::deform::{basis_d, basis_sperm, dim_formula};
use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::lie::Lie;
use crate::operad::Operad;
use crate::trees::{enumerate_trees, schroeder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchroederRow {
    pub n: usize,
    pub schroeder: u128,
    /// `(1/n) Σ_a C(n+a−1,a) C(n−2,a−1)`, or `1` at `n = 1`.
    pub cross_check: u128,
}

pub fn schroeder_table(max_n: usize) -> Result<Vec<SchroederRow>> {
    if max_n == 0 {
        return Err(Error::arg("--max-n must be at least 1"));
    }
    (1..=max_n)
        .map(|n| {
            let cross_check = if n == 1 {
                1
            } else {
                let sum: u128 = (1..n).map(|a| dim_formula(n, a)).sum::<Result<u128>>()?;
                if sum % n as u128 != 0 {
                    return Err(Error::arg(format!("Σ_a C(n+a−1,a)C(n−2,a−1) is not divisible by {n}")));
                }
                sum / n as u128
            };
            Ok(SchroederRow {
                n,
                schroeder: schroeder(n)?,
                cross_check,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Lie,
    D,
    SPerm,
    SLeib,
    LieD,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "Lie" | "lie" => Family::Lie,
            "D" | "d" | "Dinf" | "D∞" => Family::D,
            "sPerm" | "sperm" | "sΛPerm" => Family::SPerm,
            "sLeib" | "sleib" | "sLeib∞" | "sΛLeib∞" => Family::SLeib,
            "Lie⊗D" | "LieD" | "Lie*D" | "lie-d" => Family::LieD,
            _ => {
                return Err(Error::arg(format!(
                    "unknown operad `{s}`; expected Lie, D, sPerm, sLeib or Lie⊗D"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub n: usize,
    pub degree: i64,
    /// Counted from an enumerated basis.
    pub dim: u128,
    pub formula: Option<u128>,
}

fn to_u128(x: num_bigint::BigUint) -> Result<u128> {
    x.to_u128()
        .ok_or_else(|| Error::Resource("dimension exceeds 128 bits".into()))
}

/// Dimensions by arity and degree; `degree` keeps only that degree.
pub fn dims(family: Family, max_n: usize, degree: Option<i64>) -> Result<Vec<DimRow>> {
    if max_n == 0 {
        return Err(Error::arg("--max-n must be at least 1"));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let fact = |k: usize| to_u128(factorial(k as u64));
        let degrees: Vec<usize> = if n == 1 { vec![0] } else { (1..n).collect() };
        match family {
            Family::Lie => rows.push(DimRow {
                n,
                degree: 0,
                dim: Lie.basis(n)?.len() as u128,
                formula: Some(fact(n - 1)?),
            }),
            Family::SPerm => rows.push(DimRow {
                n,
                degree: n as i64 - 1,
                dim: basis_sperm(n)?.len() as u128,
                formula: Some(n as u128),
            }),
            Family::D | Family::LieD => {
                let scale = if family == Family::LieD {
                    Lie.basis(n)?.len() as u128
                } else {
                    1
                };
                for &a in &degrees {
                    let dim = basis_d(n, Some(a))?.len() as u128 * scale;
                    let formula = if n == 1 { 1 } else { dim_formula(n, a)? };
                    let formula = formula * if family == Family::LieD { fact(n - 1)? } else { 1 };
                    rows.push(DimRow {
                        n,
                        degree: a as i64,
                        dim,
                        formula: Some(formula),
                    });
                }
            }
            Family::SLeib => {
                let trees = enumerate_trees(n)?;
                for &v in &degrees {
                    let count = trees.iter().filter(|t| t.vertex_count() == v).count() as u128;
                    // planar trees with v vertices number C(n+v−1,v)·C(n−2,v−1)/n
                    let formula = if n == 1 { 1 } else { fact(n - 1)? * dim_formula(n, v)? };
                    rows.push(DimRow {
                        n,
                        degree: v as i64,
                        dim: count * fact(n)?,
                        formula: Some(formula),
                    });
                }
            }
        }
    }
    Ok(rows
        .into_iter()
        .filter(|r| degree.is_none_or(|d| d == r.degree))
        .collect())
}
