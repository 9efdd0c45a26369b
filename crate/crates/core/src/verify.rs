//! The verification suites behind `operad-forge verify`.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::deform::{
    basis_d, dim_delta, dim_formula, homology_d_bounded, DInfinity, LambdaProfile, Perm, QOperad, SPerm, HOMOLOGY_BOUND,
};
use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::exact::Permutation;
use crate::lie::{Derived, Lie};
use crate::operad::axioms::check_exhaustive;
use crate::operad::{compose_partial, differential, free_operad_basis, suspend, symmetric_action, Element, Generators};
use crate::report::{Check, Report};
use crate::shleib::{
    binary_dims, evaluate, lie_d, normal_bracket_rank, odd_leibniz_identity, regular_part, shleib_operad, theta,
    tree_diff_generator, verify_chain_map, verify_iso, Theta, WordContext,
};
use crate::trees::{
    count_trees_by_enumeration, count_trees_from_corollas, enumerate_trees, fuss_catalan, schroeder, CorollaMultiset,
};

pub const DEFAULT_MAX_CELLS: u64 = 50_000_000;
pub const ISO_BOUND: usize = 5;
pub const CHAIN_BOUND: usize = 4;
/// Chain-map bound under `--long-run`.
pub const CHAIN_BOUND_LONG: usize = 5;

/// Schröder numbers `s(1..=10)`.
pub const SCHROEDER_TABLE: [u128; 10] = [1, 1, 3, 11, 45, 197, 903, 4279, 20793, 103049];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_cells: u64,
    pub long_run: bool,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cells: DEFAULT_MAX_CELLS,
            long_run: false,
            seed: 0,
        }
    }
}

impl Limits {
    /// Reads `OPERAD_FORGE_MAX_CELLS`.
    pub fn from_env(long_run: bool, seed: u64) -> Result<Self> {
        let max_cells = match std::env::var("OPERAD_FORGE_MAX_CELLS") {
            Ok(v) => v
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite() && *x >= 1.0)
                .map(|x| x as u64)
                .ok_or_else(|| Error::arg(format!("OPERAD_FORGE_MAX_CELLS must be a positive number, got `{v}`")))?,
            Err(_) => DEFAULT_MAX_CELLS,
        };
        Ok(Limits {
            max_cells,
            long_run,
            seed,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem,
    Homology,
    Axioms,
    Counting,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem" => Suite::Theorem,
            "homology" => Suite::Homology,
            "axioms" => Suite::Axioms,
            "counting" => Suite::Counting,
            "all" => Suite::All,
            _ => return Err(Error::arg(format!("unknown suite `{s}`"))),
        })
    }
}

impl Suite {
    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Theorem => 6,
            Suite::Homology => 5,
            Suite::Axioms => 4,
            Suite::Counting | Suite::All => 10,
        }
    }
}

pub fn run(suite: Suite, max_n: Option<usize>, limits: &Limits) -> Result<Report> {
    if max_n == Some(0) {
        return Err(Error::arg("--max-n must be at least 1"));
    }
    let pick = |s: Suite| max_n.unwrap_or(s.default_max_n());
    let mut report = match suite {
        Suite::Theorem => theorem(pick(Suite::Theorem), limits),
        Suite::Homology => homology(pick(Suite::Homology), limits),
        Suite::Axioms => axioms(pick(Suite::Axioms), limits),
        Suite::Counting => counting(pick(Suite::Counting)),
        Suite::All => {
            let mut r = theorem(pick(Suite::Theorem).min(max_n.unwrap_or(6)), limits);
            r.extend(homology(max_n.unwrap_or(5), limits));
            r.extend(axioms(max_n.unwrap_or(4), limits));
            r.extend(counting(pick(Suite::Counting)));
            r
        }
    };
    if !limits.long_run {
        // resource limits skip a check unless the run asked to go past them
        for c in report.checks.iter_mut().filter(|c| c.resource) {
            c.pass = true;
            c.skipped = true;
        }
        report.resource_exceeded = false;
    }
    Ok(report)
}

fn error_check(name: &str, arity: Option<usize>, e: &Error, report: &mut Report) {
    let mut c = Check::holds(name, arity, false);
    if matches!(e, Error::Resource(_)) {
        report.resource_exceeded = true;
        c.resource = true;
    }
    c.witness = Some(e.to_string());
    report.push(c);
}

fn fact(n: usize) -> u128 {
    factorial(n as u64).try_into().unwrap_or(u128::MAX)
}

pub fn theorem(max_n: usize, limits: &Limits) -> Report {
    let mut r = Report::default();
    for n in 2..=max_n {
        if n > ISO_BOUND && !limits.long_run {
            r.push(Check::skipped(
                "iso",
                Some(n),
                format!("above the default bound {ISO_BOUND}; use --long-run"),
            ));
            continue;
        }
        match (verify_iso(n, limits.max_cells), schroeder(n)) {
            (Ok(iso), Ok(s)) => {
                let want = fact(n) * s;
                r.push(Check::new(
                    "iso",
                    Some(n),
                    json!({"source": want, "target": want, "rank": want}),
                    json!({"source": iso.source_dim, "target": iso.target_dim, "rank": iso.rank}),
                ));
            }
            (Err(e), _) | (_, Err(e)) => error_check("iso", Some(n), &e, &mut r),
        }
    }
    let chain_bound = if limits.long_run { CHAIN_BOUND_LONG } else { CHAIN_BOUND };
    for n in 2..=max_n {
        if n > chain_bound {
            r.push(Check::skipped(
                "chain_map",
                Some(n),
                format!("above the bound {chain_bound}"),
            ));
            continue;
        }
        match verify_chain_map(n) {
            Ok(c) => {
                let witness = c
                    .failure
                    .as_ref()
                    .map(|(x, a, b)| format!("θ(d_t {x}) = {a} but ∂θ = {b}"));
                let mut check = Check::holds("chain_map", Some(n), c.failure.is_none());
                check.witness = witness;
                r.push(check);
            }
            Err(e) => error_check("chain_map", Some(n), &e, &mut r),
        }
    }
    worked_computations(&mut r);
    for n in 2..=6 {
        let d = crate::shleib::tree_diff(&tree_diff_generator(n)).map(|e| e.to_string());
        match d {
            Ok(d) => r.push(Check::new("tree_diff_squared_generator", Some(n), "0", d)),
            Err(e) => error_check("tree_diff_squared_generator", Some(n), &e, &mut r),
        }
    }
    let op = shleib_operad();
    for n in 1..=max_n.min(5) {
        let basis = free_operad_basis(&Generators::Corollas { degree: 1 }, n).unwrap_or_default();
        let bad = basis
            .iter()
            .find(|x| !differential(&op, &differential(&op, &Element::basis(n, (*x).clone()))).is_zero());
        r.push(
            Check::holds("tree_diff_squared_monomials", Some(n), bad.is_none())
                .with_witness(bad.map(|x| x.to_string()).unwrap_or_default()),
        );
    }
    for n in 2..=max_n {
        match regular_part(n, max_n) {
            Ok(p) => r.push(Check::new(
                "regular_part_terms",
                Some(n),
                p.expected_count,
                p.regular.len(),
            )),
            Err(e) => error_check("regular_part_terms", Some(n), &e, &mut r),
        }
    }
    for n in 2..=max_n.min(6) {
        match normal_bracket_rank(n) {
            Ok(k) => r.push(Check::new("normal_derived_brackets", Some(n), fact(n), k)),
            Err(e) => error_check("normal_derived_brackets", Some(n), &e, &mut r),
        }
    }
    match odd_leibniz_identity() {
        Ok(id) => r.push(
            Check::new("odd_leibniz_identity", Some(3), id.lhs.to_string(), id.rhs.to_string())
                .with_witness(id.middle.to_string()),
        ),
        Err(e) => error_check("odd_leibniz_identity", Some(3), &e, &mut r),
    }
    let top = max_n.min(6);
    match binary_dims(top, top) {
        Ok(rows) => {
            for d in rows {
                r.push(Check::new(
                    "binary_model_dims",
                    Some(d.arity),
                    json!({"model": d.expected, "generated": d.expected, "quotient": d.expected}),
                    json!({"model": d.model, "generated": d.generated, "quotient": d.quotient}),
                ));
            }
        }
        Err(e) => error_check("binary_model_dims", None, &e, &mut r),
    }
    r
}

fn d_elem(text: &str) -> Result<Element<crate::deform::WordTuple>> {
    DInfinity.parse_element(text)
}

fn q_elem(text: &str) -> Result<Element<crate::deform::WordTuple>> {
    QOperad.parse_element(text)
}

fn worked_computations(r: &mut Report) {
    let d = || -> Result<Vec<Check>> {
        let x = d_elem("d2|1|1")?;
        let y = d_elem("d1|1")?;
        let dx = differential(&DInfinity, &x);
        let composite = compose_partial(&DInfinity, &y, 1, &y)?
            .neg()
            .sub(&compose_partial(&DInfinity, &y, 2, &y)?);
        let q1 = q_elem("d0|1")?;
        let q2 = q_elem("1|d0")?;
        let target = q_elem("-1 · d0|d0|1")?;
        let th_lhs = differential(&lie_d(), &evaluate(&"{d2(1),2,3}".parse::<Derived>()?, WordContext::D)?);
        let ev = |s: &str| -> Result<_> { evaluate(&s.parse::<Derived>()?, WordContext::D) };
        let th_rhs = ev("{d1{d1(1),2},3}")?
            .neg()
            .sub(&ev("{d1(1),{d1(2),3}}")?)
            .sub(&ev("{d1(2),{d1(1),3}}")?);
        let via_theta = theta(&tree_diff_generator(3))?;
        Ok(vec![
            Check::new("D_differential_example", Some(3), "-1 · d1.d1|1|1", dx.to_string()),
            Check::new(
                "D_differential_as_composites",
                Some(3),
                dx.to_string(),
                composite.to_string(),
            ),
            Check::new(
                "Q_odd_associativity",
                Some(3),
                target.to_string(),
                compose_partial(&QOperad, &q1, 1, &q1)?.to_string(),
            ),
            Check::new(
                "Q_odd_associativity",
                Some(3),
                target.to_string(),
                compose_partial(&QOperad, &q1, 2, &q1)?.neg().to_string(),
            ),
            Check::new(
                "Q_odd_permutation",
                Some(3),
                target.to_string(),
                compose_partial(&QOperad, &q1, 1, &q2)?.neg().to_string(),
            ),
            Check::new("theorem_display", Some(3), th_rhs.to_string(), th_lhs.to_string()),
            Check::new(
                "theorem_display_via_theta",
                Some(3),
                th_rhs.to_string(),
                via_theta.to_string(),
            ),
        ])
    };
    match d() {
        Ok(checks) => checks.into_iter().for_each(|c| r.push(c)),
        Err(e) => error_check("worked_computations", None, &e, r),
    }
}

pub fn homology(max_n: usize, limits: &Limits) -> Report {
    let mut r = Report::default();
    let bound = if limits.long_run { usize::MAX } else { HOMOLOGY_BOUND };
    for n in 2..=max_n {
        if n > bound {
            r.push(Check::skipped(
                "homology_D",
                Some(n),
                format!("above the bound {HOMOLOGY_BOUND}"),
            ));
            continue;
        }
        let mut want = vec![0usize; n - 1];
        want[n - 2] = n;
        match homology_d_bounded(n, bound) {
            Ok(h) => r.push(Check::new("homology_D", Some(n), want, h)),
            Err(e) => error_check("homology_D", Some(n), &e, &mut r),
        }
    }
    for n in 1..=max_n.min(6) {
        let basis = basis_d(n, None).unwrap_or_default();
        let bad = basis
            .iter()
            .find(|t| !differential(&DInfinity, &differential(&DInfinity, &Element::basis(n, (*t).clone()))).is_zero());
        r.push(
            Check::holds("D_differential_squared", Some(n), bad.is_none())
                .with_witness(bad.map(|t| t.to_string()).unwrap_or_default()),
        );
    }
    r
}

pub fn axioms(max_n: usize, limits: &Limits) -> Report {
    let mut r = Report::default();
    let n = max_n.min(5);
    let mut law = |name: &str, result: std::result::Result<usize, String>| match result {
        Ok(_) => r.push(Check::holds(format!("operad_laws:{name}"), Some(n), true)),
        Err(w) => r.push(Check::holds(format!("operad_laws:{name}"), Some(n), false).with_witness(w)),
    };
    law("Lie", check_exhaustive(&Lie, n));
    law("D∞", check_exhaustive(&DInfinity, n));
    law("Q", check_exhaustive(&QOperad, n));
    law("sΛPerm", check_exhaustive(&SPerm, n));
    law("Perm", check_exhaustive(&Perm, n));
    law("ΛPerm", check_exhaustive(&suspend(Perm), n));
    law("sΛLeib∞", check_exhaustive(&shleib_operad(), n.min(4)));
    law("Lie⊗D∞", check_exhaustive(&lie_d(), n.min(3)));
    theta_samples(max_n.min(5), limits.seed, 200, &mut r);
    r
}

/// θ on random pairs: morphism and equivariance, from a seeded generator.
pub fn theta_samples(max_n: usize, seed: u64, cases: usize, r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let th = Theta::new();
    let src = shleib_operad();
    let bases: Vec<_> = (0..=max_n.max(2))
        .map(|n| {
            if n < 2 {
                Vec::new()
            } else {
                free_operad_basis(&Generators::Corollas { degree: 1 }, n).unwrap_or_default()
            }
        })
        .collect();
    let mut morphism_fail = None;
    let mut equivariance_fail = None;
    for _ in 0..cases {
        if max_n < 3 {
            break;
        }
        let a = rng.gen_range(2..max_n);
        let b = rng.gen_range(2..=max_n + 1 - a);
        let x = bases[a].choose(&mut rng).expect("nonempty").clone();
        let y = bases[b].choose(&mut rng).expect("nonempty").clone();
        let i = rng.gen_range(1..=a);
        let ok = (|| -> Result<bool> {
            let xy = compose_partial(&src, &Element::basis(a, x.clone()), i, &Element::basis(b, y.clone()))?;
            let lhs = th.apply(&xy)?;
            let rhs = compose_partial(th.target(), &th.apply_key(&x)?, i, &th.apply_key(&y)?)?;
            Ok(lhs == rhs)
        })();
        if morphism_fail.is_none() && !matches!(ok, Ok(true)) {
            morphism_fail = Some(format!("θ({x} ∘_{i} {y})"));
        }
        let n = rng.gen_range(2..=max_n);
        let z = bases[n].choose(&mut rng).expect("nonempty").clone();
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(&mut rng);
        let sigma = Permutation::from_images(images).expect("a permutation");
        let ok = (|| -> Result<bool> {
            let lhs = th.apply(&symmetric_action(&src, &sigma, &Element::basis(n, z.clone()))?)?;
            let rhs = symmetric_action(th.target(), &sigma, &th.apply_key(&z)?)?;
            Ok(lhs == rhs)
        })();
        if equivariance_fail.is_none() && !matches!(ok, Ok(true)) {
            equivariance_fail = Some(format!("{sigma}·{z}"));
        }
    }
    r.push(
        Check::holds("theta_morphism_sampled", Some(max_n), morphism_fail.is_none())
            .with_witness(morphism_fail.unwrap_or_default()),
    );
    r.push(
        Check::holds("theta_equivariance_sampled", Some(max_n), equivariance_fail.is_none())
            .with_witness(equivariance_fail.unwrap_or_default()),
    );
}

pub fn counting(max_n: usize) -> Report {
    let mut r = Report::default();
    for n in 1..=max_n {
        let s = schroeder(n);
        match (SCHROEDER_TABLE.get(n - 1), &s) {
            (Some(&want), Ok(s)) => r.push(Check::new("schroeder_table", Some(n), want, *s)),
            (None, Ok(_)) => {}
            (_, Err(e)) => error_check("schroeder_table", Some(n), e, &mut r),
        }
        if n <= 8 {
            if let (Ok(s), Ok(trees)) = (&s, enumerate_trees(n)) {
                r.push(Check::new("schroeder_enumeration", Some(n), *s, trees.len() as u128));
            }
        }
    }
    for n in 2..=max_n {
        let lhs: Result<u128> = (1..n)
            .map(|a| dim_formula(n, a))
            .sum::<Result<u128>>()
            .map(|s| fact(n - 1) * s);
        match (lhs, schroeder(n)) {
            (Ok(l), Ok(s)) => r.push(Check::new("schroeder_identity", Some(n), fact(n) * s, l)),
            (Err(e), _) | (_, Err(e)) => error_check("schroeder_identity", Some(n), &e, &mut r),
        }
    }
    for n in 2..=max_n.min(8) {
        for a in 1..n {
            if let (Ok(basis), Ok(f)) = (basis_d(n, Some(a)), dim_formula(n, a)) {
                r.push(Check::new(format!("dim_D(a={a})"), Some(n), f, basis.len() as u128));
                let mut found: std::collections::BTreeMap<Vec<u64>, u128> = Default::default();
                for t in &basis {
                    *found
                        .entry(LambdaProfile::new(t.profile()).multiplicities().to_vec())
                        .or_default() += 1;
                }
                let bad = LambdaProfile::all(n)
                    .into_iter()
                    .filter(|p| p.degree() == a as u64)
                    .find(|p| dim_delta(p, n).ok() != Some(found.get(p.multiplicities()).copied().unwrap_or(0)));
                r.push(
                    Check::holds(format!("dim_delta(a={a})"), Some(n), bad.is_none())
                        .with_witness(bad.map(|p| p.to_string()).unwrap_or_default()),
                );
            }
        }
    }
    for leaves in 1..=max_n.min(8) {
        let mut bad = None;
        let multisets = CorollaMultiset::all_with_leaves(leaves);
        for c in &multisets {
            if count_trees_from_corollas(c).ok() != count_trees_by_enumeration(c).ok() {
                bad = Some(c.to_string());
                break;
            }
        }
        r.push(
            Check::holds("count_trees", Some(leaves), bad.is_none()).with_witness(format!(
                "{} multisets{}",
                multisets.len(),
                bad.map(|b| format!(", mismatch at {b}")).unwrap_or_default()
            )),
        );
    }
    let catalan: Vec<u128> = (1..=7).map(|m| fuss_catalan(2, m).unwrap_or(0)).collect();
    r.push(Check::new(
        "fuss_catalan_k2",
        None,
        vec![1u128, 2, 5, 14, 42, 132, 429],
        catalan,
    ));
    r
}
