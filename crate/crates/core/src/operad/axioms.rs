//! Brute-force checks of the operad laws on basis keys.
//!
//! Each check returns `Err(witness)` describing the first failing instance.

use super::{
    block_permutation, compose_partial, differential, insert_permutation, sign, symmetric_action, Element, Operad,
};
use crate::exact::Permutation;

pub type Check = std::result::Result<(), String>;

fn el<O: Operad>(op: &O, k: &O::Key) -> Element<O::Key> {
    op.element(k.clone())
}

fn compare<K: Ord + Clone + std::fmt::Display>(law: &str, lhs: Element<K>, rhs: Element<K>) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{law}: lhs = {lhs}, rhs = {rhs}"))
    }
}

fn c<O: Operad>(op: &O, p: &Element<O::Key>, i: usize, q: &Element<O::Key>) -> Element<O::Key> {
    compose_partial(op, p, i, q).expect("indices are in range")
}

pub fn check_unit<O: Operad>(op: &O, p: &O::Key) -> Check {
    let p = el(op, p);
    let unit = op.unit_element();
    for i in 1..=p.arity() {
        compare(&format!("unit: ({p}) ∘_{i} 1"), c(op, &p, i, &unit), p.clone())?;
    }
    compare(&format!("unit: 1 ∘_1 ({p})"), c(op, &unit, 1, &p), p.clone())
}

/// `(p ∘_i q) ∘_{i+j−1} r = p ∘_i (q ∘_j r)`.
pub fn check_sequential<O: Operad>(op: &O, p: &O::Key, i: usize, q: &O::Key, j: usize, r: &O::Key) -> Check {
    let (p, q, r) = (el(op, p), el(op, q), el(op, r));
    let lhs = c(op, &c(op, &p, i, &q), i + j - 1, &r);
    let rhs = c(op, &p, i, &c(op, &q, j, &r));
    compare(&format!("sequential: p={p}, i={i}, q={q}, j={j}, r={r}"), lhs, rhs)
}

/// `(p ∘_i q) ∘_{k+|q|−1} r = (−1)^{|q||r|} (p ∘_k r) ∘_i q` for `i < k`.
pub fn check_parallel<O: Operad>(op: &O, p: &O::Key, i: usize, q: &O::Key, k: usize, r: &O::Key) -> Check {
    let s = sign(op.key_degree(q) * op.key_degree(r));
    let (p, q, r) = (el(op, p), el(op, q), el(op, r));
    let lhs = c(op, &c(op, &p, i, &q), k + q.arity() - 1, &r);
    let rhs = c(op, &c(op, &p, k, &r), i, &q).scaled(&s);
    compare(&format!("parallel: p={p}, i={i}, q={q}, k={k}, r={r}"), lhs, rhs)
}

/// `(σ·p) ∘_{σ(i)} q = τ·(p ∘_i q)` and `p ∘_i (ρ·q) = (id ∘_i ρ)·(p ∘_i q)`.
pub fn check_equivariance<O: Operad>(
    op: &O,
    sigma: &Permutation,
    p: &O::Key,
    i: usize,
    rho: &Permutation,
    q: &O::Key,
) -> Check {
    let (pe, qe) = (el(op, p), el(op, q));
    let composite = c(op, &pe, i, &qe);
    let sp = symmetric_action(op, sigma, &pe).expect("sizes match");
    let lhs = c(op, &sp, sigma.apply(i), &qe);
    let tau = block_permutation(sigma, i, qe.arity());
    let rhs = symmetric_action(op, &tau, &composite).expect("sizes match");
    compare(
        &format!("equivariance (outer): σ={sigma}, p={pe}, i={i}, q={qe}"),
        lhs,
        rhs,
    )?;

    let rq = symmetric_action(op, rho, &qe).expect("sizes match");
    let lhs = c(op, &pe, i, &rq);
    let inner = insert_permutation(pe.arity(), i, rho);
    let rhs = symmetric_action(op, &inner, &composite).expect("sizes match");
    compare(
        &format!("equivariance (inner): ρ={rho}, p={pe}, i={i}, q={qe}"),
        lhs,
        rhs,
    )
}

/// `σ·(τ·p) = (σ∘τ)·p`.
pub fn check_action<O: Operad>(op: &O, sigma: &Permutation, tau: &Permutation, p: &O::Key) -> Check {
    let pe = el(op, p);
    let lhs = symmetric_action(op, sigma, &symmetric_action(op, tau, &pe).expect("sizes match")).expect("sizes match");
    let rhs = symmetric_action(op, &sigma.compose(tau).expect("sizes match"), &pe).expect("sizes match");
    compare(&format!("action: σ={sigma}, τ={tau}, p={pe}"), lhs, rhs)
}

/// `d(p ∘_i q) = dp ∘_i q + (−1)^{|p|} p ∘_i dq`.
pub fn check_dg_leibniz<O: Operad>(op: &O, p: &O::Key, i: usize, q: &O::Key) -> Check {
    let s = sign(op.key_degree(p));
    let (pe, qe) = (el(op, p), el(op, q));
    let lhs = differential(op, &c(op, &pe, i, &qe));
    let mut rhs = c(op, &differential(op, &pe), i, &qe);
    rhs.add_scaled(&c(op, &pe, i, &differential(op, &qe)), &s);
    compare(&format!("dg Leibniz: p={pe}, i={i}, q={qe}"), lhs, rhs)
}

/// `d(σ·p) = σ·dp` and `d(d(p)) = 0`.
pub fn check_differential<O: Operad>(op: &O, sigma: &Permutation, p: &O::Key) -> Check {
    let pe = el(op, p);
    let dp = differential(op, &pe);
    compare(
        &format!("d² = 0 on {pe}"),
        differential(op, &dp),
        Element::zero(pe.arity()),
    )?;
    let lhs = differential(op, &symmetric_action(op, sigma, &pe).expect("sizes match"));
    let rhs = symmetric_action(op, sigma, &dp).expect("sizes match");
    compare(&format!("d equivariant: σ={sigma}, p={pe}"), lhs, rhs)
}

/// Runs every law on all basis keys with total arity at most `max_arity`.
/// Returns the number of instances checked.
pub fn check_exhaustive<O: Operad>(op: &O, max_arity: usize) -> std::result::Result<usize, String> {
    let bases: Vec<Vec<O::Key>> = (1..=max_arity)
        .map(|n| op.basis(n).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let basis = |n: usize| &bases[n - 1];
    let mut count = 0;
    for n in 1..=max_arity {
        let perms = Permutation::all(n);
        for p in basis(n) {
            check_unit(op, p)?;
            for s in &perms {
                check_differential(op, s, p)?;
                count += 1;
            }
        }
        if n <= 3 {
            for s in &perms {
                for t in &perms {
                    for p in basis(n) {
                        check_action(op, s, t, p)?;
                        count += 1;
                    }
                }
            }
        }
        for m in 1..=max_arity + 1 - n {
            for p in basis(n) {
                for q in basis(m) {
                    for i in 1..=n {
                        check_dg_leibniz(op, p, i, q)?;
                        count += 1;
                        if n + m - 1 <= 4 {
                            for s in &perms {
                                let rho = &Permutation::all(m);
                                for r in rho {
                                    check_equivariance(op, s, p, i, r, q)?;
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
            for l in 1..=max_arity + 1 - n - m + 1 {
                if n + m + l - 2 > max_arity {
                    continue;
                }
                for p in basis(n) {
                    for q in basis(m) {
                        for r in basis(l) {
                            for i in 1..=n {
                                for j in 1..=m {
                                    check_sequential(op, p, i, q, j, r)?;
                                    count += 1;
                                }
                                for k in i + 1..=n {
                                    check_parallel(op, p, i, q, k, r)?;
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}
