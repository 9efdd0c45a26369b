use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::exact::{binomial, Permutation, Scalar};
use crate::operad::axioms::check_exhaustive;
use crate::operad::{compose_partial, differential, suspend, symmetric_action, Element, Operad};
use crate::trees::schroeder;

fn t(s: &str) -> WordTuple {
    s.parse().unwrap()
}

fn d(s: &str) -> Element<WordTuple> {
    DInfinity.parse_element(s).unwrap()
}

fn q(s: &str) -> Element<WordTuple> {
    QOperad.parse_element(s).unwrap()
}

fn texts(v: &[WordTuple]) -> BTreeSet<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Brute force: every tuple of words over `d_1..d_{n−1}` with at most
/// `n − 1` letters in total, filtered by weight.
fn brute_force_basis(n: usize) -> BTreeSet<String> {
    fn words(max_len: usize, letters: u8) -> Vec<Vec<u8>> {
        let mut out = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for k in 1..=letters {
                    let mut v: Vec<u8> = w.clone();
                    v.push(k);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
    let all = words(n - 1, (n - 1) as u8);
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let slots: Vec<DerivationWord> = idx.iter().map(|&i| DerivationWord::new(all[i].clone())).collect();
        let tuple = WordTuple::new(slots).unwrap();
        if tuple.weight() == 0 {
            out.insert(tuple.to_string());
        }
        let mut j = 0;
        while j < n {
            idx[j] += 1;
            if idx[j] < all.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
    }
    out
}

#[test]
fn basis_examples() {
    assert_eq!(
        texts(&basis_d(2, Some(1)).unwrap()),
        BTreeSet::from(["d1|1".into(), "1|d1".into()])
    );
    let expected: BTreeSet<String> = ["d1|d1|1", "d1|1|d1", "1|d1|d1", "d1.d1|1|1", "1|d1.d1|1", "1|1|d1.d1"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(texts(&basis_d(3, Some(2)).unwrap()), expected);
    assert_eq!(basis_d(5, Some(2)).unwrap().len(), 45);
    assert_eq!(basis_d(1, None).unwrap(), vec![WordTuple::unit()]);
    assert!(basis_d(3, Some(3)).is_err());
    assert!(basis_d(0, None).is_err());
    for n in 1..=4 {
        assert_eq!(texts(&basis_d(n, None).unwrap()), brute_force_basis(n), "n = {n}");
    }
}

#[test]
fn dimension_formulas() {
    assert_eq!(dim_formula(3, 1).unwrap(), 3);
    assert_eq!(dim_formula(3, 2).unwrap(), 6);
    assert_eq!([1, 2, 3].map(|a| dim_formula(4, a).unwrap()), [4, 20, 20]);
    assert!(dim_formula(4, 4).is_err());
    assert!(dim_formula(1, 1).is_err());
    assert_eq!(dim_d(1).unwrap(), 1);
    assert_eq!(dim_d(2).unwrap(), 2);

    assert_eq!(dim_delta(&"(2,0)".parse().unwrap(), 3).unwrap(), 6);
    assert_eq!(dim_delta(&LambdaProfile::new(vec![1, 0, 1, 0]), 5).unwrap(), 30);
    assert_eq!(dim_delta(&LambdaProfile::new(vec![1]), 2).unwrap(), 2);
    assert!(matches!(
        dim_delta(&LambdaProfile::new(vec![1]), 3),
        Err(Error::Argument(_))
    ));

    for n in 2..=8 {
        let all = basis_d(n, None).unwrap();
        for a in 1..n {
            let by_degree = basis_d(n, Some(a)).unwrap();
            let expected = binomial((n + a - 1) as u64, a as u64) * binomial((n - 2) as u64, (a - 1) as u64);
            assert_eq!(by_degree.len() as u128, dim_formula(n, a).unwrap());
            assert_eq!(num_bigint::BigUint::from(by_degree.len()), expected);
        }
        let profiles = LambdaProfile::all(n);
        let mut total = 0;
        for p in &profiles {
            let count = all.iter().filter(|t| LambdaProfile::new(t.profile()) == *p).count();
            assert_eq!(count as u128, dim_delta(p, n).unwrap(), "n = {n}, {p}");
            total += count;
        }
        assert_eq!(total, all.len());
    }
}

#[test]
fn schroeder_identity() {
    for n in 2..=10usize {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        let sum: u128 = (1..n).map(|a| dim_formula(n, a).unwrap()).sum();
        assert_eq!(fact(n - 1) * sum, fact(n) * schroeder(n).unwrap(), "n = {n}");
    }
}

#[test]
fn composition_examples() {
    let x = d("d1|1");
    assert_eq!(compose_partial(&DInfinity, &x, 2, &x).unwrap(), d("d1|d1|1"));
    assert_eq!(
        compose_partial(&DInfinity, &x, 1, &x).unwrap(),
        d("d1.d1|1|1 - d1|d1|1")
    );
    let u = DInfinity.unit_element();
    assert_eq!(compose_partial(&DInfinity, &x, 1, &u).unwrap(), x);
    assert_eq!(compose_partial(&DInfinity, &u, 1, &x).unwrap(), x);
    let swap = Permutation::from_images(vec![2, 1]).unwrap();
    assert_eq!(symmetric_action(&DInfinity, &swap, &x).unwrap(), d("1|d1"));
    assert_eq!(symmetric_action(&DInfinity, &Permutation::identity(2), &x).unwrap(), x);
}

#[test]
fn q_model_identities() {
    let a = q("d0|1");
    let b = q("1|d0");
    let lhs = compose_partial(&QOperad, &a, 1, &a).unwrap();
    assert_eq!(lhs, q("d0|d0|1").neg());
    assert_eq!(lhs, compose_partial(&QOperad, &a, 2, &a).unwrap().neg());
    assert_eq!(lhs, compose_partial(&QOperad, &a, 1, &b).unwrap().neg());
    assert!(q("d0.d0|1").is_zero());
    assert!(QOperad.parse_element("d1|1").is_err());
}

#[test]
fn q_relations() {
    // d0 acting on the product is a derivation, and d0 d0 = 0
    let unit2 = q("1|1");
    let d0 = q("d0");
    assert_eq!(compose_partial(&QOperad, &d0, 1, &unit2).unwrap(), q("d0|1 + 1|d0"));
    assert!(compose_partial(&QOperad, &d0, 1, &d0).unwrap().is_zero());
    // the product is associative
    assert_eq!(
        compose_partial(&QOperad, &unit2, 1, &unit2).unwrap(),
        compose_partial(&QOperad, &unit2, 2, &unit2).unwrap()
    );
}

#[test]
fn sperm_basis_and_closure() {
    assert_eq!(
        texts(&basis_sperm(2).unwrap()),
        BTreeSet::from(["d0|1".into(), "1|d0".into()])
    );
    assert_eq!(
        texts(&basis_sperm(3).unwrap()),
        ["d0|d0|1", "d0|1|d0", "1|d0|d0"]
            .into_iter()
            .map(String::from)
            .collect()
    );
    for n in 1..=8 {
        assert_eq!(basis_sperm(n).unwrap().len(), n);
    }
    check_exhaustive(&SPerm, 5).unwrap();
    // closure inside Q: compositions of Q^{n-1}(n) stay in top degree
    for n in 1..=3 {
        for m in 1..=3 {
            for x in basis_sperm(n).unwrap() {
                for y in basis_sperm(m).unwrap() {
                    for i in 1..=n {
                        for (k, _) in QOperad.compose_keys(&x, i, &y).iter() {
                            assert_eq!(k.degree() + 1, k.arity() as i64);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn differential_examples() {
    assert!(differential(&DInfinity, &d("d1|1")).is_zero());
    let dx = differential(&DInfinity, &d("d2|1|1"));
    assert_eq!(dx, d("d1.d1|1|1").neg());
    let x = d("d1|1");
    let mut rhs = compose_partial(&DInfinity, &x, 1, &x).unwrap();
    rhs.add(&compose_partial(&DInfinity, &x, 2, &x).unwrap());
    assert_eq!(dx, rhs.neg());
    assert_eq!(
        differential(&DInfinity, &d("d3|1|1|1")),
        d("d1.d2|1|1|1 + d2.d1|1|1|1").neg()
    );
    assert_eq!(dx.to_string(), "-1 · d1.d1|1|1");
}

#[test]
fn differential_squares_to_zero() {
    for n in 1..=6 {
        for x in basis_d(n, None).unwrap() {
            let dx = differential_d(&x);
            for (k, _) in dx.iter() {
                assert_eq!(k.weight(), 0);
                assert_eq!(k.degree(), x.degree() + 1);
            }
            assert!(differential(&DInfinity, &dx).is_zero(), "∂² ≠ 0 on {x}");
        }
    }
}

#[test]
fn operad_laws() {
    check_exhaustive(&DInfinity, 5).unwrap();
    check_exhaustive(&QOperad, 5).unwrap();
    check_exhaustive(&Perm, 5).unwrap();
    check_exhaustive(&suspend(Perm), 5).unwrap();
}

#[test]
fn homology() {
    assert_eq!(homology_d(2).unwrap(), vec![2]);
    assert_eq!(homology_d(3).unwrap(), vec![0, 3]);
    assert_eq!(homology_d(4).unwrap(), vec![0, 0, 4]);
    assert_eq!(homology_d(5).unwrap(), vec![0, 0, 0, 5]);
    assert!(matches!(homology_d(6), Err(Error::Resource(_))));
    assert_eq!(homology_d_bounded(6, 6).unwrap(), vec![0, 0, 0, 0, 6]);
}

#[test]
fn generated_by_degree_one() {
    for n in 1..=5 {
        assert_eq!(generated_rank(n).unwrap(), basis_d(n, None).unwrap().len(), "n = {n}");
    }
}

#[test]
fn tuple_text() {
    let x = t("d1.d2|1|d3");
    assert_eq!(x.to_string(), "d1.d2|1|d3");
    assert_eq!(x.degree(), 3);
    assert_eq!(x.weight(), 4);
    for (text, offset) in [("d1||1", 4), ("d1|x", 4), ("d1.e2|1", 4), ("d", 1)] {
        match text.parse::<WordTuple>() {
            Err(Error::Parse { offset: o, .. }) => assert_eq!(o, offset, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    assert!(DInfinity.parse_element("d2|1").is_err());
    assert!(DInfinity.parse_element("d0|1").is_err());
}

/// `ΛPerm ≅ Q^{n−1}`: some choice of signs `e_k ↦ ±(tuple empty at k)`
/// is an operad isomorphism in arities up to 4.
#[test]
fn suspended_perm_matches_q_model() {
    let lp = suspend(Perm);
    let keys: Vec<(usize, usize)> = (2..=4).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
    let mut solutions = Vec::new();
    for mask in 0u32..1 << keys.len() {
        let s = |n: usize, k: usize| -> Scalar {
            if n == 1 {
                return Scalar::one();
            }
            let idx = keys.iter().position(|&p| p == (n, k)).unwrap();
            Scalar::sign((mask >> idx & 1) as i64)
        };
        let phi = |e: &Element<PermKey>| -> Element<WordTuple> {
            Element::from_terms(
                e.arity(),
                e.iter()
                    .map(|(p, c)| (sperm_tuple(p.arity, p.special), c * s(p.arity, p.special))),
            )
        };
        let mut ok = true;
        'outer: for n in 1..=4 {
            for m in 1..=5 - n {
                if n + m - 1 > 4 {
                    continue;
                }
                for a in lp.basis(n).unwrap() {
                    for b in lp.basis(m).unwrap() {
                        for i in 1..=n {
                            let lhs = phi(&lp.compose_keys(&a, i, &b));
                            let rhs = SPerm.compose_keys(&sperm_tuple(n, a.special), i, &sperm_tuple(m, b.special));
                            let rhs = rhs.scaled(&(s(n, a.special) * s(m, b.special)));
                            if lhs != rhs {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            for sigma in Permutation::all(n) {
                for a in lp.basis(n).unwrap() {
                    let lhs = phi(&lp.act_key(&sigma, &a));
                    let rhs = SPerm
                        .act_key(&sigma, &sperm_tuple(n, a.special))
                        .scaled(&s(n, a.special));
                    if lhs != rhs {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            solutions.push(mask);
        }
    }
    assert!(!solutions.is_empty());
    // the automorphism x ↦ (−1)^{n−1} x pairs solutions up
    assert_eq!(solutions.len() % 2, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn weight_and_degree_are_additive(n in 1usize..=3, m in 1usize..=3, a in any::<usize>(), b in any::<usize>(), i in any::<usize>()) {
        let left = basis_d(n, None).unwrap();
        let right = basis_d(m, None).unwrap();
        let (x, y) = (&left[a % left.len()], &right[b % right.len()]);
        let i = 1 + i % n;
        for (k, _) in compose_o(x, i, y).iter() {
            prop_assert_eq!(k.weight(), x.weight() + y.weight());
            prop_assert_eq!(k.degree(), x.degree() + y.degree());
        }
    }

    #[test]
    fn differential_is_a_derivation(n in 1usize..=4, m in 1usize..=3, a in any::<usize>(), b in any::<usize>(), i in any::<usize>()) {
        prop_assume!(n + m - 1 <= 5);
        let left = basis_d(n, None).unwrap();
        let right = basis_d(m, None).unwrap();
        let (x, y) = (&left[a % left.len()], &right[b % right.len()]);
        prop_assert!(crate::operad::axioms::check_dg_leibniz(&DInfinity, x, 1 + i % n, y).is_ok());
    }
}
