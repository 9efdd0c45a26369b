use std::collections::BTreeMap;

use super::axioms::{check_exhaustive, check_sequential};
use super::*;
use crate::trees::schroeder;

fn corollas() -> FreeOperad {
    FreeOperad::new("F", Generators::Corollas { degree: 1 }).unwrap()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[test]
fn free_basis_sizes() {
    let f = corollas();
    for n in 1..=5 {
        let basis = f.basis(n).unwrap();
        assert_eq!(basis.len() as u128, factorial(n) * schroeder(n).unwrap(), "n = {n}");
        assert!(basis.windows(2).all(|w| w[0] < w[1]));
    }
    assert_eq!(f.basis(3).unwrap().len(), 18);
    assert_eq!(f.basis(5).unwrap().len(), 5400);

    let binary = Generators::Finite(BTreeMap::from([(2, vec![0])]));
    assert_eq!(free_operad_basis(&binary, 2).unwrap().len(), 2);
    // two planar binary shapes, six labellings each
    assert_eq!(free_operad_basis(&binary, 3).unwrap().len(), 12);
    let two = Generators::Finite(BTreeMap::from([(2, vec![0, 1])]));
    assert_eq!(free_operad_basis(&two, 3).unwrap().len(), 48);
}

#[test]
fn monomial_text() {
    let m: TreeMonomial = "T2(T3(1,2,3),4)".parse().unwrap();
    assert_eq!(m.to_string(), "T2(T3(1,2,3),4)");
    assert_eq!(m.arity(), 4);
    let g: TreeMonomial = "T3(2,1,3)".parse().unwrap();
    assert_eq!(g.labels().images(), &[2, 1, 3]);
    assert_eq!("T2_1(1,2)".parse::<TreeMonomial>().unwrap().decorations(), &[1]);
    assert_eq!(TreeMonomial::identity().to_string(), "1");

    let f = corollas();
    let e = f.parse_element("T2(1,2)@1:T3(1,2,3)").unwrap();
    assert_eq!(e.to_string(), "1 · T2(T3(1,2,3),4)");
    let e = f.parse_element("T3(1,2,3)@1:T2(1,2)").unwrap();
    assert_eq!(e.to_string(), "1 · T3(T2(1,2),3,4)");
    // the grafted T2 passes the odd vertex after leaf 1
    let e = f.parse_element("T2(1,T2(2,3))@1:T2(1,2)").unwrap();
    assert_eq!(e.to_string(), "-1 · T2(T2(1,2),T2(3,4))");
    let e = f.parse_element("T3(1,2,3)@3:T2(1,2)").unwrap();
    assert_eq!(e.to_string(), "1 · T3(1,2,T2(3,4))");
    let e = f.parse_element("2 · T2(1,2) - T2(2,1)").unwrap();
    assert_eq!(e.len(), 2);
}

#[test]
fn monomial_parse_errors() {
    for (text, offset) in [("T2(1,2", 7), ("T2(1,1)", 8), ("X", 1), ("T2(1,2,3)", 7), ("T1(1)", 2)] {
        match text.parse::<TreeMonomial>() {
            Err(Error::Parse { offset: o, .. }) => assert_eq!(o, offset, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
    match corollas().parse_element("T2(1,2)@1:T2(1,x)") {
        Err(Error::Parse { offset, .. }) => assert_eq!(offset, 16),
        other => panic!("{other:?}"),
    }
}

#[test]
fn compose_errors() {
    let f = corollas();
    let p = f.parse_element("T2(1,2)").unwrap();
    assert!(matches!(
        compose_partial(&f, &p, 3, &p),
        Err(Error::IndexOutOfRange { index: 3, arity: 2 })
    ));
    assert!(matches!(
        compose_partial(&f, &p, 0, &p),
        Err(Error::IndexOutOfRange { .. })
    ));
    let s = Permutation::identity(3);
    assert!(symmetric_action(&f, &s, &p).is_err());
}

#[test]
fn free_operad_laws() {
    for degree in [0, 1] {
        let f = FreeOperad::new("F", Generators::Corollas { degree }).unwrap();
        let n = check_exhaustive(&f, 4).unwrap();
        assert!(n > 1000);
    }
    let two = FreeOperad::new("G", Generators::Finite(BTreeMap::from([(2, vec![1, 0])]))).unwrap();
    check_exhaustive(&two, 4).unwrap();
}

/// `d T3 = T2∘_1T2 − T2∘_2T2` on odd generators: `d` extends as a derivation.
#[test]
fn free_dg_operad_laws() {
    let base = FreeOperad::new("A", Generators::Finite(BTreeMap::from([(2, vec![1]), (3, vec![1])]))).unwrap();
    let d3 = base.parse_element("T2(1,2)@1:T2(1,2) - T2(1,2)@2:T2(1,2)").unwrap();
    let f = base.with_differential(move |k, _| if k == 3 { d3.clone() } else { Element::zero(k) });
    check_exhaustive(&f, 4).unwrap();
    let t = f.parse_element("T2(T3(1,2,3),4)").unwrap();
    assert_eq!(differential(&f, &t).len(), 2);
}

#[test]
fn line_and_hadamard_laws() {
    for shift in [1, -1] {
        let line = LineOperad::new(shift).unwrap();
        check_exhaustive(&line, 6).unwrap();
        check_exhaustive(&Hadamard::new(line, line), 5).unwrap();
    }
    assert!(LineOperad::new(2).is_err());
    let h = Hadamard::new(corollas(), LineOperad::new(1).unwrap());
    check_exhaustive(&h, 4).unwrap();
    assert_eq!(h.unit(), HadamardKey::new(TreeMonomial::identity(), LineKey(1)));
    let u = h.unit_element();
    assert_eq!(compose_partial(&h, &u, 1, &u).unwrap(), u);
}

#[test]
fn suspension_laws() {
    for degree in [0, 1] {
        let f = FreeOperad::new("F", Generators::Corollas { degree }).unwrap();
        check_exhaustive(&suspend(f.clone()), 4).unwrap();
        check_exhaustive(&desuspend(f), 4).unwrap();
    }
}

/// `ΛP` agrees with `P ⊗ Line(1)` after dropping the line factor.
#[test]
fn suspension_is_hadamard_with_line() {
    let f = corollas();
    let s = suspend(f.clone());
    let h = Hadamard::new(f.clone(), LineOperad::new(1).unwrap());
    let lift = |e: &Element<TreeMonomial>| {
        Element::from_terms(
            e.arity(),
            e.iter()
                .map(|(k, c)| (HadamardKey::new(k.clone(), LineKey(e.arity())), c.clone())),
        )
    };
    for n in 1..=3 {
        for m in 1..=5 - n {
            for p in f.basis(n).unwrap() {
                for q in f.basis(m).unwrap() {
                    assert_eq!(s.key_degree(&p), h.key_degree(&HadamardKey::new(p.clone(), LineKey(n))));
                    for i in 1..=n {
                        let lhs = lift(&s.compose_keys(&p, i, &q));
                        let rhs = h.compose_keys(
                            &HadamardKey::new(p.clone(), LineKey(n)),
                            i,
                            &HadamardKey::new(q.clone(), LineKey(m)),
                        );
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

/// `ΛΛ^{-1}P ≅ P` through `p ↦ (−1)^{C(n−1,2)} p`.
#[test]
fn double_suspension_is_trivial() {
    let f = corollas();
    let ss = suspend(desuspend(f.clone()));
    let eps = |n: usize| sign(((n as i64 - 1) * (n as i64 - 2)) / 2);
    for n in 1..=5 {
        assert_eq!(ss.basis(n).unwrap().len(), f.basis(n).unwrap().len());
    }
    for n in 1..=3 {
        for m in 1..=5 - n {
            for p in f.basis(n).unwrap() {
                assert_eq!(ss.key_degree(&p), f.key_degree(&p));
                for q in f.basis(m).unwrap() {
                    for i in 1..=n {
                        let lhs = ss.compose_keys(&p, i, &q).scaled(&(eps(n) * eps(m)));
                        let rhs = f.compose_keys(&p, i, &q).scaled(&eps(n + m - 1));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
    assert_eq!(suspend(f.clone()).key_degree(&TreeMonomial::identity()), 0);
}

#[test]
fn sequential_law_detects_bad_signs() {
    // a deliberately broken operad: the line operad with the sign dropped
    #[derive(Clone, Copy)]
    struct Broken;
    impl Operad for Broken {
        type Key = LineKey;
        fn name(&self) -> String {
            "broken".into()
        }
        fn key_arity(&self, k: &LineKey) -> usize {
            k.0
        }
        fn key_degree(&self, k: &LineKey) -> i64 {
            k.0 as i64 - 1
        }
        fn basis(&self, n: usize) -> Result<Vec<LineKey>> {
            Ok(vec![LineKey(n)])
        }
        fn unit(&self) -> LineKey {
            LineKey(1)
        }
        fn compose_keys(&self, p: &LineKey, i: usize, q: &LineKey) -> Element<LineKey> {
            let s = if p.0 == 3 && i == 2 {
                -Scalar::one()
            } else {
                Scalar::one()
            };
            Element::term(p.0 + q.0 - 1, LineKey(p.0 + q.0 - 1), s)
        }
        fn act_key(&self, _: &Permutation, p: &LineKey) -> Element<LineKey> {
            Element::basis(p.0, *p)
        }
    }
    assert!(check_sequential(&Broken, &LineKey(2), 2, &LineKey(2), 1, &LineKey(2)).is_err());
    assert!(check_exhaustive(&Broken, 4).is_err());
}

#[test]
fn json_of_tree_element() {
    let f = corollas();
    let e = f
        .parse_element("T2(1,2)@1:T3(1,2,3) - 1/2 · T2(2,1)@2:T3(3,1,2)")
        .unwrap();
    let back = Element::<TreeMonomial>::from_json(&e.to_json()).unwrap();
    assert_eq!(back, e);
}
