use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::exact::{factorial, Permutation, Scalar};
use crate::lie::Derived;
use crate::operad::axioms::check_exhaustive;
use crate::operad::{
    compose_partial, differential, free_operad_basis, parse_element, symmetric_action, Element, Generators, Operad,
    TreeMonomial,
};

fn tree(s: &str) -> Element<TreeMonomial> {
    shleib_operad().parse_element(s).unwrap()
}

fn h(s: &str) -> Element<HKey> {
    parse_element(s, |term| Ok(Element::basis(0, term.trim().parse::<HKey>()?)))
        .map(|e| {
            let n = e.keys().next().map_or(0, |k| k.right.arity());
            Element::from_terms(n, e.into_terms())
        })
        .unwrap()
}

fn ev(s: &str) -> Element<HKey> {
    evaluate(&s.parse::<Derived>().unwrap(), WordContext::D).unwrap()
}

// ---- Zinbiel coproduct ----

type Tensor = BTreeMap<Vec<Vec<usize>>, Scalar>;

/// `Δ` applied to factor `f` of every tensor, letters carrying `deg`.
fn delta_at(x: &Tensor, f: usize, deg: &[i64]) -> Tensor {
    let mut out = Tensor::new();
    for (factors, c) in x {
        let w = &factors[f];
        if w.len() < 2 {
            continue;
        }
        let degrees: Vec<i64> = w.iter().map(|&l| deg[l]).collect();
        for s in zinbiel_coproduct(&degrees).unwrap() {
            let e = out
                .entry(factors_key(&factors[..f], &s, w, &factors[f + 1..]))
                .or_default();
            *e = &*e + &(c * &s.sign);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn factors_key(before: &[Vec<usize>], s: &Splitting, w: &[usize], after: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut v = before.to_vec();
    v.push(s.left.iter().map(|&p| w[p - 1]).collect());
    v.push(s.right.iter().map(|&p| w[p - 1]).collect());
    v.extend_from_slice(after);
    v
}

/// Swaps factors `f` and `f+1` with the Koszul sign.
fn swap_at(x: &Tensor, f: usize, deg: &[i64]) -> Tensor {
    let d = |w: &Vec<usize>| w.iter().map(|&l| deg[l]).sum::<i64>();
    let mut out = Tensor::new();
    for (factors, c) in x {
        let mut v = factors.clone();
        v.swap(f, f + 1);
        let e = out.entry(v).or_default();
        *e = &*e + &(c * &Scalar::sign(d(&factors[f]) * d(&factors[f + 1])));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn plus(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = a.clone();
    for (k, c) in b {
        let e = out.entry(k.clone()).or_default();
        *e = &*e + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn word(len: usize) -> Tensor {
    Tensor::from([(vec![(0..len).collect()], Scalar::one())])
}

fn symmetrized(x: &Tensor, f: usize, deg: &[i64]) -> Tensor {
    let d = delta_at(x, f, deg);
    plus(&d, &swap_at(&d, f, deg))
}

#[test]
fn zinbiel_small_words() {
    let s = zinbiel_coproduct(&[0, 0]).unwrap();
    assert_eq!(
        s,
        vec![Splitting {
            left: vec![1],
            right: vec![2],
            sign: Scalar::one()
        }]
    );
    let mut parts: Vec<(Vec<usize>, Vec<usize>)> = zinbiel_coproduct(&[0, 0, 0])
        .unwrap()
        .into_iter()
        .map(|s| (s.left, s.right))
        .collect();
    parts.sort();
    assert_eq!(
        parts,
        vec![(vec![1], vec![2, 3]), (vec![1, 2], vec![3]), (vec![2], vec![1, 3])]
    );
    assert!(zinbiel_coproduct(&[1]).is_err());
    // odd letters: moving x_2 past x_1
    let odd = zinbiel_coproduct(&[1, 1, 0]).unwrap();
    let swapped = odd.iter().find(|s| s.left == vec![2]).unwrap();
    assert_eq!(swapped.sign, -Scalar::one());
}

fn zinbiel_laws(deg: &[i64]) {
    let w = word(deg.len());
    let d = delta_at(&w, 0, deg);
    let lhs = delta_at(&d, 1, deg);
    let ll = delta_at(&d, 0, deg);
    assert_eq!(
        lhs,
        plus(&ll, &swap_at(&ll, 0, deg)),
        "dual Zinbiel relation for {deg:?}"
    );
    let s = symmetrized(&w, 0, deg);
    assert_eq!(
        symmetrized(&s, 0, deg),
        symmetrized(&s, 1, deg),
        "symmetrized coassociativity for {deg:?}"
    );
}

#[test]
fn zinbiel_relations_exhaustive() {
    for len in 2..=5 {
        for mask in 0..(1u32 << len) {
            let deg: Vec<i64> = (0..len).map(|i| ((mask >> i) & 1) as i64).collect();
            zinbiel_laws(&deg);
        }
    }
}

#[test]
fn zinbiel_is_not_coassociative() {
    let deg = [0, 0, 0];
    let d = delta_at(&word(3), 0, &deg);
    assert_ne!(delta_at(&d, 0, &deg), delta_at(&d, 1, &deg));
}

// ---- tree differential ----

#[test]
fn tree_diff_low_arity() {
    assert!(tree_diff(&tree("T2(1,2)")).unwrap().is_zero());
    let d3 = tree_diff(&tree("T3(1,2,3)")).unwrap();
    assert_eq!(d3, tree("-T2(T2(1,2),3) - T2(1,T2(2,3)) - T2(2,T2(1,3))"));
}

#[test]
fn tree_diff_squares_to_zero() {
    for n in 2..=6 {
        let d = tree_diff(&tree_diff_generator(n)).unwrap();
        assert!(d.is_zero(), "d_t² T_{n} = {d}");
    }
    let op = shleib_operad();
    for n in 1..=4 {
        for x in free_operad_basis(&Generators::Corollas { degree: 1 }, n).unwrap() {
            let e = Element::basis(n, x.clone());
            assert!(differential(&op, &differential(&op, &e)).is_zero(), "d_t² {x}");
        }
    }
}

#[test]
fn shleib_operad_laws() {
    check_exhaustive(&shleib_operad(), 4).unwrap();
}

#[test]
fn regular_part_examples() {
    assert!(regular_part(2, 6).unwrap().regular.is_zero());
    let r3 = regular_part(3, 6).unwrap();
    assert_eq!(r3.regular, tree("-T2(T2(1,2),3) - T2(1,T2(2,3))"));
    assert_eq!(r3.non_regular, tree("-T2(2,T2(1,3))"));
    let r4 = regular_part(4, 6).unwrap();
    assert_eq!((r4.regular.len(), r4.expected_count), (5, 5));
    for n in 2..=6 {
        assert!(regular_part(n, 6).unwrap().pass());
    }
    assert!(matches!(regular_part(7, 6), Err(crate::Error::Resource(_))));
    // θ of the regular part
    let th = theta(&r3.regular).unwrap();
    assert_eq!(th, ev("{d1{d1(1),2},3}").add_neg(&ev("{d1(1),{d1(2),3}}")));
}

trait AddNeg {
    fn add_neg(self, other: &Self) -> Self;
}

impl AddNeg for Element<HKey> {
    fn add_neg(self, other: &Self) -> Self {
        self.neg().sub(other)
    }
}

// ---- derived brackets and θ ----

#[test]
fn evaluation_examples() {
    assert_eq!(ev("{d1(2),{d1(1),3}}"), h("-1 · {2,{1,3}}#d1|d1|1"));
    assert_eq!(ev("{d1(1),2}"), h("{1,2}#d1|1"));
    assert_eq!(ev("{1,d1(2)}"), h("{1,2}#1|d1"));
    assert_eq!(ev("{d1(2),1}"), h("-1 · {1,2}#1|d1"));
    assert!(evaluate(&"{d1(1),1}".parse().unwrap(), WordContext::D).is_err());
    assert!(evaluate(&"{1,2}".parse().unwrap(), WordContext::Q).is_ok());
    assert!(evaluate(&"{d0(1),2}".parse().unwrap(), WordContext::D).is_err());
    assert!(evaluate(&"{d2(1),2}".parse().unwrap(), WordContext::D).is_err());
}

#[test]
fn theta_examples() {
    assert_eq!(theta(&tree("T2(1,2)")).unwrap(), h("{1,2}#d1|1"));
    assert_eq!(theta(&tree("T3(1,2,3)")).unwrap(), ev("{d2(1),2,3}"));
    assert_eq!(theta(&tree("T2(T2(1,2),3)")).unwrap(), ev("{d1{d1(1),2},3}"));
    assert_eq!(theta(&tree("T2(1,T2(2,3))")).unwrap(), ev("{d1(1),{d1(2),3}}"));
    assert_eq!(theta(&tree("T2(2,T2(1,3))")).unwrap(), ev("{d1(2),{d1(1),3}}"));
    assert_eq!(Theta::generator_image(4), ev("{d3(1),2,3,4}"));
}

#[test]
fn theorem_display() {
    let lhs = differential(&lie_d(), &ev("{d2(1),2,3}"));
    let rhs = ev("{d1{d1(1),2},3}")
        .neg()
        .sub(&ev("{d1(1),{d1(2),3}}"))
        .sub(&ev("{d1(2),{d1(1),3}}"));
    assert_eq!(lhs, rhs);
    assert_eq!(theta(&tree_diff_generator(3)).unwrap(), rhs);
}

#[test]
fn theta_is_a_morphism() {
    let th = Theta::new();
    let src = shleib_operad();
    let basis = |n| free_operad_basis(&Generators::Corollas { degree: 1 }, n).unwrap();
    for (a, b) in [(2, 2), (2, 3), (3, 2)] {
        for x in basis(a) {
            for y in basis(b) {
                for i in 1..=a {
                    let xy =
                        compose_partial(&src, &Element::basis(a, x.clone()), i, &Element::basis(b, y.clone())).unwrap();
                    let lhs = th.apply(&xy).unwrap();
                    let rhs = compose_partial(th.target(), &th.apply_key(&x).unwrap(), i, &th.apply_key(&y).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "θ({x} ∘_{i} {y})");
                }
            }
        }
    }
}

#[test]
fn theta_is_equivariant() {
    let th = Theta::new();
    let src = shleib_operad();
    for n in 2..=4 {
        for x in free_operad_basis(&Generators::Corollas { degree: 1 }, n)
            .unwrap()
            .iter()
            .step_by(3)
        {
            for sigma in Permutation::all(n) {
                let lhs = th
                    .apply(&symmetric_action(&src, &sigma, &Element::basis(n, x.clone())).unwrap())
                    .unwrap();
                let rhs = symmetric_action(th.target(), &sigma, &th.apply_key(x).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn iso_small_arity() {
    for (n, dim) in [(1, 1), (2, 2), (3, 18), (4, 264)] {
        let r = verify_iso(n, 50_000_000).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.rank), (dim, dim, dim), "arity {n}");
        assert!(r.is_iso());
    }
    assert!(matches!(verify_iso(4, 10), Err(crate::Error::Resource(_))));
}

#[test]
fn chain_map_small_arity() {
    for n in 1..=3 {
        let r = verify_chain_map(n).unwrap();
        assert!(r.failure.is_none(), "{:?}", r.failure);
    }
}

#[test]
fn normal_brackets_span() {
    for n in 2..=5 {
        assert_eq!(
            normal_bracket_rank(n).unwrap() as u128,
            factorial(n as u64).try_into().unwrap()
        );
    }
    let b = NormalDerivedBracket::new(Permutation::from_images(vec![2, 1, 3]).unwrap()).unwrap();
    assert_eq!(b.to_string(), "{{d2(2),1},3}");
    assert_eq!(b.to_element(), ev("{d2(2),1,3}"));
}

// ---- binary model ----

#[test]
fn odd_leibniz() {
    let id = odd_leibniz_identity().unwrap();
    assert!(id.holds(), "{} / {} / {}", id.lhs, id.middle, id.rhs);
    assert!(!id.lhs.is_zero());
}

#[test]
fn binary_dimensions() {
    for d in binary_dims(5, 4).unwrap() {
        assert!(d.pass(), "{d:?}");
    }
    assert_eq!(lie_sperm().basis(4).unwrap().len(), 24);
    assert_eq!(
        psi_generator(),
        evaluate(&"{d0(1),2}".parse().unwrap(), WordContext::Q).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_morphism_random(a in 2usize..=3, b in 2usize..=3, xi in 0usize..1000, yi in 0usize..1000, i in 0usize..3) {
        let basis = |n| free_operad_basis(&Generators::Corollas { degree: 1 }, n).unwrap();
        let (bx, by) = (basis(a), basis(b));
        let (x, y) = (&bx[xi % bx.len()], &by[yi % by.len()]);
        let i = i % a + 1;
        let th = Theta::new();
        let xy = compose_partial(&shleib_operad(), &Element::basis(a, x.clone()), i, &Element::basis(b, y.clone())).unwrap();
        let rhs = compose_partial(th.target(), &th.apply_key(x).unwrap(), i, &th.apply_key(y).unwrap()).unwrap();
        prop_assert_eq!(th.apply(&xy).unwrap(), rhs);
    }
}
