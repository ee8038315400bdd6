mod common;

use common::{arb_signature, graph, q, table_sig};
use holant_core::grids::{canonical_form, enumerate_patterns, enumerate_patterns_up_to};
use holant_core::signatures::{fingerprint, generate_signature};
use holant_core::zeta::{support, zeta_closed, zeta_definitional, zeta_definitional_table, zeta_exact_k};
use holant_core::{ColouredPattern, Field, Scalar, Signature, TypeTag};
use proptest::prelude::*;

fn corpus() -> Vec<Signature> {
    let f = Field::Rational;
    vec![
        Signature::constant("c3", q(3)).unwrap(),
        Signature::geometric("g", 1, 1, f).unwrap(),
        generate_signature(TypeTag::Omega, &q(2), 8).unwrap(),
        Signature::hw_le_1(f),
        Signature::even(f),
        generate_signature(TypeTag::Infinity, &q(-1), 8).unwrap(),
    ]
}

fn assert_closed_matches_table(s: &[Signature], k: usize, max_edges: usize) {
    let table = zeta_definitional_table(k, s).unwrap();
    let zero = s[0].field().zero();
    for p in enumerate_patterns_up_to(s.len(), max_edges).unwrap() {
        let want = table.get(&canonical_form(&p).unwrap()).unwrap_or(&zero);
        assert_eq!(&zeta_closed(&p, k, s).unwrap(), want, "{p} k={k}");
    }
}

#[test]
fn closed_form_equals_definition_single_colour() {
    for s in corpus() {
        for k in 1..=4 {
            assert_closed_matches_table(std::slice::from_ref(&s), k, 3);
        }
    }
}

#[test]
fn closed_form_equals_definition_two_colours() {
    let c = corpus();
    let pair = [c[2].clone(), c[5].clone()];
    for k in 1..=3 {
        assert_closed_matches_table(&pair, k, 3);
    }
}

#[test]
fn single_pattern_definition_matches_table() {
    let s = [corpus()[4].clone()];
    let tri = ColouredPattern::mono(&graph(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
    let table = zeta_definitional_table(4, &s).unwrap();
    assert_eq!(
        zeta_definitional(&tri, 4, &s).unwrap(),
        table[&canonical_form(&tri).unwrap()]
    );
}

#[test]
fn exactly_k_special_case() {
    for s in corpus() {
        let s = [s];
        for k in 1..=4 {
            for p in enumerate_patterns(1, k).unwrap() {
                assert_eq!(zeta_closed(&p, k, &s).unwrap(), zeta_exact_k(&p, &s).unwrap(), "{p}");
            }
        }
    }
}

#[test]
fn linear_corpora_only_support_matchings() {
    for s in &corpus()[..2] {
        for k in 1..=4 {
            for e in support(std::slice::from_ref(s), k, 2).unwrap() {
                assert_eq!(e.pattern.graph().max_degree(), 1, "{}", e.pattern);
                assert_eq!(e.treewidth, 1);
            }
        }
    }
}

#[test]
fn single_edge_value() {
    let s = table_sig("s", &[1, 5, 2], Field::Rational);
    let k2 = ColouredPattern::mono(&graph(2, &[(0, 1)])).unwrap();
    let want = Field::Rational.parse("25/2").unwrap();
    assert_eq!(zeta_definitional(&k2, 1, std::slice::from_ref(&s)).unwrap(), want);
    assert_eq!(zeta_closed(&k2, 1, &[s]).unwrap(), want);
}

proptest! {
    #[test]
    fn triangle_law(s in arb_signature(Field::Rational, 4, false)) {
        let s = s.normalized().unwrap();
        let tri = ColouredPattern::mono(&graph(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        let (s1, s2) = (s.eval(1).unwrap(), s.eval(2).unwrap());
        let a = &s2 - &(&s1 * &s1);
        let want = &(&(&a * &a) * &a) * &Field::Rational.parse("1/6").unwrap();
        let got = zeta_closed(&tri, 3, std::slice::from_ref(&s)).unwrap();
        prop_assert_eq!(&got, &want);
        prop_assert_eq!(got.is_zero(), s2 == &s1 * &s1);
        prop_assert_eq!(a, fingerprint(2, &s).unwrap());
    }

    #[test]
    fn linear_kill_switch(c in 1i64..6, k in 1usize..=4) {
        let s = [generate_signature(TypeTag::Lin, &q(c), 8).unwrap()];
        for p in enumerate_patterns_up_to(1, k).unwrap() {
            if p.graph().max_degree() >= 2 {
                prop_assert!(zeta_closed(&p, k, &s).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rescaling_leaves_zeta_unchanged(s in arb_signature(Field::Rational, 5, false), c in 2i64..5) {
        let scaled: Vec<Scalar> = s.table().iter().map(|x| x * &q(c)).collect();
        let t = Signature::from_table("t", scaled, holant_core::Tail::Zero, false).unwrap();
        for p in enumerate_patterns_up_to(1, 3).unwrap() {
            prop_assert_eq!(zeta_closed(&p, 3, std::slice::from_ref(&s)).unwrap(), zeta_closed(&p, 3, std::slice::from_ref(&t)).unwrap());
        }
    }
}
