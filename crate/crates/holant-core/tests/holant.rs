mod common;

use common::{arb_signature, arb_sparse_graph, graph, matchings, naive_coloured, naive_uncoloured, q};
use holant_core::holant::{
    holant_brute_coloured, holant_brute_uncoloured, holant_coloured_via_inclusion_exclusion, holant_direct,
    holant_star_fast_with, holant_uncol_fast, holant_with_zeros,
};
use holant_core::{holant_auto, holant_mod_p, Field, Graph, Mode, Route, Scalar, Signature, SignatureGrid};
use proptest::prelude::*;

const FIELDS: [Field; 3] = [Field::Rational, Field::Gaussian, Field::Prime(101)];

fn arb_grid(field: Field, zero_ok: bool) -> impl Strategy<Value = SignatureGrid> {
    (
        arb_sparse_graph(7, 10),
        proptest::collection::vec(arb_signature(field, 4, zero_ok), 1..=2),
    )
        .prop_flat_map(|(g, sigs)| {
            let n = g.n();
            let len = sigs.len();
            (Just(g), Just(sigs), proptest::collection::vec(0..len, n))
        })
        .prop_map(|(g, sigs, a)| SignatureGrid::new(g, sigs, a).unwrap())
}

fn arb_coloured(field: Field, zero_ok: bool) -> impl Strategy<Value = SignatureGrid> {
    (arb_grid(field, zero_ok), 1usize..=3).prop_flat_map(|(grid, k)| {
        let m = grid.graph().m();
        proptest::collection::vec(0..k, m).prop_map(move |c| grid.clone().with_edge_colouring(c, k).unwrap())
    })
}

/// An H-coloured grid: every host edge joins classes adjacent in `H`.
fn arb_h_coloured(field: Field) -> impl Strategy<Value = SignatureGrid> {
    let hs = vec![
        graph(2, &[(0, 1)]),
        graph(3, &[(0, 1), (1, 2)]),
        graph(3, &[(0, 1), (1, 2), (0, 2)]),
        graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
    ];
    (proptest::sample::select(hs), 3usize..=7).prop_flat_map(move |(h, n)| {
        let hn = h.n();
        (
            Just(h),
            proptest::collection::vec(0..hn, n),
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            proptest::collection::vec(arb_signature(field, 4, false), hn),
        )
            .prop_map(|(h, map, bits, sigs)| {
                let n = map.len();
                let pairs = common::all_pairs(n);
                let e: Vec<(usize, usize)> = pairs
                    .into_iter()
                    .zip(bits)
                    .filter(|&((u, v), b)| b && h.has_edge(map[u], map[v]))
                    .map(|(p, _)| p)
                    .collect();
                let g = Graph::new(n, &e).unwrap();
                SignatureGrid::new(g, sigs, map.clone())
                    .unwrap()
                    .with_h_colouring(h, map)
                    .unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uncoloured_routes_agree(f in 0usize..3, seed in any::<u64>(), k in 0usize..=3) {
        let field = FIELDS[f];
        let mut runner = proptest::test_runner::TestRunner::new_with_rng(
            Default::default(),
            proptest::test_runner::TestRng::from_seed(proptest::test_runner::RngAlgorithm::ChaCha, &seed_bytes(seed)),
        );
        let grid = proptest::strategy::ValueTree::current(&arb_grid(field, false).new_tree(&mut runner).unwrap());
        let want = naive_uncoloured(&grid, k);
        prop_assert_eq!(&holant_brute_uncoloured(&grid, k).unwrap().value, &want);
        prop_assert_eq!(&holant_uncol_fast(&grid, k).unwrap().value, &want);
        let interp = holant_with_zeros(&grid, Mode::Uncoloured(k)).unwrap();
        prop_assert_eq!(interp.route, Route::Interpolation);
        prop_assert_eq!(&interp.value, &want);
    }

    #[test]
    fn zero_signatures_interpolate(grid in arb_grid(Field::Rational, true), k in 0usize..=3) {
        let want = naive_uncoloured(&grid, k);
        prop_assert_eq!(&holant_auto(&grid, Mode::Uncoloured(k)).unwrap().value, &want);
        let p = holant_mod_p(&grid, 1_000_003, Mode::Uncoloured(k)).unwrap();
        prop_assert_eq!(Some(p.value), want.to_field(Field::Prime(1_000_003)));
    }

    #[test]
    fn coloured_routes_agree(grid in arb_coloured(Field::Rational, false)) {
        let want = naive_coloured(&grid);
        prop_assert_eq!(&holant_brute_coloured(&grid).unwrap().value, &want);
        prop_assert_eq!(&holant_coloured_via_inclusion_exclusion(&grid).unwrap().value, &want);
        prop_assert_eq!(&holant_auto(&grid, Mode::Coloured).unwrap().value, &want);
    }

    #[test]
    fn coloured_zero_signatures_interpolate(grid in arb_coloured(Field::Gaussian, true)) {
        let want = naive_coloured(&grid);
        prop_assert_eq!(&holant_auto(&grid, Mode::Coloured).unwrap().value, &want);
    }

    #[test]
    fn fracture_route_matches_brute(f in 0usize..3, seed in any::<u64>()) {
        let field = FIELDS[f];
        let mut runner = proptest::test_runner::TestRunner::new_with_rng(
            Default::default(),
            proptest::test_runner::TestRng::from_seed(proptest::test_runner::RngAlgorithm::ChaCha, &seed_bytes(seed)),
        );
        let grid = proptest::strategy::ValueTree::current(&arb_h_coloured(field).new_tree(&mut runner).unwrap());
        let want = naive_coloured(&grid);
        prop_assert_eq!(&holant_star_fast_with(&grid, true).unwrap().value, &want);
        prop_assert_eq!(&holant_coloured_via_inclusion_exclusion(&grid).unwrap().value, &want);
        prop_assert_eq!(holant_direct(&grid, Mode::Coloured).unwrap().route, Route::ColouredHombasis);
    }

    #[test]
    fn rescaling_multiplies_by_c_to_the_n(grid in arb_grid(Field::Rational, false), c in 2i64..4, k in 0usize..=3) {
        let scaled = grid
            .map_signatures(|s| {
                let t: Vec<Scalar> = s.table().iter().map(|x| x * &q(c)).collect();
                Signature::from_table(s.name(), t, holant_core::Tail::Zero, false)
            })
            .unwrap();
        let base = holant_auto(&grid, Mode::Uncoloured(k)).unwrap().value;
        let n = grid.graph().n() as u64;
        prop_assert_eq!(holant_auto(&scaled, Mode::Uncoloured(k)).unwrap().value, &base * &q(c).pow(n));
    }

    #[test]
    fn k_matchings_via_hw_le_1(g in arb_sparse_graph(8, 12), k in 0usize..=4) {
        let grid = SignatureGrid::uniform(g.clone(), Signature::hw_le_1(Field::Rational));
        let got = holant_auto(&grid, Mode::Uncoloured(k)).unwrap().value;
        prop_assert_eq!(got, q(matchings(&g, k) as i64));
    }
}

fn seed_bytes(seed: u64) -> [u8; 32] {
    let mut b = [0u8; 32];
    b[..8].copy_from_slice(&seed.to_le_bytes());
    b
}

#[test]
fn application_fixtures() {
    let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let pm = SignatureGrid::uniform(k4, Signature::hw_eq_1(Field::Rational));
    let r = holant_auto(&pm, Mode::Uncoloured(2)).unwrap();
    assert_eq!((r.value, r.route), (q(3), Route::Interpolation));
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let even = SignatureGrid::uniform(tri.clone(), Signature::even(Field::Rational));
    assert_eq!(holant_auto(&even, Mode::Uncoloured(3)).unwrap().value, q(1));
    assert_eq!(holant_auto(&even, Mode::Uncoloured(2)).unwrap().value, q(0));
    let col = even.with_edge_colouring(vec![0, 1, 2], 3).unwrap();
    assert_eq!(holant_auto(&col, Mode::Coloured).unwrap().value, q(1));
    assert_eq!(
        holant_mod_p(&col, 2, Mode::Coloured).unwrap().value,
        Field::Prime(2).one()
    );
    let hw = SignatureGrid::uniform(tri, Signature::hw_le_1(Field::Rational));
    assert_eq!(holant_auto(&hw, Mode::Uncoloured(1)).unwrap().value, q(3));
}

#[test]
fn brute_refuses_oversized_instances() {
    let n = 60;
    let g = Graph::new(n, &common::all_pairs(n)).unwrap();
    let grid = SignatureGrid::uniform(g, Signature::constant("c", q(1)).unwrap());
    assert!(holant_brute_uncoloured(&grid, 6).is_err());
}

#[test]
fn interpolation_without_zeros_is_the_direct_value() {
    let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
    let grid = SignatureGrid::uniform(g, common::table_sig("s", &[2, 3, 5], Field::Rational));
    for k in 0..=3 {
        let a = holant_with_zeros(&grid, Mode::Uncoloured(k)).unwrap();
        let b = holant_direct(&grid, Mode::Uncoloured(k)).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.route, Route::Interpolation);
    }
}
