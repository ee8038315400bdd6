mod common;

use common::{arb_graph, arb_sparse_graph, graph, without_isolated};
use holant_core::grids::{
    aut_count_pattern, canonical_form, enumerate_fractures, enumerate_patterns, fractured_graph, treewidth_exact,
};
use holant_core::homcount::tw2_decomposition;
use holant_core::partitions::bell;
use holant_core::{ColouredPattern, Fracture, Graph};
use num_bigint::BigUint;
use proptest::prelude::*;
use std::collections::HashSet;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn relabel(p: &ColouredPattern, perm: &[usize]) -> ColouredPattern {
    let e: Vec<(usize, usize)> = p.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    let mut cols = vec![0; p.n()];
    for v in 0..p.n() {
        cols[perm[v]] = p.colours()[v];
    }
    ColouredPattern::new(&graph(p.n(), &e), cols).unwrap()
}

/// Colour-preserving isomorphisms by trying every permutation.
fn iso_count(a: &ColouredPattern, b: &ColouredPattern) -> usize {
    if a.n() != b.n() || a.m() != b.m() {
        return 0;
    }
    let bg = b.graph();
    permutations(a.n())
        .into_iter()
        .filter(|perm| {
            (0..a.n()).all(|v| a.colours()[v] == b.colours()[perm[v]])
                && a.edges().iter().all(|&(u, v)| bg.has_edge(perm[u], perm[v]))
        })
        .count()
}

fn arb_pattern(max_n: usize, colours: usize) -> impl Strategy<Value = ColouredPattern> {
    arb_graph(max_n)
        .prop_map(|g| without_isolated(&g))
        .prop_filter("nonempty", |g| g.m() > 0)
        .prop_flat_map(move |g| {
            proptest::collection::vec(0..colours, g.n()).prop_map(move |c| ColouredPattern::new(&g, c).unwrap())
        })
}

proptest! {
    #[test]
    fn fracture_count_is_product_of_bell_numbers(g in arb_sparse_graph(6, 8)) {
        let all = enumerate_fractures(&g).unwrap();
        let want: BigUint = (0..g.n()).map(|v| bell(g.degree(v))).product();
        prop_assert_eq!(BigUint::from(all.len()), want);
        for rho in all.iter().take(50) {
            let (f, col) = fractured_graph(&g, rho).unwrap();
            prop_assert_eq!(f.m(), g.m());
            for (e, &(u, v)) in f.edges().iter().enumerate() {
                let (a, b) = g.edges()[e];
                prop_assert_eq!((col[u].min(col[v]), col[u].max(col[v])), (a, b));
            }
        }
    }

    #[test]
    fn top_and_bottom_fractures(g in arb_sparse_graph(6, 8)) {
        let g = without_isolated(&g);
        let (top, _) = fractured_graph(&g, &Fracture::top(&g)).unwrap();
        prop_assert_eq!(top.edges(), g.edges());
        let (bot, _) = fractured_graph(&g, &Fracture::bottom(&g)).unwrap();
        prop_assert_eq!(bot.n(), 2 * g.m());
        prop_assert!((0..bot.n()).all(|v| bot.degree(v) == 1));
    }

    #[test]
    fn canonical_form_is_a_complete_invariant(
        a in arb_pattern(6, 2),
        b in arb_pattern(6, 2),
        seed in any::<u64>(),
    ) {
        let perms = permutations(a.n());
        let perm = &perms[(seed % perms.len() as u64) as usize];
        let moved = relabel(&a, perm);
        prop_assert_eq!(canonical_form(&a).unwrap(), canonical_form(&moved).unwrap());
        let same = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
        prop_assert_eq!(same, iso_count(&a, &b) > 0);
        prop_assert_eq!(aut_count_pattern(&a).unwrap() as usize, iso_count(&a, &a));
    }

    #[test]
    fn tw2_decomposition_exists_iff_treewidth_at_most_two(g in arb_graph(7)) {
        let g = without_isolated(&g);
        for comp in g.components() {
            if comp.len() < 2 {
                continue;
            }
            let (c, _) = g.induced(&comp);
            let tw = treewidth_exact(&c).unwrap();
            prop_assert_eq!(tw2_decomposition(&c).is_ok(), tw <= 2);
        }
    }
}

#[test]
fn pattern_enumeration_has_no_duplicates_and_known_counts() {
    // graphs without isolated vertices by edge count
    let mono = [1usize, 2, 5, 11, 26];
    for (k, &want) in mono.iter().enumerate() {
        let ps = enumerate_patterns(1, k + 1).unwrap();
        assert_eq!(ps.len(), want, "k={}", k + 1);
    }
    for colours in 1..=3 {
        for k in 1..=3 {
            let ps = enumerate_patterns(colours, k).unwrap();
            let forms: HashSet<String> = ps.iter().map(|p| canonical_form(p).unwrap()).collect();
            assert_eq!(forms.len(), ps.len());
            for (i, a) in ps.iter().enumerate() {
                assert_eq!(a.m(), k);
                for b in &ps[i + 1..] {
                    assert_eq!(iso_count(a, b), 0);
                }
            }
        }
    }
}

#[test]
fn treewidth_fixtures() {
    let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(treewidth_exact(&k4).unwrap(), 3);
    let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
    assert_eq!(treewidth_exact(&c5).unwrap(), 2);
    let path = graph(4, &[(0, 1), (1, 2), (2, 3)]);
    assert_eq!(treewidth_exact(&path).unwrap(), 1);
    assert!(Graph::new(2, &[(1, 1)]).is_err());
    assert!(Graph::new(2, &[(0, 1), (1, 0)]).is_err());
}
