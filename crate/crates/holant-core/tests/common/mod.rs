#![allow(dead_code)]

use holant_core::signatures::Tail;
use holant_core::{Field, Graph, Scalar, Signature, SignatureGrid};
use proptest::prelude::*;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).unwrap()
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// A graph on `n` vertices keeping each pair whose bit is set.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let e: Vec<(usize, usize)> = all_pairs(n)
        .into_iter()
        .zip(bits)
        .filter(|(_, &b)| b)
        .map(|(p, _)| p)
        .collect();
    graph(n, &e)
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Graphs with at most `max_m` edges.
pub fn arb_sparse_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs = all_pairs(n);
        proptest::sample::subsequence(pairs.clone(), 0..=max_m.min(pairs.len())).prop_map(move |e| graph(n, &e))
    })
}

/// Drops isolated vertices.
pub fn without_isolated(g: &Graph) -> Graph {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    g.induced(&keep).0
}

pub fn q(n: i64) -> Scalar {
    Field::Rational.from_i64(n)
}

pub fn table_sig(name: &str, vals: &[i64], field: Field) -> Signature {
    let t = vals.iter().map(|&v| field.from_i64(v)).collect();
    Signature::from_table(name, t, Tail::Zero, true).unwrap()
}

/// Small-integer table signature over `field`; Gaussian tables get imaginary parts too.
pub fn arb_signature(field: Field, len: usize, zero_ok: bool) -> impl Strategy<Value = Signature> {
    let lo = if zero_ok { 0 } else { 1 };
    (lo..4i64, proptest::collection::vec((-3i64..4, -2i64..3), len - 1)).prop_filter_map(
        "nonzero s(0) in field",
        move |(s0, rest)| {
            let mut t = vec![field.from_i64(s0)];
            for (re, im) in rest {
                let mut x = field.from_i64(re);
                if field == Field::Gaussian {
                    x = &x + &(&field.i().unwrap() * &field.from_i64(im));
                }
                t.push(x);
            }
            Signature::from_table("s", t, Tail::Zero, true).ok()
        },
    )
}

/// Sum of `∏_v s_v(deg_F(v))` over all `k`-edge subsets `F`, enumerated by bitmask.
pub fn naive_uncoloured(grid: &SignatureGrid, k: usize) -> Scalar {
    let g = grid.graph();
    let m = g.m();
    let mut acc = grid.field().zero();
    for mask in 0u64..(1u64 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        acc += &subset_weight(grid, mask);
    }
    acc
}

/// Sum over edge sets with exactly one edge of each colour.
pub fn naive_coloured(grid: &SignatureGrid) -> Scalar {
    let g = grid.graph();
    let c = grid.edge_colouring().unwrap();
    let mut acc = grid.field().zero();
    for mask in 0u64..(1u64 << g.m()) {
        let mut seen = vec![0usize; c.k];
        for e in 0..g.m() {
            if mask >> e & 1 == 1 {
                seen[c.colours[e]] += 1;
            }
        }
        if seen.iter().all(|&x| x == 1) {
            acc += &subset_weight(grid, mask);
        }
    }
    acc
}

fn subset_weight(grid: &SignatureGrid, mask: u64) -> Scalar {
    let g = grid.graph();
    let mut deg = vec![0usize; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if mask >> e & 1 == 1 {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    let mut w = grid.field().one();
    for (v, &d) in deg.iter().enumerate() {
        w *= &grid.signature_of(v).eval(d).unwrap();
    }
    w
}

/// Number of `k`-matchings by subset enumeration.
pub fn matchings(g: &Graph, k: usize) -> u64 {
    let mut count = 0;
    for mask in 0u64..(1u64 << g.m()) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut used = vec![false; g.n()];
        let ok = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(e, _)| mask >> e & 1 == 1)
            .all(|(_, &(u, v))| {
                let fresh = !used[u] && !used[v];
                used[u] = true;
                used[v] = true;
                fresh
            });
        if ok {
            count += 1;
        }
    }
    count
}
