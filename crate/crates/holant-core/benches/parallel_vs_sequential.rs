use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use holant_core::exec;
use holant_core::holant::{holant_brute_uncoloured, holant_uncol_fast};
use holant_core::homcount::HomQuery;
use holant_core::{Field, Graph, Signature, SignatureGrid};
use std::hint::black_box;

/// Cycle plus chords `i -> 3i + 7 mod n`; about `2n` edges.
fn host(n: usize) -> Graph {
    let mut e: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| [(i, (i + 1) % n), (i, (3 * i + 7) % n)])
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    e.sort_unstable();
    e.dedup();
    Graph::new(n, &e).unwrap()
}

fn modes(c: &mut Criterion, group: &str, sizes: &[usize], run: impl Fn(usize)) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    for &n in sizes {
        g.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| b.iter(|| run(n)));
        g.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| exec::sequential(|| run(n)))
        });
    }
    g.finish();
}

fn tree_dp(c: &mut Criterion) {
    let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let hosts: Vec<Graph> = [1_000, 10_000].iter().map(|&n| host(n)).collect();
    modes(c, "tree_dp", &[1_000, 10_000], |n| {
        let h = hosts.iter().find(|h| h.n() == n).unwrap();
        black_box(HomQuery::new(&star, h).tree().unwrap());
    });
}

fn tw2_dp(c: &mut Criterion) {
    let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let hosts: Vec<Graph> = [100, 400].iter().map(|&n| host(n)).collect();
    modes(c, "tw2_dp", &[100, 400], |n| {
        let h = hosts.iter().find(|h| h.n() == n).unwrap();
        black_box(HomQuery::new(&c4, h).tw2().unwrap());
    });
}

fn routes(c: &mut Criterion) {
    let q = Field::Rational;
    let grid = |n: usize| SignatureGrid::uniform(host(n), Signature::even(q));
    let small = grid(30);
    modes(c, "brute_route", &[30], |_| {
        black_box(holant_brute_uncoloured(&small, 3).unwrap());
    });
    let grids: Vec<SignatureGrid> = [200, 2_000].iter().map(|&n| grid(n)).collect();
    modes(c, "hombasis_route", &[200, 2_000], |n| {
        let g = grids.iter().find(|g| g.graph().n() == n).unwrap();
        black_box(holant_uncol_fast(g, 4).unwrap());
    });
}

criterion_group!(benches, tree_dp, tw2_dp, routes);
criterion_main!(benches);
