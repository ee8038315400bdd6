//! Seeded random instances.
//!
//! Every draw comes from `ChaCha8Rng::seed_from_u64(seed)` with stream `index`, so a
//! `(seed, index)` pair fixes the instance. The draws, in order:
//!
//! 1. field: the configured one, else `index mod 3` picks rational, Gaussian, `GF(101)`;
//! 2. kind: uncoloured, edge-coloured or H-coloured, uniformly;
//! 3. graph: `n` uniform in `2..=max_n`, then `m` uniform in `0..=min(max_m, n(n-1)/2)`
//!    distinct vertex pairs via `rand::seq::index::sample`, sorted;
//!    H-coloured grids instead draw `H` from a fixed list and keep only pairs whose
//!    classes are adjacent in `H`;
//! 4. signatures: one or two (one per H vertex), tables of length 5 with entries in
//!    `-3..=3` (Gaussian entries also get an imaginary part in `-2..=2`), `s(0) ≠ 0`;
//!    with probability 1/4 the first signature instead vanishes at 0;
//! 5. `k` uniform in `0..=k_max` for uncoloured grids, colours uniform in `0..k` otherwise.

use holant_core::signatures::Tail;
use holant_core::{Field, Graph, Mode, Scalar, Signature, SignatureGrid};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Prime used when the field is drawn per trial.
pub const TRIAL_PRIME: u64 = 101;

/// Bounds for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenBounds {
    pub max_n: usize,
    pub max_m: usize,
    pub k_max: usize,
}

impl Default for GenBounds {
    fn default() -> GenBounds {
        GenBounds {
            max_n: 10,
            max_m: 14,
            k_max: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Uncoloured,
    EdgeColoured,
    HColoured,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Uncoloured => "uncoloured",
            Kind::EdgeColoured => "edge_coloured",
            Kind::HColoured => "h_coloured",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub grid: SignatureGrid,
    pub mode: Mode,
    pub kind: Kind,
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `m` distinct pairs of `0..n`, sorted.
pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = m.min(pairs.len());
    let mut picked: Vec<usize> = sample(rng, pairs.len(), m).into_vec();
    picked.sort_unstable();
    Graph::new(n, &picked.into_iter().map(|i| pairs[i]).collect::<Vec<_>>()).expect("distinct pairs")
}

/// `m` distinct pairs of `0..n` drawn by rejection, sorted; for sparse graphs.
pub fn sparse_graph(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    let m = m.min(n * n.saturating_sub(1) / 2);
    let mut seen = std::collections::HashSet::with_capacity(m);
    while seen.len() < m {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u != v {
            seen.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<(usize, usize)> = seen.into_iter().collect();
    edges.sort_unstable();
    Graph::new(n, &edges).expect("distinct pairs")
}

fn small(rng: &mut impl Rng, field: Field) -> Scalar {
    let mut x = field.from_i64(rng.random_range(-3..=3));
    if field == Field::Gaussian {
        let im = field.from_i64(rng.random_range(-2..=2));
        x = &x + &(&field.i().expect("gaussian unit") * &im);
    }
    x
}

/// A table signature of length `len`; `s(0)` vanishes iff `zero`.
pub fn random_signature(rng: &mut impl Rng, field: Field, name: &str, len: usize, zero: bool) -> Signature {
    loop {
        let mut t: Vec<Scalar> = (0..len).map(|_| small(rng, field)).collect();
        if zero {
            t[0] = field.zero();
        } else if t[0].is_zero() {
            continue;
        }
        if let Ok(s) = Signature::from_table(name, t, Tail::Zero, zero) {
            return s;
        }
    }
}

fn pattern_list() -> Vec<Graph> {
    let g = |n, e: &[(usize, usize)]| Graph::new(n, e).expect("fixed pattern");
    vec![
        g(2, &[(0, 1)]),
        g(3, &[(0, 1), (1, 2)]),
        g(3, &[(0, 1), (1, 2), (0, 2)]),
        g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
        g(4, &[(0, 1), (0, 2), (0, 3)]),
    ]
}

/// The instance for trial `index` under `seed`.
pub fn instance(seed: u64, index: u64, field: Option<Field>, b: GenBounds) -> Instance {
    let mut rng = rng_for(seed, index);
    let field = field.unwrap_or(match index % 3 {
        0 => Field::Rational,
        1 => Field::Gaussian,
        _ => Field::Prime(TRIAL_PRIME),
    });
    let kind = [Kind::Uncoloured, Kind::EdgeColoured, Kind::HColoured][rng.random_range(0..3)];
    let n = rng.random_range(2..=b.max_n.max(2));
    let pairs = n * (n - 1) / 2;
    let m = rng.random_range(0..=b.max_m.min(pairs));
    let zero = rng.random_bool(0.25);
    match kind {
        Kind::HColoured => {
            let hs = pattern_list();
            let h = hs[rng.random_range(0..hs.len())].clone();
            let map: Vec<usize> = (0..n).map(|_| rng.random_range(0..h.n())).collect();
            let g = random_graph(&mut rng, n, m);
            let kept: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| h.has_edge(map[u], map[v]))
                .collect();
            let g = Graph::new(n, &kept).expect("subgraph");
            let sigs: Vec<Signature> = (0..h.n())
                .map(|i| random_signature(&mut rng, field, &format!("s{}", i + 1), 5, zero && i == 0))
                .collect();
            let grid = SignatureGrid::new(g, sigs, map.clone())
                .and_then(|gr| gr.with_h_colouring(h, map))
                .expect("consistent h-colouring");
            Instance {
                grid,
                mode: Mode::Coloured,
                kind,
            }
        }
        _ => {
            let g = random_graph(&mut rng, n, m);
            let count = rng.random_range(1..=2usize);
            let sigs: Vec<Signature> = (0..count)
                .map(|i| random_signature(&mut rng, field, &format!("s{}", i + 1), 5, zero && i == 0))
                .collect();
            let assignment: Vec<usize> = (0..n).map(|_| rng.random_range(0..count)).collect();
            let grid = SignatureGrid::new(g, sigs, assignment).expect("valid grid");
            if kind == Kind::Uncoloured {
                let k = rng.random_range(0..=b.k_max);
                Instance {
                    grid,
                    mode: Mode::Uncoloured(k),
                    kind,
                }
            } else {
                let k = rng.random_range(1..=b.k_max.max(1));
                let colours: Vec<usize> = (0..grid.graph().m()).map(|_| rng.random_range(0..k)).collect();
                Instance {
                    grid: grid.with_edge_colouring(colours, k).expect("colours in range"),
                    mode: Mode::Coloured,
                    kind,
                }
            }
        }
    }
}
