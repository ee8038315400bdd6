//! Counting applications built on the holant evaluators.

use crate::error::{LabError, Result};
use holant_core::signatures::IndicatorSet;
use holant_core::{holant_auto, Field, Graph, HolantResult, Mode, Scalar, Signature, SignatureGrid};
use num_bigint::BigInt;

fn integer(r: &HolantResult) -> Result<BigInt> {
    r.value
        .to_bigint()
        .ok_or_else(|| LabError::Mismatch(format!("non-integer count {}", r.value)))
}

/// `k`-matchings of `g`; with `colours = Some((c, k'))` the edge-colourful matchings, one edge per colour.
pub fn count_matchings(g: &Graph, k: usize, colours: Option<(Vec<usize>, usize)>) -> Result<HolantResult> {
    let grid = SignatureGrid::uniform(g.clone(), Signature::hw_le_1(Field::Rational));
    match colours {
        None => Ok(holant_auto(&grid, Mode::Uncoloured(k))?),
        Some((c, kc)) => Ok(holant_auto(&grid.with_edge_colouring(c, kc)?, Mode::Coloured)?),
    }
}

/// As [`count_matchings`], as an integer.
pub fn count_matchings_int(g: &Graph, k: usize, colours: Option<(Vec<usize>, usize)>) -> Result<BigInt> {
    integer(&count_matchings(g, k, colours)?)
}

/// Independent backtracking count of `k`-matchings; with `colours`, one edge of each colour.
pub fn enumerate_matchings(g: &Graph, k: usize, colours: Option<&[usize]>) -> u64 {
    fn go(
        g: &Graph,
        from: usize,
        left: usize,
        used: &mut [bool],
        seen: &mut Vec<usize>,
        colours: Option<&[usize]>,
    ) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for e in from..g.m() {
            let (u, v) = g.edges()[e];
            if used[u] || used[v] {
                continue;
            }
            if let Some(c) = colours {
                if seen.contains(&c[e]) {
                    continue;
                }
                seen.push(c[e]);
            }
            used[u] = true;
            used[v] = true;
            total += go(g, e + 1, left - 1, used, seen, colours);
            used[u] = false;
            used[v] = false;
            if colours.is_some() {
                seen.pop();
            }
        }
        total
    }
    go(g, 0, k, &mut vec![false; g.n()], &mut Vec::new(), colours)
}

/// `k`-edge subgraphs in which every vertex degree lies in `set`.
pub fn count_factors(
    g: &Graph,
    set: IndicatorSet,
    k: usize,
    colours: Option<(Vec<usize>, usize)>,
) -> Result<HolantResult> {
    let s = Signature::indicator("factor", set, Field::Rational)?;
    let grid = SignatureGrid::uniform(g.clone(), s);
    match colours {
        None => Ok(holant_auto(&grid, Mode::Uncoloured(k))?),
        Some((c, kc)) => Ok(holant_auto(&grid.with_edge_colouring(c, kc)?, Mode::Coloured)?),
    }
}

/// Grid whose rows carry `even` and whose columns are edges; columns with fewer than
/// two ones end at auxiliary vertices carrying the constant 1.
pub fn xor_grid(matrix: &[Vec<bool>]) -> Result<SignatureGrid> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(LabError::Usage("matrix rows differ in length".into()));
    }
    let mut n = rows;
    let mut edges = Vec::with_capacity(cols);
    for c in 0..cols {
        let ones: Vec<usize> = matrix
            .iter()
            .enumerate()
            .filter(|(_, row)| row[c])
            .map(|(r, _)| r)
            .collect();
        let e = match ones[..] {
            [a, b] => (a, b),
            [a] => {
                n += 1;
                (a, n - 1)
            }
            [] => {
                n += 2;
                (n - 2, n - 1)
            }
            _ => return Err(LabError::Usage(format!("column {} has more than two ones", c + 1))),
        };
        if edges.contains(&e) {
            return Err(LabError::Usage(format!(
                "column {} duplicates an earlier column",
                c + 1
            )));
        }
        edges.push(e);
    }
    let q = Field::Rational;
    let g = Graph::new(n, &edges)?;
    let sigs = vec![Signature::even(q), Signature::constant("one", q.one())?];
    let assignment = (0..n).map(|v| usize::from(v >= rows)).collect();
    Ok(SignatureGrid::new(g, sigs, assignment)?)
}

/// Weight-`k` solutions of `Mx = 0` over `GF(2)` when every column has at most two ones.
pub fn xor_weight(matrix: &[Vec<bool>], k: usize) -> Result<BigInt> {
    integer(&holant_auto(&xor_grid(matrix)?, Mode::Uncoloured(k))?)
}

/// Brute-force weight-`k` kernel count, for checking.
pub fn xor_weight_brute(matrix: &[Vec<bool>], k: usize) -> u64 {
    let cols = matrix.first().map_or(0, Vec::len);
    (0u64..1 << cols)
        .filter(|x| x.count_ones() as usize == k)
        .filter(|x| {
            matrix
                .iter()
                .all(|r| (0..cols).filter(|&c| r[c] && x >> c & 1 == 1).count() % 2 == 0)
        })
        .count() as u64
}

/// Scalar as printed by the CLI.
pub fn show(v: &Scalar) -> String {
    v.to_string()
}
