//! Holant evaluators: brute force, homomorphism-basis routes, inclusion-exclusion,
//! interpolation over zero-capable signatures and modular evaluation.

use crate::error::{limit, Error, Result};
use crate::exec;
use crate::grids::{enumerate_fractures, enumerate_patterns_up_to_where, Fracture, Graph, SignatureGrid};
use crate::homcount::{count_cp_homs, count_homs};
use crate::partitions::binomial;
use crate::scalar::{Field, Scalar};
use crate::signatures::{chi_partition, chi_partition_product, Signature, Tail};
use crate::zeta::{ClosedForm, ZetaCache};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::fmt;
use std::str::FromStr;

/// Largest number of edge sets a brute-force evaluator enumerates.
pub const BRUTE_LIMIT: u64 = 10_000_000;
/// Largest `k` for the homomorphism-basis and inclusion-exclusion routes.
pub const FAST_K_LIMIT: usize = 5;

/// Evaluation strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Brute,
    ColouredHombasis,
    UncolouredHombasis,
    InclusionExclusion,
    Interpolation,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Brute => "brute",
            Route::ColouredHombasis => "coloured_hombasis",
            Route::UncolouredHombasis => "uncoloured_hombasis",
            Route::InclusionExclusion => "inclusion_exclusion",
            Route::Interpolation => "interpolation",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        Ok(match s {
            "brute" => Route::Brute,
            "coloured_hombasis" => Route::ColouredHombasis,
            "uncoloured_hombasis" => Route::UncolouredHombasis,
            "inclusion_exclusion" | "ie" => Route::InclusionExclusion,
            "interpolation" | "interp" => Route::Interpolation,
            _ => return Err(Error::Invalid(format!("unknown route '{s}'"))),
        })
    }
}

/// Which holant is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// One edge of each colour of the grid's edge colouring.
    Coloured,
    /// All `k`-edge subsets.
    Uncoloured(usize),
}

/// Work counters attached to every result.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub patterns: u64,
    pub fractures: u64,
    pub hom_calls: u64,
    pub edge_sets: u64,
    pub samples: u64,
}

impl Stats {
    fn absorb(&mut self, o: &Stats) {
        self.patterns += o.patterns;
        self.fractures += o.fractures;
        self.hom_calls += o.hom_calls;
        self.edge_sets += o.edge_sets;
        self.samples += o.samples;
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "patterns={} fractures={} hom_calls={} edge_sets={} samples={}",
            self.patterns, self.fractures, self.hom_calls, self.edge_sets, self.samples
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolantResult {
    pub value: Scalar,
    pub route: Route,
    pub stats: Stats,
}

fn colouring(grid: &SignatureGrid) -> Result<(&[usize], usize)> {
    grid.edge_colouring()
        .map(|c| (c.colours.as_slice(), c.k))
        .ok_or_else(|| Error::NotApplicable("coloured evaluation needs an edge colouring".into()))
}

/// Per-vertex tables `r_v(d)` for `d ≤ k`, the product of nonzero `s_v(0)`, and zero-vertex flags.
struct Weights {
    ratio: Vec<Vec<Scalar>>,
    base: Scalar,
    zero: Vec<bool>,
    n_zero: usize,
}

impl Weights {
    fn new(grid: &SignatureGrid, k: usize) -> Result<Weights> {
        let field = grid.field();
        let mut base = field.one();
        let mut ratio = Vec::with_capacity(grid.graph().n());
        let mut zero = Vec::with_capacity(grid.graph().n());
        let mut per_sig = Vec::with_capacity(grid.signatures().len());
        for s in grid.signatures() {
            let d = k.min(grid.graph().max_degree());
            let vals = s.values(d)?;
            let r: Vec<Scalar> = match vals[0].inv() {
                Some(inv) => vals.iter().map(|x| x * &inv).collect(),
                None => vals,
            };
            per_sig.push(r);
        }
        for v in 0..grid.graph().n() {
            let s = grid.signature_of(v);
            let z = s.is_zero_at_0();
            if !z {
                base *= &s.table()[0];
            }
            zero.push(z);
            ratio.push(per_sig[grid.assignment()[v]].clone());
        }
        let n_zero = zero.iter().filter(|&&z| z).count();
        Ok(Weights {
            ratio,
            base,
            zero,
            n_zero,
        })
    }

    /// Weight of an edge set given by its endpoint list.
    fn term(&self, ends: &[usize], scratch: &mut Vec<(usize, usize)>) -> Option<Scalar> {
        scratch.clear();
        for &v in ends {
            match scratch.iter_mut().find(|(w, _)| *w == v) {
                Some((_, d)) => *d += 1,
                None => scratch.push((v, 1)),
            }
        }
        let touched_zero = scratch.iter().filter(|(v, _)| self.zero[*v]).count();
        if touched_zero != self.n_zero {
            return None;
        }
        let mut t = self.base.clone();
        for &(v, d) in scratch.iter() {
            t *= &self.ratio[v][d];
            if t.is_zero() {
                return None;
            }
        }
        Some(t)
    }
}

/// Brute-force coloured holant over the product of the colour classes.
pub fn holant_brute_coloured(grid: &SignatureGrid) -> Result<HolantResult> {
    let (colours, k) = colouring(grid)?;
    let field = grid.field();
    let mut classes = vec![Vec::new(); k];
    for (e, &c) in colours.iter().enumerate() {
        classes[c].push(e);
    }
    let total = classes
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .unwrap_or(u64::MAX);
    limit("colourful edge sets", total as usize, BRUTE_LIMIT as usize)?;
    let w = Weights::new(grid, k)?;
    let edges = grid.graph().edges();
    let done = |value: Scalar, sets: u64| HolantResult {
        value,
        route: Route::Brute,
        stats: Stats {
            edge_sets: sets,
            ..Stats::default()
        },
    };
    if total == 0 {
        return Ok(done(field.zero(), 0));
    }
    if k == 0 {
        let v = w.term(&[], &mut Vec::new()).unwrap_or_else(|| field.zero());
        return Ok(done(v, 1));
    }
    let partial = exec::map_slice(&classes[0], |&first| {
        let mut acc = field.zero();
        let mut idx = vec![0usize; k];
        let mut ends = Vec::with_capacity(2 * k);
        let mut scratch = Vec::new();
        loop {
            ends.clear();
            ends.extend([edges[first].0, edges[first].1]);
            for c in 1..k {
                let (a, b) = edges[classes[c][idx[c]]];
                ends.extend([a, b]);
            }
            if let Some(t) = w.term(&ends, &mut scratch) {
                acc += &t;
            }
            let mut c = 1;
            loop {
                if c == k {
                    return acc;
                }
                idx[c] += 1;
                if idx[c] < classes[c].len() {
                    break;
                }
                idx[c] = 0;
                c += 1;
            }
        }
    });
    let value = partial.iter().fold(field.zero(), |a, x| a + x);
    Ok(done(value, total))
}

/// Brute-force uncoloured holant over all `k`-edge subsets.
pub fn holant_brute_uncoloured(grid: &SignatureGrid, k: usize) -> Result<HolantResult> {
    let m = grid.graph().m();
    let field = grid.field();
    let count = binomial(m, k);
    if count > BigUint::from(BRUTE_LIMIT) {
        return Err(Error::Limit {
            what: "k-edge subsets",
            got: count.to_usize().unwrap_or(usize::MAX),
            limit: BRUTE_LIMIT as usize,
        });
    }
    let total = count.to_u64().unwrap_or(0);
    let w = Weights::new(grid, k)?;
    let edges = grid.graph().edges();
    let value = if k == 0 {
        w.term(&[], &mut Vec::new()).unwrap_or_else(|| field.zero())
    } else if k > m {
        field.zero()
    } else {
        let firsts: Vec<usize> = (0..=m - k).collect();
        let partial = exec::map_slice(&firsts, |&first| {
            let mut acc = field.zero();
            let mut comb: Vec<usize> = (first..first + k).collect();
            let mut ends = Vec::with_capacity(2 * k);
            let mut scratch = Vec::new();
            loop {
                ends.clear();
                for &e in &comb {
                    ends.extend([edges[e].0, edges[e].1]);
                }
                if let Some(t) = w.term(&ends, &mut scratch) {
                    acc += &t;
                }
                // next combination with comb[0] fixed
                let mut i = k - 1;
                loop {
                    if i == 0 {
                        return acc;
                    }
                    if comb[i] < m - (k - i) {
                        comb[i] += 1;
                        for j in i + 1..k {
                            comb[j] = comb[j - 1] + 1;
                        }
                        break;
                    }
                    i -= 1;
                }
            }
        });
        partial.iter().fold(field.zero(), |a, x| a + x)
    };
    Ok(HolantResult {
        value,
        route: Route::Brute,
        stats: Stats {
            edge_sets: total,
            ..Stats::default()
        },
    })
}

fn check_sigs(h: &Graph, sigs: &[Signature]) -> Result<()> {
    if sigs.len() != h.n() {
        return Err(Error::Invalid("one signature per pattern vertex is required".into()));
    }
    Ok(())
}

/// `coeff(ρ⃗) = ∏_i ∏_{B ∈ ρ⃗(v_i)} χ(|B|, s_i)`.
pub fn coeff_fracture(h: &Graph, sigs: &[Signature], rho: &Fracture) -> Result<Scalar> {
    check_sigs(h, sigs)?;
    let mut acc = sigs.first().map_or(Field::Rational, Signature::field).one();
    for (v, s) in sigs.iter().enumerate() {
        acc *= &chi_partition_product(rho.part(v), s)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// The same coefficient as an explicit Möbius sum over `σ⃗ ≤ ρ⃗`.
pub fn coeff_fracture_definitional(h: &Graph, sigs: &[Signature], rho: &Fracture) -> Result<Scalar> {
    check_sigs(h, sigs)?;
    let mut acc = sigs.first().map_or(Field::Rational, Signature::field).one();
    for (v, s) in sigs.iter().enumerate() {
        acc *= &chi_partition(rho.part(v), s)?;
    }
    Ok(acc)
}

fn no_zeros(grid: &SignatureGrid) -> Result<()> {
    if grid.zero_count() > 0 {
        return Err(Error::NotApplicable(
            "a signature vanishes at 0; use the interpolation route".into(),
        ));
    }
    Ok(())
}

fn prod_at_zero(grid: &SignatureGrid) -> Scalar {
    let mut acc = grid.field().one();
    for v in 0..grid.graph().n() {
        acc *= &grid.signature_of(v).table()[0];
    }
    acc
}

/// Coloured holant of an H-coloured grid through the fracture expansion.
pub fn holant_star_fast(grid: &SignatureGrid) -> Result<HolantResult> {
    holant_star_fast_with(grid, cfg!(debug_assertions))
}

/// As [`holant_star_fast`]; `check` also evaluates every coefficient definitionally and compares.
pub fn holant_star_fast_with(grid: &SignatureGrid, check: bool) -> Result<HolantResult> {
    let hc = grid
        .h_colouring()
        .ok_or_else(|| Error::NotApplicable("coloured hom-basis route needs an h-colouring".into()))?;
    no_zeros(grid)?;
    let h = &hc.pattern;
    let field = grid.field();
    let mut rep = vec![None; h.n()];
    for (v, &i) in hc.map.iter().enumerate() {
        rep[i].get_or_insert(v);
    }
    let mut stats = Stats::default();
    let result = |value, stats| HolantResult {
        value,
        route: Route::ColouredHombasis,
        stats,
    };
    if (0..h.n()).any(|i| rep[i].is_none() && h.degree(i) > 0) {
        return Ok(result(field.zero(), stats));
    }
    let sigs: Vec<Signature> = (0..h.n())
        .map(|i| rep[i].map_or_else(|| grid.signatures()[0].clone(), |v| grid.signature_of(v).clone()))
        .collect();
    let fractures = enumerate_fractures(h)?;
    stats.fractures = fractures.len() as u64;
    let terms = exec::map_slice(&fractures, |rho| -> Result<(Scalar, bool)> {
        let c = coeff_fracture(h, &sigs, rho)?;
        if check {
            let d = coeff_fracture_definitional(h, &sigs, rho)?;
            if c != d {
                return Err(Error::Invalid(format!(
                    "fracture coefficient mismatch: closed {c} vs definitional {d}"
                )));
            }
        }
        if c.is_zero() {
            return Ok((c, false));
        }
        let n = count_cp_homs(h, rho, grid)?;
        Ok((c * field.from_bigint(&n), true))
    });
    let mut acc = field.zero();
    for t in terms {
        let (v, called) = t?;
        stats.hom_calls += called as u64;
        acc += &v;
    }
    Ok(result(acc * prod_at_zero(grid), stats))
}

/// Integer lift of a `GF(p)` signature to the rationals.
fn lift_signature(s: &Signature) -> Result<Signature> {
    let lift = |x: &Scalar| Field::Rational.from_bigint(&x.to_bigint().expect("residues are integers"));
    let table = s.table().iter().map(lift).collect();
    let tail = match s.tail() {
        Tail::Geometric(r) => Tail::Geometric(lift(r)),
        t => t.clone(),
    };
    Signature::from_table(s.name(), table, tail, s.allows_zero_at_0())
}

/// Uncoloured holant through `Σ ζ · #Hom`; `GF(p)` grids are lifted to the integers and reduced afterwards.
pub fn holant_uncol_fast(grid: &SignatureGrid, k: usize) -> Result<HolantResult> {
    holant_uncol_fast_with(grid, k, None)
}

/// As [`holant_uncol_fast`], reading ζ through `cache` when given.
pub fn holant_uncol_fast_with(grid: &SignatureGrid, k: usize, cache: Option<&ZetaCache>) -> Result<HolantResult> {
    limit("hom-basis edge budget", k, FAST_K_LIMIT)?;
    no_zeros(grid)?;
    let grid = &grid.compacted();
    if let Field::Prime(p) = grid.field() {
        let lifted = grid.map_signatures(lift_signature)?;
        let mut r = holant_uncol_fast_with(&lifted, k, cache)?;
        r.value = r.value.reduce_mod(p).expect("integer value");
        return Ok(r);
    }
    let field = grid.field();
    let mut stats = Stats::default();
    let scale = prod_at_zero(grid);
    if k == 0 {
        return Ok(HolantResult {
            value: scale,
            route: Route::UncolouredHombasis,
            stats,
        });
    }
    let sigs = grid.signatures();
    let adjacent = colour_adjacency(grid);
    let patterns = enumerate_patterns_up_to_where(sigs.len(), k, |a, b| adjacent[a][b])?;
    stats.patterns = patterns.len() as u64;
    let cf = ClosedForm::new(k, sigs)?;
    let terms = exec::map_slice(&patterns, |p| -> Result<(Scalar, bool)> {
        let z = match cache {
            Some(c) => c.get_with(p, &cf, sigs)?,
            None => cf.eval(p)?,
        };
        if z.is_zero() {
            return Ok((z, false));
        }
        let n = count_homs(p, grid, None)?;
        Ok((z * field.from_bigint(&n), true))
    });
    let mut acc = field.zero();
    for t in terms {
        let (v, called) = t?;
        stats.hom_calls += called as u64;
        acc += &v;
    }
    Ok(HolantResult {
        value: acc * scale,
        route: Route::UncolouredHombasis,
        stats,
    })
}

/// `adjacent[a][b]`: some host edge joins signature classes `a` and `b`.
fn colour_adjacency(grid: &SignatureGrid) -> Vec<Vec<bool>> {
    let c = grid.signatures().len();
    let mut adj = vec![vec![false; c]; c];
    let a = grid.assignment();
    for &(u, v) in grid.graph().edges() {
        adj[a[u]][a[v]] = true;
        adj[a[v]][a[u]] = true;
    }
    adj
}

fn uncoloured_direct(grid: &SignatureGrid, k: usize) -> Result<HolantResult> {
    if k <= FAST_K_LIMIT && grid.zero_count() == 0 {
        holant_uncol_fast(grid, k)
    } else {
        holant_brute_uncoloured(grid, k)
    }
}

/// Coloured holant as `Σ_{T ⊆ [k]} (-1)^{k-|T|} UnColHolant(Ω[T], k)`.
pub fn holant_coloured_via_inclusion_exclusion(grid: &SignatureGrid) -> Result<HolantResult> {
    let (colours, k) = colouring(grid)?;
    limit("inclusion-exclusion colour count", k, FAST_K_LIMIT)?;
    let field = grid.field();
    let subsets: Vec<u32> = (0..1u32 << k).collect();
    let terms = exec::map_slice(&subsets, |&t| -> Result<(Scalar, Stats)> {
        let sub = grid.restrict_edges(|e| t >> colours[e] & 1 == 1);
        let r = uncoloured_direct(&sub, k)?;
        let v = if (k - t.count_ones() as usize) % 2 == 1 {
            -r.value
        } else {
            r.value
        };
        Ok((v, r.stats))
    });
    let mut acc = field.zero();
    let mut stats = Stats::default();
    for t in terms {
        let (v, s) = t?;
        acc += &v;
        stats.absorb(&s);
    }
    Ok(HolantResult {
        value: acc,
        route: Route::InclusionExclusion,
        stats,
    })
}

/// Direct evaluation without interpolation; zero signatures are only handled by brute force.
pub fn holant_direct(grid: &SignatureGrid, mode: Mode) -> Result<HolantResult> {
    match mode {
        Mode::Uncoloured(k) => uncoloured_direct(grid, k),
        Mode::Coloured => {
            let (_, k) = colouring(grid)?;
            if grid.zero_count() == 0 && grid.h_colouring().is_some() {
                holant_star_fast(grid)
            } else if k <= FAST_K_LIMIT {
                holant_coloured_via_inclusion_exclusion(grid)
            } else {
                holant_brute_coloured(grid)
            }
        }
    }
}

fn forbidden_points(grid: &SignatureGrid) -> Vec<Scalar> {
    let field = grid.field();
    let sigs = grid.signatures();
    let mut out = vec![field.zero()];
    for s in sigs {
        if !s.is_zero_at_0() {
            out.push(s.table()[0].clone());
        }
    }
    for t in sigs {
        let Some(dt) = t.first_nonzero_degree() else { continue };
        let Ok(tv) = t.eval(dt) else { continue };
        for s in sigs {
            let Ok(sv) = s.eval(dt) else { continue };
            let alpha = match sv.inv() {
                Some(inv) => &(&s.table()[0] * &tv) * &inv,
                None => field.one(),
            };
            out.push(alpha);
        }
    }
    out
}

/// Evaluates a grid with zero-capable signatures by interpolating in `α = s(0)`.
pub fn holant_with_zeros(grid: &SignatureGrid, mode: Mode) -> Result<HolantResult> {
    let field = grid.field();
    let n0 = grid.zero_count();
    let k = match mode {
        Mode::Uncoloured(k) => k,
        Mode::Coloured => colouring(grid)?.1,
    };
    let wrap = |value, stats| HolantResult {
        value,
        route: Route::Interpolation,
        stats,
    };
    if n0 == 0 {
        let r = holant_direct(grid, mode)?;
        let stats = Stats { samples: 1, ..r.stats };
        return Ok(wrap(r.value, stats));
    }
    if 2 * k < n0 {
        return Ok(wrap(field.zero(), Stats::default()));
    }
    let forbidden = forbidden_points(grid);
    let needed = n0 + 1;
    let mut xs = Vec::with_capacity(needed);
    let cap = match field {
        Field::Prime(p) => p - 1,
        _ => u64::MAX,
    };
    let mut c = 1u64;
    while xs.len() < needed && c <= cap {
        let x = field.from_i64(c as i64);
        if !forbidden.contains(&x) {
            xs.push(x);
        }
        c += 1;
    }
    if xs.len() < needed {
        return Err(Error::FieldTooSmall {
            needed,
            found: xs.len(),
        });
    }
    let values = exec::map_slice(&xs, |x| -> Result<HolantResult> {
        let g = grid.map_signatures(|s| {
            Ok(if s.is_zero_at_0() {
                s.with_value_at_0(x.clone())
            } else {
                s.clone()
            })
        })?;
        holant_direct(&g, mode)
    });
    let mut stats = Stats {
        samples: xs.len() as u64,
        ..Stats::default()
    };
    let mut ys = Vec::with_capacity(xs.len());
    for v in values {
        let r = v?;
        stats.absorb(&r.stats);
        ys.push(r.value);
    }
    Ok(wrap(lagrange_at_zero(&xs, &ys), stats))
}

/// Value at 0 of the interpolating polynomial through `(xs[j], ys[j])`.
pub fn lagrange_at_zero(xs: &[Scalar], ys: &[Scalar]) -> Scalar {
    let field = xs[0].field();
    let mut acc = field.zero();
    for (j, (xj, yj)) in xs.iter().zip(ys).enumerate() {
        let mut num = field.one();
        let mut den = field.one();
        for (m, xm) in xs.iter().enumerate() {
            if m != j {
                num *= xm;
                den *= &(xm - xj);
            }
        }
        acc += &(&(yj * &num) * &den.inv().expect("sample points are distinct"));
    }
    acc
}

/// Automatic route: interpolation if any signature vanishes at 0, else [`holant_direct`].
pub fn holant_auto(grid: &SignatureGrid, mode: Mode) -> Result<HolantResult> {
    if grid.zero_count() > 0 {
        holant_with_zeros(grid, mode)
    } else {
        holant_direct(grid, mode)
    }
}

/// Evaluates along a named route.
pub fn holant_route(grid: &SignatureGrid, mode: Mode, route: Route) -> Result<HolantResult> {
    match (route, mode) {
        (Route::Brute, Mode::Coloured) => holant_brute_coloured(grid),
        (Route::Brute, Mode::Uncoloured(k)) => holant_brute_uncoloured(grid, k),
        (Route::ColouredHombasis, Mode::Coloured) => holant_star_fast(grid),
        (Route::UncolouredHombasis, Mode::Uncoloured(k)) => holant_uncol_fast(grid, k),
        (Route::InclusionExclusion, Mode::Coloured) => holant_coloured_via_inclusion_exclusion(grid),
        (Route::Interpolation, m) => holant_with_zeros(grid, m),
        (r, m) => Err(Error::NotApplicable(format!(
            "route {r} does not evaluate {m:?} holants"
        ))),
    }
}

/// Evaluation in `GF(p)`; values are reduced first and every `s(0)` must stay invertible
/// unless the signature is flagged zero-capable.
pub fn holant_mod_p(grid: &SignatureGrid, p: u64, mode: Mode) -> Result<HolantResult> {
    let field = Field::gf(p)?;
    let g = if grid.field() == field {
        grid.clone()
    } else {
        grid.to_field(field)?
    };
    holant_auto(&g, mode)
}
