//! The ζ coefficients of the homomorphism-basis expansion of uncoloured holants.

use crate::error::{limit, Error, Result};
use crate::exec;
use crate::grids::{
    aut_count_pattern, canonical_form, canonical_labelling, enumerate_patterns, enumerate_patterns_up_to, quotient,
    treewidth_exact, ColouredPattern,
};
use crate::partitions::{
    factorial, for_each_rgs, integer_partitions, mobius_from_finest, mult, IntPartition, SetPartition,
};
use crate::scalar::{Field, Scalar};
use crate::signatures::{chi_lambda, Signature};
use num_bigint::{BigInt, BigUint};
use std::collections::HashMap;
use std::sync::RwLock;

/// Largest edge budget for the definitional sum.
pub const DEFINITIONAL_LIMIT: usize = 4;
/// Largest edge budget for the closed form.
pub const CLOSED_LIMIT: usize = 8;
/// Largest edge budget for support extraction.
pub const SUPPORT_LIMIT: usize = 4;

/// `λ: E(P) → integer partitions`, indexed by pattern edge.
pub type EdgePartitionAssignment = Vec<IntPartition>;

fn corpus(s: &[Signature]) -> Result<(Vec<Signature>, Field)> {
    let first = s.first().ok_or_else(|| Error::Invalid("empty signature set".into()))?;
    let field = first.field();
    let out = s
        .iter()
        .map(|x| {
            if x.is_normalized() {
                Ok(x.clone())
            } else {
                x.normalized()
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if out.iter().any(|x| x.field() != field) {
        return Err(Error::FieldMismatch("signature set spans several fields".into()));
    }
    Ok((out, field))
}

fn check_colours(p: &ColouredPattern, s: &[Signature]) -> Result<()> {
    match p.colours().iter().find(|&&c| c >= s.len()) {
        Some(c) => Err(Error::Invalid(format!("pattern colour {c} has no signature"))),
        None => Ok(()),
    }
}

fn divide(x: Scalar, d: &BigUint, field: Field) -> Result<Scalar> {
    let inv = field
        .from_bigint(&BigInt::from(d.clone()))
        .inv()
        .ok_or_else(|| Error::Domain(format!("{d} is not invertible in {field}")))?;
    Ok(x * inv)
}

/// `deg(P, v, λ)`: the multiset union of `λ(e)` over edges at `v`.
pub fn deg_partition(p: &ColouredPattern, v: usize, lambda: &[IntPartition]) -> IntPartition {
    let g = p.graph();
    g.incident(v)
        .iter()
        .fold(IntPartition::new(vec![]).expect("empty"), |acc, &(_, e)| {
            acc.union(&lambda[e])
        })
}

/// Precomputed inputs of the closed form for one corpus and budget.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    k: usize,
    field: Field,
    /// weighted choices `(λ, mult(λ)/|λ|!)` by size
    by_size: Vec<Vec<(Vec<usize>, Scalar)>>,
    /// `χ(λ, s_c)` for every colour `c` and `|λ| ≤ k`
    chi: Vec<HashMap<Vec<usize>, Scalar>>,
}

impl ClosedForm {
    pub fn new(k: usize, s: &[Signature]) -> Result<ClosedForm> {
        limit("closed-form zeta edge budget", k, CLOSED_LIMIT)?;
        let (s, field) = corpus(s)?;
        let mut by_size: Vec<Vec<(Vec<usize>, Scalar)>> = vec![Vec::new(); k + 1];
        for (size, slot) in by_size.iter_mut().enumerate().skip(1) {
            for lam in integer_partitions(size) {
                let w = divide(field.from_bigint(&mult(&lam)), &factorial(size), field)?;
                slot.push((lam.parts().to_vec(), w));
            }
        }
        let chi = s
            .iter()
            .map(|sig| {
                let mut m = HashMap::new();
                for size in 1..=k {
                    for lam in integer_partitions(size) {
                        m.insert(lam.parts().to_vec(), chi_lambda(&lam, sig)?);
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosedForm { k, field, by_size, chi })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// ζ of `p` for this corpus and budget.
    pub fn eval(&self, p: &ColouredPattern) -> Result<Scalar> {
        if let Some(&c) = p.colours().iter().find(|&&c| c >= self.chi.len()) {
            return Err(Error::Invalid(format!("pattern colour {c} has no signature")));
        }
        let (k, field) = (self.k, self.field);
        let m = p.m();
        if m > k || m == 0 {
            return Ok(if m == 0 && k == 0 { field.one() } else { field.zero() });
        }
        let ends: Vec<(usize, usize)> = p.edges().to_vec();
        let mut deg: Vec<Vec<usize>> = vec![Vec::new(); p.n()];
        let mut total = field.zero();
        self.go(0, k, field.one(), &ends, &mut deg, p.colours(), &mut total);
        divide(total, &BigUint::from(aut_count_pattern(p)?), field)
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        &self,
        e: usize,
        left: usize,
        weight: Scalar,
        ends: &[(usize, usize)],
        deg: &mut Vec<Vec<usize>>,
        colours: &[usize],
        total: &mut Scalar,
    ) {
        if e == ends.len() {
            if left != 0 {
                return;
            }
            let mut prod = weight;
            for (v, parts) in deg.iter().enumerate() {
                let mut key = parts.clone();
                key.sort_unstable_by(|a, b| b.cmp(a));
                prod *= &self.chi[colours[v]][&key];
                if prod.is_zero() {
                    return;
                }
            }
            *total += &prod;
            return;
        }
        let remaining_edges = ends.len() - e - 1;
        let (u, v) = ends[e];
        for size in 1..=left.saturating_sub(remaining_edges) {
            for (parts, w) in &self.by_size[size] {
                let (du, dv) = (deg[u].len(), deg[v].len());
                deg[u].extend_from_slice(parts);
                deg[v].extend_from_slice(parts);
                self.go(e + 1, left - size, &weight * w, ends, deg, colours, total);
                deg[u].truncate(du);
                deg[v].truncate(dv);
            }
        }
    }
}

/// Closed form: `(1/#Aut) Σ_λ ∏_e mult(λ(e))/|λ(e)|! · ∏_v χ(deg(P,v,λ), ν(v))`.
pub fn zeta_closed(p: &ColouredPattern, k: usize, s: &[Signature]) -> Result<Scalar> {
    check_colours(p, s)?;
    ClosedForm::new(k, s)?.eval(p)
}

/// The exactly-k special case `(1/#Aut) ∏_v χ(deg v, ν(v))` with `k = |E(P)|`.
pub fn zeta_exact_k(p: &ColouredPattern, s: &[Signature]) -> Result<Scalar> {
    check_colours(p, s)?;
    let (s, field) = corpus(s)?;
    let g = p.graph();
    let mut prod = field.one();
    for v in 0..p.n() {
        prod *= &crate::signatures::fingerprint(g.degree(v), &s[p.colours()[v]])?;
    }
    divide(prod, &BigUint::from(aut_count_pattern(p)?), field)
}

/// Definitional sum over `G_k(S)` and colour-consistent loop-free partitions with quotient `≅ P`.
pub fn zeta_definitional(p: &ColouredPattern, k: usize, s: &[Signature]) -> Result<Scalar> {
    limit("definitional zeta edge budget", k, DEFINITIONAL_LIMIT)?;
    check_colours(p, s)?;
    let (s, field) = corpus(s)?;
    if p.m() > k {
        return Ok(field.zero());
    }
    let target = canonical_form(p)?;
    let table = definitional_sums(k, &s, field, Some((target.as_str(), p.n(), p.m())))?;
    Ok(table.get(&target).cloned().unwrap_or_else(|| field.zero()))
}

/// Definitional ζ for every quotient pattern at once, keyed by canonical form.
pub fn zeta_definitional_table(k: usize, s: &[Signature]) -> Result<HashMap<String, Scalar>> {
    limit("definitional zeta edge budget", k, DEFINITIONAL_LIMIT)?;
    let (s, field) = corpus(s)?;
    definitional_sums(k, &s, field, None)
}

fn definitional_sums(
    k: usize,
    s: &[Signature],
    field: Field,
    only: Option<(&str, usize, usize)>,
) -> Result<HashMap<String, Scalar>> {
    let family = enumerate_patterns(s.len(), k)?;
    let terms = exec::map_slice(&family, |f| -> Result<Vec<(String, Scalar)>> {
        let fg = f.graph();
        let mut mu: HashMap<String, BigInt> = HashMap::new();
        let mut err = None;
        for_each_rgs(f.n(), |a| {
            if err.is_some() {
                return;
            }
            let rho = SetPartition::from_owner(&a.iter().map(|&x| x as usize).collect::<Vec<_>>());
            if only.is_some_and(|(_, pn, _)| rho.len() != pn) {
                return;
            }
            let mut block_colour = vec![usize::MAX; rho.len()];
            for v in 0..f.n() {
                let b = rho.block_of(v);
                if block_colour[b] == usize::MAX {
                    block_colour[b] = f.colours()[v];
                } else if block_colour[b] != f.colours()[v] {
                    return;
                }
            }
            let q = match quotient(&fg, &rho) {
                Ok(q) => q,
                Err(e) => {
                    err = Some(e);
                    return;
                }
            };
            if q.has_loops() || only.is_some_and(|(_, _, pm)| q.graph.m() != pm) {
                return;
            }
            let qp = ColouredPattern::new(&q.graph, block_colour).expect("quotient has no isolated vertices");
            match canonical_form(&qp) {
                Ok(c) if only.is_none_or(|(t, _, _)| c == t) => {
                    *mu.entry(c).or_insert_with(|| BigInt::from(0)) += mobius_from_finest(&rho);
                }
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let mut w = field.one();
        for v in 0..f.n() {
            w *= &s[f.colours()[v]].eval(fg.degree(v))?;
        }
        let w = divide(w, &BigUint::from(aut_count_pattern(f)?), field)?;
        Ok(mu
            .into_iter()
            .filter(|(_, m)| *m != BigInt::from(0))
            .map(|(c, m)| (c, field.from_bigint(&m) * &w))
            .collect())
    });
    let mut table: HashMap<String, Scalar> = HashMap::new();
    for t in terms {
        for (c, v) in t? {
            let slot = table.entry(c).or_insert_with(|| field.zero());
            *slot += &v;
        }
    }
    Ok(table)
}

/// A support pattern with its coefficient and treewidth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaEntry {
    pub pattern: ColouredPattern,
    pub k: usize,
    pub value: Scalar,
    pub treewidth: usize,
    pub above_threshold: bool,
}

/// All patterns with at most `k` edges and nonzero ζ.
pub fn support(s: &[Signature], k: usize, tw_threshold: usize) -> Result<Vec<ZetaEntry>> {
    limit("support edge budget", k, SUPPORT_LIMIT)?;
    let patterns = enumerate_patterns_up_to(s.len(), k)?;
    let cf = ClosedForm::new(k, s)?;
    let entries = exec::map_slice(&patterns, |p| -> Result<Option<ZetaEntry>> {
        let value = cf.eval(p)?;
        if value.is_zero() {
            return Ok(None);
        }
        let treewidth = treewidth_exact(&p.graph())?;
        Ok(Some(ZetaEntry {
            pattern: p.clone(),
            k,
            value,
            treewidth,
            above_threshold: treewidth > tw_threshold,
        }))
    });
    entries.into_iter().filter_map(|e| e.transpose()).collect()
}

/// Shared ζ cache keyed by canonical pattern, budget and the signature values that ζ depends on.
#[derive(Debug, Default)]
pub struct ZetaCache {
    map: RwLock<HashMap<(String, usize, String), Scalar>>,
}

impl ZetaCache {
    pub fn new() -> ZetaCache {
        ZetaCache::default()
    }

    fn key(p: &ColouredPattern, k: usize, s: &[Signature]) -> Result<(String, usize, String)> {
        let mut sig = String::new();
        for x in s {
            let vals: Vec<String> = x.values(k)?.iter().map(|v| v.to_string()).collect();
            sig.push_str(&vals.join(","));
            sig.push(';');
        }
        Ok((canonical_labelling(p)?.to_string(), k, sig))
    }

    /// Cached [`zeta_closed`].
    pub fn get(&self, p: &ColouredPattern, k: usize, s: &[Signature]) -> Result<Scalar> {
        self.get_with(p, &ClosedForm::new(k, s)?, s)
    }

    /// Cached [`ClosedForm::eval`]; `cf` must have been built from `s`.
    pub fn get_with(&self, p: &ColouredPattern, cf: &ClosedForm, s: &[Signature]) -> Result<Scalar> {
        let key = ZetaCache::key(p, cf.k(), s)?;
        if let Some(v) = self.map.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = cf.eval(p)?;
        self.map.write().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    /// Overrides one entry.
    pub fn insert(&self, p: &ColouredPattern, k: usize, s: &[Signature], value: Scalar) -> Result<()> {
        let key = ZetaCache::key(p, k, s)?;
        self.map.write().expect("cache lock").insert(key, value);
        Ok(())
    }

    /// Rewrites every cached value in place.
    pub fn map_values(&self, f: impl Fn(&Scalar) -> Scalar) {
        for v in self.map.write().expect("cache lock").values_mut() {
            *v = f(v);
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::Graph;

    fn q(s: &str) -> Scalar {
        Field::Rational.parse(s).unwrap()
    }

    fn sig(vals: &[&str]) -> Signature {
        let t = vals.iter().map(|v| q(v)).collect();
        Signature::from_table("s", t, crate::signatures::Tail::Zero, false).unwrap()
    }

    fn pat(n: usize, e: &[(usize, usize)]) -> ColouredPattern {
        ColouredPattern::mono(&Graph::new(n, e).unwrap()).unwrap()
    }

    #[test]
    fn k2_single_edge() {
        let s = sig(&["1", "3", "5", "-2", "7"]);
        let k2 = pat(2, &[(0, 1)]);
        assert_eq!(zeta_closed(&k2, 1, std::slice::from_ref(&s)).unwrap(), q("9/2"));
        assert_eq!(zeta_definitional(&k2, 1, std::slice::from_ref(&s)).unwrap(), q("9/2"));
        assert_eq!(
            zeta_closed(&k2, 2, std::slice::from_ref(&s)).unwrap(),
            zeta_definitional(&k2, 2, &[s]).unwrap()
        );
    }

    #[test]
    fn triangle_law() {
        let s = sig(&["1", "2", "7", "1", "3"]);
        let k3 = pat(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(zeta_closed(&k3, 3, std::slice::from_ref(&s)).unwrap(), q("27/6"));
        assert_eq!(zeta_definitional(&k3, 3, std::slice::from_ref(&s)).unwrap(), q("27/6"));
        assert_eq!(zeta_exact_k(&k3, &[s]).unwrap(), q("9/2"));
    }

    #[test]
    fn too_many_edges_vanish() {
        let s = sig(&["1", "2", "3"]);
        let p = pat(3, &[(0, 1), (1, 2)]);
        assert!(zeta_closed(&p, 1, std::slice::from_ref(&s)).unwrap().is_zero());
        assert!(zeta_definitional(&p, 1, &[s]).unwrap().is_zero());
    }

    #[test]
    fn linear_kills_degree_two() {
        let s = Signature::geometric("g", 1, 0, Field::Rational).unwrap();
        let p3 = pat(3, &[(0, 1), (1, 2)]);
        for k in 2..=4 {
            assert!(zeta_closed(&p3, k, std::slice::from_ref(&s)).unwrap().is_zero());
        }
    }

    #[test]
    fn deg_partition_union() {
        let p3 = pat(3, &[(0, 1), (1, 2)]);
        let lam = vec![IntPartition::new(vec![2]).unwrap(), IntPartition::ones(2)];
        assert_eq!(deg_partition(&p3, 1, &lam).to_string(), "2+1+1");
        assert_eq!(
            deg_partition(&p3, 0, &[IntPartition::ones(1), IntPartition::ones(1)]).to_string(),
            "1"
        );
    }

    #[test]
    fn matching_support_for_hw_le_1() {
        let s = Signature::hw_le_1(Field::Rational);
        let entries = support(&[s], 3, 2).unwrap();
        assert!(!entries.is_empty());
        assert!(entries.iter().any(|e| e.pattern.m() == 3 && e.pattern.n() == 6));
    }

    #[test]
    fn cache_round_trip() {
        let s = sig(&["1", "3", "5"]);
        let k2 = pat(2, &[(0, 1)]);
        let c = ZetaCache::new();
        assert_eq!(c.get(&k2, 1, std::slice::from_ref(&s)).unwrap(), q("9/2"));
        assert_eq!(c.len(), 1);
        c.insert(&k2, 1, std::slice::from_ref(&s), q("1")).unwrap();
        assert_eq!(c.get(&k2, 1, &[s]).unwrap(), q("1"));
    }
}
