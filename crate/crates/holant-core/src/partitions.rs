//! Set partitions, integer partitions, partition-lattice Möbius values and `mult(λ)`.
//!
//! Ground sets are `{0, .., n-1}` internally and print as `{1, .., n}`.

use crate::error::{limit, Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::fmt;

/// Hard limit on the size of enumerated ground sets.
pub const SET_PARTITION_LIMIT: usize = 12;

/// A partition of `{0, .., n-1}` stored as a restricted growth string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u8>,
}

/// An integer partition with non-increasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPartition {
    parts: Vec<usize>,
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, i| a * i)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |a, i| a * (n - i) / (i + 1))
}

/// `(-1)^(c-1) (c-1)!`, the Möbius value of the full interval of a `c`-block lattice.
pub fn signed_factorial(c: usize) -> BigInt {
    assert!(c >= 1);
    let v = BigInt::from(factorial(c - 1));
    if c.is_multiple_of(2) {
        -v
    } else {
        v
    }
}

/// Bell numbers by the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

impl SetPartition {
    /// Builds a partition from explicit 0-based blocks.
    pub fn new(n: usize, blocks: &[Vec<usize>]) -> Result<SetPartition> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &x in block {
                if x >= n || owner[x] != usize::MAX {
                    return Err(Error::Invalid(format!("element {x} out of range or repeated")));
                }
                owner[x] = b;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::Invalid("blocks do not cover the ground set".into()));
        }
        Ok(SetPartition::from_owner(&owner))
    }

    /// Normalises an arbitrary block-label vector into a restricted growth string.
    pub fn from_owner(owner: &[usize]) -> SetPartition {
        let mut map = std::collections::HashMap::new();
        let labels = owner
            .iter()
            .map(|&o| {
                let next = map.len() as u8;
                *map.entry(o).or_insert(next)
            })
            .collect();
        SetPartition { labels }
    }

    /// The finest partition ⊥.
    pub fn finest(n: usize) -> SetPartition {
        SetPartition {
            labels: (0..n as u8).collect(),
        }
    }

    /// The coarsest partition ⊤.
    pub fn coarsest(n: usize) -> SetPartition {
        SetPartition { labels: vec![0; n] }
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    /// Block label of each element; labels are `0..len()` in first-occurrence order.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x] as usize
    }

    /// Number of blocks `|ρ|`.
    pub fn len(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(x);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for &l in &self.labels {
            out[l as usize] += 1;
        }
        out
    }

    pub fn is_finest(&self) -> bool {
        self.len() == self.ground_size()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let xs: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

/// Calls `f` on the restricted growth string of every partition of an `n`-set.
pub fn for_each_rgs(n: usize, mut f: impl FnMut(&[u8])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut a = vec![0u8; n];
    let mut m = vec![0u8; n];
    loop {
        f(&a);
        let mut i = n - 1;
        while i > 0 && a[i] > m[i - 1] {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        a[i] += 1;
        let top = m[i - 1].max(a[i]);
        m[i] = top;
        for j in i + 1..n {
            a[j] = 0;
            m[j] = top;
        }
    }
}

/// All set partitions of an `n`-set, `1 ≤ n ≤ 12`.
pub fn enumerate_set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if n == 0 {
        return Err(Error::Domain("ground set must be nonempty".into()));
    }
    limit("set-partition ground size", n, SET_PARTITION_LIMIT)?;
    let mut out = Vec::new();
    for_each_rgs(n, |a| out.push(SetPartition { labels: a.to_vec() }));
    Ok(out)
}

/// Whether every block of `sigma` lies inside a block of `rho`.
pub fn refines(sigma: &SetPartition, rho: &SetPartition) -> Result<bool> {
    let n = sigma.ground_size();
    if n != rho.ground_size() {
        return Err(Error::GroundMismatch(n, rho.ground_size()));
    }
    let mut image = vec![u8::MAX; sigma.len()];
    for x in 0..n {
        let s = sigma.labels[x] as usize;
        let r = rho.labels[x];
        if image[s] == u8::MAX {
            image[s] = r;
        } else if image[s] != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Möbius function `μ(σ, ρ)` of the partition lattice.
pub fn mobius(sigma: &SetPartition, rho: &SetPartition) -> Result<BigInt> {
    if !refines(sigma, rho)? {
        return Err(Error::Domain(format!("{sigma} does not refine {rho}")));
    }
    let mut count = vec![0usize; rho.len()];
    let mut seen = vec![false; sigma.len()];
    for x in 0..sigma.ground_size() {
        let s = sigma.labels[x] as usize;
        if !seen[s] {
            seen[s] = true;
            count[rho.labels[x] as usize] += 1;
        }
    }
    Ok(count.into_iter().map(signed_factorial).product())
}

/// `μ(⊥, ρ)`.
pub fn mobius_from_finest(rho: &SetPartition) -> BigInt {
    rho.block_sizes().into_iter().map(signed_factorial).product()
}

/// The multiset of block sizes of `rho`.
pub fn shape(rho: &SetPartition) -> IntPartition {
    IntPartition::new(rho.block_sizes()).expect("blocks are nonempty")
}

impl IntPartition {
    /// Sorts `parts` into non-increasing order; every part must be positive.
    pub fn new(mut parts: Vec<usize>) -> Result<IntPartition> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntPartition { parts })
    }

    /// `1^d`.
    pub fn ones(d: usize) -> IntPartition {
        IntPartition { parts: vec![1; d] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `len(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicities `(value, count)` in decreasing value order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Multiset union.
    pub fn union(&self, o: &IntPartition) -> IntPartition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&o.parts);
        IntPartition::new(parts).expect("parts stay positive")
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// All integer partitions of `n` in reverse lexicographic order.
pub fn integer_partitions(n: usize) -> Vec<IntPartition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
        if rest == 0 {
            out.push(IntPartition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `#Aut(λ) = ∏ m_j!` over the multiplicities of distinct parts.
pub fn aut_count(lambda: &IntPartition) -> BigUint {
    lambda.multiplicities().into_iter().map(|(_, m)| factorial(m)).product()
}

/// Number of set partitions of a `|λ|`-set with shape `λ`: `|λ|! / (∏ λ_i! · #Aut(λ))`.
pub fn shape_count(lambda: &IntPartition) -> BigUint {
    let den: BigUint = lambda.parts.iter().map(|&p| factorial(p)).product::<BigUint>() * aut_count(lambda);
    factorial(lambda.size()) / den
}

/// `mult(λ)` by the closed form `(1/#Aut(λ)) (d choose λ) (-1)^(d-len) ∏ (λ_i - 1)!`.
pub fn mult(lambda: &IntPartition) -> BigInt {
    let d = lambda.size();
    let falling: BigUint = lambda.parts.iter().map(|&p| factorial(p - 1)).product();
    let v = BigInt::from(shape_count(lambda) * falling);
    if (d - lambda.len()) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `mult(λ)` as the sum of `μ(⊥, ρ)` over set partitions `ρ` of shape `λ`.
pub fn mult_definitional(lambda: &IntPartition) -> Result<BigInt> {
    let d = lambda.size();
    limit("set-partition ground size", d, SET_PARTITION_LIMIT)?;
    let mut acc = BigInt::zero();
    for_each_rgs(d, |a| {
        let rho = SetPartition { labels: a.to_vec() };
        if shape(&rho) == *lambda {
            acc += mobius_from_finest(&rho);
        }
    });
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell_by_binomial_recursion(n: usize) -> BigUint {
        let mut b = vec![BigUint::one()];
        for m in 1..=n {
            let v = (0..m).map(|k| binomial(m - 1, k) * &b[k]).sum();
            b.push(v);
        }
        b[n].clone()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_set_partitions(1).unwrap().len(), 1);
        assert_eq!(enumerate_set_partitions(3).unwrap().len(), 5);
        assert_eq!(enumerate_set_partitions(4).unwrap().len(), 15);
        for n in 1..=10 {
            let got = enumerate_set_partitions(n).unwrap().len();
            assert_eq!(BigUint::from(got), bell_by_binomial_recursion(n));
            assert_eq!(bell(n), bell_by_binomial_recursion(n));
        }
        assert!(matches!(enumerate_set_partitions(13), Err(Error::Limit { .. })));
        assert!(enumerate_set_partitions(0).is_err());
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let all = enumerate_set_partitions(6).unwrap();
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn refinement_examples() {
        let p = |bs: &[Vec<usize>]| SetPartition::new(3, bs).unwrap();
        let a = p(&[vec![0, 1], vec![2]]);
        let b = p(&[vec![0], vec![1, 2]]);
        assert!(!refines(&a, &b).unwrap());
        assert!(refines(&a, &a).unwrap());
        assert!(refines(&SetPartition::finest(3), &b).unwrap());
        assert!(refines(&a, &SetPartition::finest(4)).is_err());
    }

    #[test]
    fn mobius_examples() {
        let top = SetPartition::coarsest(3);
        let bot = SetPartition::finest(3);
        assert_eq!(mobius(&top, &top).unwrap(), BigInt::one());
        assert_eq!(mobius(&bot, &top).unwrap(), BigInt::from(2));
        let r = SetPartition::new(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(mobius(&bot, &r).unwrap(), BigInt::from(-1));
        assert!(mobius(&top, &bot).is_err());
    }

    #[test]
    fn shape_examples() {
        let r = SetPartition::new(7, &[vec![0, 3], vec![1, 4, 5], vec![2], vec![6]]).unwrap();
        assert_eq!(shape(&r).to_string(), "3+2+1+1");
        assert_eq!(shape(&SetPartition::finest(4)), IntPartition::ones(4));
        assert_eq!(shape(&SetPartition::coarsest(4)).parts(), &[4]);
    }

    #[test]
    fn mult_examples() {
        assert_eq!(mult(&IntPartition::ones(5)), BigInt::one());
        assert_eq!(mult(&IntPartition::new(vec![2]).unwrap()), BigInt::from(-1));
        assert_eq!(mult(&IntPartition::new(vec![2, 1]).unwrap()), BigInt::from(-3));
    }

    #[test]
    fn aut_examples() {
        let l = IntPartition::new(vec![4, 3, 3, 3, 2, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(aut_count(&l), BigUint::from(720u32));
        assert_eq!(aut_count(&IntPartition::new(vec![6]).unwrap()), BigUint::one());
        assert_eq!(aut_count(&IntPartition::ones(5)), BigUint::from(120u32));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| integer_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn display() {
        let r = SetPartition::new(3, &[vec![0, 2], vec![1]]).unwrap();
        assert_eq!(r.to_string(), "{{1,3},{2}}");
    }
}
