//! Signatures `s: ℕ → F`, fingerprints χ, signature-set types and generators.

use crate::error::{limit, Error, Result};
use crate::partitions::{
    for_each_rgs, integer_partitions, mobius, shape_count, signed_factorial, IntPartition, SetPartition,
    SET_PARTITION_LIMIT,
};
use crate::scalar::{Field, Scalar};
use std::fmt;

/// Largest degree accepted by [`generate_signature`].
pub const GENERATOR_LIMIT: usize = 10;

/// Extension rule beyond the stored table `s(0..=D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// `s(d) = 0` for `d > D`.
    Zero,
    /// `s(d) = s(D) · r^(d-D)` for `d > D`.
    Geometric(Scalar),
    /// `s(d) = s(d - P)` for `d > D`.
    Periodic(usize),
    /// Evaluation beyond the table is an error.
    Undefined,
}

/// One item of an indicator-set description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetItem {
    Point(usize),
    Range(usize, usize),
    From(usize),
    Even,
    Odd,
}

/// A decidable subset of ℕ: a finite union of points, intervals, rays and parity classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorSet {
    items: Vec<SetItem>,
}

/// Named built-in signature families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Const(Scalar),
    /// `s(x) = 2^(a·x + b)`.
    Geometric {
        a: i64,
        b: i64,
    },
    HwLe1,
    HwEq1,
    Even,
    Indicator(IndicatorSet),
}

/// A symmetric signature given by a value table and a tail rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    name: String,
    table: Vec<Scalar>,
    tail: Tail,
    allows_zero_at_0: bool,
    builtin: Option<Builtin>,
}

/// Fingerprint-based type of a signature set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    Lin,
    Omega,
    Infinity,
}

/// A signature and degree with a nonzero fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub signature: String,
    pub degree: usize,
    pub value: Scalar,
}

/// Result of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureSetType {
    pub tag: TypeTag,
    pub certified_up_to: usize,
    pub absolute: bool,
    pub witness: Option<Witness>,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::Lin => "T_Lin",
            TypeTag::Omega => "T_Omega",
            TypeTag::Infinity => "T_Infinity",
        })
    }
}

impl std::str::FromStr for TypeTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<TypeTag> {
        match s {
            "T_Lin" | "lin" => Ok(TypeTag::Lin),
            "T_Omega" | "omega" => Ok(TypeTag::Omega),
            "T_Infinity" | "infinity" => Ok(TypeTag::Infinity),
            _ => Err(Error::Invalid(format!("unknown type tag '{s}'"))),
        }
    }
}

impl IndicatorSet {
    pub fn new(items: Vec<SetItem>) -> IndicatorSet {
        IndicatorSet { items }
    }

    /// Parses `0,1,4..6,9..,even`.
    pub fn parse(s: &str) -> Result<IndicatorSet> {
        let bad = |t: &str| Error::Invalid(format!("malformed set item '{t}'"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad(t));
        let mut items = Vec::new();
        for t in s.split(',').map(str::trim) {
            let item = match t {
                "even" => SetItem::Even,
                "odd" => SetItem::Odd,
                _ => match t.split_once("..") {
                    Some((lo, "")) => SetItem::From(num(lo)?),
                    Some((lo, hi)) => {
                        let (lo, hi) = (num(lo)?, num(hi)?);
                        if lo > hi {
                            return Err(bad(t));
                        }
                        SetItem::Range(lo, hi)
                    }
                    None => SetItem::Point(num(t)?),
                },
            };
            items.push(item);
        }
        Ok(IndicatorSet { items })
    }

    pub fn contains(&self, d: usize) -> bool {
        self.items.iter().any(|it| match *it {
            SetItem::Point(p) => d == p,
            SetItem::Range(a, b) => a <= d && d <= b,
            SetItem::From(a) => d >= a,
            SetItem::Even => d.is_multiple_of(2),
            SetItem::Odd => d % 2 == 1,
        })
    }

    fn is_finite(&self) -> bool {
        self.items
            .iter()
            .all(|it| matches!(it, SetItem::Point(_) | SetItem::Range(..)))
    }

    fn horizon(&self) -> usize {
        self.items
            .iter()
            .map(|it| match *it {
                SetItem::Point(p) => p,
                SetItem::Range(_, b) => b,
                SetItem::From(a) => a,
                SetItem::Even | SetItem::Odd => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for IndicatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .items
            .iter()
            .map(|it| match *it {
                SetItem::Point(p) => p.to_string(),
                SetItem::Range(a, b) => format!("{a}..{b}"),
                SetItem::From(a) => format!("{a}.."),
                SetItem::Even => "even".into(),
                SetItem::Odd => "odd".into(),
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Const(c) => write!(f, "const {c}"),
            Builtin::Geometric { a, b } => write!(f, "geometric {a} {b}"),
            Builtin::HwLe1 => write!(f, "hw_le_1"),
            Builtin::HwEq1 => write!(f, "hw_eq_1"),
            Builtin::Even => write!(f, "even"),
            Builtin::Indicator(s) => write!(f, "indicator {s}"),
        }
    }
}

fn two_pow(field: Field, e: i64) -> Scalar {
    let two = field.from_i64(2);
    if e >= 0 {
        two.pow(e as u64)
    } else {
        two.pow(e.unsigned_abs())
            .inv()
            .expect("2 is invertible in odd characteristic")
    }
}

impl Signature {
    /// A table signature. A zero `s(0)` requires `allows_zero_at_0`.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Scalar>,
        tail: Tail,
        allows_zero_at_0: bool,
    ) -> Result<Signature> {
        let name = name.into();
        let Some(first) = table.first() else {
            return Err(Error::Invalid(format!("signature {name}: empty table")));
        };
        let field = first.field();
        if table.iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch(format!("signature {name}: mixed fields")));
        }
        match &tail {
            Tail::Geometric(r) if r.field() != field => {
                return Err(Error::FieldMismatch(format!("signature {name}: tail ratio field")))
            }
            Tail::Periodic(p) if *p == 0 || *p > table.len() => {
                return Err(Error::Invalid(format!(
                    "signature {name}: period must be in 1..={}",
                    table.len()
                )))
            }
            _ => {}
        }
        if first.is_zero() && !allows_zero_at_0 {
            return Err(Error::Domain(format!(
                "signature {name}: s(0) = 0 without the zero flag"
            )));
        }
        let sig = Signature {
            name,
            table,
            tail,
            allows_zero_at_0,
            builtin: None,
        };
        if sig.is_identically_zero() {
            return Err(Error::Domain(format!("signature {}: constant zero", sig.name)));
        }
        Ok(sig)
    }

    /// A built-in signature over `field`.
    pub fn builtin(name: impl Into<String>, b: Builtin, field: Field) -> Result<Signature> {
        let name = name.into();
        let z = field.zero();
        let o = field.one();
        let (table, tail) = match &b {
            Builtin::Const(c) => {
                let c = c
                    .to_field(field)
                    .ok_or_else(|| Error::FieldMismatch(format!("constant {c} not in {field}")))?;
                (vec![c], Tail::Geometric(o))
            }
            Builtin::Geometric { a, b } => {
                if field.characteristic() == 2 {
                    return Err(Error::Domain("2^(ax+b) needs odd characteristic".into()));
                }
                (vec![two_pow(field, *b)], Tail::Geometric(two_pow(field, *a)))
            }
            Builtin::HwLe1 => (vec![o.clone(), o], Tail::Zero),
            Builtin::HwEq1 => (vec![z, o], Tail::Zero),
            Builtin::Even => (vec![o, z], Tail::Periodic(2)),
            Builtin::Indicator(set) => {
                let finite = set.is_finite();
                let len = set.horizon() + if finite { 1 } else { 3 };
                let table = (0..len)
                    .map(|d| if set.contains(d) { o.clone() } else { z.clone() })
                    .collect();
                (table, if finite { Tail::Zero } else { Tail::Periodic(2) })
            }
        };
        let mut sig = Signature::from_table(name, table, tail, true)?;
        sig.allows_zero_at_0 = sig.table[0].is_zero();
        sig.builtin = Some(b);
        Ok(sig)
    }

    pub fn hw_le_1(field: Field) -> Signature {
        Signature::builtin("hw_le_1", Builtin::HwLe1, field).expect("valid builtin")
    }

    pub fn hw_eq_1(field: Field) -> Signature {
        Signature::builtin("hw_eq_1", Builtin::HwEq1, field).expect("valid builtin")
    }

    pub fn even(field: Field) -> Signature {
        Signature::builtin("even", Builtin::Even, field).expect("valid builtin")
    }

    pub fn constant(name: impl Into<String>, c: Scalar) -> Result<Signature> {
        let field = c.field();
        Signature::builtin(name, Builtin::Const(c), field)
    }

    pub fn geometric(name: impl Into<String>, a: i64, b: i64, field: Field) -> Result<Signature> {
        Signature::builtin(name, Builtin::Geometric { a, b }, field)
    }

    pub fn indicator(name: impl Into<String>, set: IndicatorSet, field: Field) -> Result<Signature> {
        Signature::builtin(name, Builtin::Indicator(set), field)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Signature {
        self.name = name.into();
        self
    }

    pub fn table(&self) -> &[Scalar] {
        &self.table
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn builtin_kind(&self) -> Option<&Builtin> {
        self.builtin.as_ref()
    }

    pub fn allows_zero_at_0(&self) -> bool {
        self.allows_zero_at_0
    }

    pub fn field(&self) -> Field {
        self.table[0].field()
    }

    /// Whether `s(0) = 0`.
    pub fn is_zero_at_0(&self) -> bool {
        self.table[0].is_zero()
    }

    pub fn is_normalized(&self) -> bool {
        self.table[0].is_one()
    }

    /// `s(d)`.
    pub fn eval(&self, d: usize) -> Result<Scalar> {
        let top = self.table.len() - 1;
        if d <= top {
            return Ok(self.table[d].clone());
        }
        match &self.tail {
            Tail::Zero => Ok(self.field().zero()),
            Tail::Geometric(r) => Ok(&self.table[top] * &r.pow((d - top) as u64)),
            Tail::Periodic(p) => {
                let steps = (d - top).div_ceil(*p);
                Ok(self.table[d - steps * p].clone())
            }
            Tail::Undefined => Err(Error::Undefined {
                name: self.name.clone(),
                d,
            }),
        }
    }

    /// `s(0..=d)`.
    pub fn values(&self, d: usize) -> Result<Vec<Scalar>> {
        (0..=d).map(|i| self.eval(i)).collect()
    }

    /// Largest degree at which evaluation is defined, `None` when unbounded.
    pub fn defined_up_to(&self) -> Option<usize> {
        match self.tail {
            Tail::Undefined => Some(self.table.len() - 1),
            _ => None,
        }
    }

    /// Length of the window that decides every property of a decidable tail.
    fn decision_horizon(&self) -> Option<usize> {
        match self.tail {
            Tail::Zero | Tail::Geometric(_) => Some(self.table.len() + 1),
            Tail::Periodic(p) => Some(self.table.len() + p + 1),
            Tail::Undefined => None,
        }
    }

    fn is_identically_zero(&self) -> bool {
        match self.decision_horizon() {
            Some(h) => (0..=h).all(|d| self.eval(d).map(|x| x.is_zero()).unwrap_or(false)),
            None => self.table.iter().all(Scalar::is_zero),
        }
    }

    /// `s / s(0)`.
    pub fn normalized(&self) -> Result<Signature> {
        let inv = self.table[0]
            .inv()
            .ok_or_else(|| Error::Domain(format!("signature {}: s(0) is not invertible", self.name)))?;
        Ok(Signature {
            name: self.name.clone(),
            table: self.table.iter().map(|x| x * &inv).collect(),
            tail: self.tail.clone(),
            allows_zero_at_0: false,
            builtin: None,
        })
    }

    /// Copy with `s(0)` replaced by `alpha`.
    pub fn with_value_at_0(&self, alpha: Scalar) -> Signature {
        let mut table = self.table.clone();
        table[0] = alpha;
        Signature {
            name: self.name.clone(),
            allows_zero_at_0: table[0].is_zero(),
            table,
            tail: self.tail.clone(),
            builtin: None,
        }
    }

    /// Converts every value into `field` (reduction mod `p` or promotion).
    pub fn to_field(&self, field: Field) -> Result<Signature> {
        let conv = |x: &Scalar| {
            x.to_field(field)
                .ok_or_else(|| Error::Domain(format!("signature {}: value {x} has no image in {field}", self.name)))
        };
        let table = self.table.iter().map(conv).collect::<Result<Vec<_>>>()?;
        let tail = match &self.tail {
            Tail::Geometric(r) => Tail::Geometric(conv(r)?),
            t => t.clone(),
        };
        if table[0].is_zero() && !self.is_zero_at_0() {
            return Err(Error::Domain(format!(
                "signature {}: s(0) vanishes in {field}",
                self.name
            )));
        }
        let builtin = match &self.builtin {
            Some(Builtin::Const(c)) => Some(Builtin::Const(conv(c)?)),
            b => b.clone(),
        };
        Ok(Signature {
            name: self.name.clone(),
            table,
            tail,
            allows_zero_at_0: self.allows_zero_at_0,
            builtin,
        })
    }

    /// Smallest `d > 0` with `s(d) ≠ 0`, searched over the decidable window.
    pub fn first_nonzero_degree(&self) -> Option<usize> {
        let h = self.decision_horizon().unwrap_or(self.table.len() - 1);
        (1..=h).find(|&d| self.eval(d).map(|x| !x.is_zero()).unwrap_or(false))
    }

    /// Whether `s(n) s(0)^(n-1) = s(1)^n` for all `n`; `None` if the tail is undefined.
    pub fn is_linear_by_tail(&self) -> Option<bool> {
        let h = self.decision_horizon()?;
        let r = ratios(self, h).ok()?;
        Some((0..=h).all(|n| r[n] == r[1].pow(n as u64)))
    }

    /// Whether this is a 0/1 indicator with a decidable tail; returns the membership test window.
    pub fn indicator_profile(&self) -> Result<IndicatorProfile> {
        let h = self.decision_horizon().ok_or_else(|| {
            Error::Domain(format!(
                "signature {}: membership beyond the table is undecidable",
                self.name
            ))
        })?;
        let mut members = Vec::new();
        for d in 0..=h {
            let v = self.eval(d)?;
            if v.is_one() {
                members.push(true);
            } else if v.is_zero() {
                members.push(false);
            } else {
                return Err(Error::Domain(format!(
                    "signature {}: value {v} at {d} is not an indicator value",
                    self.name
                )));
            }
        }
        Ok(IndicatorProfile { members })
    }
}

/// Membership of `0..=h` for an indicator with a decidable tail; the window covers the tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorProfile {
    members: Vec<bool>,
}

impl IndicatorProfile {
    pub fn contains_zero(&self) -> bool {
        self.members[0]
    }

    /// The set is exactly `{0}`.
    pub fn is_singleton_zero(&self) -> bool {
        self.members[0] && self.members[1..].iter().all(|m| !m)
    }

    /// The set is all of ℕ.
    pub fn is_everything(&self) -> bool {
        self.members.iter().all(|&m| m)
    }
}

/// `s(j) / s(0)` for `j ≤ d`.
fn ratios(s: &Signature, d: usize) -> Result<Vec<Scalar>> {
    let inv = s.table[0]
        .inv()
        .ok_or_else(|| Error::Domain(format!("signature {}: s(0) = 0", s.name)))?;
    (0..=d).map(|j| Ok(&s.eval(j)? * &inv)).collect()
}

fn check_degree(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::Domain("fingerprint degree must be positive".into()));
    }
    limit("fingerprint degree", d, SET_PARTITION_LIMIT)
}

/// `χ(d, s)`, grouping set partitions of `[d]` by shape.
pub fn fingerprint(d: usize, s: &Signature) -> Result<Scalar> {
    check_degree(d)?;
    let r = ratios(s, d)?;
    let field = s.field();
    let mut acc = field.zero();
    for lambda in integer_partitions(d) {
        let coeff = signed_factorial(lambda.len()) * num_bigint::BigInt::from(shape_count(&lambda));
        let mut term = field.from_bigint(&coeff);
        for &p in lambda.parts() {
            term = &term * &r[p];
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `χ(d, s)` summed directly over every set partition of `[d]`.
pub fn fingerprint_definitional(d: usize, s: &Signature) -> Result<Scalar> {
    check_degree(d)?;
    let r = ratios(s, d)?;
    let field = s.field();
    let mut acc = field.zero();
    for_each_rgs(d, |a| {
        let sigma = SetPartition::from_owner(&a.iter().map(|&x| x as usize).collect::<Vec<_>>());
        let mut term = field.from_bigint(&signed_factorial(sigma.len()));
        for b in sigma.block_sizes() {
            term = &term * &r[b];
        }
        acc = &acc + &term;
    });
    Ok(acc)
}

/// `χ(ρ, s) = Σ_{σ ≤ ρ} μ(σ, ρ) ∏_{B ∈ σ} s(|B|)/s(0)`, summed explicitly.
pub fn chi_partition(rho: &SetPartition, s: &Signature) -> Result<Scalar> {
    let n = rho.ground_size();
    limit("set-partition ground size", n, SET_PARTITION_LIMIT)?;
    let r = ratios(s, n)?;
    let field = s.field();
    let blocks = rho.blocks();
    let per_block: Vec<Vec<Vec<u8>>> = blocks
        .iter()
        .map(|b| {
            let mut v = Vec::new();
            for_each_rgs(b.len(), |a| v.push(a.to_vec()));
            v
        })
        .collect();
    let mut idx = vec![0usize; blocks.len()];
    let mut acc = field.zero();
    loop {
        let mut owner = vec![0usize; n];
        let mut offset = 0;
        for (bi, b) in blocks.iter().enumerate() {
            let rgs = &per_block[bi][idx[bi]];
            for (pos, &x) in b.iter().enumerate() {
                owner[x] = offset + rgs[pos] as usize;
            }
            offset += n;
        }
        let sigma = SetPartition::from_owner(&owner);
        let mut term = field.from_bigint(&mobius(&sigma, rho)?);
        for b in sigma.block_sizes() {
            term = &term * &r[b];
        }
        acc = &acc + &term;
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(acc);
            }
            idx[i] += 1;
            if idx[i] < per_block[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// `∏_{B ∈ ρ} χ(|B|, s)`.
pub fn chi_partition_product(rho: &SetPartition, s: &Signature) -> Result<Scalar> {
    let mut acc = s.field().one();
    for b in rho.block_sizes() {
        acc = &acc * &fingerprint(b, s)?;
    }
    Ok(acc)
}

fn require_normalized(s: &Signature) -> Result<()> {
    if s.is_normalized() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "signature {} is not normalized (s(0) ≠ 1); rescale first",
            s.name
        )))
    }
}

/// `χ(λ, s)` for normalized `s`, by the moment-cumulant recursion over index subsets.
pub fn chi_lambda(lambda: &IntPartition, s: &Signature) -> Result<Scalar> {
    require_normalized(s)?;
    let n = lambda.len();
    limit("partition length", n, SET_PARTITION_LIMIT)?;
    let field = s.field();
    if n == 0 {
        return Ok(field.zero());
    }
    let parts = lambda.parts();
    let full = (1usize << n) - 1;
    let mut moment = Vec::with_capacity(full + 1);
    for mask in 0..=full {
        let w: usize = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| parts[i]).sum();
        moment.push(s.eval(w)?);
    }
    let mut kappa: Vec<Option<Scalar>> = vec![None; full + 1];
    for mask in (1..=full).step_by(2) {
        let mut acc = moment[mask].clone();
        let rest = mask & !1;
        let mut sub = rest;
        loop {
            let b = sub | 1;
            if b != mask {
                let k = kappa[b].as_ref().expect("smaller masks are done");
                acc = &acc - &(k * &moment[mask ^ b]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        kappa[mask] = Some(acc);
    }
    Ok(kappa[full].take().expect("full mask computed"))
}

/// `χ(λ, s)` summed over every set partition of the part indices.
pub fn chi_lambda_definitional(lambda: &IntPartition, s: &Signature) -> Result<Scalar> {
    require_normalized(s)?;
    let n = lambda.len();
    limit("partition length", n, SET_PARTITION_LIMIT)?;
    let field = s.field();
    if n == 0 {
        return Ok(field.zero());
    }
    let parts = lambda.parts();
    let vals = s.values(lambda.size())?;
    let mut acc = field.zero();
    for_each_rgs(n, |a| {
        let k = a.iter().map(|&x| x as usize + 1).max().unwrap_or(0);
        let mut sums = vec![0usize; k];
        for (i, &l) in a.iter().enumerate() {
            sums[l as usize] += parts[i];
        }
        let mut term = field.from_bigint(&signed_factorial(k));
        for w in sums {
            term = &term * &vals[w];
        }
        acc = &acc + &term;
    });
    Ok(acc)
}

/// Type of a signature set relative to degree bound `d_max`.
///
/// Signatures with an undefined tail are probed only as far as their table reaches.
pub fn classify(set: &[Signature], d_max: usize) -> Result<SignatureSetType> {
    if d_max < 3 {
        return Err(Error::Domain("degree bound must be at least 3".into()));
    }
    limit("degree bound", d_max, SET_PARTITION_LIMIT)?;
    let mut certified = d_max;
    let mut omega: Option<Witness> = None;
    for s in set {
        if s.is_zero_at_0() {
            return Err(Error::Domain(format!("signature {}: s(0) = 0", s.name)));
        }
        let top = s.defined_up_to().map_or(d_max, |t| t.min(d_max));
        certified = certified.min(top);
        for d in 2..=top {
            let chi = fingerprint(d, s)?;
            if chi.is_zero() {
                continue;
            }
            let w = Witness {
                signature: s.name.clone(),
                degree: d,
                value: chi,
            };
            if d >= 3 {
                return Ok(SignatureSetType {
                    tag: TypeTag::Infinity,
                    certified_up_to: d,
                    absolute: true,
                    witness: Some(w),
                });
            }
            if omega.is_none() {
                omega = Some(w);
            }
        }
    }
    if let Some(w) = omega {
        return Ok(SignatureSetType {
            tag: TypeTag::Omega,
            certified_up_to: certified,
            absolute: false,
            witness: Some(w),
        });
    }
    let absolute = set.iter().all(|s| s.is_linear_by_tail() == Some(true));
    Ok(SignatureSetType {
        tag: TypeTag::Lin,
        certified_up_to: certified,
        absolute,
        witness: None,
    })
}

/// A normalized signature with `s(1) = c` whose fingerprints realise `target`.
///
/// Values are chosen recursively so that `χ(d)` hits the prescribed target:
/// `T_Lin` zeroes every `χ(d)`, `d ≥ 2`; `T_Omega` sets `χ(2) = 1` and zeroes the
/// rest up to `d_max`; `T_Infinity` takes `s(2) = c`, sets `χ(3) = 1` and `s(d) = 0` beyond.
pub fn generate_signature(target: TypeTag, c: &Scalar, d_max: usize) -> Result<Signature> {
    limit("generator degree", d_max, GENERATOR_LIMIT)?;
    let field = c.field();
    let mut table = vec![field.one(), c.clone()];
    let solve = |table: &mut Vec<Scalar>, d: usize, want: Scalar| -> Result<()> {
        table.push(field.zero());
        let probe = Signature::from_table("probe", table.clone(), Tail::Undefined, false)?;
        let rest = fingerprint(d, &probe)?;
        table[d] = &want - &rest;
        Ok(())
    };
    let (name, tail) = match target {
        TypeTag::Lin => {
            for d in 2..=d_max.max(2) {
                solve(&mut table, d, field.zero())?;
            }
            ("gen_lin", Tail::Geometric(c.clone()))
        }
        TypeTag::Omega => {
            solve(&mut table, 2, field.one())?;
            for d in 3..=d_max.max(3) {
                solve(&mut table, d, field.zero())?;
            }
            ("gen_omega", Tail::Undefined)
        }
        TypeTag::Infinity => {
            table.push(c.clone());
            solve(&mut table, 3, field.one())?;
            ("gen_infinity", Tail::Zero)
        }
    };
    Signature::from_table(format!("{name}_{c}"), table, tail, false)
}
