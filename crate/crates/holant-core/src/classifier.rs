//! Complexity verdicts for signature sets.

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::signatures::{classify, Signature, TypeTag, Witness};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Coloured,
    Uncoloured,
    ColouredModP(u64),
    Factor,
    ColFactor,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Coloured => f.write_str("coloured"),
            Problem::Uncoloured => f.write_str("uncoloured"),
            Problem::ColouredModP(_) => f.write_str("coloured_mod_p"),
            Problem::Factor => f.write_str("factor"),
            Problem::ColFactor => f.write_str("col_factor"),
        }
    }
}

/// Predicted running-time regime, ordered from easiest to hardest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    NearLinear,
    MatrixMultiplication,
    SharpW1Complete,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::NearLinear => "near_linear",
            Regime::MatrixMultiplication => "matrix_multiplication",
            Regime::SharpW1Complete => "sharpW1_complete",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub problem: Problem,
    pub regime: Regime,
    pub basis: &'static str,
    pub type_tag: Option<TypeTag>,
    pub witness: Option<Witness>,
    /// `Some(D)` when the verdict is only certified up to degree `D`.
    pub relative_bound: Option<usize>,
    pub notes: Vec<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\tbasis={}", self.problem, self.regime, self.basis)?;
        if let Problem::ColouredModP(p) = self.problem {
            write!(f, "\tp={p}")?;
        }
        if let Some(t) = self.type_tag {
            write!(f, "\ttype={t}")?;
        }
        match self.relative_bound {
            Some(d) => write!(f, "\tcertified_up_to={d}"),
            None => write!(f, "\tabsolute"),
        }
    }
}

impl Verdict {
    /// Witness and note lines accompanying the verdict line.
    pub fn detail_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(w) = &self.witness {
            out.push(format!("witness\t{}\tchi({})={}", w.signature, w.degree, w.value));
        }
        out.extend(self.notes.iter().map(|n| format!("note\t{n}")));
        out
    }
}

fn regime_note(r: Regime) -> Option<String> {
    match r {
        Regime::SharpW1Complete => Some("lower bound is conditional on ETH (informational)".into()),
        Regime::MatrixMultiplication => {
            Some("matching lower bound is conditional on the triangle conjecture (informational)".into())
        }
        Regime::NearLinear => None,
    }
}

fn regime_of(tag: TypeTag, coloured: bool) -> Regime {
    match (tag, coloured) {
        (TypeTag::Lin, _) => Regime::NearLinear,
        (TypeTag::Omega, true) => Regime::MatrixMultiplication,
        _ => Regime::SharpW1Complete,
    }
}

/// Splits off `S₀ = {s : s(0) = 0}` and classifies the rest.
fn split_and_classify(set: &[Signature], d: usize, problem: Problem, basis: &'static str) -> Result<Verdict> {
    let coloured = !matches!(problem, Problem::Uncoloured);
    let (zero, rest): (Vec<&Signature>, Vec<&Signature>) = set.iter().partition(|s| s.is_zero_at_0());
    let mut notes = Vec::new();
    if !zero.is_empty() {
        let names: Vec<&str> = zero.iter().map(|s| s.name()).collect();
        notes.push(format!("zero-at-0 signatures set aside: {}", names.join(",")));
    }
    if rest.is_empty() {
        if zero.is_empty() {
            return Err(Error::Invalid("empty signature set".into()));
        }
        notes
            .push("only zero-at-0 signatures: the holant is nonzero only for small vertex counts relative to k".into());
        return Ok(Verdict {
            problem,
            regime: Regime::NearLinear,
            basis,
            type_tag: None,
            witness: None,
            relative_bound: None,
            notes,
        });
    }
    let rest: Vec<Signature> = rest.into_iter().cloned().collect();
    let t = classify(&rest, d)?;
    let regime = regime_of(t.tag, coloured);
    notes.extend(regime_note(regime));
    Ok(Verdict {
        problem,
        regime,
        basis,
        type_tag: Some(t.tag),
        witness: t.witness,
        relative_bound: (!t.absolute).then_some(t.certified_up_to),
        notes,
    })
}

/// Coloured verdict; with `p` the set is first reduced into `GF(p)`.
pub fn classify_coloured(set: &[Signature], d: usize, p: Option<u64>) -> Result<Verdict> {
    match p {
        None => split_and_classify(set, d, Problem::Coloured, "coloured-trichotomy"),
        Some(p) => {
            let field = Field::gf(p)?;
            let reduced = set
                .iter()
                .map(|s| {
                    let z = s.table()[0]
                        .to_field(field)
                        .ok_or_else(|| Error::Domain(format!("signature {}: no image mod {p}", s.name())))?;
                    if z.is_zero() {
                        s.with_value_at_0(s.field().zero()).to_field(field)
                    } else {
                        s.to_field(field)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            split_and_classify(&reduced, d, Problem::ColouredModP(p), "modular-coloured-trichotomy")
        }
    }
}

/// Uncoloured verdict: near-linear for linear type, otherwise #W\[1\]-complete.
pub fn classify_uncoloured(set: &[Signature], d: usize) -> Result<Verdict> {
    split_and_classify(set, d, Problem::Uncoloured, "uncoloured-dichotomy")
}

/// Factor verdict: hard iff some member set `S` satisfies `{0} ⊊ S ⊊ ℕ`.
pub fn classify_factor(sets: &[Signature], coloured: bool) -> Result<Verdict> {
    let problem = if coloured { Problem::ColFactor } else { Problem::Factor };
    if sets.is_empty() {
        return Err(Error::Invalid("empty set family".into()));
    }
    let mut notes = Vec::new();
    for s in sets {
        let prof = s.indicator_profile()?;
        if prof.contains_zero() && !prof.is_singleton_zero() && !prof.is_everything() {
            notes.push(format!("witness set {} strictly between {{0}} and N", s.name()));
            notes.extend(regime_note(Regime::SharpW1Complete));
            return Ok(Verdict {
                problem,
                regime: Regime::SharpW1Complete,
                basis: "factor-criterion",
                type_tag: None,
                witness: None,
                relative_bound: None,
                notes,
            });
        }
    }
    Ok(Verdict {
        problem,
        regime: Regime::NearLinear,
        basis: "factor-criterion",
        type_tag: None,
        witness: None,
        relative_bound: None,
        notes,
    })
}
