//! Route-agreement harness over seeded random instances.

use crate::error::{LabError, Result};
use crate::gen::{instance, GenBounds, Instance};
use holant_core::holant::{
    holant_brute_coloured, holant_brute_uncoloured, holant_coloured_via_inclusion_exclusion, holant_star_fast,
    holant_uncol_fast_with, holant_with_zeros, BRUTE_LIMIT,
};
use holant_core::partitions::binomial;
use holant_core::zeta::ZetaCache;
use holant_core::{exec, holant_mod_p, Field, HolantResult, Mode, Scalar};
use num_traits::ToPrimitive;
use std::fmt::Write as _;

/// Prime for the modular cross-check of rational instances.
pub const CROSS_CHECK_PRIME: u64 = 1_000_003;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
}

impl std::str::FromStr for Format {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "tsv" => Ok(Format::Tsv),
            _ => Err(LabError::Usage(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// `None` cycles through rational, Gaussian and `GF(101)` by trial index.
    pub field: Option<Field>,
    pub seed: u64,
    pub k_max: usize,
    /// Largest number of edge sets the brute route may enumerate.
    pub brute_limit: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            field: None,
            seed: 42,
            k_max: 3,
            brute_limit: BRUTE_LIMIT,
            format: Format::Text,
        }
    }
}

/// Outcome of one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub index: u64,
    pub field: Field,
    pub kind: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub zeros: usize,
    pub value: Option<Scalar>,
    /// `(route, value or error)` in evaluation order.
    pub routes: Vec<(String, std::result::Result<Scalar, String>)>,
    pub mismatch: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub trials: Vec<Trial>,
}

impl Report {
    pub fn first_mismatch(&self) -> Option<&Trial> {
        self.trials.iter().find(|t| t.mismatch.is_some())
    }

    pub fn all_pass(&self) -> bool {
        self.first_mismatch().is_none()
    }

    /// Number of trials in which at least two routes were compared.
    pub fn compared(&self) -> usize {
        self.trials.iter().filter(|t| t.routes.len() >= 2).count()
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        if format == Format::Tsv {
            out.push_str("trial\tfield\tkind\tn\tm\tk\tzeros\tvalue\troutes\tstatus\n");
            for t in &self.trials {
                let routes: Vec<&str> = t.routes.iter().map(|(r, _)| r.as_str()).collect();
                let value = t.value.as_ref().map_or("-".to_string(), |v| v.to_string());
                let status = if t.mismatch.is_some() { "mismatch" } else { "ok" };
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    t.index,
                    t.field,
                    t.kind,
                    t.n,
                    t.m,
                    t.k,
                    t.zeros,
                    value,
                    routes.join(","),
                    status
                );
            }
        }
        match self.first_mismatch() {
            Some(t) => {
                let _ = writeln!(
                    out,
                    "mismatch\ttrial={}\tfield={}\tkind={}\t{}",
                    t.index,
                    t.field,
                    t.kind,
                    t.mismatch.as_deref().unwrap_or("")
                );
                for (r, v) in &t.routes {
                    let v = match v {
                        Ok(x) => x.to_string(),
                        Err(e) => format!("error: {e}"),
                    };
                    let _ = writeln!(out, "route\t{r}\t{v}");
                }
            }
            None => {
                let _ = writeln!(
                    out,
                    "all-pass\ttrials={}\tcompared={}",
                    self.trials.len(),
                    self.compared()
                );
            }
        }
        out
    }
}

/// Runs trials with a private ζ cache.
pub fn verify(cfg: &RunConfig, trials: u64) -> Result<Report> {
    Verifier::new(*cfg).run(trials)
}

/// Harness with a ζ cache shared by every trial.
#[derive(Debug)]
pub struct Verifier {
    cfg: RunConfig,
    cache: ZetaCache,
}

impl Verifier {
    pub fn new(cfg: RunConfig) -> Verifier {
        Verifier {
            cfg,
            cache: ZetaCache::new(),
        }
    }

    pub fn cache(&self) -> &ZetaCache {
        &self.cache
    }

    pub fn run(&self, trials: u64) -> Result<Report> {
        if trials == 0 {
            return Err(LabError::Usage("trials must be at least 1".into()));
        }
        let bounds = GenBounds {
            k_max: self.cfg.k_max,
            ..GenBounds::default()
        };
        let trials = exec::map_range(trials as usize, |i| {
            let inst = instance(self.cfg.seed, i as u64, self.cfg.field, bounds);
            self.trial(i as u64, &inst)
        });
        Ok(Report { trials })
    }

    /// Edge sets the brute route would enumerate, checked against the limit.
    fn brute_ok(&self, inst: &Instance) -> bool {
        let count = match inst.mode {
            Mode::Uncoloured(k) => binomial(inst.grid.graph().m(), k).to_u64(),
            Mode::Coloured => inst.grid.edge_colouring().and_then(|c| {
                let mut sizes = vec![0u64; c.k];
                c.colours.iter().for_each(|&x| sizes[x] += 1);
                sizes.iter().try_fold(1u64, |a, &b| a.checked_mul(b))
            }),
        };
        count.is_some_and(|c| c <= self.cfg.brute_limit)
    }

    /// Evaluates every applicable route of one instance and compares the values.
    pub fn trial(&self, index: u64, inst: &Instance) -> Trial {
        let grid = &inst.grid;
        let field = grid.field();
        let zeros = grid.zero_count();
        let (n, m) = (grid.graph().n(), grid.graph().m());
        let k = match inst.mode {
            Mode::Uncoloured(k) => k,
            Mode::Coloured => grid.edge_colouring().map_or(0, |c| c.k),
        };
        let mut routes: Vec<(String, std::result::Result<Scalar, String>)> = Vec::new();
        let mut push = |name: &str, r: holant_core::Result<HolantResult>| {
            routes.push((name.to_string(), r.map(|h| h.value).map_err(|e| e.to_string())));
        };
        if self.brute_ok(inst) {
            match inst.mode {
                Mode::Uncoloured(k) => push("brute", holant_brute_uncoloured(grid, k)),
                Mode::Coloured => push("brute", holant_brute_coloured(grid)),
            }
        }
        if zeros > 0 {
            push("interpolation", holant_with_zeros(grid, inst.mode));
        } else {
            match inst.mode {
                Mode::Uncoloured(k) => push(
                    "uncoloured_hombasis",
                    holant_uncol_fast_with(grid, k, Some(&self.cache)),
                ),
                Mode::Coloured => {
                    push("inclusion_exclusion", holant_coloured_via_inclusion_exclusion(grid));
                    if grid.h_colouring().is_some() {
                        push("coloured_hombasis", holant_star_fast(grid));
                    }
                }
            }
        }
        let mut mismatch = None;
        let reference = routes.first().and_then(|(_, v)| v.as_ref().ok()).cloned();
        for (r, v) in &routes {
            match (v, &reference) {
                (Err(e), _) => {
                    mismatch = Some(format!("route {r} failed: {e}"));
                    break;
                }
                (Ok(x), Some(y)) if x != y => {
                    mismatch = Some(format!("route {r} gave {x}, expected {y}"));
                    break;
                }
                _ => {}
            }
        }
        if mismatch.is_none() && field == Field::Rational {
            if let Some(y) = &reference {
                let r = holant_mod_p(grid, CROSS_CHECK_PRIME, inst.mode).map(|h| h.value);
                let expect = y.reduce_mod(CROSS_CHECK_PRIME);
                match (&r, &expect) {
                    (Err(e), _) => mismatch = Some(format!("route mod_p failed: {e}")),
                    (Ok(x), Some(e)) if x != e => mismatch = Some(format!("route mod_p gave {x}, expected {e}")),
                    _ => {}
                }
                routes.push(("mod_p".into(), r.map_err(|e| e.to_string())));
            }
        }
        Trial {
            index,
            field,
            kind: inst.kind.to_string(),
            n,
            m,
            k,
            zeros,
            value: reference,
            routes,
            mismatch,
        }
    }
}
