//! Wall-time tables for instance families of growing size.
//!
//! Each family draws its instances from `ChaCha8Rng::seed_from_u64(seed)` with stream
//! equal to the size. A cell that exceeds the timeout is reported and larger sizes are
//! skipped, since a running cell cannot be interrupted.

use crate::error::{LabError, Result};
use crate::gen::{rng_for, sparse_graph};
use holant_core::holant::holant_brute_uncoloured;
use holant_core::{holant_route, Field, Mode, Route, Signature, SignatureGrid};
use rand::Rng;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

/// Edge budget used by every family.
pub const BENCH_K: usize = 3;
/// Repetitions per cell; the minimum is reported.
pub const BENCH_REPS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Signatures `2^x` and `3^x` on sparse random graphs with `m = 2n`: matching support only.
    Acyclic,
    /// `even` on sparse random graphs with `m = 2n`: support includes cycles.
    Tw2,
    /// Brute force on the acyclic family.
    Brute,
}

impl std::str::FromStr for Family {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "acyclic" => Ok(Family::Acyclic),
            "tw2" => Ok(Family::Tw2),
            "brute" => Ok(Family::Brute),
            _ => Err(LabError::Usage(format!("unknown bench family '{s}'"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Acyclic => "acyclic",
            Family::Tw2 => "tw2",
            Family::Brute => "brute",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Timed { secs: f64, value: String },
    Refused(String),
    Timeout { secs: f64 },
    Skipped,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub size: usize,
    pub m: usize,
    pub cell: Cell,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub family: Family,
    pub rows: Vec<Row>,
}

/// The grid of `family` at `size` vertices.
pub fn family_grid(family: Family, size: usize, seed: u64) -> Result<SignatureGrid> {
    let mut rng = rng_for(seed, size as u64);
    let g = sparse_graph(&mut rng, size, 2 * size);
    let q = Field::Rational;
    Ok(match family {
        Family::Acyclic | Family::Brute => {
            let sigs = vec![Signature::geometric("two", 1, 0, q)?, {
                let three = q.from_i64(3);
                Signature::from_table(
                    "three",
                    vec![q.one(), three.clone()],
                    holant_core::Tail::Geometric(three),
                    false,
                )?
            }];
            let assignment = (0..size).map(|_| rng.random_range(0..2)).collect();
            SignatureGrid::new(g, sigs, assignment)?
        }
        Family::Tw2 => SignatureGrid::uniform(g, Signature::even(q)),
    })
}

fn run_cell(family: Family, grid: &SignatureGrid) -> std::result::Result<(Duration, String), String> {
    let mut best: Option<(Duration, String)> = None;
    for _ in 0..BENCH_REPS {
        let t = Instant::now();
        let r = match family {
            Family::Brute => holant_brute_uncoloured(grid, BENCH_K),
            _ => holant_route(grid, Mode::Uncoloured(BENCH_K), Route::UncolouredHombasis),
        };
        let el = t.elapsed();
        let v = r.map_err(|e| e.to_string())?.value.to_string();
        if best.as_ref().is_none_or(|(b, _)| el < *b) {
            best = Some((el, v));
        }
        if el.as_secs_f64() > 1.0 {
            break;
        }
    }
    Ok(best.expect("at least one repetition"))
}

/// Times `family` at every size; sizes after a timed-out cell are skipped.
pub fn bench(family: Family, sizes: &[usize], timeout: Duration, seed: u64) -> Result<Table> {
    if sizes.is_empty() || sizes.iter().any(|&s| s < 2) {
        return Err(LabError::Usage("bench sizes must be at least 2".into()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    let mut stop = false;
    for &size in sizes {
        if stop {
            rows.push(Row {
                size,
                m: 2 * size,
                cell: Cell::Skipped,
            });
            continue;
        }
        let grid = family_grid(family, size, seed)?;
        let m = grid.graph().m();
        let cell = match run_cell(family, &grid) {
            Ok((el, _)) if el > timeout => {
                stop = true;
                Cell::Timeout { secs: el.as_secs_f64() }
            }
            Ok((el, value)) => Cell::Timed {
                secs: el.as_secs_f64(),
                value,
            },
            Err(e) => Cell::Refused(e),
        };
        rows.push(Row { size, m, cell });
    }
    Ok(Table { family, rows })
}

impl Table {
    /// Least-squares slope of `log t` against `log n` over timed cells.
    pub fn slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter_map(|r| match r.cell {
                Cell::Timed { secs, .. } if secs > 0.0 => Some(((r.size as f64).ln(), secs.ln())),
                _ => None,
            })
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("family\tn\tm\tstatus\tseconds\tvalue\n");
        for r in &self.rows {
            let (status, secs, value) = match &r.cell {
                Cell::Timed { secs, value } => ("ok", format!("{secs:.6}"), value.clone()),
                Cell::Refused(e) => ("refused", "-".into(), e.clone()),
                Cell::Timeout { secs } => ("timeout", format!("{secs:.6}"), "-".into()),
                Cell::Skipped => ("skipped", "-".into(), "-".into()),
            };
            let _ = writeln!(out, "{}\t{}\t{}\t{status}\t{secs}\t{value}", self.family, r.size, r.m);
        }
        match self.slope() {
            Some(s) => {
                let _ = writeln!(out, "slope\t{s:.3}");
            }
            None => out.push_str("slope\t-\n"),
        }
        out
    }
}
