//! Command-line interface.

use crate::apps::{count_factors, count_matchings, xor_weight};
use crate::bench::{bench, Family};
use crate::error::{read_file, LabError, Result};
use crate::parse::{parse_grid, parse_matrix, parse_raw_graph, parse_signatures};
use crate::verify::{Format, RunConfig, Verifier};
use clap::{Args, Parser, Subcommand};
use holant_core::grids::canonical_form;
use holant_core::holant::BRUTE_LIMIT;
use holant_core::signatures::IndicatorSet;
use holant_core::zeta::support;
use holant_core::{
    classify_coloured, classify_factor, classify_uncoloured, holant_auto, holant_route, Field, HolantResult, Mode,
    Route, SignatureGrid,
};
use std::fmt::Write as _;
use std::time::Duration;

#[derive(Debug, Parser)]
#[command(
    name = "holant-lab",
    version,
    about = "Exact holant evaluation, classification and verification"
)]
pub struct Cli {
    /// rational | gaussian | gf <p>
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// text | tsv
    #[arg(long, global = true, default_value = "text")]
    pub format: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    #[arg(long, conflicts_with = "uncoloured")]
    pub coloured: bool,
    #[arg(long)]
    pub uncoloured: bool,
    /// Evaluate in GF(p).
    #[arg(long = "mod", value_name = "P")]
    pub modulus: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complexity verdicts for a signature set.
    Classify {
        #[arg(long)]
        signatures: String,
        #[arg(long, default_value_t = 6)]
        degree_bound: usize,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
        /// Treat the signatures as factor sets.
        #[arg(long)]
        factor: bool,
    },
    /// Holant value of a grid.
    Eval {
        #[arg(long)]
        grid: String,
        #[arg(long)]
        signatures: String,
        #[arg(long)]
        k: Option<usize>,
        /// auto | brute | fast | ie | interp
        #[arg(long, default_value = "auto")]
        route: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Nonzero ζ coefficients up to k edges.
    Zeta {
        #[arg(long)]
        signatures: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        tw_threshold: usize,
    },
    /// k-matchings of a graph.
    CountMatchings {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: Option<usize>,
        /// One edge of each colour of the file's edge colouring.
        #[arg(long)]
        colourful: bool,
    },
    /// k-edge subgraphs with every degree in a set.
    CountFactors {
        #[arg(long)]
        graph: String,
        /// e.g. `0,1`, `1`, `0..`, `even`
        #[arg(long)]
        set: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        coloured: bool,
    },
    /// Weight-k kernel vectors of a 0/1 matrix over GF(2).
    XorWeight {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        k: usize,
    },
    /// Route agreement on seeded random instances.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Largest edge budget of generated instances.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = BRUTE_LIMIT)]
        brute_limit: u64,
        /// Cycle through all three fields instead of `--field`.
        #[arg(long)]
        all_fields: bool,
    },
    /// Timing table for an instance family.
    Bench {
        /// acyclic | tw2 | brute
        #[arg(long, default_value = "acyclic")]
        family: String,
        #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 3000, 10000, 30000, 100000])]
        sizes: Vec<usize>,
        /// Per-cell timeout in seconds.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
    },
}

/// Parses `rational`, `gaussian` or `gf:<p>`.
pub fn parse_field(v: &str) -> Result<Field> {
    match v {
        "rational" => Ok(Field::Rational),
        "gaussian" => Ok(Field::Gaussian),
        _ => {
            let p = v
                .strip_prefix("gf:")
                .ok_or_else(|| LabError::Usage(format!("unknown field '{v}'")))?;
            let p: u64 = p
                .parse()
                .map_err(|_| LabError::Usage(format!("malformed prime '{p}'")))?;
            Field::gf(p).map_err(|e| LabError::Usage(e.to_string()))
        }
    }
}

/// Rewrites `--field gf <p>` as `--field gf:<p>`.
fn join_field_args(args: Vec<std::ffi::OsString>) -> Vec<std::ffi::OsString> {
    let mut out: Vec<std::ffi::OsString> = Vec::with_capacity(args.len());
    let mut it = args.into_iter().peekable();
    while let Some(a) = it.next() {
        let is_gf = |x: &std::ffi::OsString| x.to_str() == Some("gf");
        if a.to_str() == Some("--field") && it.peek().is_some_and(is_gf) {
            it.next();
            let p = it.next().unwrap_or_default();
            out.push(a);
            out.push(format!("gf:{}", p.to_string_lossy()).into());
        } else if a.to_str() == Some("--field=gf") {
            let p = it.next().unwrap_or_default();
            out.push(format!("--field=gf:{}", p.to_string_lossy()).into());
        } else {
            out.push(a);
        }
    }
    out
}

fn need_k(k: Option<usize>) -> Result<usize> {
    k.ok_or_else(|| LabError::Usage("--k is required".into()))
}

fn print_result(out: &mut String, r: &HolantResult, format: Format) {
    match format {
        Format::Text => {
            let _ = writeln!(out, "value\t{}\nroute\t{}\nstats\t{}", r.value, r.route, r.stats);
        }
        Format::Tsv => {
            let _ = writeln!(out, "value\troute\tstats\n{}\t{}\t{}", r.value, r.route, r.stats);
        }
    }
}

fn eval(grid: SignatureGrid, k: Option<usize>, route: &str, mode: &ModeArgs) -> Result<HolantResult> {
    let coloured = mode.coloured || (!mode.uncoloured && k.is_none() && grid.edge_colouring().is_some());
    let grid = match mode.modulus {
        Some(p) => grid.to_field(Field::gf(p).map_err(|e| LabError::Usage(e.to_string()))?)?,
        None => grid,
    };
    let m = if coloured {
        if grid.edge_colouring().is_none() {
            return Err(LabError::Usage(
                "--coloured needs an edge colouring or h-colouring".into(),
            ));
        }
        Mode::Coloured
    } else {
        Mode::Uncoloured(need_k(k)?)
    };
    let route = match route {
        "auto" => return Ok(holant_auto(&grid, m)?),
        "fast" if coloured => Route::ColouredHombasis,
        "fast" => Route::UncolouredHombasis,
        r => r.parse().map_err(|_| LabError::Usage(format!("unknown route '{r}'")))?,
    };
    Ok(holant_route(&grid, m, route)?)
}

/// Runs one command line, appending its output to `out`.
pub fn run(cli: &Cli, out: &mut String) -> Result<()> {
    let field = parse_field(&cli.field)?;
    let format: Format = cli.format.parse()?;
    match &cli.command {
        Command::Classify {
            signatures,
            degree_bound,
            modulus,
            factor,
        } => {
            let sigs = parse_signatures(&read_file(signatures)?, field)?;
            if *degree_bound < 3 {
                return Err(LabError::Usage("--degree-bound must be at least 3".into()));
            }
            let verdicts = if *factor {
                vec![classify_factor(&sigs, false)?, classify_factor(&sigs, true)?]
            } else {
                let mut v = vec![classify_coloured(&sigs, *degree_bound, None)?];
                if let Some(p) = modulus {
                    v.push(classify_coloured(&sigs, *degree_bound, Some(*p))?);
                }
                v.push(classify_uncoloured(&sigs, *degree_bound)?);
                v
            };
            for v in verdicts {
                let _ = writeln!(out, "{v}");
                for l in v.detail_lines() {
                    let _ = writeln!(out, "{l}");
                }
            }
        }
        Command::Eval {
            grid,
            signatures,
            k,
            route,
            mode,
        } => {
            let sigs = parse_signatures(&read_file(signatures)?, field)?;
            let grid = parse_grid(&read_file(grid)?, &sigs)?;
            print_result(out, &eval(grid, *k, route, mode)?, format);
        }
        Command::Zeta {
            signatures,
            k,
            tw_threshold,
        } => {
            let sigs = parse_signatures(&read_file(signatures)?, field)?;
            if format == Format::Tsv {
                out.push_str("pattern\tk\tvalue\ttreewidth\n");
            }
            for e in support(&sigs, *k, *tw_threshold)? {
                let mark = if e.above_threshold { "\tabove_threshold" } else { "" };
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}{mark}",
                    canonical_form(&e.pattern)?,
                    e.k,
                    e.value,
                    e.treewidth
                );
            }
        }
        Command::CountMatchings { graph, k, colourful } => {
            let raw = parse_raw_graph(&read_file(graph)?)?;
            let g = raw.graph()?;
            let colours = if *colourful {
                let c = raw
                    .edge_colours
                    .clone()
                    .ok_or_else(|| LabError::at(0, "colourful matchings need edge colours"))?;
                Some((c, raw.colour_count().unwrap_or(0)))
            } else {
                None
            };
            let k = if *colourful {
                colours.as_ref().map_or(0, |c| c.1)
            } else {
                need_k(*k)?
            };
            let r = count_matchings(&g, k, colours)?;
            let _ = writeln!(out, "{}", r.value);
        }
        Command::CountFactors {
            graph,
            set,
            k,
            coloured,
        } => {
            let raw = parse_raw_graph(&read_file(graph)?)?;
            let set = IndicatorSet::parse(set).map_err(|e| LabError::Usage(e.to_string()))?;
            let g = raw.graph()?;
            let (k, colours) = if *coloured {
                let c = raw
                    .edge_colours
                    .clone()
                    .ok_or_else(|| LabError::at(0, "coloured factors need edge colours"))?;
                let kc = raw.colour_count().unwrap_or(0);
                (kc, Some((c, kc)))
            } else {
                (need_k(*k)?, None)
            };
            let r = count_factors(&g, set, k, colours)?;
            let _ = writeln!(out, "{}", r.value);
        }
        Command::XorWeight { matrix, k } => {
            let m = parse_matrix(&read_file(matrix)?)?;
            let _ = writeln!(out, "{}", xor_weight(&m, *k)?);
        }
        Command::Verify {
            trials,
            k,
            brute_limit,
            all_fields,
        } => {
            let cfg = RunConfig {
                field: (!all_fields).then_some(field),
                seed: cli.seed,
                k_max: *k,
                brute_limit: *brute_limit,
                format,
            };
            let report = Verifier::new(cfg).run(*trials)?;
            out.push_str(&report.render(format));
            if let Some(t) = report.first_mismatch() {
                return Err(LabError::Mismatch(format!("trial {}", t.index)));
            }
        }
        Command::Bench { family, sizes, timeout } => {
            let family: Family = family.parse()?;
            if !(timeout.is_finite() && *timeout > 0.0) {
                return Err(LabError::Usage("--timeout must be positive".into()));
            }
            let t = bench(family, sizes, Duration::from_secs_f64(*timeout), cli.seed)?;
            out.push_str(&t.render());
        }
    }
    Ok(())
}

/// Parses `args` and runs them; returns the output and the process exit status.
pub fn main_with<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = join_field_args(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return if code == 0 {
                (e.to_string(), String::new(), 0)
            } else {
                (String::new(), e.to_string(), 1)
            };
        }
    };
    let mut out = String::new();
    match run(&cli, &mut out) {
        Ok(()) => (out, String::new(), 0),
        Err(e) => (out, format!("error: {e}\n"), e.exit_code()),
    }
}
