//! Line-oriented signature, grid, graph and matrix files.
//!
//! Signature file:
//! ```text
//! signature <name> table <v0> <v1> ... tail (zero|geom <r>|undef|periodic <P>) [allow_zero]
//! signature <name> builtin (const <c>|geometric <a> <b>|hw_le_1|hw_eq_1|even|indicator <set>)
//! ```
//! Grid file:
//! ```text
//! vertex <id> <signature-name>
//! edge <u> <v> [colour]
//! hcolour <id> <pattern-vertex>
//! hedge <pattern-vertex> <pattern-vertex>
//! ```
//! `#` starts a comment. Edge colours are 1-based. A Gaussian scalar may be written
//! `a+bi` or `a+b i`.

use crate::error::{LabError, Result};
use holant_core::signatures::{Builtin, IndicatorSet, Tail};
use holant_core::{Field, Graph, Scalar, Signature, SignatureGrid};
use std::collections::{HashMap, HashSet};

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn lines(text: &str) -> Vec<(usize, Vec<String>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut toks: Vec<String> = Vec::new();
            for t in body.split_whitespace() {
                match toks.last_mut() {
                    Some(prev) if t == "i" => prev.push('i'),
                    _ => toks.push(t.to_string()),
                }
            }
            (!toks.is_empty()).then_some((i + 1, toks))
        })
        .collect()
}

/// Comments and blank lines removed, whitespace collapsed, split imaginary units rejoined.
pub fn normalize(text: &str) -> String {
    lines(text).into_iter().map(|(_, t)| t.join(" ") + "\n").collect()
}

fn core(line: usize) -> impl Fn(holant_core::Error) -> LabError {
    move |e| LabError::at(line, e.to_string())
}

fn scalar(field: Field, tok: &str, line: usize) -> Result<Scalar> {
    field.parse(tok).map_err(core(line))
}

fn int<T: std::str::FromStr>(tok: Option<&String>, what: &str, line: usize) -> Result<T> {
    let tok = tok.ok_or_else(|| LabError::at(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| LabError::at(line, format!("malformed {what} '{tok}'")))
}

/// Parses a signature file over `field`; names must be unique.
pub fn parse_signatures(text: &str, field: Field) -> Result<Vec<Signature>> {
    let mut out: Vec<Signature> = Vec::new();
    for (line, t) in lines(text) {
        if t[0] != "signature" {
            return Err(LabError::at(line, format!("expected 'signature', found '{}'", t[0])));
        }
        let name = t
            .get(1)
            .ok_or_else(|| LabError::at(line, "missing signature name"))?
            .clone();
        if out.iter().any(|s| s.name() == name) {
            return Err(LabError::at(line, format!("duplicate signature '{name}'")));
        }
        let sig = match t.get(2).map(String::as_str) {
            Some("table") => parse_table(&name, &t[3..], field, line)?,
            Some("builtin") => parse_builtin(&name, &t[3..], field, line)?,
            other => {
                return Err(LabError::at(
                    line,
                    format!("expected 'table' or 'builtin', found '{}'", other.unwrap_or("")),
                ))
            }
        };
        out.push(sig);
    }
    if out.is_empty() {
        return Err(LabError::at(0, "no signatures defined"));
    }
    Ok(out)
}

fn parse_table(name: &str, t: &[String], field: Field, line: usize) -> Result<Signature> {
    let tail_at = t
        .iter()
        .position(|x| x == "tail")
        .ok_or_else(|| LabError::at(line, "missing 'tail'"))?;
    let table = t[..tail_at]
        .iter()
        .map(|x| scalar(field, x, line))
        .collect::<Result<Vec<_>>>()?;
    let rest = &t[tail_at + 1..];
    let (tail, used) = match rest.first().map(String::as_str) {
        Some("zero") => (Tail::Zero, 1),
        Some("undef") => (Tail::Undefined, 1),
        Some("geom") => {
            let r = rest.get(1).ok_or_else(|| LabError::at(line, "missing tail ratio"))?;
            (Tail::Geometric(scalar(field, r, line)?), 2)
        }
        Some("periodic") => (Tail::Periodic(int(rest.get(1), "period", line)?), 2),
        other => return Err(LabError::at(line, format!("unknown tail '{}'", other.unwrap_or("")))),
    };
    let allow_zero = match &rest[used..] {
        [] => false,
        [x] if x == "allow_zero" => true,
        extra => return Err(LabError::at(line, format!("unexpected '{}'", extra.join(" ")))),
    };
    Signature::from_table(name, table, tail, allow_zero).map_err(core(line))
}

fn parse_builtin(name: &str, t: &[String], field: Field, line: usize) -> Result<Signature> {
    let arity = |n: usize| {
        if t.len() == n + 1 {
            Ok(())
        } else {
            Err(LabError::at(line, format!("builtin '{}' takes {n} argument(s)", t[0])))
        }
    };
    let b = match t.first().map(String::as_str) {
        Some("const") => {
            arity(1)?;
            Builtin::Const(scalar(field, &t[1], line)?)
        }
        Some("geometric") => {
            arity(2)?;
            Builtin::Geometric {
                a: int(t.get(1), "exponent", line)?,
                b: int(t.get(2), "offset", line)?,
            }
        }
        Some("hw_le_1") => arity(0).map(|_| Builtin::HwLe1)?,
        Some("hw_eq_1") => arity(0).map(|_| Builtin::HwEq1)?,
        Some("even") => arity(0).map(|_| Builtin::Even)?,
        Some("indicator") => {
            arity(1)?;
            Builtin::Indicator(IndicatorSet::parse(&t[1]).map_err(core(line))?)
        }
        other => return Err(LabError::at(line, format!("unknown builtin '{}'", other.unwrap_or("")))),
    };
    Signature::builtin(name, b, field).map_err(core(line))
}

/// Canonical text of a signature list.
pub fn emit_signatures(sigs: &[Signature]) -> String {
    let mut out = String::new();
    for s in sigs {
        match s.builtin_kind() {
            Some(b) => out.push_str(&format!("signature {} builtin {b}\n", s.name())),
            None => {
                let vals: Vec<String> = s.table().iter().map(|v| v.to_string()).collect();
                let tail = match s.tail() {
                    Tail::Zero => "zero".to_string(),
                    Tail::Undefined => "undef".to_string(),
                    Tail::Geometric(r) => format!("geom {r}"),
                    Tail::Periodic(p) => format!("periodic {p}"),
                };
                let flag = if s.allows_zero_at_0() { " allow_zero" } else { "" };
                out.push_str(&format!(
                    "signature {} table {} tail {tail}{flag}\n",
                    s.name(),
                    vals.join(" ")
                ));
            }
        }
    }
    out
}

/// Vertices, edges and optional colourings as read from a grid or graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGraph {
    pub labels: Vec<String>,
    pub vertex_sig: Vec<Option<String>>,
    pub edges: Vec<(usize, usize)>,
    pub edge_colours: Option<Vec<usize>>,
    pub h_labels: Vec<String>,
    pub h_edges: Vec<(usize, usize)>,
    pub h_map: Option<Vec<usize>>,
}

/// Parses the grid grammar; signature names are optional on `vertex` lines.
pub fn parse_raw_graph(text: &str) -> Result<RawGraph> {
    let mut labels = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut vertex_sig = Vec::new();
    let mut edges = Vec::new();
    let mut colours: Vec<Option<usize>> = Vec::new();
    let mut seen = HashSet::new();
    let mut h_labels: Vec<String> = Vec::new();
    let mut h_index: HashMap<String, usize> = HashMap::new();
    let mut h_edges = Vec::new();
    let mut h_seen = HashSet::new();
    let mut h_of: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut h_id = |name: &str, h_labels: &mut Vec<String>| {
        *h_index.entry(name.to_string()).or_insert_with(|| {
            h_labels.push(name.to_string());
            h_labels.len() - 1
        })
    };
    let lookup = |index: &HashMap<String, usize>, id: &str, line: usize| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| LabError::at(line, format!("vertex '{id}' is not declared")))
    };
    for (line, t) in lines(text) {
        let arg = |i: usize| {
            t.get(i)
                .map(String::as_str)
                .ok_or_else(|| LabError::at(line, format!("'{}' needs more arguments", t[0])))
        };
        match t[0].as_str() {
            "vertex" => {
                if t.len() > 3 {
                    return Err(LabError::at(line, "vertex takes an id and a signature name"));
                }
                let id = arg(1)?;
                if index.contains_key(id) {
                    return Err(LabError::at(line, format!("vertex '{id}' declared twice")));
                }
                index.insert(id.to_string(), labels.len());
                labels.push(id.to_string());
                vertex_sig.push(t.get(2).cloned());
            }
            "edge" => {
                if t.len() > 4 {
                    return Err(LabError::at(line, "edge takes two endpoints and an optional colour"));
                }
                let (u, v) = (lookup(&index, arg(1)?, line)?, lookup(&index, arg(2)?, line)?);
                if u == v {
                    return Err(LabError::at(line, format!("loop at vertex '{}'", labels[u])));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(LabError::at(
                        line,
                        format!("duplicate edge {}-{}", labels[u], labels[v]),
                    ));
                }
                let c = match t.get(3) {
                    None => None,
                    Some(_) => {
                        let c: usize = int(t.get(3), "edge colour", line)?;
                        if c == 0 {
                            return Err(LabError::at(line, "edge colours start at 1"));
                        }
                        Some(c - 1)
                    }
                };
                edges.push((u, v));
                colours.push(c);
            }
            "hcolour" => {
                if t.len() != 3 {
                    return Err(LabError::at(line, "hcolour takes a vertex and a pattern vertex"));
                }
                let v = lookup(&index, arg(1)?, line)?;
                let h = h_id(arg(2)?, &mut h_labels);
                if h_of.insert(v, (h, line)).is_some() {
                    return Err(LabError::at(line, format!("vertex '{}' has two h-colours", labels[v])));
                }
            }
            "hedge" => {
                if t.len() != 3 {
                    return Err(LabError::at(line, "hedge takes two pattern vertices"));
                }
                let (a, b) = (h_id(arg(1)?, &mut h_labels), h_id(arg(2)?, &mut h_labels));
                if a == b {
                    return Err(LabError::at(line, "loop in the pattern graph"));
                }
                if !h_seen.insert((a.min(b), a.max(b))) {
                    return Err(LabError::at(line, "duplicate pattern edge"));
                }
                h_edges.push((a, b));
            }
            other => return Err(LabError::at(line, format!("unknown directive '{other}'"))),
        }
    }
    let coloured = colours.iter().filter(|c| c.is_some()).count();
    let edge_colours = match coloured {
        0 => None,
        n if n == colours.len() => Some(colours.into_iter().flatten().collect()),
        _ => return Err(LabError::at(0, "either every edge or no edge carries a colour")),
    };
    let h_map = if h_of.is_empty() && h_edges.is_empty() {
        None
    } else {
        if let Some(v) = (0..labels.len()).find(|v| !h_of.contains_key(v)) {
            return Err(LabError::at(0, format!("vertex '{}' has no h-colour", labels[v])));
        }
        if edge_colours.is_some() {
            return Err(LabError::at(
                0,
                "an h-coloured grid takes its edge colours from the pattern",
            ));
        }
        Some((0..labels.len()).map(|v| h_of[&v].0).collect())
    };
    Ok(RawGraph {
        labels,
        vertex_sig,
        edges,
        edge_colours,
        h_labels,
        h_edges,
        h_map,
    })
}

impl RawGraph {
    pub fn graph(&self) -> Result<Graph> {
        Ok(Graph::new(self.labels.len(), &self.edges)?)
    }

    /// Number of colours: the largest colour used.
    pub fn colour_count(&self) -> Option<usize> {
        self.edge_colours
            .as_ref()
            .map(|c| c.iter().map(|&x| x + 1).max().unwrap_or(0))
    }
}

/// Parses a grid file against a signature list.
pub fn parse_grid(text: &str, sigs: &[Signature]) -> Result<SignatureGrid> {
    let raw = parse_raw_graph(text)?;
    let mut assignment = Vec::with_capacity(raw.labels.len());
    for (v, name) in raw.vertex_sig.iter().enumerate() {
        let name = name
            .as_ref()
            .ok_or_else(|| LabError::at(0, format!("vertex '{}' has no signature", raw.labels[v])))?;
        let i = sigs
            .iter()
            .position(|s| s.name() == name)
            .ok_or_else(|| LabError::at(0, format!("unknown signature '{name}'")))?;
        assignment.push(i);
    }
    build_grid(&raw, sigs.to_vec(), assignment)
}

/// Grid from a raw graph with an explicit assignment.
pub fn build_grid(raw: &RawGraph, sigs: Vec<Signature>, assignment: Vec<usize>) -> Result<SignatureGrid> {
    let mut grid = SignatureGrid::new(raw.graph()?, sigs, assignment)?.with_labels(raw.labels.clone())?;
    if let Some(c) = &raw.edge_colours {
        grid = grid.with_edge_colouring(c.clone(), raw.colour_count().unwrap_or(0))?;
    }
    if let Some(map) = &raw.h_map {
        let h = Graph::new(raw.h_labels.len(), &raw.h_edges)?;
        grid = grid.with_h_colouring(h, map.clone())?;
    }
    Ok(grid)
}

/// Canonical text of a grid; vertex ids are the grid labels.
pub fn emit_grid(grid: &SignatureGrid, h_labels: Option<&[String]>) -> String {
    let labels = grid.labels();
    let mut out = String::new();
    for (v, label) in labels.iter().enumerate() {
        out.push_str(&format!("vertex {} {}\n", label, grid.signature_of(v).name()));
    }
    let hc = grid.h_colouring();
    for (e, &(u, v)) in grid.graph().edges().iter().enumerate() {
        match grid.edge_colouring() {
            Some(c) if hc.is_none() => {
                out.push_str(&format!("edge {} {} {}\n", labels[u], labels[v], c.colours[e] + 1))
            }
            _ => out.push_str(&format!("edge {} {}\n", labels[u], labels[v])),
        }
    }
    if let Some(hc) = hc {
        let names: Vec<String> = match h_labels {
            Some(l) => l.to_vec(),
            None => (1..=hc.pattern.n()).map(|i| format!("h{i}")).collect(),
        };
        for (v, &h) in hc.map.iter().enumerate() {
            out.push_str(&format!("hcolour {} {}\n", labels[v], names[h]));
        }
        for &(a, b) in hc.pattern.edges() {
            out.push_str(&format!("hedge {} {}\n", names[a], names[b]));
        }
    }
    out
}

/// Dense 0/1 matrix, one row per line.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<bool>>> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (line, t) in lines(text) {
        let row = t
            .concat()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(LabError::at(
                    line,
                    format!("matrix entries must be 0 or 1, found '{c}'"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(LabError::at(line, "rows have different lengths"));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(LabError::at(0, "empty matrix"));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIGS: &str = "signature s table 1 1 tail zero\nsignature e builtin even\n";

    #[test]
    fn triangle() {
        let sigs = parse_signatures(SIGS, Field::Rational).unwrap();
        let g = parse_grid(
            "vertex a s\nvertex b s\nvertex c e\nedge a b\nedge b c\nedge a c\n",
            &sigs,
        )
        .unwrap();
        assert_eq!((g.graph().n(), g.graph().m()), (3, 3));
    }

    #[test]
    fn rejects_loops_and_bad_h_colourings() {
        let e = parse_raw_graph("vertex 1\nedge 1 1\n").unwrap_err();
        assert!(matches!(e, LabError::Parse { line: 2, .. }), "{e}");
        let sigs = parse_signatures(SIGS, Field::Rational).unwrap();
        let bad = "vertex a s\nvertex b s\nedge a b\nhcolour a x\nhcolour b x\nhedge x y\n";
        assert!(parse_grid(bad, &sigs).is_err());
        assert!(parse_signatures("signature z table 0 1 tail zero\n", Field::Rational).is_err());
        assert!(parse_signatures("signature z table 0 1 tail zero allow_zero\n", Field::Rational).is_ok());
    }

    #[test]
    fn gaussian_scalars_with_split_unit() {
        let s = parse_signatures("signature g table 1 1/2+3 i tail zero\n", Field::Gaussian).unwrap();
        assert_eq!(emit_signatures(&s), "signature g table 1 1/2+3i tail zero\n");
    }
}
