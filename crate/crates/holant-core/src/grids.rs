//! Graphs, signature grids, quotients, fractures, canonical forms and pattern enumeration.

use crate::error::{limit, Error, Result};
use crate::partitions::{for_each_rgs, mobius, SetPartition};
use crate::scalar::Field;
use crate::signatures::Signature;
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

/// Largest degree for which fractures are enumerated.
pub const FRACTURE_DEGREE_LIMIT: usize = 8;
/// Largest number of fractures materialised at once.
pub const FRACTURE_COUNT_LIMIT: usize = 1_000_000;
/// Largest pattern handled by canonical forms and automorphism counts.
pub const CANONICAL_LIMIT: usize = 10;
/// Largest edge count for pattern enumeration.
pub const PATTERN_EDGE_LIMIT: usize = 5;
/// Largest graph accepted by the exact treewidth routine.
pub const TREEWIDTH_LIMIT: usize = 12;

/// A simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a simple graph; loops and repeated edges are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        let mut norm = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge {u}-{v} out of range")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            adj[u].push((v, i));
            adj[v].push((u, i));
            norm.push((u.min(v), u.max(v)));
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Invalid(format!("repeated edge at vertex {v}")));
            }
        }
        Ok(Graph { n, edges: norm, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, indexed by insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbour, edge index)` pairs sorted by neighbour; this order defines `E(v)` positions.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let list = &self.adj[u];
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for w in self.neighbours(comp[i]).collect::<Vec<_>>() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n
    }

    /// Subgraph induced by `vertices` (in the given order) and the old→new index map.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = Some(i);
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)))
            .collect();
        (
            Graph::new(vertices.len(), &edges).expect("induced subgraph is simple"),
            map,
        )
    }

    /// Disjoint union; vertices of `o` are shifted by `self.n()`.
    pub fn disjoint_union(&self, o: &Graph) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend(o.edges.iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Graph::new(self.n + o.n, &edges).expect("union of simple graphs is simple")
    }
}

/// Edge colouring with colours `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring {
    pub colours: Vec<usize>,
    pub k: usize,
}

/// A homomorphism from the host into a pattern graph `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HColouring {
    pub pattern: Graph,
    pub map: Vec<usize>,
}

/// A graph with a signature at every vertex and optional colourings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureGrid {
    graph: Graph,
    signatures: Vec<Signature>,
    assignment: Vec<usize>,
    edge_colouring: Option<EdgeColouring>,
    h_colouring: Option<HColouring>,
    labels: Vec<String>,
}

impl SignatureGrid {
    /// `assignment[v]` indexes into `signatures`; all signatures must share a field.
    pub fn new(graph: Graph, signatures: Vec<Signature>, assignment: Vec<usize>) -> Result<SignatureGrid> {
        if assignment.len() != graph.n() {
            return Err(Error::Invalid("assignment length differs from vertex count".into()));
        }
        if let Some(&bad) = assignment.iter().find(|&&a| a >= signatures.len()) {
            return Err(Error::Invalid(format!("signature index {bad} out of range")));
        }
        if let Some(first) = signatures.first() {
            if signatures.iter().any(|s| s.field() != first.field()) {
                return Err(Error::FieldMismatch("grid signatures live in different fields".into()));
            }
        } else if graph.n() > 0 {
            return Err(Error::Invalid("grid without signatures".into()));
        }
        let labels = (1..=graph.n()).map(|i| i.to_string()).collect();
        Ok(SignatureGrid {
            graph,
            signatures,
            assignment,
            edge_colouring: None,
            h_colouring: None,
            labels,
        })
    }

    /// A grid with one signature everywhere.
    pub fn uniform(graph: Graph, s: Signature) -> SignatureGrid {
        let n = graph.n();
        SignatureGrid::new(graph, vec![s], vec![0; n]).expect("uniform grid is valid")
    }

    /// Attaches an edge colouring with colours in `0..k`.
    pub fn with_edge_colouring(mut self, colours: Vec<usize>, k: usize) -> Result<SignatureGrid> {
        if colours.len() != self.graph.m() {
            return Err(Error::Invalid("edge colouring length differs from edge count".into()));
        }
        if let Some(&c) = colours.iter().find(|&&c| c >= k) {
            return Err(Error::Invalid(format!("edge colour {} exceeds k = {k}", c + 1)));
        }
        self.edge_colouring = Some(EdgeColouring { colours, k });
        Ok(self)
    }

    /// Attaches an `H`-colouring; edge colours become the indices of the image edges in `H`.
    pub fn with_h_colouring(mut self, pattern: Graph, map: Vec<usize>) -> Result<SignatureGrid> {
        if map.len() != self.graph.n() {
            return Err(Error::Invalid("h-colouring length differs from vertex count".into()));
        }
        if let Some(&x) = map.iter().find(|&&x| x >= pattern.n()) {
            return Err(Error::Invalid(format!("h-colour {x} is not a pattern vertex")));
        }
        let mut class_sig: Vec<Option<usize>> = vec![None; pattern.n()];
        for v in 0..self.graph.n() {
            let a = self.assignment[v];
            match class_sig[map[v]] {
                None => class_sig[map[v]] = Some(a),
                Some(b) if self.signatures[b] == self.signatures[a] => {}
                Some(_) => {
                    return Err(Error::Invalid(format!(
                        "vertices with h-colour {} carry different signatures",
                        map[v]
                    )))
                }
            }
        }
        let mut colours = Vec::with_capacity(self.graph.m());
        for &(u, v) in self.graph.edges() {
            let e = pattern.edge_index(map[u], map[v]).ok_or_else(|| {
                Error::Invalid(format!(
                    "edge {}-{} maps to a non-edge of H",
                    self.labels[u], self.labels[v]
                ))
            })?;
            colours.push(e);
        }
        self.edge_colouring = Some(EdgeColouring {
            colours,
            k: pattern.m(),
        });
        self.h_colouring = Some(HColouring { pattern, map });
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<SignatureGrid> {
        if labels.len() != self.graph.n() {
            return Err(Error::Invalid("label count differs from vertex count".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn signature_of(&self, v: usize) -> &Signature {
        &self.signatures[self.assignment[v]]
    }

    pub fn edge_colouring(&self) -> Option<&EdgeColouring> {
        self.edge_colouring.as_ref()
    }

    pub fn h_colouring(&self) -> Option<&HColouring> {
        self.h_colouring.as_ref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn field(&self) -> Field {
        self.signatures.first().map_or(Field::Rational, Signature::field)
    }

    /// Number of vertices whose signature vanishes at 0.
    pub fn zero_count(&self) -> usize {
        (0..self.graph.n())
            .filter(|&v| self.signature_of(v).is_zero_at_0())
            .count()
    }

    /// Replaces every signature by `f(signature)`, keeping structure.
    pub fn map_signatures(&self, f: impl Fn(&Signature) -> Result<Signature>) -> Result<SignatureGrid> {
        let signatures = self.signatures.iter().map(f).collect::<Result<Vec<_>>>()?;
        if let Some(first) = signatures.first() {
            if signatures.iter().any(|s| s.field() != first.field()) {
                return Err(Error::FieldMismatch(
                    "mapped signatures live in different fields".into(),
                ));
            }
        }
        Ok(SignatureGrid {
            signatures,
            ..self.clone()
        })
    }

    /// The same grid over another field.
    pub fn to_field(&self, field: Field) -> Result<SignatureGrid> {
        self.map_signatures(|s| s.to_field(field))
    }

    /// Drops unused signatures and merges those equal up to name.
    pub fn compacted(&self) -> SignatureGrid {
        let anon = |s: &Signature| s.clone().with_name("");
        let mut signatures: Vec<Signature> = Vec::new();
        let mut remap = vec![None; self.signatures.len()];
        let assignment = self
            .assignment
            .iter()
            .map(|&a| {
                *remap[a].get_or_insert_with(|| {
                    let key = anon(&self.signatures[a]);
                    match signatures.iter().position(|t| anon(t) == key) {
                        Some(i) => i,
                        None => {
                            signatures.push(self.signatures[a].clone());
                            signatures.len() - 1
                        }
                    }
                })
            })
            .collect();
        SignatureGrid {
            signatures,
            assignment,
            ..self.clone()
        }
    }

    /// Keeps only edges satisfying `keep`; the edge colouring follows, the H-colouring is dropped.
    pub fn restrict_edges(&self, keep: impl Fn(usize) -> bool) -> SignatureGrid {
        let idx: Vec<usize> = (0..self.graph.m()).filter(|&e| keep(e)).collect();
        let edges: Vec<(usize, usize)> = idx.iter().map(|&e| self.graph.edges()[e]).collect();
        let graph = Graph::new(self.graph.n(), &edges).expect("subgraph of a simple graph");
        let edge_colouring = self.edge_colouring.as_ref().map(|c| EdgeColouring {
            colours: idx.iter().map(|&e| c.colours[e]).collect(),
            k: c.k,
        });
        SignatureGrid {
            graph,
            edge_colouring,
            h_colouring: None,
            ..self.clone()
        }
    }
}

/// A vertex-coloured pattern without isolated vertices; colours index a signature list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredPattern {
    graph_edges: Vec<(usize, usize)>,
    colours: Vec<usize>,
}

impl ColouredPattern {
    pub fn new(graph: &Graph, colours: Vec<usize>) -> Result<ColouredPattern> {
        if colours.len() != graph.n() {
            return Err(Error::Invalid("colour count differs from vertex count".into()));
        }
        if (0..graph.n()).any(|v| graph.degree(v) == 0) {
            return Err(Error::Invalid("patterns may not have isolated vertices".into()));
        }
        Ok(ColouredPattern {
            graph_edges: graph.edges().to_vec(),
            colours,
        })
    }

    /// Monochromatic pattern with colour 0.
    pub fn mono(graph: &Graph) -> Result<ColouredPattern> {
        ColouredPattern::new(graph, vec![0; graph.n()])
    }

    pub fn graph(&self) -> Graph {
        Graph::new(self.colours.len(), &self.graph_edges).expect("pattern graph is simple")
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    pub fn m(&self) -> usize {
        self.graph_edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.graph_edges
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    /// `colours|edges` with optional colour names.
    pub fn describe(&self, names: Option<&[String]>) -> String {
        let cols: Vec<String> = self
            .colours
            .iter()
            .map(|&c| names.and_then(|n| n.get(c).cloned()).unwrap_or_else(|| c.to_string()))
            .collect();
        let mut edges = self.graph_edges.clone();
        edges.sort_unstable();
        let es: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}|{}", cols.join(","), es.join(","))
    }
}

impl fmt::Display for ColouredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(None))
    }
}

/// `H/ρ`: the simple quotient graph, per-block loop flags and the vertex→block map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub graph: Graph,
    pub loops: Vec<bool>,
    pub block_of: Vec<usize>,
}

impl Quotient {
    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|&l| l)
    }
}

/// Quotient of `h` by a partition of its vertices.
pub fn quotient(h: &Graph, rho: &SetPartition) -> Result<Quotient> {
    if rho.ground_size() != h.n() {
        return Err(Error::GroundMismatch(rho.ground_size(), h.n()));
    }
    let k = rho.len();
    let mut loops = vec![false; k];
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for &(u, v) in h.edges() {
        let (a, b) = (rho.block_of(u), rho.block_of(v));
        if a == b {
            loops[a] = true;
        } else if seen.insert((a.min(b), a.max(b))) {
            edges.push((a.min(b), a.max(b)));
        }
    }
    Ok(Quotient {
        graph: Graph::new(k, &edges)?,
        loops,
        block_of: (0..h.n()).map(|v| rho.block_of(v)).collect(),
    })
}

/// Per-vertex partitions of incident-edge positions (see [`Graph::incident`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fracture {
    parts: Vec<SetPartition>,
}

impl Fracture {
    pub fn new(h: &Graph, parts: Vec<SetPartition>) -> Result<Fracture> {
        if parts.len() != h.n() {
            return Err(Error::Invalid("fracture needs one partition per vertex".into()));
        }
        for (v, p) in parts.iter().enumerate() {
            if p.ground_size() != h.degree(v) {
                return Err(Error::GroundMismatch(p.ground_size(), h.degree(v)));
            }
        }
        Ok(Fracture { parts })
    }

    /// `⊤⃗`: every vertex keeps all incident edges together.
    pub fn top(h: &Graph) -> Fracture {
        Fracture {
            parts: (0..h.n()).map(|v| SetPartition::coarsest(h.degree(v))).collect(),
        }
    }

    /// `⊥⃗`: every incident edge in its own block.
    pub fn bottom(h: &Graph) -> Fracture {
        Fracture {
            parts: (0..h.n()).map(|v| SetPartition::finest(h.degree(v))).collect(),
        }
    }

    pub fn part(&self, v: usize) -> &SetPartition {
        &self.parts[v]
    }

    pub fn parts(&self) -> &[SetPartition] {
        &self.parts
    }
}

/// All fractures of `h`; the count is `∏_v Bell(deg v)`.
pub fn enumerate_fractures(h: &Graph) -> Result<Vec<Fracture>> {
    limit("fracture vertex degree", h.max_degree(), FRACTURE_DEGREE_LIMIT)?;
    let per_vertex: Vec<Vec<SetPartition>> = (0..h.n())
        .map(|v| {
            let mut out = Vec::new();
            for_each_rgs(h.degree(v), |a| {
                out.push(SetPartition::from_owner(
                    &a.iter().map(|&x| x as usize).collect::<Vec<_>>(),
                ))
            });
            out
        })
        .collect();
    let total = per_vertex
        .iter()
        .try_fold(1usize, |acc, p| acc.checked_mul(p.len()))
        .unwrap_or(usize::MAX);
    limit("fracture count", total, FRACTURE_COUNT_LIMIT)?;
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; h.n()];
    loop {
        out.push(Fracture {
            parts: idx.iter().enumerate().map(|(v, &i)| per_vertex[v][i].clone()).collect(),
        });
        let mut v = 0;
        loop {
            if v == idx.len() {
                return Ok(out);
            }
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// `H†ρ⃗` and its canonical colouring `v^B ↦ v`.
pub fn fractured_graph(h: &Graph, rho: &Fracture) -> Result<(Graph, Vec<usize>)> {
    if rho.parts.len() != h.n() {
        return Err(Error::Invalid("fracture does not match the graph".into()));
    }
    let mut first = Vec::with_capacity(h.n());
    let mut colouring = Vec::new();
    for v in 0..h.n() {
        if rho.parts[v].ground_size() != h.degree(v) {
            return Err(Error::GroundMismatch(rho.parts[v].ground_size(), h.degree(v)));
        }
        first.push(colouring.len());
        colouring.extend(std::iter::repeat_n(v, rho.parts[v].len()));
    }
    let copy = |v: usize, e: usize| {
        let pos = h.incident(v).iter().position(|&(_, f)| f == e).expect("incident edge");
        first[v] + rho.parts[v].block_of(pos)
    };
    let edges: Vec<(usize, usize)> = h
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| (copy(u, e), copy(v, e)))
        .collect();
    Ok((Graph::new(colouring.len(), &edges)?, colouring))
}

/// `μ⃗(σ⃗, ρ⃗) = ∏_v μ(σ⃗(v), ρ⃗(v))`.
pub fn fracture_mobius(sigma: &Fracture, rho: &Fracture) -> Result<BigInt> {
    if sigma.parts.len() != rho.parts.len() {
        return Err(Error::GroundMismatch(sigma.parts.len(), rho.parts.len()));
    }
    sigma.parts.iter().zip(&rho.parts).map(|(s, r)| mobius(s, r)).product()
}

type VertexKey = (usize, usize, Vec<(usize, usize)>);

struct Canon {
    n: usize,
    adj: Vec<Vec<bool>>,
    colours: Vec<usize>,
}

impl Canon {
    fn of(p: &ColouredPattern) -> Canon {
        let n = p.n();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in p.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Canon {
            n,
            adj,
            colours: p.colours.clone(),
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    fn key(&self, v: usize) -> VertexKey {
        let mut nb: Vec<(usize, usize)> = (0..self.n)
            .filter(|&w| self.adj[v][w])
            .map(|w| (self.colours[w], self.degree(w)))
            .collect();
        nb.sort_unstable();
        (self.colours[v], self.degree(v), nb)
    }

    fn code(&self, order: &[usize]) -> Vec<bool> {
        let mut out = Vec::with_capacity(order.len() * order.len() / 2);
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                out.push(!self.adj[order[i]][order[j]]);
            }
        }
        out
    }

    /// Minimum-code ordering of one component, permuting only within invariant classes.
    fn best_order(&self, comp: &[usize]) -> Vec<usize> {
        let mut verts = comp.to_vec();
        verts.sort_by_key(|&v| self.key(v));
        let mut bounds = vec![0];
        for i in 1..verts.len() {
            if self.key(verts[i]) != self.key(verts[i - 1]) {
                bounds.push(i);
            }
        }
        bounds.push(verts.len());
        let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
        self.search(&mut verts, &bounds, 0, 0, &mut best);
        best.expect("at least one ordering").1
    }

    fn search(
        &self,
        verts: &mut Vec<usize>,
        bounds: &[usize],
        class: usize,
        pos: usize,
        best: &mut Option<(Vec<bool>, Vec<usize>)>,
    ) {
        if class + 1 == bounds.len() {
            let code = self.code(verts);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, verts.clone()));
            }
            return;
        }
        let end = bounds[class + 1];
        if pos == end {
            self.search(verts, bounds, class + 1, end, best);
            return;
        }
        for i in pos..end {
            verts.swap(pos, i);
            self.search(verts, bounds, class, pos + 1, best);
            verts.swap(pos, i);
        }
    }
}

/// Canonically relabelled copy of `p`; two patterns are colour-isomorphic iff their copies are equal.
pub fn canonical_labelling(p: &ColouredPattern) -> Result<ColouredPattern> {
    limit("canonical form vertex count", p.n(), CANONICAL_LIMIT)?;
    let c = Canon::of(p);
    let g = p.graph();
    let mut comps: Vec<(Vec<usize>, Vec<bool>, Vec<usize>)> = g
        .components()
        .into_iter()
        .map(|comp| {
            let order = c.best_order(&comp);
            let cols = order.iter().map(|&v| c.colours[v]).collect();
            let code = c.code(&order);
            (cols, code, order)
        })
        .collect();
    comps.sort_by(|a, b| (a.2.len(), &a.0, &a.1).cmp(&(b.2.len(), &b.0, &b.1)));
    let mut new_index = vec![0; p.n()];
    let mut colours = Vec::with_capacity(p.n());
    for (_, _, order) in &comps {
        for &v in order {
            new_index[v] = colours.len();
            colours.push(c.colours[v]);
        }
    }
    let mut edges: Vec<(usize, usize)> = p
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (new_index[u], new_index[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    Ok(ColouredPattern {
        graph_edges: edges,
        colours,
    })
}

/// Canonical label string of a coloured pattern.
pub fn canonical_form(p: &ColouredPattern) -> Result<String> {
    Ok(canonical_labelling(p)?.to_string())
}

/// Number of colour-preserving automorphisms.
pub fn aut_count_pattern(p: &ColouredPattern) -> Result<u64> {
    limit("automorphism vertex count", p.n(), CANONICAL_LIMIT)?;
    let c = Canon::of(p);
    let keys: Vec<_> = (0..c.n).map(|v| c.key(v)).collect();
    fn go(c: &Canon, keys: &[VertexKey], v: usize, map: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        if v == c.n {
            return 1;
        }
        let mut total = 0;
        for t in 0..c.n {
            if used[t] || keys[t] != keys[v] {
                continue;
            }
            if (0..v).any(|u| c.adj[u][v] != c.adj[map[u]][t]) {
                continue;
            }
            used[t] = true;
            map.push(t);
            total += go(c, keys, v + 1, map, used);
            map.pop();
            used[t] = false;
        }
        total
    }
    Ok(go(&c, &keys, 0, &mut Vec::new(), &mut vec![false; c.n]))
}

/// One representative per colour-isomorphism class of patterns with exactly `k` edges.
pub fn enumerate_patterns(num_colours: usize, k: usize) -> Result<Vec<ColouredPattern>> {
    enumerate_patterns_where(num_colours, k, |_, _| true)
}

/// As [`enumerate_patterns`], keeping only patterns whose every edge joins colours `a ≤ b` with `allowed(a, b)`.
pub fn enumerate_patterns_where(
    num_colours: usize,
    k: usize,
    allowed: impl Fn(usize, usize) -> bool,
) -> Result<Vec<ColouredPattern>> {
    limit("pattern edge count", k, PATTERN_EDGE_LIMIT)?;
    let ok = |a: usize, b: usize| allowed(a.min(b), a.max(b));
    let mut level: BTreeMap<String, ColouredPattern> = BTreeMap::new();
    level.insert(
        String::new(),
        ColouredPattern {
            graph_edges: vec![],
            colours: vec![],
        },
    );
    for _ in 0..k {
        let mut next = BTreeMap::new();
        for p in level.values() {
            let n = p.n();
            let g = p.graph();
            let mut push = |colours: Vec<usize>, e: (usize, usize)| {
                if !ok(colours[e.0], colours[e.1]) {
                    return;
                }
                let mut edges = p.graph_edges.clone();
                edges.push(e);
                let cand = ColouredPattern {
                    graph_edges: edges,
                    colours,
                };
                let canon = canonical_labelling(&cand).expect("within limits");
                next.entry(canon.to_string()).or_insert(canon);
            };
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        push(p.colours.clone(), (u, v));
                    }
                }
                for c in 0..num_colours {
                    let mut cols = p.colours.clone();
                    cols.push(c);
                    push(cols, (u, n));
                }
            }
            for a in 0..num_colours {
                for b in a..num_colours {
                    let mut cols = p.colours.clone();
                    cols.extend([a, b]);
                    push(cols, (n, n + 1));
                }
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Patterns with between 1 and `k` edges.
pub fn enumerate_patterns_up_to(num_colours: usize, k: usize) -> Result<Vec<ColouredPattern>> {
    enumerate_patterns_up_to_where(num_colours, k, |_, _| true)
}

/// Patterns with between 1 and `k` edges satisfying the colour-pair filter.
pub fn enumerate_patterns_up_to_where(
    num_colours: usize,
    k: usize,
    allowed: impl Fn(usize, usize) -> bool + Copy,
) -> Result<Vec<ColouredPattern>> {
    let mut out = Vec::new();
    for j in 1..=k {
        out.extend(enumerate_patterns_where(num_colours, j, allowed)?);
    }
    Ok(out)
}

/// Exact treewidth by dynamic programming over vertex subsets.
pub fn treewidth_exact(g: &Graph) -> Result<usize> {
    let n = g.n();
    limit("treewidth vertex count", n, TREEWIDTH_LIMIT)?;
    if n == 0 {
        return Ok(0);
    }
    let nb: Vec<u32> = (0..n).map(|v| g.neighbours(v).fold(0u32, |m, w| m | 1 << w)).collect();
    // vertices outside s ∪ {v} reachable from v through s
    let q = |s: u32, v: usize| -> usize {
        let mut reach = 0u32;
        let mut inside = 1u32 << v;
        let mut frontier = 1u32 << v;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= nb[x];
            }
            reach |= next & !s & !(1 << v);
            let grow = next & s & !inside;
            inside |= grow;
            frontier = grow;
        }
        reach.count_ones() as usize
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![usize::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = usize::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            best = best.min(tw[without as usize].max(q(without, v)));
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize])
}
