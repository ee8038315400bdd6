//! Homomorphism counting with lists and colours: brute force, tree DP and the treewidth-2 matrix DP.

use crate::error::{limit, Error, Result};
use crate::exec;
use crate::grids::{ColouredPattern, Graph, SignatureGrid};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Largest pattern accepted by the brute-force counter.
pub const BRUTE_PATTERN_LIMIT: usize = 8;

/// Allowed host vertices for each pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListConstraint {
    lists: Vec<Vec<usize>>,
}

impl ListConstraint {
    pub fn new(lists: Vec<Vec<usize>>) -> ListConstraint {
        ListConstraint { lists }
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }
}

/// A counting problem: pattern, host, per-vertex domains and optional edge colours.
#[derive(Clone, Debug)]
pub struct HomQuery<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    allowed: Vec<Vec<bool>>,
    edge_colours: Option<(Vec<usize>, Vec<usize>)>,
}

/// Which counting algorithm to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Tree,
    Tw2,
    Auto,
}

impl<'a> HomQuery<'a> {
    pub fn new(pattern: &'a Graph, host: &'a Graph) -> HomQuery<'a> {
        HomQuery {
            pattern,
            host,
            allowed: vec![vec![true; host.n()]; pattern.n()],
            edge_colours: None,
        }
    }

    /// Restricts pattern vertex `p` to `lists[p]`.
    pub fn with_lists(mut self, l: &ListConstraint) -> Result<HomQuery<'a>> {
        if l.lists.len() != self.pattern.n() {
            return Err(Error::Invalid("one list per pattern vertex is required".into()));
        }
        for (p, list) in l.lists.iter().enumerate() {
            let mut mask = vec![false; self.host.n()];
            for &v in list {
                if v >= self.host.n() {
                    return Err(Error::Invalid(format!("list entry {v} is not a host vertex")));
                }
                mask[v] = true;
            }
            for (a, m) in self.allowed[p].iter_mut().zip(mask) {
                *a &= m;
            }
        }
        Ok(self)
    }

    /// Requires `host_class[φ(p)] == pattern_class[p]`.
    pub fn with_vertex_classes(mut self, pattern_class: &[usize], host_class: &[usize]) -> Result<HomQuery<'a>> {
        if pattern_class.len() != self.pattern.n() || host_class.len() != self.host.n() {
            return Err(Error::Invalid("vertex class vector has the wrong length".into()));
        }
        for (p, row) in self.allowed.iter_mut().enumerate() {
            for (v, a) in row.iter_mut().enumerate() {
                *a &= host_class[v] == pattern_class[p];
            }
        }
        Ok(self)
    }

    /// Requires every pattern edge to map onto a host edge of the same colour.
    pub fn with_edge_colours(mut self, pattern_colours: Vec<usize>, host_colours: Vec<usize>) -> Result<HomQuery<'a>> {
        if pattern_colours.len() != self.pattern.m() || host_colours.len() != self.host.m() {
            return Err(Error::Invalid("edge colour vector has the wrong length".into()));
        }
        self.edge_colours = Some((pattern_colours, host_colours));
        Ok(self)
    }

    pub fn pattern(&self) -> &Graph {
        self.pattern
    }

    pub fn host(&self) -> &Graph {
        self.host
    }

    fn edge_ok(&self, pe: usize, a: usize, b: usize) -> bool {
        match self.host.edge_index(a, b) {
            None => false,
            Some(he) => self.edge_colours.as_ref().is_none_or(|(pc, hc)| pc[pe] == hc[he]),
        }
    }

    fn edge_colour_ok(&self, pe: usize, he: usize) -> bool {
        self.edge_colours.as_ref().is_none_or(|(pc, hc)| pc[pe] == hc[he])
    }

    /// Counts with the chosen method, componentwise over the pattern.
    pub fn count(&self, method: Method) -> Result<BigInt> {
        let comps = self.pattern.components();
        if method == Method::Tree && !self.pattern.is_forest() {
            return Err(Error::WrongAlgorithm("tree DP needs an acyclic pattern".into()));
        }
        let mut total = BigInt::one();
        for comp in &comps {
            let c = self.count_component(comp, method)?;
            if c.is_zero() && method != Method::Tw2 {
                return Ok(c);
            }
            total *= c;
        }
        Ok(total)
    }

    pub fn brute(&self) -> Result<BigInt> {
        self.count(Method::Brute)
    }

    pub fn tree(&self) -> Result<BigInt> {
        self.count(Method::Tree)
    }

    pub fn tw2(&self) -> Result<BigInt> {
        self.count(Method::Tw2)
    }

    pub fn auto(&self) -> Result<BigInt> {
        self.count(Method::Auto)
    }

    fn count_component(&self, comp: &[usize], method: Method) -> Result<BigInt> {
        let sub = Component::new(self, comp);
        if comp.len() == 1 {
            return Ok(BigInt::from(self.allowed[comp[0]].iter().filter(|&&a| a).count()));
        }
        let is_tree = sub.graph.m() + 1 == sub.graph.n();
        match method {
            Method::Brute => sub.brute(),
            Method::Tree if !is_tree => Err(Error::WrongAlgorithm("tree DP needs an acyclic pattern".into())),
            Method::Tree => Ok(sub.run(|s| s.tree::<Small>(), |s| s.tree::<BigInt>())),
            Method::Tw2 => {
                let td = tw2_decomposition(&sub.graph)?;
                Ok(sub.run(|s| s.tw2::<Small>(&td), |s| s.tw2::<BigInt>(&td)))
            }
            Method::Auto => {
                if is_tree {
                    return Ok(sub.run(|s| s.tree::<Small>(), |s| s.tree::<BigInt>()));
                }
                match tw2_decomposition(&sub.graph) {
                    Ok(td) => Ok(sub.run(|s| s.tw2::<Small>(&td), |s| s.tw2::<BigInt>(&td))),
                    Err(Error::TreewidthExceeded) => sub.brute(),
                    Err(e) => Err(e),
                }
            }
        }
    }
}

/// One connected pattern component relabelled to `0..c`.
struct Component<'q, 'a> {
    q: &'q HomQuery<'a>,
    graph: Graph,
    allowed: Vec<&'q [bool]>,
    /// original pattern edge index of each component edge
    edge_map: Vec<usize>,
}

impl<'q, 'a> Component<'q, 'a> {
    fn new(q: &'q HomQuery<'a>, comp: &[usize]) -> Component<'q, 'a> {
        let (graph, _) = q.pattern.induced(comp);
        let edge_map = graph
            .edges()
            .iter()
            .map(|&(u, v)| q.pattern.edge_index(comp[u], comp[v]).expect("induced edge"))
            .collect();
        Component {
            q,
            graph,
            allowed: comp.iter().map(|&p| q.allowed[p].as_slice()).collect(),
            edge_map,
        }
    }

    fn run(&self, small: impl Fn(&Self) -> Small, big: impl Fn(&Self) -> BigInt) -> BigInt {
        match small(self).0 {
            Some(v) => BigInt::from(v),
            None => big(self),
        }
    }

    fn edge_ok(&self, ce: usize, a: usize, b: usize) -> bool {
        self.q.edge_ok(self.edge_map[ce], a, b)
    }

    fn brute(&self) -> Result<BigInt> {
        let c = self.graph.n();
        limit("brute-force pattern size", c, BRUTE_PATTERN_LIMIT)?;
        // BFS order so each later vertex has an earlier neighbour
        let mut order = vec![0usize];
        let mut seen = vec![false; c];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            for w in self.graph.neighbours(order[i]).collect::<Vec<_>>() {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
        let roots: Vec<usize> = (0..self.q.host.n()).filter(|&a| self.allowed[0][a]).collect();
        let counts = exec::map_slice(&roots, |&a| {
            let mut img = vec![usize::MAX; c];
            img[0] = a;
            self.extend(&order, 1, &mut img)
        });
        Ok(counts.into_iter().map(BigInt::from).sum())
    }

    fn extend(&self, order: &[usize], i: usize, img: &mut [usize]) -> u128 {
        if i == order.len() {
            return 1;
        }
        let p = order[i];
        let anchor = self
            .graph
            .incident(p)
            .iter()
            .find(|&&(w, _)| img[w] != usize::MAX)
            .map(|&(w, _)| img[w])
            .expect("BFS order has a placed neighbour");
        let mut total = 0u128;
        for &(a, _) in self.q.host.incident(anchor) {
            if !self.allowed[p][a] {
                continue;
            }
            let ok = self
                .graph
                .incident(p)
                .iter()
                .all(|&(w, ce)| img[w] == usize::MAX || self.edge_ok(ce, a, img[w]));
            if ok {
                img[p] = a;
                total += self.extend(order, i + 1, img);
                img[p] = usize::MAX;
            }
        }
        total
    }

    fn tree<C: Count>(&self) -> C {
        let n = self.q.host.n();
        let c = self.graph.n();
        let mut parent = vec![usize::MAX; c];
        let mut order = vec![0usize];
        let mut seen = vec![false; c];
        seen[0] = true;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for w in self.graph.neighbours(u).collect::<Vec<_>>() {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut tables: Vec<Option<Vec<C>>> = vec![None; c];
        for &u in order.iter().rev() {
            let children: Vec<(usize, usize)> = self
                .graph
                .incident(u)
                .iter()
                .copied()
                .filter(|&(w, _)| parent[w] == u)
                .collect();
            let child_tables: Vec<(Vec<C>, usize)> = children
                .iter()
                .map(|&(w, ce)| (tables[w].take().expect("child done"), self.edge_map[ce]))
                .collect();
            let table = exec::map_range(n, |a| {
                if !self.allowed[u][a] {
                    return C::nought();
                }
                let mut acc = C::unit();
                for (t, pe) in &child_tables {
                    let mut s = C::nought();
                    for &(b, he) in self.q.host.incident(a) {
                        if self.q.edge_colour_ok(*pe, he) {
                            s = s.add(&t[b]);
                        }
                    }
                    acc = acc.mul(&s);
                    if acc.nil() {
                        break;
                    }
                }
                acc
            });
            tables[u] = Some(table);
        }
        tables[0]
            .take()
            .expect("root table")
            .iter()
            .fold(C::nought(), |s, x| s.add(x))
    }

    fn tw2<C: Count>(&self, td: &TreeDecomp) -> C {
        let n = self.q.host.n();
        if self.graph.n() == 2 {
            let mut s = C::nought();
            for a in 0..n {
                if !self.allowed[0][a] {
                    continue;
                }
                for &(b, he) in self.q.host.incident(a) {
                    if self.allowed[1][b] && self.q.edge_colour_ok(self.edge_map[0], he) {
                        s = s.add(&C::unit());
                    }
                }
            }
            return s;
        }
        let mut tables: Vec<Option<Vec<C>>> = vec![None; td.bags.len()];
        for t in td.post_order() {
            if t == 0 {
                continue;
            }
            let [u1, u2, u3] = td.bags[t];
            let mut kids = |a: usize, b: usize| -> Vec<Vec<C>> {
                td.children[t]
                    .iter()
                    .filter(|&&c| td.separator(c) == [a, b])
                    .map(|&c| tables[c].take().expect("child table"))
                    .collect()
            };
            let k12 = kids(u1, u2);
            let k13 = kids(u1, u3);
            let k23 = kids(u2, u3);
            let e13 = self.graph.edge_index(u1, u3).filter(|&e| td.edge_home[e] == t);
            let e23 = self.graph.edge_index(u2, u3).filter(|&e| td.edge_home[e] == t);
            let a13 = self.factor_rows::<C>(u3, e13, &k13);
            let a23 = self.factor_rows::<C>(u3, e23, &k23);
            // columns of a23 grouped by v3
            let mut by_v3: Vec<Vec<(usize, C)>> = vec![Vec::new(); n];
            for (v2, row) in a23.iter().enumerate() {
                for (v3, x) in row {
                    by_v3[*v3].push((v2, x.clone()));
                }
            }
            let rows = exec::map_range(n, |v1| {
                let mut acc = vec![C::nought(); n];
                for (v3, x) in &a13[v1] {
                    for (v2, y) in &by_v3[*v3] {
                        acc[*v2] = acc[*v2].add(&x.mul(y));
                    }
                }
                for tab in &k12 {
                    for (v2, a) in acc.iter_mut().enumerate() {
                        if !a.nil() {
                            *a = a.mul(&tab[v1 * n + v2]);
                        }
                    }
                }
                acc
            });
            tables[t] = Some(rows.into_iter().flatten().collect());
        }
        let [r1, r2, _] = td.bags[0];
        let kids: Vec<Vec<C>> = td.children[0]
            .iter()
            .map(|&c| tables[c].take().expect("root child"))
            .collect();
        let root_edge = self.graph.edge_index(r1, r2);
        let partial = exec::map_range(n, |a| {
            let mut s = C::nought();
            if !self.allowed[r1][a] {
                return s;
            }
            let mut cell = |b: usize| {
                let mut x = C::unit();
                for tab in &kids {
                    x = x.mul(&tab[a * n + b]);
                }
                s = s.add(&x);
            };
            match root_edge {
                Some(e) => {
                    for &(b, he) in self.q.host.incident(a) {
                        if self.allowed[r2][b] && self.q.edge_colour_ok(self.edge_map[e], he) {
                            cell(b);
                        }
                    }
                }
                None => (0..n).filter(|&b| self.allowed[r2][b]).for_each(&mut cell),
            }
            s
        });
        partial.iter().fold(C::nought(), |s, x| s.add(x))
    }

    /// Sparse rows `x ↦ [(v3, A(x, v3))]` for a separator pair `{x, u3}`.
    fn factor_rows<C: Count>(&self, u3: usize, edge: Option<usize>, kids: &[Vec<C>]) -> Vec<Vec<(usize, C)>> {
        let n = self.q.host.n();
        exec::map_range(n, |x| {
            let mut row = Vec::new();
            let mut push = |v3: usize| {
                let mut val = C::unit();
                for tab in kids {
                    val = val.mul(&tab[x * n + v3]);
                }
                if !val.nil() {
                    row.push((v3, val));
                }
            };
            match edge {
                Some(e) => {
                    for &(v3, he) in self.q.host.incident(x) {
                        if self.allowed[u3][v3] && self.q.edge_colour_ok(self.edge_map[e], he) {
                            push(v3);
                        }
                    }
                }
                None => (0..n).filter(|&v3| self.allowed[u3][v3]).for_each(&mut push),
            }
            row
        })
    }
}

/// Exact counting arithmetic used inside the dynamic programmes.
trait Count: Clone + Send + Sync {
    fn nought() -> Self;
    fn unit() -> Self;
    fn nil(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

/// `u128` with sticky overflow; overflow triggers a big-integer rerun.
#[derive(Clone, Copy, Debug)]
struct Small(Option<u128>);

impl Count for Small {
    fn nought() -> Self {
        Small(Some(0))
    }
    fn unit() -> Self {
        Small(Some(1))
    }
    fn nil(&self) -> bool {
        self.0 == Some(0)
    }
    fn add(&self, o: &Self) -> Self {
        Small(self.0.zip(o.0).and_then(|(a, b)| a.checked_add(b)))
    }
    fn mul(&self, o: &Self) -> Self {
        Small(self.0.zip(o.0).and_then(|(a, b)| a.checked_mul(b)))
    }
}

impl Count for BigInt {
    fn nought() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// Tree decomposition in normal form: bag 0 is the root `[r1, r2, r2]` with a unique child,
/// every other bag is `[u1, u2, u3]` with separator `{u1, u2}` and `u1 < u2 < u3` in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomp {
    pub bags: Vec<[usize; 3]>,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// topological vertex numbering
    pub order: Vec<usize>,
    /// topmost bag containing each edge
    pub edge_home: Vec<usize>,
}

impl TreeDecomp {
    pub fn separator(&self, t: usize) -> [usize; 2] {
        [self.bags[t][0], self.bags[t][1]]
    }

    /// Vertex set of bag `t`.
    pub fn bag(&self, t: usize) -> Vec<usize> {
        if t == 0 {
            vec![self.bags[0][0], self.bags[0][1]]
        } else {
            self.bags[t].to_vec()
        }
    }

    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.bags.len());
        let mut stack = vec![(0usize, false)];
        while let Some((t, done)) = stack.pop() {
            if done {
                out.push(t);
            } else {
                stack.push((t, true));
                for &c in &self.children[t] {
                    stack.push((c, false));
                }
            }
        }
        out
    }
}

/// Normal-form decomposition of a connected graph of treewidth at most 2; a single edge is a bare root.
pub fn tw2_decomposition(p: &Graph) -> Result<TreeDecomp> {
    let n = p.n();
    if p.components().len() != 1 {
        return Err(Error::Invalid("tw2 decomposition needs a connected graph".into()));
    }
    if n < 2 {
        return Err(Error::Invalid("tw2 decomposition needs at least 2 vertices".into()));
    }
    if n == 2 {
        return Ok(TreeDecomp {
            bags: vec![[0, 1, 1]],
            parent: vec![None],
            children: vec![Vec::new()],
            order: vec![0, 1],
            edge_home: vec![0],
        });
    }
    let mut nb: Vec<std::collections::BTreeSet<usize>> = (0..n).map(|v| p.neighbours(v).collect()).collect();
    let mut alive = vec![true; n];
    let mut elim: Vec<(usize, Vec<usize>)> = Vec::new();
    while elim.len() + 2 < n {
        let v = (0..n)
            .find(|&v| alive[v] && nb[v].len() <= 2)
            .ok_or(Error::TreewidthExceeded)?;
        let ns: Vec<usize> = nb[v].iter().copied().collect();
        for &w in &ns {
            nb[w].remove(&v);
        }
        if let [a, b] = ns[..] {
            nb[a].insert(b);
            nb[b].insert(a);
        }
        alive[v] = false;
        elim.push((v, ns));
    }
    let roots: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let (r1, r2) = (roots[0], roots[1]);
    let mut step = vec![usize::MAX; n];
    for (i, (v, _)) in elim.iter().enumerate() {
        step[*v] = i;
    }
    // bag index: root 0, then bag of elim[i] is i + 1
    let m = elim.len() + 1;
    let mut members: Vec<Vec<usize>> = vec![vec![r1, r2]];
    let mut parent = vec![None; m];
    for (i, (v, ns)) in elim.iter().enumerate() {
        let earliest = ns
            .iter()
            .copied()
            .filter(|&w| step[w] != usize::MAX)
            .min_by_key(|&w| step[w]);
        let par = earliest.map_or(0, |w| step[w] + 1);
        let mut bag = vec![*v];
        bag.extend(ns.iter().copied());
        if ns.len() == 1 {
            let pbag: Vec<usize> = if par == 0 {
                vec![r1, r2]
            } else {
                let (pv, pns) = &elim[par - 1];
                std::iter::once(*pv).chain(pns.iter().copied()).collect()
            };
            let pad = pbag
                .into_iter()
                .find(|&x| x != ns[0])
                .expect("parent bag has two vertices");
            bag.push(pad);
        }
        if ns.is_empty() {
            return Err(Error::Invalid("graph is not connected".into()));
        }
        members.push(bag);
        parent[i + 1] = Some(par);
    }
    let mut children = vec![Vec::new(); m];
    for t in 1..m {
        children[parent[t].unwrap()].push(t);
    }
    // the root keeps a unique child
    if children[0].len() > 1 {
        let first = children[0][0];
        let extra: Vec<usize> = children[0].drain(1..).collect();
        for t in extra {
            parent[t] = Some(first);
            children[first].push(t);
        }
    }
    // topological numbering
    let mut order = vec![usize::MAX; n];
    order[r1] = 0;
    order[r2] = 1;
    let mut next = 2;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        if t > 0 {
            let v = elim[t - 1].0;
            order[v] = next;
            next += 1;
        }
        queue.extend(children[t].iter().copied());
    }
    let mut bags = vec![[r1, r2, r2]; m];
    for t in 1..m {
        let v = elim[t - 1].0;
        let mut sep: Vec<usize> = members[t].iter().copied().filter(|&x| x != v).collect();
        sep.sort_by_key(|&x| order[x]);
        bags[t] = [sep[0], sep[1], v];
    }
    let edge_home = p
        .edges()
        .iter()
        .map(|&(a, b)| {
            let later = if order[a] > order[b] { a } else { b };
            if order[later] < 2 {
                0
            } else {
                step[later] + 1
            }
        })
        .collect();
    Ok(TreeDecomp {
        bags,
        parent,
        children,
        order,
        edge_home,
    })
}

/// Checks the tree-decomposition axioms and the normal-form shape.
pub fn validate_decomposition(p: &Graph, td: &TreeDecomp) -> Result<()> {
    let m = td.bags.len();
    let bad = |msg: &str| Err(Error::Invalid(format!("invalid decomposition: {msg}")));
    if td.parent[0].is_some() || td.children[0].len() > 1 {
        return bad("root must have no parent and at most one child");
    }
    let mut reached = vec![false; m];
    for t in td.post_order() {
        reached[t] = true;
    }
    if reached.iter().any(|&r| !r) {
        return bad("bags are not connected to the root");
    }
    for t in 1..m {
        let Some(par) = td.parent[t] else {
            return bad("non-root bag without parent");
        };
        let b = td.bag(t);
        if b.iter().collect::<std::collections::HashSet<_>>().len() != 3 {
            return bad("non-root bag must have three distinct vertices");
        }
        let pb = td.bag(par);
        let sep: Vec<usize> = b.iter().copied().filter(|x| pb.contains(x)).collect();
        let mut want = td.separator(t).to_vec();
        let mut got = sep.clone();
        want.sort_unstable();
        got.sort_unstable();
        if got != want {
            return bad("separator differs from the first two bag vertices");
        }
        let [u1, u2, u3] = td.bags[t];
        if !(td.order[u1] < td.order[u2] && td.order[u2] < td.order[u3]) {
            return bad("bag vertices not in topological order");
        }
    }
    if td.bags[0][0] == td.bags[0][1] {
        return bad("root bag must have two vertices");
    }
    for v in 0..p.n() {
        let occ: Vec<usize> = (0..m).filter(|&t| td.bag(t).contains(&v)).collect();
        if occ.is_empty() {
            return bad("vertex not covered");
        }
        let tops = occ
            .iter()
            .filter(|&&t| td.parent[t].is_none_or(|par| !td.bag(par).contains(&v)))
            .count();
        if tops != 1 {
            return bad("occurrence set is not connected");
        }
    }
    for (e, &(a, b)) in p.edges().iter().enumerate() {
        let h = td.edge_home[e];
        if !(td.bag(h).contains(&a) && td.bag(h).contains(&b)) {
            return bad("edge not covered by its home bag");
        }
        if let Some(par) = td.parent[h] {
            let pb = td.bag(par);
            if pb.contains(&a) && pb.contains(&b) {
                return bad("edge home is not the topmost bag");
            }
        }
    }
    Ok(())
}

/// Colour-preserving query: pattern colour `c` may only land on vertices whose signature index is `c`.
pub fn coloured_query<'a>(p: &'a Graph, colours: &[usize], grid: &'a SignatureGrid) -> Result<HomQuery<'a>> {
    HomQuery::new(p, grid.graph()).with_vertex_classes(colours, grid.assignment())
}

fn apply_lists<'a>(q: HomQuery<'a>, l: Option<&ListConstraint>) -> Result<HomQuery<'a>> {
    match l {
        Some(l) => q.with_lists(l),
        None => Ok(q),
    }
}

/// Brute-force colour-preserving homomorphism count; `edge_colours` are pattern edge colours
/// matched against the grid's edge colouring.
pub fn count_homs_brute(
    p: &ColouredPattern,
    grid: &SignatureGrid,
    lists: Option<&ListConstraint>,
    edge_colours: Option<Vec<usize>>,
) -> Result<BigInt> {
    let g = p.graph();
    let mut q = apply_lists(coloured_query(&g, p.colours(), grid)?, lists)?;
    if let Some(pc) = edge_colours {
        let hc = grid
            .edge_colouring()
            .ok_or_else(|| Error::Invalid("grid has no edge colouring".into()))?;
        q = q.with_edge_colours(pc, hc.colours.clone())?;
    }
    q.brute()
}

/// Tree DP; the pattern must be a forest.
pub fn count_homs_tree(p: &ColouredPattern, grid: &SignatureGrid, lists: Option<&ListConstraint>) -> Result<BigInt> {
    let g = p.graph();
    apply_lists(coloured_query(&g, p.colours(), grid)?, lists)?.tree()
}

/// Treewidth-2 matrix DP.
pub fn count_homs_tw2(p: &ColouredPattern, grid: &SignatureGrid, lists: Option<&ListConstraint>) -> Result<BigInt> {
    let g = p.graph();
    apply_lists(coloured_query(&g, p.colours(), grid)?, lists)?.tw2()
}

/// Automatic dispatch: tree DP, then tw2 DP, then brute force.
pub fn count_homs(p: &ColouredPattern, grid: &SignatureGrid, lists: Option<&ListConstraint>) -> Result<BigInt> {
    let g = p.graph();
    apply_lists(coloured_query(&g, p.colours(), grid)?, lists)?.auto()
}

/// `#Hom_cp(H†ρ⃗ → (G, h))` via lists `L(v^B) = h⁻¹(v)`.
pub fn count_cp_homs(h: &Graph, rho: &crate::grids::Fracture, grid: &SignatureGrid) -> Result<BigInt> {
    let hc = grid
        .h_colouring()
        .ok_or_else(|| Error::Invalid("grid has no h-colouring".into()))?;
    if hc.pattern != *h {
        return Err(Error::Invalid("h-colouring targets a different pattern".into()));
    }
    let (f, col) = crate::grids::fractured_graph(h, rho)?;
    let classes: Vec<usize> = hc.map.clone();
    HomQuery::new(&f, grid.graph())
        .with_vertex_classes(&col, &classes)?
        .auto()
}

/// Extensions of a partial map `phi` (pairs `(pattern vertex, host vertex)`) to colour-preserving homomorphisms.
pub fn count_partial_extensions(p: &ColouredPattern, grid: &SignatureGrid, phi: &[(usize, usize)]) -> Result<BigInt> {
    let g = p.graph();
    let host = grid.graph();
    let mut fixed = vec![None; g.n()];
    for &(x, a) in phi {
        if x >= g.n() || a >= host.n() {
            return Err(Error::Invalid(format!("partial map entry {x}->{a} out of range")));
        }
        if fixed[x].replace(a).is_some() {
            return Err(Error::Invalid(format!("pattern vertex {x} fixed twice")));
        }
        if grid.assignment()[a] != p.colours()[x] {
            return Ok(BigInt::zero());
        }
    }
    for &(u, v) in g.edges() {
        if let (Some(a), Some(b)) = (fixed[u], fixed[v]) {
            if !host.has_edge(a, b) {
                return Ok(BigInt::zero());
            }
        }
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| fixed[v].is_none()).collect();
    if rest.is_empty() {
        return Ok(BigInt::one());
    }
    let lists: Vec<Vec<usize>> = rest
        .iter()
        .map(|&v| {
            let mut ok: Vec<bool> = (0..host.n()).map(|a| grid.assignment()[a] == p.colours()[v]).collect();
            for w in g.neighbours(v) {
                if let Some(b) = fixed[w] {
                    let mut mask = vec![false; host.n()];
                    for a in host.neighbours(b) {
                        mask[a] = true;
                    }
                    for (o, m) in ok.iter_mut().zip(mask) {
                        *o &= m;
                    }
                }
            }
            (0..host.n()).filter(|&a| ok[a]).collect()
        })
        .collect();
    let (sub, _) = g.induced(&rest);
    HomQuery::new(&sub, host)
        .with_lists(&ListConstraint::new(lists))?
        .auto()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::Fracture;
    use crate::scalar::Field;
    use crate::signatures::Signature;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::new(n, e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let e: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        g(n, &e)
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n, &e)
    }

    fn mono(h: &Graph) -> SignatureGrid {
        SignatureGrid::uniform(h.clone(), Signature::even(Field::Rational))
    }

    fn all_methods(p: &Graph, host: &Graph) -> Vec<Result<BigInt>> {
        let q = HomQuery::new(p, host);
        vec![q.brute(), q.tree(), q.tw2(), q.auto()]
    }

    #[test]
    fn brute_examples() {
        let k2 = ColouredPattern::mono(&g(2, &[(0, 1)])).unwrap();
        let host = cycle(5);
        assert_eq!(
            count_homs_brute(&k2, &mono(&host), None, None).unwrap(),
            BigInt::from(10)
        );
        let k3 = ColouredPattern::mono(&complete(3)).unwrap();
        assert_eq!(
            count_homs_brute(&k3, &mono(&complete(4)), None, None).unwrap(),
            BigInt::from(24)
        );
        let other = ColouredPattern::new(&complete(3), vec![1, 1, 1]).unwrap();
        assert_eq!(
            count_homs_brute(&other, &mono(&complete(4)), None, None).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn tree_examples() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(HomQuery::new(&p3, &star).tree().unwrap(), BigInt::from(12));
        let lists = ListConstraint::new(vec![(0..4).collect(), vec![0], (0..4).collect()]);
        let q = HomQuery::new(&p3, &star).with_lists(&lists).unwrap();
        assert_eq!(q.tree().unwrap(), BigInt::from(9));
        assert!(matches!(
            HomQuery::new(&complete(3), &star).tree(),
            Err(Error::WrongAlgorithm(_))
        ));
    }

    #[test]
    fn tw2_examples() {
        let k3 = complete(3);
        for r in all_methods(&k3, &complete(4)).into_iter().skip(2) {
            assert_eq!(r.unwrap(), BigInt::from(24));
        }
        assert_eq!(HomQuery::new(&k3, &cycle(6)).tw2().unwrap(), BigInt::zero());
        assert_eq!(HomQuery::new(&cycle(4), &complete(3)).tw2().unwrap(), BigInt::from(18));
        assert_eq!(
            HomQuery::new(&cycle(4), &complete(3)).brute().unwrap(),
            BigInt::from(18)
        );
        assert!(matches!(tw2_decomposition(&complete(4)), Err(Error::TreewidthExceeded)));
    }

    #[test]
    fn decompositions_validate() {
        let graphs = vec![
            complete(3),
            cycle(4),
            cycle(7),
            g(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            g(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]),
            g(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]),
            g(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        ];
        for p in graphs {
            let td = tw2_decomposition(&p).unwrap();
            validate_decomposition(&p, &td).unwrap();
        }
        let td = tw2_decomposition(&complete(3)).unwrap();
        assert_eq!(td.bags.len(), 2);
        let edge = g(2, &[(0, 1)]);
        validate_decomposition(&edge, &tw2_decomposition(&edge).unwrap()).unwrap();
        assert_eq!(HomQuery::new(&edge, &cycle(5)).tw2().unwrap(), BigInt::from(10));
    }

    #[test]
    fn cp_homs() {
        let h = complete(3);
        let grid = mono(&h).with_h_colouring(h.clone(), vec![0, 1, 2]).unwrap();
        assert_eq!(count_cp_homs(&h, &Fracture::top(&h), &grid).unwrap(), BigInt::one());
        assert_eq!(count_cp_homs(&h, &Fracture::bottom(&h), &grid).unwrap(), BigInt::one());
    }

    #[test]
    fn partial_extension_examples() {
        let star = ColouredPattern::mono(&g(4, &[(0, 1), (0, 2), (0, 3)])).unwrap();
        let host = mono(&g(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]));
        assert_eq!(
            count_partial_extensions(&star, &host, &[(0, 2)]).unwrap(),
            BigInt::from(27)
        );
        assert_eq!(
            count_partial_extensions(&star, &host, &[]).unwrap(),
            count_homs_brute(&star, &host, None, None).unwrap()
        );
        assert_eq!(
            count_partial_extensions(&star, &host, &[(0, 2), (1, 3), (2, 1), (3, 3)]).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let p = g(9, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8)]);
        let edges: Vec<(usize, usize)> = (1..100_000).map(|i| (0, i)).collect();
        let host = g(100_000, &edges);
        let want = BigInt::from(99_999u64).pow(8) + BigInt::from(99_999u64);
        assert_eq!(HomQuery::new(&p, &host).tree().unwrap(), want);
    }
}
