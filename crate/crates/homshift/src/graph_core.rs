//! Graphs, walks and the walk algebra: backtrack reduction `φ`, composition
//! `⊙`, insertion `⊕_k`, shifts, simple-cycle enumeration.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex id.
pub type V = u32;

/// Default cap on the number of enumerated simple cycles.
pub const CYCLE_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, V>,
    adj: Vec<Vec<V>>,
    has_loops: bool,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl Graph {
    pub fn new() -> Self {
        Graph {
            names: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            has_loops: false,
        }
    }

    /// Builds a graph from name pairs; vertices get ids in order of first appearance.
    pub fn from_edges(edges: &[(&str, &str)]) -> Self {
        let mut g = Graph::new();
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_vertex(&mut self, name: &str) -> V {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.names.len() as V;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        self.adj.push(Vec::new());
        v
    }

    pub fn add_edge(&mut self, a: &str, b: &str) {
        let u = self.add_vertex(a);
        let v = self.add_vertex(b);
        self.link(u, v);
    }

    fn link(&mut self, u: V, v: V) {
        if let Err(pos) = self.adj[u as usize].binary_search(&v) {
            self.adj[u as usize].insert(pos, v);
        }
        if let Err(pos) = self.adj[v as usize].binary_search(&u) {
            self.adj[v as usize].insert(pos, u);
        }
        if u == v {
            self.has_loops = true;
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        let mut twice = 0;
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                twice += if v as usize == u { 2 } else { 1 };
            }
        }
        twice / 2
    }

    pub fn has_loops(&self) -> bool {
        self.has_loops
    }

    pub fn name(&self, v: V) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<V> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, v: V) -> &[V] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: V) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: V, v: V) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = V> {
        0..self.names.len() as V
    }

    /// Undirected edges `(u, v)` with `u ≤ v`, sorted.
    pub fn edges(&self) -> Vec<(V, V)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u <= v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Smallest neighbour of `a`; the spine `a x a` used throughout.
    pub fn spine_partner(&self, a: V) -> Option<V> {
        self.adj[a as usize].first().copied()
    }

    pub fn spine(&self, a: V) -> Option<Walk> {
        self.spine_partner(a).map(|x| Walk::new(vec![a, x, a]))
    }

    /// Vertex with the lexicographically smallest name.
    pub fn lex_min_vertex(&self) -> V {
        (0..self.names.len())
            .min_by(|&i, &j| self.names[i].cmp(&self.names[j]))
            .unwrap_or(0) as V
    }

    pub fn bfs(&self, src: V) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[src as usize] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].unwrap();
            for &v in self.neighbors(u) {
                if dist[v as usize].is_none() {
                    dist[v as usize] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: V, b: V) -> Result<usize> {
        self.bfs(a)[b as usize]
            .ok_or_else(|| Error::Unreachable(self.name(a).to_string(), self.name(b).to_string()))
    }

    /// A shortest walk from `a` to `b` (smallest ids first).
    pub fn shortest_walk(&self, a: V, b: V) -> Result<Walk> {
        let dist = self.bfs(b);
        let mut d = dist[a as usize].ok_or_else(|| {
            Error::Unreachable(self.name(a).to_string(), self.name(b).to_string())
        })?;
        let mut seq = vec![a];
        let mut cur = a;
        while d > 0 {
            cur = *self
                .neighbors(cur)
                .iter()
                .find(|&&w| dist[w as usize] == Some(d - 1))
                .expect("bfs layers are consistent");
            seq.push(cur);
            d -= 1;
        }
        Ok(Walk::new(seq))
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.bfs(0).iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for v in self.vertices() {
            for (w, d) in self.bfs(v).into_iter().enumerate() {
                match d {
                    Some(d) => best = best.max(d),
                    None => {
                        return Err(Error::Unreachable(
                            self.name(v).to_string(),
                            self.name(w as V).to_string(),
                        ))
                    }
                }
            }
        }
        Ok(best)
    }

    /// Two-colouring; a loop makes the graph non-bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s as V]);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if color[v as usize] == u8::MAX {
                        color[v as usize] = 1 - color[u as usize];
                        queue.push_back(v);
                    } else if color[v as usize] == color[u as usize] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn is_tree(&self) -> bool {
        !self.has_loops && self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    /// Induced subgraph; names are kept, ids are renumbered in `keep` order.
    pub fn induced(&self, keep: &[V]) -> Graph {
        let set: HashSet<V> = keep.iter().copied().collect();
        let mut g = Graph::new();
        for &v in keep {
            g.add_vertex(self.name(v));
        }
        for &u in keep {
            for &v in self.neighbors(u) {
                if set.contains(&v) {
                    g.add_edge(self.name(u), self.name(v));
                }
            }
        }
        g
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(self.name(u));
            out.push(' ');
            out.push_str(self.name(v));
            out.push('\n');
        }
        out
    }

    /// Parses comma-separated vertex names into a walk.
    pub fn parse_walk(&self, text: &str) -> Result<Walk> {
        let mut seq = Vec::new();
        for tok in text.split(',') {
            seq.push(self.id(tok.trim())?);
        }
        let w = Walk::new(seq);
        if !w.is_valid(self) {
            return Err(Error::Precondition(format!("`{text}` is not a walk")));
        }
        Ok(w)
    }

    pub fn format_walk(&self, w: &[V]) -> String {
        w.iter()
            .map(|&v| self.name(v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

/// Parses the edge-list format: two names per line, `#` comments, blank lines ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected two names, found {}", toks.len()),
            });
        }
        for t in &toks {
            if !valid_name(t) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("invalid vertex name `{t}`"),
                });
            }
        }
        g.add_edge(toks[0], toks[1]);
    }
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetric {
    pub diameter: usize,
    pub bipartite: bool,
    pub connected: bool,
    /// Row-major `|V|×|V|` distances, `None` across components.
    pub distances: Vec<Vec<Option<usize>>>,
}

pub fn graph_metric(g: &Graph) -> GraphMetric {
    let distances: Vec<_> = g.vertices().map(|v| g.bfs(v)).collect();
    let connected = g.is_connected();
    let diameter = distances
        .iter()
        .flatten()
        .filter_map(|d| *d)
        .max()
        .unwrap_or(0);
    GraphMetric {
        diameter,
        bipartite: g.is_bipartite(),
        connected,
        distances,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Walk {
    pub seq: Vec<V>,
}

impl fmt::Debug for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Walk{:?}", self.seq)
    }
}

impl Walk {
    pub fn new(seq: Vec<V>) -> Self {
        assert!(!seq.is_empty(), "a walk has at least one vertex");
        Walk { seq }
    }

    pub fn point(v: V) -> Self {
        Walk { seq: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.seq.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.seq.len() == 1
    }

    pub fn start(&self) -> V {
        self.seq[0]
    }

    pub fn end(&self) -> V {
        *self.seq.last().unwrap()
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        is_walk(g, &self.seq)
    }

    pub fn is_cycle(&self) -> bool {
        self.start() == self.end()
    }

    pub fn is_non_backtracking(&self) -> bool {
        self.seq.windows(3).all(|w| w[0] != w[2])
    }

    pub fn reduce(&self) -> Walk {
        reduce_backtracks(self)
    }

    pub fn reverse(&self) -> Walk {
        let mut s = self.seq.clone();
        s.reverse();
        Walk { seq: s }
    }

    pub fn compose(&self, q: &Walk) -> Result<Walk> {
        compose(self, q)
    }

    pub fn display(&self, g: &Graph) -> String {
        g.format_walk(&self.seq)
    }
}

pub fn is_walk(g: &Graph, seq: &[V]) -> bool {
    !seq.is_empty()
        && seq.iter().all(|&v| (v as usize) < g.vertex_count())
        && seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Stack reduction: pushing `v` onto `.. x y` with `x = v` cancels the spine `x y x`.
pub fn reduce_seq(seq: &[V]) -> Vec<V> {
    let mut st: Vec<V> = Vec::with_capacity(seq.len());
    for &v in seq {
        let n = st.len();
        if n >= 2 && st[n - 2] == v {
            st.pop();
        } else {
            st.push(v);
        }
    }
    st
}

pub fn reduce_backtracks(p: &Walk) -> Walk {
    Walk {
        seq: reduce_seq(&p.seq),
    }
}

pub fn compose(p: &Walk, q: &Walk) -> Result<Walk> {
    if p.end() != q.start() {
        return Err(Error::Composition(format!(
            "walk ends at {} but next starts at {}",
            p.end(),
            q.start()
        )));
    }
    let mut s = p.seq.clone();
    s.extend_from_slice(&q.seq[1..]);
    Ok(Walk { seq: s })
}

/// `c ⊕_k c'`: plugs the cycle `c'` (based at `c_k`) into `c` at position `k`.
pub fn insert_at(c: &Walk, k: usize, cp: &Walk) -> Result<Walk> {
    if k > c.len() {
        return Err(Error::Composition(format!(
            "position {k} beyond length {}",
            c.len()
        )));
    }
    if !cp.is_cycle() || cp.start() != c.seq[k] {
        return Err(Error::Composition(format!(
            "inserted cycle must be based at position {k}"
        )));
    }
    let mut s = c.seq[..=k].to_vec();
    s.extend_from_slice(&cp.seq[1..]);
    s.extend_from_slice(&c.seq[k + 1..]);
    Ok(Walk { seq: s })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shifts {
    pub left: Vec<Walk>,
    pub right: Vec<Walk>,
}

/// `ρ_l(p)` drops the first vertex and appends a neighbour of the last;
/// `ρ_r(p)` drops the last vertex and prepends a neighbour of the first.
pub fn shifts(g: &Graph, p: &Walk) -> Shifts {
    let left = g
        .neighbors(p.end())
        .iter()
        .map(|&x| {
            let mut s = p.seq[1..].to_vec();
            s.push(x);
            Walk { seq: s }
        })
        .collect();
    let right = g
        .neighbors(p.start())
        .iter()
        .map(|&x| {
            let mut s = vec![x];
            s.extend_from_slice(&p.seq[..p.seq.len() - 1]);
            Walk { seq: s }
        })
        .collect();
    Shifts { left, right }
}

pub fn power(c: &Walk, n: usize) -> Result<Walk> {
    if !c.is_cycle() {
        return Err(Error::Composition("power of a non-cycle".into()));
    }
    if n == 0 {
        return Ok(Walk::point(c.start()));
    }
    let mut s = c.seq.clone();
    for _ in 1..n {
        s.extend_from_slice(&c.seq[1..]);
    }
    Ok(Walk { seq: s })
}

/// `t^m` for the spine `a x a`, as a raw sequence.
pub fn spine_power(a: V, x: V, m: usize) -> Vec<V> {
    let mut s = Vec::with_capacity(2 * m + 1);
    s.push(a);
    for _ in 0..m {
        s.push(x);
        s.push(a);
    }
    s
}

/// A walk `u → v` of length exactly `k`, choosing the smallest feasible vertex at each step.
pub fn walk_of_length(g: &Graph, u: V, v: V, k: usize) -> Option<Walk> {
    let n = g.vertex_count();
    // reach[i][w]: some walk of length i goes from w to v.
    let mut reach = vec![vec![false; n]; k + 1];
    reach[0][v as usize] = true;
    for i in 1..=k {
        for w in 0..n {
            reach[i][w] = g
                .neighbors(w as V)
                .iter()
                .any(|&x| reach[i - 1][x as usize]);
        }
    }
    if !reach[k][u as usize] {
        return None;
    }
    let mut seq = vec![u];
    let mut cur = u;
    for i in (0..k).rev() {
        cur = *g.neighbors(cur).iter().find(|&&x| reach[i][x as usize])?;
        seq.push(cur);
    }
    Some(Walk { seq })
}

/// Non-backtracking walks from `a` of length at most `max_len`, in DFS order.
pub fn nonbacktracking_walks(g: &Graph, a: V, max_len: usize) -> Vec<Vec<V>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![a]];
    while let Some(w) = stack.pop() {
        if w.len() <= max_len {
            let n = w.len();
            for &x in g.neighbors(w[n - 1]).iter().rev() {
                if n < 2 || w[n - 2] != x {
                    let mut v = w.clone();
                    v.push(x);
                    stack.push(v);
                }
            }
        }
        out.push(w);
    }
    out
}

/// Canonical closed form of a cycle given as `c_0 … c_{n-1} c_0`: the
/// lexicographic minimum over rotations and both orientations.
pub fn canonical_cycle(c: &[V]) -> Vec<V> {
    let body = &c[..c.len() - 1];
    let n = body.len();
    if n == 0 {
        return c.to_vec();
    }
    let mut best: Option<Vec<V>> = None;
    let mut rev = body.to_vec();
    rev.reverse();
    for src in [body, rev.as_slice()] {
        for r in 0..n {
            let cand: Vec<V> = (0..n).map(|i| src[(r + i) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let mut out = best.unwrap();
    out.push(out[0]);
    out
}

/// All rotations and orientations of a closed cycle, as based cycles.
pub fn based_versions(c: &[V]) -> Vec<Vec<V>> {
    let body = &c[..c.len() - 1];
    let n = body.len();
    let mut rev = body.to_vec();
    rev.reverse();
    let mut seen = BTreeSet::new();
    for src in [body, rev.as_slice()] {
        for r in 0..n {
            let mut cand: Vec<V> = (0..n).map(|i| src[(r + i) % n]).collect();
            cand.push(cand[0]);
            seen.insert(cand);
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    /// Canonical simple cycles of length ≥ 3, sorted by (length, sequence).
    pub cycles: Vec<Walk>,
    pub has_loops: bool,
    pub has_spines: bool,
}

impl CycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.cycles.iter().map(Walk::len).max().unwrap_or(0)
    }
}

pub fn enumerate_simple_cycles(g: &Graph) -> Result<CycleSet> {
    enumerate_simple_cycles_capped(g, CYCLE_CAP)
}

/// Backtracking search rooted at the smallest vertex of each cycle; each
/// undirected cycle is kept once, oriented so that its second vertex is
/// smaller than its last.
pub fn enumerate_simple_cycles_capped(g: &Graph, cap: usize) -> Result<CycleSet> {
    let n = g.vertex_count();
    let mut found: Vec<Vec<V>> = Vec::new();
    let mut path: Vec<V> = Vec::new();
    let mut on_path = vec![false; n];

    fn dfs(
        g: &Graph,
        s: V,
        path: &mut Vec<V>,
        on_path: &mut [bool],
        found: &mut Vec<Vec<V>>,
        cap: usize,
    ) -> Result<()> {
        let u = *path.last().unwrap();
        for &w in g.neighbors(u) {
            if w == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
                let mut c = path.clone();
                c.push(s);
                found.push(c);
                if found.len() > cap {
                    return Err(Error::CycleCap(cap));
                }
            } else if w > s && !on_path[w as usize] {
                on_path[w as usize] = true;
                path.push(w);
                dfs(g, s, path, on_path, found, cap)?;
                path.pop();
                on_path[w as usize] = false;
            }
        }
        Ok(())
    }

    for s in g.vertices() {
        path.clear();
        path.push(s);
        on_path[s as usize] = true;
        dfs(g, s, &mut path, &mut on_path, &mut found, cap)?;
        on_path[s as usize] = false;
    }
    let mut cycles: Vec<Walk> = found
        .iter()
        .map(|c| Walk::new(canonical_cycle(c)))
        .collect();
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.seq.cmp(&b.seq)));
    cycles.dedup();
    let has_spines = g.edges().iter().any(|&(u, v)| u != v);
    Ok(CycleSet {
        cycles,
        has_loops: g.has_loops(),
        has_spines,
    })
}

/// True when no `a b c d` with edges `ab, bc, cd, da`, `a ≠ c`, `b ≠ d` exists.
pub fn four_cycle_hom_free(g: &Graph) -> bool {
    for a in g.vertices() {
        for &b in g.neighbors(a) {
            for &c in g.neighbors(b) {
                if c == a {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d != b && g.has_edge(d, a) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
