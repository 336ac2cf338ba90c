//! The walk graph `Δ_G^n`, its distance `d_G`, the shift distance `d_G^R`
//! on based cycles, diameters and witness paths.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_core::{Graph, Walk, V};

pub const DEFAULT_STATE_BUDGET: usize = 2_000_000;
pub const DEFAULT_DIAMETER_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    Delta,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPath {
    pub kind: WitnessKind,
    pub steps: Vec<Walk>,
}

impl WitnessPath {
    pub fn new(kind: WitnessKind, start: Walk) -> Self {
        WitnessPath {
            kind,
            steps: vec![start],
        }
    }

    /// Number of transitions.
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> &Walk {
        &self.steps[0]
    }

    pub fn last(&self) -> &Walk {
        self.steps.last().unwrap()
    }

    pub fn push(&mut self, w: Walk) {
        self.steps.push(w);
    }

    /// Appends `other`, whose first walk must equal this path's last walk.
    pub fn extend(&mut self, other: &WitnessPath) {
        assert_eq!(self.last(), other.first(), "witness paths do not chain");
        self.steps.extend(other.steps[1..].iter().cloned());
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let mut s = String::new();
        let kind = match self.kind {
            WitnessKind::Delta => "delta",
            WitnessKind::R => "r",
        };
        writeln!(s, "kind={kind}").unwrap();
        for w in &self.steps {
            writeln!(s, "{}", w.display(g)).unwrap();
        }
        s
    }

    pub fn from_text(g: &Graph, text: &str) -> Result<WitnessPath> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let kind = match lines.next().map(str::trim) {
            Some("kind=delta") => WitnessKind::Delta,
            Some("kind=r") => WitnessKind::R,
            other => {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("bad header {other:?}"),
                })
            }
        };
        let mut steps = Vec::new();
        for l in lines {
            steps.push(g.parse_walk(l.trim())?);
        }
        if steps.is_empty() {
            return Err(Error::Parse {
                line: 2,
                msg: "witness has no walks".into(),
            });
        }
        Ok(WitnessPath { kind, steps })
    }
}

pub fn delta_adjacent(g: &Graph, p: &Walk, q: &Walk) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::Length(p.len(), q.len()));
    }
    Ok(adjacent_seq(g, &p.seq, &q.seq))
}

fn adjacent_seq(g: &Graph, p: &[V], q: &[V]) -> bool {
    p.iter().zip(q).all(|(&a, &b)| g.has_edge(a, b))
}

/// Calls `f` on every Δ-neighbour of `p`, in lexicographic order.
pub fn for_each_delta_neighbor(g: &Graph, p: &[V], mut f: impl FnMut(&[V])) {
    let mut q = Vec::with_capacity(p.len());
    fn rec(g: &Graph, p: &[V], q: &mut Vec<V>, f: &mut dyn FnMut(&[V])) {
        let i = q.len();
        if i == p.len() {
            f(q);
            return;
        }
        for &x in g.neighbors(p[i]) {
            if i == 0 || g.has_edge(q[i - 1], x) {
                q.push(x);
                rec(g, p, q, f);
                q.pop();
            }
        }
    }
    rec(g, p, &mut q, &mut f);
}

pub fn delta_neighbors(g: &Graph, p: &Walk) -> Vec<Walk> {
    let mut out = Vec::new();
    for_each_delta_neighbor(g, &p.seq, |q| out.push(Walk::new(q.to_vec())));
    out
}

/// `ℛ_0(c, c')`: `c_i ~ c'_{i+1}` for all `i`, both cycles at the same base.
pub fn r0(g: &Graph, c: &[V], cp: &[V]) -> bool {
    c.len() == cp.len()
        && c[0] == cp[0]
        && c.last() == cp.last()
        && (0..c.len() - 1).all(|i| g.has_edge(c[i], cp[i + 1]))
}

/// `ℛ_1(c, c')`: `c_{i+1} ~ c'_i` for all `i`.
pub fn r1(g: &Graph, c: &[V], cp: &[V]) -> bool {
    r0(g, cp, c)
}

/// Walks `c'` with the same endpoints and `ℛ_0(c, c')` or `ℛ_1(c, c')`, lexicographic, deduplicated.
pub fn r_neighbors(g: &Graph, c: &[V]) -> Vec<Vec<V>> {
    let n = c.len() - 1;
    let a = c[0];
    let mut out = Vec::new();
    // ℛ_0: c'_{i+1} ∈ N(c_i).
    let mut q = vec![a];
    fn rec0(g: &Graph, c: &[V], q: &mut Vec<V>, out: &mut Vec<Vec<V>>) {
        let i = q.len();
        if i == c.len() {
            if q[i - 1] == c[i - 1] {
                out.push(q.clone());
            }
            return;
        }
        for &x in g.neighbors(c[i - 1]) {
            if g.has_edge(q[i - 1], x) {
                q.push(x);
                rec0(g, c, q, out);
                q.pop();
            }
        }
    }
    if n > 0 {
        rec0(g, c, &mut q, &mut out);
        let rev: Vec<V> = c.iter().rev().copied().collect();
        let mut back = Vec::new();
        let mut q = vec![rev[0]];
        rec0(g, &rev, &mut q, &mut back);
        // ℛ_1(c,c') is ℛ_0 on reversed words.
        out.extend(back.into_iter().map(|mut w| {
            w.reverse();
            w
        }));
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnreachedReason {
    FrontierExhausted,
    Budget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distance {
    Exact(usize),
    /// `lower` is a certified lower bound on the distance.
    Unreached {
        reason: UnreachedReason,
        lower: usize,
    },
}

impl Distance {
    pub fn exact(self) -> Option<usize> {
        match self {
            Distance::Exact(d) => Some(d),
            _ => None,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            Distance::Exact(d) => d,
            Distance::Unreached { lower, .. } => lower,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Packed(u128),
    Wide(Box<[V]>),
}

/// Interns walks of one fixed length as dense ids.
struct Interner {
    bits: u32,
    packed: bool,
    map: HashMap<Key, u32>,
    walks: Vec<Box<[V]>>,
}

impl Interner {
    fn new(vertex_count: usize, walk_len: usize) -> Self {
        let bits = (usize::BITS - vertex_count.saturating_sub(1).leading_zeros()).max(1);
        let packed = bits as usize * (walk_len + 1) <= 128;
        Interner {
            bits,
            packed,
            map: HashMap::new(),
            walks: Vec::new(),
        }
    }

    fn key(&self, w: &[V]) -> Key {
        if self.packed {
            let mut k = 0u128;
            for &v in w {
                k = (k << self.bits) | v as u128;
            }
            Key::Packed(k)
        } else {
            Key::Wide(w.into())
        }
    }

    fn get(&self, w: &[V]) -> Option<u32> {
        self.map.get(&self.key(w)).copied()
    }

    /// Returns `(id, newly_inserted)`.
    fn intern(&mut self, w: &[V]) -> (u32, bool) {
        let k = self.key(w);
        if let Some(&id) = self.map.get(&k) {
            return (id, false);
        }
        let id = self.walks.len() as u32;
        self.map.insert(k, id);
        self.walks.push(w.into());
        (id, true)
    }
}

/// Exact distance in `Δ_G^n` by bidirectional BFS; `cap` bounds visited walks.
pub fn delta_distance(g: &Graph, p: &Walk, q: &Walk, cap: usize) -> Result<Distance> {
    Ok(delta_search(g, p, q, cap)?.0)
}

/// Bidirectional BFS returning the distance and, when reached, a shortest path.
pub fn delta_search(
    g: &Graph,
    p: &Walk,
    q: &Walk,
    cap: usize,
) -> Result<(Distance, Option<WitnessPath>)> {
    if p.len() != q.len() {
        return Err(Error::Length(p.len(), q.len()));
    }
    if p == q {
        return Ok((
            Distance::Exact(0),
            Some(WitnessPath::new(WitnessKind::Delta, p.clone())),
        ));
    }
    let mut it = Interner::new(g.vertex_count(), p.len());
    let (ps, _) = it.intern(&p.seq);
    let (qs, _) = it.intern(&q.seq);
    // side[id] = 0 from p, 1 from q; parent links toward the respective root.
    let mut side: Vec<u8> = vec![0, 1];
    let mut parent: Vec<u32> = vec![ps, qs];
    let mut frontier = [vec![ps], vec![qs]];
    let mut depth = [0usize, 0usize];
    loop {
        let s = if frontier[0].len() <= frontier[1].len() {
            0
        } else {
            1
        };
        if frontier[s].is_empty() {
            return Ok((
                Distance::Unreached {
                    reason: UnreachedReason::FrontierExhausted,
                    lower: depth[0] + depth[1] + 1,
                },
                None,
            ));
        }
        let mut next = Vec::new();
        let mut meet: Option<(u32, u32)> = None;
        for &u in &frontier[s] {
            let w = it.walks[u as usize].clone();
            let mut found = None;
            for_each_delta_neighbor(g, &w, |nb| {
                if found.is_some() {
                    return;
                }
                let (id, fresh) = it.intern(nb);
                if fresh {
                    side.push(s as u8);
                    parent.push(u);
                    next.push(id);
                } else if side[id as usize] != s as u8 {
                    found = Some(id);
                }
            });
            if let Some(v) = found {
                meet = Some((u, v));
                break;
            }
        }
        if let Some((u, v)) = meet {
            let d = depth[s] + 1 + depth[1 - s];
            let path = |mut x: u32| {
                let mut out = vec![x];
                while parent[x as usize] != x {
                    x = parent[x as usize];
                    out.push(x);
                }
                out
            };
            let (mut from_p, from_q) = if s == 0 {
                (path(u), path(v))
            } else {
                (path(v), path(u))
            };
            from_p.reverse();
            from_p.extend(from_q);
            let steps: Vec<Walk> = from_p
                .into_iter()
                .map(|id| Walk::new(it.walks[id as usize].to_vec()))
                .collect();
            debug_assert_eq!(d + 1, steps.len());
            return Ok((
                Distance::Exact(d),
                Some(WitnessPath {
                    kind: WitnessKind::Delta,
                    steps,
                }),
            ));
        }
        depth[s] += 1;
        frontier[s] = next;
        if it.walks.len() > cap {
            return Ok((
                Distance::Unreached {
                    reason: UnreachedReason::Budget,
                    lower: depth[0] + depth[1] + 1,
                },
                None,
            ));
        }
    }
}

/// Plain single-direction BFS; the reference implementation for tests.
pub fn delta_distance_naive(g: &Graph, p: &Walk, q: &Walk) -> Option<usize> {
    let mut dist: HashMap<Vec<V>, usize> = HashMap::from([(p.seq.clone(), 0)]);
    let mut queue = VecDeque::from([p.seq.clone()]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if u == q.seq {
            return Some(d);
        }
        for nb in delta_neighbors(g, &Walk::new(u.clone())) {
            if !dist.contains_key(&nb.seq) {
                dist.insert(nb.seq.clone(), d + 1);
                queue.push_back(nb.seq);
            }
        }
    }
    None
}

/// Shift distance `d_G^R` by plain BFS.
pub fn r_distance(g: &Graph, c: &Walk, cp: &Walk, cap: usize) -> Option<usize> {
    let mut dist: HashMap<Vec<V>, usize> = HashMap::from([(c.seq.clone(), 0)]);
    let mut queue = VecDeque::from([c.seq.clone()]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if u == cp.seq {
            return Some(d);
        }
        if dist.len() > cap {
            return None;
        }
        for nb in r_neighbors(g, &u) {
            if !dist.contains_key(&nb) {
                dist.insert(nb.clone(), d + 1);
                queue.push_back(nb);
            }
        }
    }
    None
}

/// Number of length-`n` walks, `1ᵀAⁿ1`, saturating.
pub fn walk_count(g: &Graph, n: usize) -> u128 {
    let mut v: Vec<u128> = vec![1; g.vertex_count()];
    for _ in 0..n {
        v = g
            .vertices()
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .fold(0u128, |s, &x| s.saturating_add(v[x as usize]))
            })
            .collect();
    }
    v.into_iter().fold(0u128, u128::saturating_add)
}

/// All walks of length `n` in lexicographic order.
pub fn all_walks(g: &Graph, n: usize) -> Vec<Walk> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn rec(g: &Graph, n: usize, cur: &mut Vec<V>, out: &mut Vec<Walk>) {
        if cur.len() == n + 1 {
            out.push(Walk::new(cur.clone()));
            return;
        }
        for &x in g.neighbors(*cur.last().unwrap()) {
            cur.push(x);
            rec(g, n, cur, out);
            cur.pop();
        }
    }
    for v in g.vertices() {
        cur.push(v);
        rec(g, n, &mut cur, &mut out);
        cur.pop();
    }
    out
}

/// `Δ_G^n` as an index-based adjacency list over [`all_walks`].
pub fn delta_graph(g: &Graph, n: usize) -> (Vec<Walk>, Vec<Vec<u32>>) {
    let walks = all_walks(g, n);
    let mut it = Interner::new(g.vertex_count(), n);
    for w in &walks {
        it.intern(&w.seq);
    }
    let adj = walks
        .par_iter()
        .map(|w| {
            let mut nb = Vec::new();
            for_each_delta_neighbor(g, &w.seq, |q| nb.push(it.get(q).unwrap()));
            nb
        })
        .collect();
    (walks, adj)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiameterMethod {
    FullBfs,
    DoubleSweep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub n: usize,
    pub value: usize,
    pub exactness: Exactness,
    pub vertex_count: u128,
    pub method: DiameterMethod,
    /// False when some pair of walks is not connected in `Δ_G^n`; `value` is then the largest finite distance.
    pub connected: bool,
}

/// Largest finite eccentricity and connectivity, 64 sources at a time.
fn all_sources_eccentricity(adj: &[Vec<u32>]) -> (usize, bool) {
    let n = adj.len();
    let batches: Vec<usize> = (0..n).step_by(64).collect();
    batches
        .par_iter()
        .map(|&start| {
            let end = (start + 64).min(n);
            let full: u64 = if end - start == 64 {
                u64::MAX
            } else {
                (1u64 << (end - start)) - 1
            };
            let mut seen = vec![0u64; n];
            let mut front = vec![0u64; n];
            for s in start..end {
                seen[s] |= 1 << (s - start);
                front[s] |= 1 << (s - start);
            }
            let mut depth = 0;
            loop {
                let next: Vec<u64> = (0..n)
                    .map(|v| {
                        let mut m = 0u64;
                        for &u in &adj[v] {
                            m |= front[u as usize];
                        }
                        m & !seen[v]
                    })
                    .collect();
                if next.iter().all(|&m| m == 0) {
                    break;
                }
                depth += 1;
                for v in 0..n {
                    seen[v] |= next[v];
                }
                front = next;
            }
            (depth, seen.iter().all(|&m| m == full))
        })
        .reduce(|| (0, true), |a, b| (a.0.max(b.0), a.1 && b.1))
}

/// BFS from `src` over implicit `Δ_G^n`; returns (deepest completed layer, farthest walk, visited, completed).
fn sweep(g: &Graph, src: &Walk, cap: usize) -> (usize, Walk, usize, bool) {
    let mut it = Interner::new(g.vertex_count(), src.len());
    it.intern(&src.seq);
    let mut frontier = vec![0u32];
    let mut depth = 0;
    let mut last = 0u32;
    loop {
        let mut next = Vec::new();
        for &u in &frontier {
            let w = it.walks[u as usize].clone();
            for_each_delta_neighbor(g, &w, |nb| {
                let (id, fresh) = it.intern(nb);
                if fresh {
                    next.push(id);
                }
            });
        }
        if next.is_empty() {
            return (
                depth,
                Walk::new(it.walks[last as usize].to_vec()),
                it.walks.len(),
                true,
            );
        }
        if it.walks.len() > cap {
            return (
                depth,
                Walk::new(it.walks[last as usize].to_vec()),
                it.walks.len(),
                false,
            );
        }
        depth += 1;
        last = next[0];
        frontier = next;
    }
}

pub fn delta_diameter(g: &Graph, n: usize, cap: usize) -> DiameterReport {
    let count = walk_count(g, n);
    if count <= cap as u128 {
        let (_, adj) = delta_graph(g, n);
        let (value, connected) = all_sources_eccentricity(&adj);
        return DiameterReport {
            n,
            value,
            exactness: Exactness::Exact,
            vertex_count: count,
            method: DiameterMethod::FullBfs,
            connected,
        };
    }
    // Double sweep from a spine power and from a lexicographically first walk.
    let a = g.lex_min_vertex();
    let mut sources = Vec::new();
    if let Some(x) = g.spine_partner(a) {
        sources.push(Walk::new(
            (0..=n).map(|i| if i % 2 == 0 { a } else { x }).collect(),
        ));
    }
    if let Some(w) = crate::graph_core::walk_of_length(g, a, a, n) {
        sources.push(w);
    }
    let budget = DEFAULT_STATE_BUDGET.max(cap);
    let mut best = 0;
    let mut connected = true;
    for s in sources {
        let (d1, far, seen, done) = sweep(g, &s, budget);
        let (d2, ..) = sweep(g, &far, budget);
        best = best.max(d1).max(d2);
        connected &= !(done && (seen as u128) < count);
    }
    DiameterReport {
        n,
        value: best,
        exactness: Exactness::LowerBound,
        vertex_count: count,
        method: DiameterMethod::DoubleSweep,
        connected,
    }
}

/// Explicit 2-colouring of `Δ_G^n`.
pub fn delta_is_bipartite(g: &Graph, n: usize) -> bool {
    let (_, adj) = delta_graph(g, n);
    let mut color = vec![u8::MAX; adj.len()];
    for s in 0..adj.len() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let v = v as usize;
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Index of the first invalid transition (or walk), if any.
pub fn verify_witness_diag(g: &Graph, w: &WitnessPath) -> std::result::Result<(), usize> {
    let Some(first) = w.steps.first() else {
        return Err(0);
    };
    for (i, s) in w.steps.iter().enumerate() {
        if !s.is_valid(g) || s.len() != first.len() {
            return Err(i);
        }
        if w.kind == WitnessKind::R && (s.start() != first.start() || s.end() != first.end()) {
            return Err(i);
        }
    }
    for (i, pair) in w.steps.windows(2).enumerate() {
        let ok = match w.kind {
            WitnessKind::Delta => adjacent_seq(g, &pair[0].seq, &pair[1].seq),
            WitnessKind::R => {
                r0(g, &pair[0].seq, &pair[1].seq) || r1(g, &pair[0].seq, &pair[1].seq)
            }
        };
        if !ok {
            return Err(i);
        }
    }
    Ok(())
}

pub fn verify_witness(g: &Graph, w: &WitnessPath) -> bool {
    verify_witness_diag(g, w).is_ok()
}

/// Converts an R-path into a Δ-path through the intermediate shifted walk of each step.
pub fn r_to_delta(g: &Graph, w: &WitnessPath) -> Result<WitnessPath> {
    if w.kind != WitnessKind::R {
        return Err(Error::Verification(0));
    }
    verify_witness_diag(g, w).map_err(Error::Verification)?;
    let mut out = WitnessPath::new(WitnessKind::Delta, w.first().clone());
    for (i, pair) in w.steps.windows(2).enumerate() {
        let (c, cp) = (&pair[0].seq, &pair[1].seq);
        if c == cp {
            continue;
        }
        let y = g
            .spine_partner(*c.last().unwrap())
            .ok_or(Error::Verification(i))?;
        let src = if r0(g, c, cp) { cp } else { c };
        let mut mid: Vec<V> = src[1..].to_vec();
        mid.push(y);
        out.push(Walk::new(mid));
        out.push(Walk::new(cp.clone()));
    }
    Ok(out)
}
