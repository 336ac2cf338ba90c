//! Universal cover, the square relation and a budgeted square cover.
//!
//! Two non-backtracking walks differ by a square when one is `φ(p ⊕_k s)`
//! for the other. Starting from a non-backtracking `p` the neighbours are
//! - arc moves `φ(p ⊕_k s)` for every position `k` and square `s` at `p_k`;
//! - lollipop moves, which insert `γ s γ⁻¹` with a non-empty stem `γ`.
//!
//! Lollipops are exactly the walks that collapse back onto `p` through a
//! cascade of cancellations, so the two families together make the relation
//! symmetric. Stems are unbounded; callers pass a length cap.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gluing::{grid_neighbors, Coord, Pattern};
use crate::graph_core::{reduce_seq, Graph, Walk, V};

/// Squares `[s0, s1, s2, s3]` based at each vertex, every orientation.
pub fn squares_at(g: &Graph) -> Vec<Vec<[V; 4]>> {
    let mut out = vec![Vec::new(); g.vertex_count()];
    for s0 in g.vertices() {
        for &s1 in g.neighbors(s0) {
            for &s2 in g.neighbors(s1) {
                if s2 == s0 {
                    continue;
                }
                for &s3 in g.neighbors(s2) {
                    if s3 != s1 && g.has_edge(s3, s0) {
                        out[s0 as usize].push([s0, s1, s2, s3]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// `φ(p ⊕_k s)`.
    Arc { k: usize, square: [V; 4] },
    /// Insert `γ s γ⁻¹` at `k`; `stem` starts at `p_k`, the square is based at its end.
    Lollipop {
        k: usize,
        stem: Vec<V>,
        square: [V; 4],
    },
}

impl Move {
    pub fn apply(&self, p: &[V]) -> Option<Vec<V>> {
        match self {
            Move::Arc { k, square } => {
                if *k >= p.len() || p[*k] != square[0] {
                    return None;
                }
                let mut w = p[..=*k].to_vec();
                w.extend_from_slice(&[square[1], square[2], square[3], square[0]]);
                w.extend_from_slice(&p[k + 1..]);
                Some(reduce_seq(&w))
            }
            Move::Lollipop { k, stem, square } => {
                if *k >= p.len() || stem.first() != Some(&p[*k]) || stem.last() != Some(&square[0])
                {
                    return None;
                }
                let mut w = p[..=*k].to_vec();
                w.extend_from_slice(&stem[1..]);
                w.extend_from_slice(&[square[1], square[2], square[3], square[0]]);
                w.extend(stem.iter().rev().skip(1));
                w.extend_from_slice(&p[k + 1..]);
                Some(w)
            }
        }
    }
}

/// Holds the square table of a graph so that move enumeration is cheap.
pub struct SquareMoves<'g> {
    g: &'g Graph,
    squares: Vec<Vec<[V; 4]>>,
}

impl<'g> SquareMoves<'g> {
    pub fn new(g: &'g Graph) -> Self {
        SquareMoves {
            g,
            squares: squares_at(g),
        }
    }

    pub fn has_squares(&self) -> bool {
        self.squares.iter().any(|s| !s.is_empty())
    }

    /// All square neighbours of `p` of length `≤ max_len`, first descriptor per result.
    /// The flag reports whether some neighbour was dropped by the cap.
    pub fn moves(&self, p: &[V], max_len: usize) -> (Vec<(Vec<V>, Move)>, bool) {
        self.moves_limited(p, max_len, usize::MAX).unwrap()
    }

    /// As [`SquareMoves::moves`], giving up with `None` once more than `limit` results exist.
    pub fn moves_limited(
        &self,
        p: &[V],
        max_len: usize,
        limit: usize,
    ) -> Option<(Vec<(Vec<V>, Move)>, bool)> {
        let mut seen: HashSet<Vec<V>> = HashSet::new();
        let (mut out, mut pruned) = self.arcs(p, max_len, &mut seen);
        let l = p.len() - 1;
        if !self.has_squares() {
            return Some((out, pruned));
        }
        for k in 0..=l {
            let v = p[k];
            let mut banned = Vec::new();
            if k > 0 {
                banned.push(p[k - 1]);
            }
            if k < l {
                banned.push(p[k + 1]);
            }
            // Stems are unbounded, so some lollipop is always cut.
            pruned = true;
            if l + 6 <= max_len {
                let mut stem = vec![v];
                self.stems(
                    p,
                    k,
                    &banned,
                    (max_len - l - 4) / 2,
                    &mut stem,
                    &mut out,
                    &mut seen,
                    limit,
                );
                if out.len() > limit {
                    return None;
                }
            }
        }
        Some((out, pruned))
    }

    /// Only the moves `φ(p ⊕_k s)`; these never need a stem.
    pub fn moves_arc(&self, p: &[V], max_len: usize) -> (Vec<(Vec<V>, Move)>, bool) {
        self.arcs(p, max_len, &mut HashSet::new())
    }

    fn arcs(
        &self,
        p: &[V],
        max_len: usize,
        seen: &mut HashSet<Vec<V>>,
    ) -> (Vec<(Vec<V>, Move)>, bool) {
        let mut out = Vec::new();
        let mut pruned = false;
        for k in 0..p.len() {
            for s in &self.squares[p[k] as usize] {
                let mv = Move::Arc { k, square: *s };
                let q = mv.apply(p).unwrap();
                if q.len() - 1 > max_len {
                    pruned = true;
                } else if q != p && seen.insert(q.clone()) {
                    out.push((q, mv));
                }
            }
        }
        (out, pruned)
    }

    #[allow(clippy::too_many_arguments)]
    fn stems(
        &self,
        p: &[V],
        k: usize,
        banned: &[V],
        max_stem: usize,
        stem: &mut Vec<V>,
        out: &mut Vec<(Vec<V>, Move)>,
        seen: &mut HashSet<Vec<V>>,
        limit: usize,
    ) {
        if stem.len() > max_stem || out.len() > limit {
            return;
        }
        let u = *stem.last().unwrap();
        for &x in self.g.neighbors(u) {
            if stem.len() == 1 && banned.contains(&x) {
                continue;
            }
            if stem.len() >= 2 && stem[stem.len() - 2] == x {
                continue;
            }
            stem.push(x);
            let prev = u;
            for s in &self.squares[x as usize] {
                if s[1] == prev || s[3] == prev {
                    continue;
                }
                let mv = Move::Lollipop {
                    k,
                    stem: stem.clone(),
                    square: *s,
                };
                let q = mv.apply(p).unwrap();
                if seen.insert(q.clone()) {
                    out.push((q, mv));
                }
            }
            self.stems(p, k, banned, max_stem, stem, out, seen, limit);
            stem.pop();
        }
    }
}

/// All square neighbours of a non-backtracking walk up to `max_len`.
pub fn square_moves(g: &Graph, p: &Walk, max_len: usize) -> Result<Vec<(Walk, Move)>> {
    if !p.is_non_backtracking() {
        return Err(Error::Precondition(
            "square moves need a non-backtracking walk".into(),
        ));
    }
    let sm = SquareMoves::new(g);
    Ok(sm
        .moves(&p.seq, max_len)
        .0
        .into_iter()
        .map(|(q, m)| (Walk::new(q), m))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveStep {
    pub mv: Move,
    pub result: Walk,
}

/// Applies a move sequence to `start`, returning the final walk if every step replays.
pub fn replay(start: &Walk, steps: &[MoveStep]) -> Option<Walk> {
    let mut cur = start.seq.clone();
    for s in steps {
        let next = s.mv.apply(&cur)?;
        if next != s.result.seq {
            return None;
        }
        cur = next;
    }
    Some(Walk::new(cur))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareBudget {
    pub max_len: usize,
    pub max_states: usize,
}

impl Default for SquareBudget {
    fn default() -> Self {
        SquareBudget {
            max_len: 12,
            max_states: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(Vec<MoveStep>),
    CertifiedDistinct,
    Unknown,
}

/// Finds the move from `p` to `q`, if one exists within `max_len`.
fn find_move(sm: &SquareMoves, p: &[V], q: &[V], max_len: usize) -> Option<Move> {
    sm.moves(p, max_len)
        .0
        .into_iter()
        .find(|(r, _)| r == q)
        .map(|(_, m)| m)
}

/// BFS over square moves. Distinctness is certified only when the component
/// is exhausted without any neighbour having been cut by the length cap.
pub fn equivalent_mod_squares(
    g: &Graph,
    p: &Walk,
    q: &Walk,
    budget: SquareBudget,
) -> Result<Equivalence> {
    if !p.is_non_backtracking() || !q.is_non_backtracking() {
        return Err(Error::Precondition(
            "square moves need non-backtracking walks".into(),
        ));
    }
    if p.start() != q.start() || p.end() != q.end() || (p.len() + q.len()) % 2 == 1 {
        return Ok(Equivalence::CertifiedDistinct);
    }
    if p == q {
        return Ok(Equivalence::Equivalent(Vec::new()));
    }
    let sm = SquareMoves::new(g);
    let swapped = q.len() < p.len();
    let (src, dst) = if swapped { (q, p) } else { (p, q) };
    let mut parent: HashMap<Vec<V>, Option<(Vec<V>, Move)>> =
        HashMap::from([(src.seq.clone(), None)]);
    let mut queue = VecDeque::from([src.seq.clone()]);
    let mut pruned = false;
    while let Some(u) = queue.pop_front() {
        let (nbs, cut) = sm.moves(&u, budget.max_len);
        pruned |= cut;
        for (v, mv) in nbs {
            if parent.contains_key(&v) {
                continue;
            }
            parent.insert(v.clone(), Some((u.clone(), mv)));
            if v == dst.seq {
                let mut chain = vec![v.clone()];
                let mut cur = v;
                while let Some(Some((prev, _))) = parent.get(&cur) {
                    chain.push(prev.clone());
                    cur = prev.clone();
                }
                chain.reverse();
                if swapped {
                    chain.reverse();
                }
                let steps = chain
                    .windows(2)
                    .map(|w| MoveStep {
                        mv: find_move(&sm, &w[0], &w[1], budget.max_len.max(w[1].len()))
                            .expect("square relation is symmetric"),
                        result: Walk::new(w[1].clone()),
                    })
                    .collect();
                return Ok(Equivalence::Equivalent(steps));
            }
            if parent.len() > budget.max_states {
                return Ok(Equivalence::Unknown);
            }
            queue.push_back(v);
        }
    }
    Ok(if pruned {
        Equivalence::Unknown
    } else {
        Equivalence::CertifiedDistinct
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverBudget {
    pub max_len: usize,
    pub max_classes: usize,
    /// Per-search cap on walks visited while looking for a merge.
    pub max_states: usize,
}

impl Default for CoverBudget {
    fn default() -> Self {
        CoverBudget {
            max_len: 12,
            max_classes: 100_000,
            max_states: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverStatus {
    ClosedFinite,
    BudgetExceeded { classes: usize, max_distance: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Merge {
    pub from: Walk,
    pub to: Walk,
    pub moves: Vec<MoveStep>,
}

#[derive(Clone, Debug)]
pub struct CoverAtlas {
    pub base: V,
    pub classes: Vec<Walk>,
    pub eta: Vec<V>,
    /// Distance from the base class in the class graph.
    pub depth: Vec<usize>,
    /// `ext[c]`: `(y, d)` pairs, class `d` contains `φ(rep(c)·y)`.
    pub ext: Vec<Vec<(V, usize)>>,
    pub status: CoverStatus,
    pub merges: Vec<Merge>,
}

impl CoverAtlas {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn is_closed(&self) -> bool {
        self.status == CoverStatus::ClosedFinite
    }

    pub fn transition(&self, class: usize, y: V) -> Option<usize> {
        self.ext[class]
            .iter()
            .find(|&&(v, _)| v == y)
            .map(|&(_, d)| d)
    }

    pub fn class_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = Vec::new();
        for (c, row) in self.ext.iter().enumerate() {
            for &(_, d) in row {
                e.push((c.min(d), c.max(d)));
            }
        }
        e.sort();
        e.dedup();
        e
    }

    pub fn max_distance(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Number of classes at each distance from the base.
    pub fn distance_profile(&self) -> Vec<usize> {
        let mut prof = vec![0; self.max_distance() + 1];
        for &d in &self.depth {
            prof[d] += 1;
        }
        prof
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.classes.len()];
        for (a, b) in self.class_edges() {
            deg[a] += 1;
            if a != b {
                deg[b] += 1;
            }
        }
        deg.sort_unstable();
        deg
    }

    /// The class graph, vertices named `k<id>`.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new();
        for i in 0..self.classes.len() {
            g.add_vertex(&format!("k{i}"));
        }
        for (a, b) in self.class_edges() {
            g.add_edge(&format!("k{a}"), &format!("k{b}"));
        }
        g
    }

    /// Classes visited by a walk starting at the base.
    pub fn lift_walk(&self, w: &Walk) -> Result<Vec<usize>> {
        if w.start() != self.base {
            return Err(Error::Precondition(
                "walk must start at the atlas base".into(),
            ));
        }
        let mut out = vec![0];
        for &y in &w.seq[1..] {
            let c = *out.last().unwrap();
            let d = self.transition(c, y).ok_or(Error::AtlasIncomplete {
                class: c,
                vertex: y.to_string(),
            })?;
            out.push(d);
        }
        Ok(out)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let status = match &self.status {
            CoverStatus::ClosedFinite => serde_json::json!("ClosedFinite"),
            CoverStatus::BudgetExceeded {
                classes,
                max_distance,
            } => serde_json::json!({
                "BudgetExceeded": {"classes": classes, "max_distance": max_distance}
            }),
        };
        serde_json::json!({
            "base": g.name(self.base),
            "classes": self.classes.iter().enumerate().map(|(i, w)| serde_json::json!({
                "id": i,
                "representative": w.display(g),
                "eta": g.name(self.eta[i]),
            })).collect::<Vec<_>>(),
            "edges": self.class_edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "status": status,
        })
    }
}

pub fn build_square_cover(g: &Graph, budget: CoverBudget) -> CoverAtlas {
    build_square_cover_at(g, g.lex_min_vertex(), budget)
}

/// Explores classes in BFS order. Each candidate extension is merged into
/// the first already-labelled walk reached by square moves; otherwise it opens
/// a new class. Every walk visited in a search inherits the resulting class.
pub fn build_square_cover_at(g: &Graph, base: V, budget: CoverBudget) -> CoverAtlas {
    let sm = SquareMoves::new(g);
    let mut label: HashMap<Vec<V>, usize> = HashMap::from([(vec![base], 0)]);
    let mut atlas = CoverAtlas {
        base,
        classes: vec![Walk::point(base)],
        eta: vec![base],
        depth: vec![0],
        ext: vec![Vec::new()],
        status: CoverStatus::ClosedFinite,
        merges: Vec::new(),
    };
    let mut c = 0;
    while c < atlas.classes.len() {
        let rep = atlas.classes[c].seq.clone();
        let eta = atlas.eta[c];
        for &y in g.neighbors(eta) {
            let mut w = rep.clone();
            w.push(y);
            let w = reduce_seq(&w);
            let target = if let Some(&d) = label.get(&w) {
                d
            } else if w.len() - 1 > budget.max_len || atlas.classes.len() >= budget.max_classes {
                atlas.status = CoverStatus::BudgetExceeded {
                    classes: atlas.classes.len(),
                    max_distance: atlas.max_distance(),
                };
                return atlas;
            } else {
                let hit = if atlas.eta.contains(&y) {
                    search_labelled(&sm, &w, &label, budget)
                } else {
                    Search {
                        found: None,
                        visited: vec![w.clone()],
                    }
                };
                match hit.found {
                    Some((d, to, moves)) => {
                        for v in hit.visited {
                            label.insert(v, d);
                        }
                        atlas.merges.push(Merge {
                            from: Walk::new(w),
                            to: Walk::new(to),
                            moves,
                        });
                        d
                    }
                    None => {
                        let d = atlas.classes.len();
                        atlas.classes.push(Walk::new(w.clone()));
                        atlas.eta.push(y);
                        atlas.depth.push(atlas.depth[c] + 1);
                        atlas.ext.push(Vec::new());
                        for v in hit.visited {
                            label.insert(v, d);
                        }
                        d
                    }
                }
            };
            atlas.ext[c].push((y, target));
        }
        c += 1;
    }
    atlas
}

struct Search {
    found: Option<(usize, Vec<V>, Vec<MoveStep>)>,
    visited: Vec<Vec<V>>,
}

fn search_labelled(
    sm: &SquareMoves,
    w: &[V],
    label: &HashMap<Vec<V>, usize>,
    budget: CoverBudget,
) -> Search {
    let mut parent: HashMap<Vec<V>, Option<(Vec<V>, Move)>> = HashMap::from([(w.to_vec(), None)]);
    let mut order = vec![w.to_vec()];
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(u) = queue.pop_front() {
        for (v, mv) in sm.moves(&u, budget.max_len).0 {
            if parent.contains_key(&v) {
                continue;
            }
            parent.insert(v.clone(), Some((u.clone(), mv)));
            if let Some(&d) = label.get(&v) {
                let mut steps = Vec::new();
                let mut cur = v.clone();
                while let Some(Some((prev, mv))) = parent.get(&cur) {
                    steps.push(MoveStep {
                        mv: mv.clone(),
                        result: Walk::new(cur.clone()),
                    });
                    cur = prev.clone();
                }
                steps.reverse();
                return Search {
                    found: Some((d, v, steps)),
                    visited: order,
                };
            }
            order.push(v.clone());
            if order.len() >= budget.max_states {
                return Search {
                    found: None,
                    visited: order,
                };
            }
            queue.push_back(v);
        }
    }
    Search {
        found: None,
        visited: order,
    }
}

/// Lifts a locally admissible pattern through the atlas, starting from the base class at `i0`.
pub fn lift_window(
    atlas: &CoverAtlas,
    g: &Graph,
    pattern: &Pattern,
    i0: Coord,
) -> Result<HashMap<Coord, usize>> {
    if pattern.get(i0) != Some(atlas.base) {
        return Err(Error::Precondition(
            "pattern must take the base value at the anchor".into(),
        ));
    }
    if !crate::gluing::is_locally_admissible(g, pattern) {
        return Err(Error::Precondition(
            "pattern is not locally admissible".into(),
        ));
    }
    let mut z: HashMap<Coord, usize> = HashMap::from([(i0, 0)]);
    let mut queue = VecDeque::from([i0]);
    while let Some(i) = queue.pop_front() {
        let ci = z[&i];
        for j in grid_neighbors(i) {
            let Some(y) = pattern.get(j) else { continue };
            let d = atlas.transition(ci, y).ok_or(Error::AtlasIncomplete {
                class: ci,
                vertex: y.to_string(),
            })?;
            match z.get(&j) {
                Some(&e) if e != d => return Err(Error::AtlasUnsound(ci as i64, e as i64)),
                Some(_) => {}
                None => {
                    z.insert(j, d);
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(z)
}
