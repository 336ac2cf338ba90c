//! Square decompositions, area, the constant `λ_G` and cactus forests.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covers::{Move, SquareMoves};
use crate::error::{Error, Result};
use crate::graph_core::{enumerate_simple_cycles, reduce_seq, Graph, Walk, V};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// The cycle as given; `steps[0]` is its reduction `φ(input)`.
    pub input: Walk,
    pub steps: Vec<Walk>,
    pub moves: Vec<Move>,
    pub area: usize,
    pub cost: usize,
    /// True when the area is minimal among decompositions within the length cap.
    pub exact: bool,
}

impl Decomposition {
    /// Checks that every move replays and the last step is empty.
    pub fn replays(&self) -> bool {
        self.steps.len() == self.moves.len() + 1
            && self.steps[0].seq == reduce_seq(&self.input.seq)
            && self.steps.last().is_some_and(Walk::is_empty)
            && self
                .moves
                .iter()
                .zip(self.steps.windows(2))
                .all(|(m, w)| m.apply(&w[0].seq).as_deref() == Some(&w[1].seq[..]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompResult {
    Found(Decomposition),
    NotDecomposable,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompBudget {
    /// Intermediate walks may be this much longer than `l(c)`; `None` means `4·|V|`.
    pub slack: Option<usize>,
    pub max_states: usize,
}

impl Default for DecompBudget {
    fn default() -> Self {
        DecompBudget {
            slack: None,
            max_states: 20_000,
        }
    }
}

pub fn step_cost(from_len: usize, to_len: usize) -> usize {
    (from_len.abs_diff(to_len) / 2).max(2)
}

enum Layered {
    Found(Vec<Vec<V>>, Vec<Move>, usize),
    Exhausted { pruned: bool },
    Budget,
}

/// BFS by layers toward the empty walk, keeping the cheapest path within each layer.
/// `arcs_only` drops lollipop moves.
fn layered_search(
    sm: &SquareMoves,
    start: &[V],
    max_len: usize,
    max_states: usize,
    arcs_only: bool,
) -> Layered {
    let target = vec![start[0]];
    let mut index: HashMap<Vec<V>, u32> = HashMap::from([(start.to_vec(), 0)]);
    let mut states: Vec<Vec<V>> = vec![start.to_vec()];
    // (cost, parent, move)
    let mut info: Vec<(usize, u32, Option<Move>)> = vec![(0, 0, None)];
    let mut layer_of: Vec<u32> = vec![0];
    let mut current: Vec<u32> = vec![0];
    let mut pruned = false;
    let mut depth = 0u32;
    loop {
        let mut best: Option<(usize, u32, Move)> = None;
        for &u in &current {
            let (nbs, _) = sm.moves_arc(&states[u as usize], max_len);
            for (v, mv) in nbs {
                if v == target {
                    let c = info[u as usize].0 + step_cost(states[u as usize].len(), 1);
                    if best.as_ref().is_none_or(|b| c < b.0) {
                        best = Some((c, u, mv));
                    }
                }
            }
        }
        if let Some((cost, mut u, mv)) = best {
            let mut walks = vec![target.clone()];
            let mut moves = vec![mv];
            loop {
                walks.push(states[u as usize].clone());
                let (_, p, m) = &info[u as usize];
                match m {
                    Some(m) => {
                        moves.push(m.clone());
                        u = *p;
                    }
                    None => break,
                }
            }
            walks.reverse();
            moves.reverse();
            return Layered::Found(walks, moves, cost);
        }
        let mut next: Vec<u32> = Vec::new();
        for &u in &current {
            let cur = states[u as usize].clone();
            let room = max_states.saturating_sub(states.len());
            let (nbs, cut) = if arcs_only {
                sm.moves_arc(&cur, max_len)
            } else {
                match sm.moves_limited(&cur, max_len, room) {
                    Some(m) => m,
                    None => return Layered::Budget,
                }
            };
            pruned |= cut;
            for (v, mv) in nbs {
                let c = info[u as usize].0 + step_cost(cur.len(), v.len());
                match index.get(&v) {
                    Some(&id) => {
                        // Only relax inside the layer being built.
                        if layer_of[id as usize] == depth + 1 && c < info[id as usize].0 {
                            info[id as usize] = (c, u, Some(mv));
                        }
                    }
                    None => {
                        let id = states.len() as u32;
                        index.insert(v.clone(), id);
                        states.push(v);
                        info.push((c, u, Some(mv)));
                        layer_of.push(depth + 1);
                        next.push(id);
                        if states.len() > max_states {
                            return Layered::Budget;
                        }
                    }
                }
            }
        }
        if next.is_empty() {
            return Layered::Exhausted { pruned };
        }
        current = next;
        depth += 1;
    }
}

fn build(
    input: &Walk,
    walks: Vec<Vec<V>>,
    moves: Vec<Move>,
    cost: usize,
    exact: bool,
) -> Decomposition {
    let area = moves.len();
    Decomposition {
        input: input.clone(),
        steps: walks.into_iter().map(Walk::new).collect(),
        moves,
        area,
        cost,
        exact,
    }
}

/// Minimum-area decomposition by exhaustive layered search; ties broken by cost.
pub fn square_decompose(g: &Graph, c: &Walk, budget: DecompBudget) -> Result<DecompResult> {
    if !c.is_cycle() {
        return Err(Error::Precondition("square_decompose needs a cycle".into()));
    }
    let r = reduce_seq(&c.seq);
    if r.len() == 1 {
        return Ok(DecompResult::Found(build(c, vec![r], vec![], 0, true)));
    }
    if (r.len() - 1) % 2 == 1 {
        return Ok(DecompResult::NotDecomposable);
    }
    let sm = SquareMoves::new(g);
    if !sm.has_squares() {
        return Ok(DecompResult::NotDecomposable);
    }
    let max_len = c.len() + budget.slack.unwrap_or(4 * g.vertex_count());
    Ok(
        match layered_search(&sm, &r, max_len, budget.max_states, false) {
            Layered::Found(w, m, cost) => DecompResult::Found(build(c, w, m, cost, true)),
            Layered::Exhausted { pruned: false } => DecompResult::NotDecomposable,
            _ => DecompResult::Unknown,
        },
    )
}

/// Greedy decomposition: walk across equal-length moves until some move shortens the walk.
/// Never lengthens; the area is not guaranteed minimal.
pub fn decompose_greedy(g: &Graph, c: &Walk, plateau_states: usize) -> Option<Decomposition> {
    let r = reduce_seq(&c.seq);
    if (r.len() - 1) % 2 == 1 {
        return None;
    }
    let sm = SquareMoves::new(g);
    let mut walks = vec![r];
    let mut moves = Vec::new();
    let mut cost = 0;
    while walks.last().unwrap().len() > 1 {
        let (path, path_moves) = plateau_descent(&sm, walks.last().unwrap(), plateau_states)?;
        for (w, m) in path.into_iter().zip(path_moves) {
            cost += step_cost(walks.last().unwrap().len(), w.len());
            walks.push(w);
            moves.push(m);
        }
    }
    Some(build(c, walks, moves, cost, false))
}

/// BFS over length-preserving moves from `start` to the nearest walk with a shortening move.
fn plateau_descent(
    sm: &SquareMoves,
    start: &[V],
    max_states: usize,
) -> Option<(Vec<Vec<V>>, Vec<Move>)> {
    let l = start.len();
    let mut parent: HashMap<Vec<V>, Option<(Vec<V>, Move)>> =
        HashMap::from([(start.to_vec(), None)]);
    let mut queue = std::collections::VecDeque::from([start.to_vec()]);
    while let Some(u) = queue.pop_front() {
        let (nbs, _) = sm.moves_arc(&u, l - 1);
        if let Some((v, mv)) = nbs
            .iter()
            .filter(|(v, _)| v.len() < l)
            .min_by_key(|(v, _)| v.len())
        {
            let mut path = vec![v.clone()];
            let mut mvs = vec![mv.clone()];
            let mut cur = u;
            while let Some(Some((p, m))) = parent.get(&cur) {
                path.push(cur.clone());
                mvs.push(m.clone());
                cur = p.clone();
            }
            path.reverse();
            mvs.reverse();
            return Some((path, mvs));
        }
        for (v, mv) in nbs {
            if !parent.contains_key(&v) {
                if parent.len() >= max_states {
                    return None;
                }
                parent.insert(v.clone(), Some((u.clone(), mv)));
                queue.push_back(v);
            }
        }
    }
    None
}

const PLATEAU_STATES: usize = 100_000;

/// Arc moves only, raising the length cap by 2 until a decomposition appears.
pub fn decompose_arcs(
    g: &Graph,
    c: &Walk,
    max_slack: usize,
    max_states: usize,
) -> Option<Decomposition> {
    let r = reduce_seq(&c.seq);
    if (r.len() - 1) % 2 == 1 {
        return None;
    }
    if r.len() == 1 {
        return Some(build(c, vec![r], vec![], 0, true));
    }
    let sm = SquareMoves::new(g);
    let l = r.len() - 1;
    for slack in (0..=max_slack).step_by(2) {
        match layered_search(&sm, &r, l + slack, max_states, true) {
            Layered::Found(w, m, cost) => return Some(build(c, w, m, cost, false)),
            Layered::Exhausted { pruned: false } | Layered::Budget => return None,
            Layered::Exhausted { pruned: true } => {}
        }
    }
    None
}

fn heuristic(g: &Graph, c: &Walk, budget: DecompBudget) -> Option<Decomposition> {
    decompose_greedy(g, c, PLATEAU_STATES).or_else(|| {
        decompose_arcs(
            g,
            c,
            budget.slack.unwrap_or(4 * g.vertex_count()),
            PLATEAU_STATES,
        )
    })
}

/// Exhaustive search first, heuristic searches when the exhaustive one runs out of budget.
pub fn decompose_best(g: &Graph, c: &Walk, budget: DecompBudget) -> Result<DecompResult> {
    match square_decompose(g, c, budget)? {
        DecompResult::Unknown => Ok(match heuristic(g, c, budget) {
            Some(d) => DecompResult::Found(d),
            None => DecompResult::Unknown,
        }),
        other => Ok(other),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleOutcome {
    Decomposed {
        area: usize,
        cost: usize,
        exact: bool,
    },
    NotDecomposable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposabilityReport {
    pub verdict: Verdict,
    /// Canonical simple cycles and their outcomes.
    pub per_cycle: Vec<(Walk, CycleOutcome)>,
    pub odd_cycle_shortcut: bool,
}

fn outcome(r: &DecompResult) -> CycleOutcome {
    match r {
        DecompResult::Found(d) => CycleOutcome::Decomposed {
            area: d.area,
            cost: d.cost,
            exact: d.exact,
        },
        DecompResult::NotDecomposable => CycleOutcome::NotDecomposable,
        DecompResult::Unknown => CycleOutcome::Unknown,
    }
}

pub fn is_square_decomposable(g: &Graph, budget: DecompBudget) -> Result<DecomposabilityReport> {
    if !g.is_bipartite() {
        return Ok(DecomposabilityReport {
            verdict: Verdict::No,
            per_cycle: Vec::new(),
            odd_cycle_shortcut: true,
        });
    }
    let cs = enumerate_simple_cycles(g)?;
    let per_cycle: Vec<(Walk, CycleOutcome)> = cs
        .cycles
        .par_iter()
        .map(|c| {
            let r = match heuristic(g, c, budget) {
                Some(d) => DecompResult::Found(d),
                None => square_decompose(g, c, budget)?,
            };
            Ok((c.clone(), outcome(&r)))
        })
        .collect::<Result<_>>()?;
    let verdict = if per_cycle
        .iter()
        .any(|(_, o)| *o == CycleOutcome::NotDecomposable)
    {
        Verdict::No
    } else if per_cycle
        .iter()
        .all(|(_, o)| matches!(o, CycleOutcome::Decomposed { .. }))
    {
        Verdict::Yes
    } else {
        Verdict::Unknown
    };
    Ok(DecomposabilityReport {
        verdict,
        per_cycle,
        odd_cycle_shortcut: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaReport {
    pub lambda: usize,
    pub exact: bool,
    /// Canonical simple cycles with their chosen decompositions.
    #[serde(skip)]
    pub decompositions: BTreeMap<Vec<V>, Decomposition>,
    pub budget: DecompBudget,
}

impl LambdaReport {
    /// Decomposition of any based cycle, reusing the canonical ones.
    pub fn decomposition_for(&self, g: &Graph, c: &Walk) -> Result<Decomposition> {
        if let Some(d) = self.decompositions.get(&c.seq) {
            return Ok(d.clone());
        }
        match decompose_best(g, c, self.budget)? {
            DecompResult::Found(d) => Ok(d),
            _ => Err(Error::Precondition(format!(
                "no decomposition found for {}",
                g.format_walk(&c.seq)
            ))),
        }
    }
}

/// `λ_G`: largest min-area cost over canonical simple cycles, clamped to `≥ max l(c)/2`; `1` without cycles.
pub fn lambda_bound(g: &Graph, budget: DecompBudget) -> Result<LambdaReport> {
    if !g.is_bipartite() {
        return Err(Error::Precondition(
            "graph is not square-decomposable (odd cycle)".into(),
        ));
    }
    let cs = enumerate_simple_cycles(g)?;
    if cs.is_empty() {
        return Ok(LambdaReport {
            lambda: 1,
            exact: true,
            decompositions: BTreeMap::new(),
            budget,
        });
    }
    let results: Vec<(Vec<V>, DecompResult)> = cs
        .cycles
        .par_iter()
        .map(|c| Ok((c.seq.clone(), decompose_best(g, c, budget)?)))
        .collect::<Result<_>>()?;
    let mut decompositions = BTreeMap::new();
    let mut exact = true;
    let mut lambda = 0;
    for (b, r) in results {
        match r {
            DecompResult::Found(d) => {
                exact &= d.exact;
                lambda = lambda.max(d.cost);
                decompositions.insert(b, d);
            }
            DecompResult::NotDecomposable => {
                return Err(Error::Precondition(format!(
                    "{} is not square-decomposable",
                    g.format_walk(&b)
                )))
            }
            DecompResult::Unknown => {
                return Err(Error::Budget(format!(
                    "no decomposition found for {}",
                    g.format_walk(&b)
                )))
            }
        }
    }
    lambda = lambda.max(cs.max_len().div_ceil(2)).max(1);
    Ok(LambdaReport {
        lambda,
        exact,
        decompositions,
        budget,
    })
}

/// A cactus `(ξ, s, χ)`; `xi` is a based simple cycle, `s[i]` is plugged at `xi[chi[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cactus {
    pub xi: Vec<V>,
    pub s: Vec<Cactus>,
    pub chi: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CactusForest {
    pub base: V,
    pub trees: Vec<Cactus>,
}

impl Cactus {
    pub fn leaf(xi: Vec<V>) -> Self {
        Cactus {
            xi,
            s: Vec::new(),
            chi: Vec::new(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.s.iter().map(Cactus::depth).max().unwrap_or(0)
    }

    pub fn is_leaf(&self) -> bool {
        self.s.is_empty()
    }

    fn validate(&self) -> Result<()> {
        let n = self.xi.len();
        let simple = n >= 2 && self.xi[0] == self.xi[n - 1] && {
            let mut body = self.xi[..n - 1].to_vec();
            body.sort_unstable();
            body.windows(2).all(|w| w[0] != w[1])
        };
        if !simple {
            return Err(Error::InvalidCactus(format!(
                "{:?} is not a simple cycle",
                self.xi
            )));
        }
        if self.s.len() != self.chi.len() || self.chi.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidCactus(
                "children and positions disagree".into(),
            ));
        }
        for (c, &k) in self.s.iter().zip(&self.chi) {
            if k >= n || c.xi[0] != self.xi[k] {
                return Err(Error::InvalidCactus(format!(
                    "child plugged at {k} does not start at ξ_{k}"
                )));
            }
            c.validate()?;
        }
        Ok(())
    }

    pub fn encode(&self) -> Result<Vec<V>> {
        self.validate()?;
        Ok(self.encode_unchecked())
    }

    fn encode_unchecked(&self) -> Vec<V> {
        let mut out = self.xi.clone();
        let mut shift = 0;
        for (c, &k) in self.s.iter().zip(&self.chi) {
            let e = c.encode_unchecked();
            let pos = k + shift;
            out.splice(pos..=pos, e.iter().copied());
            shift += e.len() - 1;
        }
        out
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "xi": g.format_walk(&self.xi),
            "chi": self.chi,
            "children": self.s.iter().map(|c| c.to_json(g)).collect::<Vec<_>>(),
        })
    }

    fn collect_level<'a>(&'a self, k: usize, out: &mut Vec<&'a Cactus>) {
        if k == 1 {
            out.push(self);
        } else {
            for c in &self.s {
                c.collect_level(k - 1, out);
            }
        }
    }
}

impl CactusForest {
    pub fn depth(&self) -> usize {
        self.trees.iter().map(Cactus::depth).max().unwrap_or(0)
    }

    /// `π(C_1, …, C_k)`.
    pub fn encode(&self) -> Result<Walk> {
        let mut out = vec![self.base];
        for t in &self.trees {
            if t.xi[0] != self.base {
                return Err(Error::InvalidCactus(
                    "forest members must share a base".into(),
                ));
            }
            out.extend_from_slice(&t.encode()?[1..]);
        }
        Ok(Walk::new(out))
    }

    /// `ℓ_k`, left to right.
    pub fn level(&self, k: usize) -> Vec<&Cactus> {
        let mut out = Vec::new();
        for t in &self.trees {
            t.collect_level(k, &mut out);
        }
        out
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::Value::Array(self.trees.iter().map(|t| t.to_json(g)).collect())
    }
}

/// Splits at returns to the base, then peels the simple skeleton through
/// the base and recurses on the excursions that avoid it.
pub fn cactus_decompose(c: &Walk) -> Result<CactusForest> {
    if !c.is_cycle() {
        return Err(Error::Precondition("cactus_decompose needs a cycle".into()));
    }
    Ok(CactusForest {
        base: c.start(),
        trees: forest_of(&c.seq),
    })
}

fn forest_of(c: &[V]) -> Vec<Cactus> {
    let a = c[0];
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..c.len() {
        if c[i] == a {
            out.push(cactus_of(&c[start..=i]));
            start = i;
        }
    }
    out
}

/// `c` meets its base only at both ends.
fn cactus_of(c: &[V]) -> Cactus {
    let a = c[0];
    let n = c.len() - 1;
    let mut xi = vec![a];
    let mut s = Vec::new();
    let mut chi = Vec::new();
    let mut i = 1;
    while i < n {
        let v = c[i];
        let j = (i..n).rev().find(|&j| c[j] == v).unwrap();
        let pos = xi.len();
        xi.push(v);
        if j > i {
            for child in forest_of(&c[i..=j]) {
                s.push(child);
                chi.push(pos);
            }
        }
        i = j + 1;
    }
    xi.push(a);
    Cactus { xi, s, chi }
}
