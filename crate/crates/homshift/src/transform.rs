//! Witness paths for the logarithmic upper bound: padded square reduction,
//! Γ-insertion hosts, dichotomic compression and the cycle-to-spines sweep.

use std::collections::{HashMap, VecDeque};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::covers::SquareMoves;
use crate::cycles::{
    cactus_decompose, lambda_bound, Cactus, DecompBudget, Decomposition, LambdaReport,
};
use crate::error::{Error, Result};
use crate::graph_core::{enumerate_simple_cycles, reduce_seq, spine_power, Graph, Walk, V};
use crate::walkspace::{
    delta_search, r0, r1, r_to_delta, verify_witness_diag, WitnessKind, WitnessPath,
};

type SegPath = Vec<Vec<V>>;

const REDUCTION_STATES: usize = 20_000;
const ALIGNMENT_TRIES: usize = 64;

/// Cycles `r` at a common base, inserted after the prefix blocks `z` of a host cycle.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InsertionSpec {
    pub r: Vec<Walk>,
    pub z: Vec<usize>,
}

impl InsertionSpec {
    pub fn none() -> Self {
        InsertionSpec::default()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty() && self.z.is_empty()
    }
}

/// `Γ^r_z(d)`.
pub fn build_gamma(spec: &InsertionSpec, d: &Walk) -> Result<Walk> {
    if spec.is_empty() {
        return Ok(d.clone());
    }
    if spec.r.len() != spec.z.len() {
        return Err(Error::Gamma(format!(
            "{} cycles for {} blocks",
            spec.r.len(),
            spec.z.len()
        )));
    }
    let total: usize = spec.z.iter().sum();
    if total != d.len() {
        return Err(Error::Gamma(format!(
            "blocks cover {total}, host has length {}",
            d.len()
        )));
    }
    let a = spec.r[0].start();
    let mut out = vec![d.seq[0]];
    let mut at = 0;
    for (r, &z) in spec.r.iter().zip(&spec.z) {
        if !r.is_cycle() || r.start() != a {
            return Err(Error::Gamma("insertions must be cycles at one base".into()));
        }
        out.extend_from_slice(&d.seq[at + 1..=at + z]);
        at += z;
        if d.seq[at] != a {
            return Err(Error::Gamma(format!(
                "host is not at the base after {at} steps"
            )));
        }
        out.extend_from_slice(&r.seq[1..]);
    }
    Ok(Walk::new(out))
}

/// Joins walks sharing endpoints: `w0 ⊙ w1 ⊙ …`.
fn concat<'a>(parts: impl IntoIterator<Item = &'a [V]>) -> Vec<V> {
    let mut out: Vec<V> = Vec::new();
    for p in parts {
        if out.is_empty() {
            out.extend_from_slice(p);
        } else {
            out.extend_from_slice(&p[1..]);
        }
    }
    out
}

/// An R-path under construction; every pushed word is checked against the last one.
struct Tape<'g> {
    g: &'g Graph,
    words: SegPath,
}

impl<'g> Tape<'g> {
    fn new(g: &'g Graph, start: Vec<V>) -> Self {
        Tape {
            g,
            words: vec![start],
        }
    }

    fn cur(&self) -> &Vec<V> {
        self.words.last().unwrap()
    }

    fn push(&mut self, w: Vec<V>) -> Result<()> {
        let last = self.cur();
        if w == *last {
            return Ok(());
        }
        if !(r0(self.g, last, &w) || r1(self.g, last, &w)) {
            return Err(Error::Verification(self.words.len() - 1));
        }
        self.words.push(w);
        Ok(())
    }

    /// Replays a segment path at offset `start`.
    fn apply(&mut self, start: usize, seg: &[Vec<V>]) -> Result<()> {
        let n = seg[0].len();
        if self.cur().get(start..start + n) != Some(&seg[0][..]) {
            return Err(Error::Verification(self.words.len() - 1));
        }
        for s in &seg[1..] {
            let mut w = self.cur().clone();
            w[start..start + n].copy_from_slice(s);
            self.push(w)?;
        }
        Ok(())
    }

    /// Sets every spine partner in `[from, to)` to the canonical one of `cur[from]`.
    fn normalize(&mut self, from: usize, to: usize) -> Result<()> {
        let b = self.cur()[from];
        let x = partner(self.g, b)?;
        let mut w = self.cur().clone();
        for i in (from + 1..to).step_by(2) {
            w[i] = x;
        }
        self.push(w)
    }

    fn into_path(self) -> WitnessPath {
        let mut it = self.words.into_iter();
        let mut p = WitnessPath::new(WitnessKind::R, Walk::new(it.next().unwrap()));
        for w in it {
            p.push(Walk::new(w));
        }
        p
    }
}

fn partner(g: &Graph, a: V) -> Result<V> {
    g.spine_partner(a)
        .ok_or_else(|| Error::Precondition(format!("{} has no neighbour", g.name(a))))
}

fn padded(a: V, x: V, k: usize, c: &[V]) -> Vec<V> {
    concat([&spine_power(a, x, k)[..], c])
}

/// `[a, x] ++ w` with the pair at `p, p+1` removed.
fn remove_pair(w: &[V], p: usize, x: V) -> Vec<V> {
    let mut out = Vec::with_capacity(w.len());
    out.push(w[0]);
    out.push(x);
    out.extend_from_slice(&w[..p]);
    out.extend_from_slice(&w[p + 2..]);
    out
}

/// Blocks reachable from `block` by deleting adjacent pairs, with the deletion offsets.
fn reductions(g: &Graph, left: V, block: &[V], right: V) -> HashMap<Vec<V>, Vec<usize>> {
    let mut seen: HashMap<Vec<V>, Vec<usize>> = HashMap::new();
    seen.insert(block.to_vec(), Vec::new());
    let mut queue = VecDeque::from([block.to_vec()]);
    while let Some(b) = queue.pop_front() {
        if seen.len() > REDUCTION_STATES {
            break;
        }
        let hist = seen[&b].clone();
        for j in 0..b.len().saturating_sub(1) {
            let ln = if j == 0 { left } else { b[j - 1] };
            let rn = if j + 2 == b.len() { right } else { b[j + 2] };
            if !g.has_edge(ln, rn) {
                continue;
            }
            let mut nb = b[..j].to_vec();
            nb.extend_from_slice(&b[j + 2..]);
            if !seen.contains_key(&nb) {
                let mut h = hist.clone();
                h.push(j);
                seen.insert(nb.clone(), h);
                queue.push_back(nb);
            }
        }
    }
    seen
}

fn compatible(z1: &[V], z2: &[V]) -> bool {
    z1.len() == z2.len()
        && z1
            .iter()
            .zip(z2)
            .zip(z1.iter().zip(z2).skip(1))
            .all(|((a, b), (c, d))| a == b || c == d)
}

/// Replaces `c[i..je]` by `c2[i..je2]` under padding `k`.
fn replace_block(
    g: &Graph,
    x: V,
    k: usize,
    c: &[V],
    c2: &[V],
    i: usize,
    je: usize,
    je2: usize,
) -> Option<SegPath> {
    let (left, right) = (c[i - 1], c[je]);
    let rx = reductions(g, left, &c[i..je], right);
    let ry = reductions(g, left, &c2[i..je2], right);
    let mut by_len: HashMap<usize, Vec<(&Vec<V>, &Vec<usize>)>> = HashMap::new();
    for (z, h) in &ry {
        by_len.entry(z.len()).or_default().push((z, h));
    }
    let mut best: Option<(usize, &Vec<V>, &Vec<usize>, &Vec<V>, &Vec<usize>)> = None;
    for (z1, h1) in &rx {
        for &(z2, h2) in by_len.get(&z1.len()).into_iter().flatten() {
            if !compatible(z1, z2) {
                continue;
            }
            let cost = h1.len() + h2.len() + usize::from(z1 != z2);
            let better = match &best {
                None => true,
                Some((bc, b1, _, b2, _)) => (cost, z1, z2) < (*bc, *b1, *b2),
            };
            if better {
                best = Some((cost, z1, h1, z2, h2));
            }
        }
    }
    let (_, _, h1, z2, h2) = best?;
    let a = c[0];
    let mut path = vec![padded(a, x, k, c)];
    let mut off = 2 * k + i;
    for &r in h1 {
        let w = remove_pair(path.last().unwrap(), off + r, x);
        path.push(w);
        off += 2;
    }
    let mut w = path.last().unwrap().clone();
    w[off..off + z2.len()].copy_from_slice(z2);
    if w != *path.last().unwrap() {
        path.push(w);
    }
    let k2 = (2 * k + c.len()).checked_sub(c2.len())? / 2;
    let mut back = vec![padded(a, x, k2, c2)];
    let mut off2 = 2 * k2 + i;
    for &r in h2 {
        let w = remove_pair(back.last().unwrap(), off2 + r, x);
        back.push(w);
        off2 += 2;
    }
    if back.last() != path.last() {
        return None;
    }
    back.pop();
    path.extend(back.into_iter().rev());
    Some(path)
}

/// R-path from `t^k ⊙ c` to `t^{k + (l(c) - l(c2))/2} ⊙ c2`, for `l(c) ≥ l(c2)`.
fn reduce_step_padded(g: &Graph, x: V, c: &[V], c2: &[V], k: usize) -> Result<SegPath> {
    let a = c[0];
    if c == c2 {
        return Ok(vec![padded(a, x, k, c)]);
    }
    let err = || {
        Error::Precondition(format!(
            "no padded reduction from {} to {}",
            g.format_walk(c),
            g.format_walk(c2)
        ))
    };
    if c2.len() == 1 {
        let n = c.len() - 1;
        let rx = reductions(g, a, &c[1..n], a);
        let (z, h) = rx
            .iter()
            .filter(|(z, _)| z.len() == 1)
            .min_by_key(|(z, _)| (z[0] != x, z[0]))
            .ok_or_else(err)?;
        let mut path = vec![padded(a, x, k, c)];
        let mut off = 2 * k + 1;
        for &r in h {
            let w = remove_pair(path.last().unwrap(), off + r, x);
            path.push(w);
            off += 2;
        }
        if z[0] != x {
            let mut w = path.last().unwrap().clone();
            w[off] = x;
            path.push(w);
        }
        return Ok(path);
    }
    let m = c.len().min(c2.len());
    let p = c
        .iter()
        .zip(c2)
        .take_while(|(u, v)| u == v)
        .count()
        .min(m - 1);
    let s = c
        .iter()
        .rev()
        .zip(c2.iter().rev())
        .take_while(|(u, v)| u == v)
        .count()
        .min(m - 1);
    let mut tries = 0;
    for i in (1..=p).rev() {
        for suf in (1..=s).rev() {
            let (je, je2) = (c.len() - suf, c2.len() - suf);
            if i > je || i > je2 {
                continue;
            }
            tries += 1;
            if let Some(path) = replace_block(g, x, k, c, c2, i, je, je2) {
                return Ok(path);
            }
            if tries >= ALIGNMENT_TRIES {
                return Err(err());
            }
        }
    }
    Err(err())
}

fn seg_to_path(g: &Graph, seg: SegPath) -> Result<WitnessPath> {
    let mut tape = Tape::new(g, seg[0].clone());
    for w in seg.into_iter().skip(1) {
        tape.push(w)?;
    }
    Ok(tape.into_path())
}

/// R-path from `c` to `t^{(l(c)-l(c'))/2} ⊙ c'` for cycles differing by one square move.
pub fn reduce_step(g: &Graph, c: &Walk, cp: &Walk) -> Result<WitnessPath> {
    if !c.is_cycle()
        || !cp.is_cycle()
        || c.start() != cp.start()
        || c.len() < cp.len()
        || !(c.len() - cp.len()).is_multiple_of(2)
    {
        return Err(Error::Precondition(
            "reduce_step needs cycles at one base with l(c) ≥ l(c')".into(),
        ));
    }
    let sm = SquareMoves::new(g);
    let cap = c.len() + 4;
    let related = sm
        .moves(&c.seq, cap)
        .0
        .iter()
        .any(|(w, _)| reduce_seq(w) == cp.seq)
        || sm
            .moves(&cp.seq, cap)
            .0
            .iter()
            .any(|(w, _)| reduce_seq(w) == c.seq);
    if !related {
        return Err(Error::Precondition(
            "cycles do not differ by a square".into(),
        ));
    }
    let x = partner(g, c.start())?;
    seg_to_path(g, reduce_step_padded(g, x, &c.seq, &cp.seq, 0)?)
}

/// `λ_G`, `α_G` and cached decompositions for one graph.
pub struct Context<'g> {
    pub g: &'g Graph,
    pub lambda: usize,
    pub lambda_exact: bool,
    pub alpha: usize,
    pub c0: usize,
    pub simple_cycles: usize,
    pub diameter: usize,
    report: LambdaReport,
    cache: Mutex<HashMap<Vec<V>, Decomposition>>,
}

impl<'g> Context<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        Self::with_budget(g, DecompBudget::default())
    }

    pub fn with_budget(g: &'g Graph, budget: DecompBudget) -> Result<Self> {
        let report = lambda_bound(g, budget)?;
        let lambda = report.lambda;
        let c0 = 2 * lambda * (lambda + 1);
        Ok(Context {
            g,
            lambda,
            lambda_exact: report.exact,
            alpha: (240 * lambda * lambda).max(c0),
            c0,
            simple_cycles: enumerate_simple_cycles(g)?.len(),
            diameter: g.diameter()?,
            report,
            cache: Mutex::default(),
        })
    }

    pub fn decomposition(&self, c: &[V]) -> Result<Decomposition> {
        if let Some(d) = self.cache.lock().unwrap().get(c) {
            return Ok(d.clone());
        }
        let d = self
            .report
            .decomposition_for(self.g, &Walk::new(c.to_vec()))?;
        self.cache.lock().unwrap().insert(c.to_vec(), d.clone());
        Ok(d)
    }

    /// Spines needed to reduce `c`: `max(λ_G, cost)`.
    pub fn padding(&self, c: &[V]) -> Result<usize> {
        if c.len() <= 3 {
            return Ok(0);
        }
        Ok(self.lambda.max(self.decomposition(c)?.cost))
    }

    /// `2|V|(|C⁰| α log₂ l + |C⁰| diam + |V|)`.
    pub fn bound(&self, l: usize) -> f64 {
        let v = self.g.vertex_count() as f64;
        let c = self.simple_cycles as f64;
        let log = (l.max(1) as f64).log2();
        2.0 * v * (c * self.alpha as f64 * log + c * self.diameter as f64 + v)
    }

    fn reduction_seg(&self, c: &[V], k: usize) -> Result<SegPath> {
        let g = self.g;
        let a = c[0];
        let x = partner(g, a)?;
        let mut path = vec![padded(a, x, k, c)];
        let mut cur = c.to_vec();
        let mut kk = k;
        // drop backtracks first
        while let Some(j) = (1..cur.len() - 1).find(|&j| cur[j - 1] == cur[j + 1]) {
            let n = cur.len() - 1;
            let w = path.last().unwrap();
            let j = if j + 1 < n {
                j
            } else if j >= 2 {
                j - 1
            } else {
                0
            };
            let next = if j == 0 {
                let mut w = w.clone();
                w[2 * kk + 1] = x;
                cur = vec![a];
                kk += 1;
                w
            } else {
                let nw = remove_pair(w, 2 * kk + j, x);
                cur.drain(j..j + 2);
                kk += 1;
                nw
            };
            if next != *path.last().unwrap() {
                path.push(next);
            }
        }
        if cur.len() == 1 {
            return Ok(path);
        }
        let d = self.decomposition(c)?;
        if d.steps[0].seq != cur {
            return Err(Error::Precondition(
                "decomposition does not start at the reduced cycle".into(),
            ));
        }
        let base = kk as isize + cur.len() as isize / 2;
        let pad = |w: &Walk| -> Result<usize> {
            let p = base - (w.seq.len() / 2) as isize;
            usize::try_from(p)
                .map_err(|_| Error::Precondition("padding too small for this decomposition".into()))
        };
        for st in d.steps.windows(2) {
            let (u, v) = (&st[0], &st[1]);
            let seg = if u.seq.len() >= v.seq.len() {
                reduce_step_padded(g, x, &u.seq, &v.seq, pad(u)?)?
            } else {
                let mut s = reduce_step_padded(g, x, &v.seq, &u.seq, pad(v)?)?;
                s.reverse();
                s
            };
            path.extend(seg.into_iter().skip(1));
        }
        Ok(path)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Manifest {
    pub operation: String,
    pub bound_formula: String,
    pub bound_value: f64,
    pub actual_length: usize,
}

#[derive(Clone, Debug)]
pub struct TransformOutput {
    pub path: WitnessPath,
    pub manifest: Manifest,
}

impl TransformOutput {
    fn new(g: &Graph, path: WitnessPath, op: &str, formula: &str, bound: f64) -> Result<Self> {
        verify_witness_diag(g, &path).map_err(Error::Verification)?;
        let manifest = Manifest {
            operation: op.into(),
            bound_formula: formula.into(),
            bound_value: bound,
            actual_length: path.len(),
        };
        Ok(TransformOutput { path, manifest })
    }

    /// A verified path with no length bound attached.
    pub fn unbounded(g: &Graph, path: WitnessPath, op: &str) -> Result<Self> {
        Self::new(g, path, op, "none", f64::INFINITY)
    }

    pub fn within_bound(&self) -> bool {
        self.manifest.actual_length as f64 <= self.manifest.bound_value + 1e-9
    }
}

/// R-path from `t^λ ⊙ c` to `t^{λ + l(c)/2}`.
pub fn cycle_reduction(ctx: &Context, c: &Walk) -> Result<TransformOutput> {
    if !c.is_cycle() {
        return Err(Error::Precondition("cycle_reduction needs a cycle".into()));
    }
    let k = ctx.padding(&c.seq)?.max(ctx.lambda);
    let path = seg_to_path(ctx.g, ctx.reduction_seg(&c.seq, k)?)?;
    TransformOutput::new(ctx.g, path, "cycle_reduction", "lambda", ctx.lambda as f64)
}

/// R-path from `t^m ⊙ u` to `u ⊙ t'^m` through spines on the edges of `u`.
pub fn move_spines(g: &Graph, u: &Walk, x: V, z: V, m: usize) -> Result<WitnessPath> {
    let s = &u.seq;
    let word = |e: usize, y: V| -> Vec<V> {
        let mut w = s[..=e].to_vec();
        for _ in 0..m {
            w.push(y);
            w.push(s[e]);
        }
        w.extend_from_slice(&s[e + 1..]);
        w
    };
    if !g.has_edge(s[0], x) || !g.has_edge(*s.last().unwrap(), z) {
        return Err(Error::Precondition(
            "spine partners must be neighbours".into(),
        ));
    }
    let mut tape = Tape::new(g, word(0, x));
    let l = u.len();
    if m == 0 || l == 0 {
        if l == 0 && m > 0 {
            tape.push(word(0, z))?;
        }
        return Ok(tape.into_path());
    }
    // layered choice of uniform partners ending at z
    let mut layers: Vec<HashMap<V, V>> = Vec::with_capacity(l);
    let mut prev: Vec<V> = vec![x];
    for e in 0..l {
        let mut layer = HashMap::new();
        for &y in g.neighbors(s[e + 1]) {
            if let Some(&p) = prev.iter().find(|&&p| m == 1 || g.has_edge(y, p)) {
                layer.insert(y, p);
            }
        }
        prev = layer.keys().copied().collect();
        prev.sort_unstable();
        layers.push(layer);
    }
    let ys: Vec<V> = if layers[l - 1].contains_key(&z) {
        let mut ys = vec![z];
        for e in (1..l).rev() {
            ys.push(layers[e][ys.last().unwrap()]);
        }
        ys.reverse();
        ys
    } else {
        (0..l).map(|e| s[e]).collect()
    };
    for (e, &y) in ys.iter().enumerate() {
        tape.push(word(e + 1, y))?;
    }
    tape.push(word(l, z))?;
    Ok(tape.into_path())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Spine,
    Copy,
    Ins(usize),
}

/// Splits blocks of copies in halves while spines travel between them.
struct Engine<'a> {
    b: V,
    x: V,
    copy: &'a [V],
    ins: &'a [Walk],
    red: &'a SegPath,
    lam: usize,
}

impl Engine<'_> {
    fn render(&self, toks: &[Tok]) -> Vec<V> {
        let mut w = vec![self.b];
        for t in toks {
            match t {
                Tok::Spine => w.extend([self.x, self.b]),
                Tok::Copy => w.extend_from_slice(&self.copy[1..]),
                Tok::Ins(j) => w.extend_from_slice(&self.ins[*j].seq[1..]),
            }
        }
        w
    }

    fn push(&self, path: &mut SegPath, toks: &[Tok]) {
        let w = self.render(toks);
        if path.last() != Some(&w) {
            path.push(w);
        }
    }

    fn run_before(toks: &[Tok], at: usize) -> usize {
        toks[..at]
            .iter()
            .rev()
            .take_while(|t| **t == Tok::Spine)
            .count()
    }

    /// Jumps spines rightwards until `lam` of them sit just before `toks[*target]`.
    fn bring(&self, toks: &mut Vec<Tok>, target: &mut usize, path: &mut SegPath) -> Result<()> {
        loop {
            let run = Self::run_before(toks, *target);
            if run >= self.lam {
                return Ok(());
            }
            let i = (0..*target - run)
                .rev()
                .find(|&i| toks[i] == Tok::Spine)
                .ok_or_else(|| Error::Precondition("not enough spines in block".into()))?;
            toks.remove(i);
            toks.insert(*target - 1, Tok::Spine);
            self.push(path, toks);
        }
    }

    fn reduce_at(&self, toks: &mut Vec<Tok>, target: usize, path: &mut SegPath) {
        let pre = self.render(&toks[..target - self.lam]);
        let suf = self.render(&toks[target + 1..]);
        for w in &self.red[1..] {
            let word = concat([&pre[..], &w[..], &suf[..]]);
            if path.last() != Some(&word) {
                path.push(word);
            }
        }
        let gained = self.lam + (self.copy.len() - 1) / 2;
        toks.splice(
            target - self.lam..=target,
            std::iter::repeat_n(Tok::Spine, gained),
        );
    }

    fn nth_copy(toks: &[Tok], n: usize) -> Option<usize> {
        toks.iter()
            .enumerate()
            .filter(|(_, t)| **t == Tok::Copy)
            .nth(n)
            .map(|(i, _)| i)
    }

    fn copies(toks: &[Tok]) -> usize {
        toks.iter().filter(|t| **t == Tok::Copy).count()
    }

    fn split(&self, mut toks: Vec<Tok>) -> Result<(SegPath, Vec<Tok>, Vec<Tok>)> {
        let mut path = vec![self.render(&toks)];
        let m = Self::copies(&toks);
        let g = self.lam.min(m);
        let h = (m - g) / 2;
        for _ in 0..g {
            let mut target = Self::nth_copy(&toks, h).unwrap();
            self.bring(&mut toks, &mut target, &mut path)?;
            self.reduce_at(&mut toks, target, &mut path);
        }
        let boundary = if h == 0 {
            0
        } else {
            Self::nth_copy(&toks, h - 1).unwrap() + 1
        };
        if h > 0 {
            let lead = toks.iter().take_while(|t| **t == Tok::Spine).count();
            for _ in 0..self.lam {
                let boundary = Self::nth_copy(&toks, h - 1).unwrap() + 1;
                let i = (boundary..toks.len())
                    .find(|&i| toks[i] == Tok::Spine)
                    .ok_or_else(|| Error::Precondition("no spine to return".into()))?;
                toks.remove(i);
                toks.insert(lead, Tok::Spine);
                self.push(&mut path, &toks);
            }
        }
        let boundary = if h == 0 {
            boundary
        } else {
            Self::nth_copy(&toks, h - 1).unwrap() + 1
        };
        let right = toks.split_off(boundary);
        Ok((path, toks, right))
    }

    fn finish(&self, mut toks: Vec<Tok>) -> Result<(SegPath, Vec<Tok>)> {
        let mut path = vec![self.render(&toks)];
        while let Some(mut target) = Self::nth_copy(&toks, 0) {
            self.bring(&mut toks, &mut target, &mut path)?;
            self.reduce_at(&mut toks, target, &mut path);
        }
        Ok((path, toks))
    }

    /// Compresses every copy into spines; blocks above `lam` copies are halved first.
    fn compress(&self, g: &Graph, toks: Vec<Tok>) -> Result<(SegPath, Vec<Tok>)> {
        let mut path = vec![self.render(&toks)];
        let mut blocks = vec![toks];
        while blocks.iter().any(|b| Self::copies(b) > self.lam) {
            let parts: Vec<(SegPath, Vec<Vec<Tok>>)> = blocks
                .into_par_iter()
                .map(|b| {
                    if Self::copies(&b) > self.lam {
                        let (p, l, r) = self.split(b)?;
                        Ok((p, vec![l, r]))
                    } else {
                        Ok((vec![self.render(&b)], vec![b]))
                    }
                })
                .collect::<Result<_>>()?;
            let (segs, next): (Vec<SegPath>, Vec<Vec<Vec<Tok>>>) = parts.into_iter().unzip();
            path.extend(merge_parallel(g, &segs)?.into_iter().skip(1));
            blocks = next
                .into_iter()
                .flatten()
                .filter(|b| !b.is_empty())
                .collect();
        }
        let parts: Vec<(SegPath, Vec<Tok>)> = blocks
            .into_par_iter()
            .map(|b| self.finish(b))
            .collect::<Result<_>>()?;
        let (segs, done): (Vec<SegPath>, Vec<Vec<Tok>>) = parts.into_iter().unzip();
        path.extend(merge_parallel(g, &segs)?.into_iter().skip(1));
        Ok((path, done.concat()))
    }

    /// Swaps insertions past spines until `want[j]` spines precede insertion `j`.
    fn reanchor(&self, toks: &mut Vec<Tok>, want: &[usize], path: &mut SegPath) -> Result<()> {
        let before = |toks: &[Tok], j: usize| -> (usize, usize) {
            let at = toks.iter().position(|t| *t == Tok::Ins(j)).unwrap();
            (at, toks[..at].iter().filter(|t| **t == Tok::Spine).count())
        };
        loop {
            let mut moved = false;
            for dir in [true, false] {
                let mut any = false;
                let mut used = vec![false; toks.len()];
                for j in 0..want.len() {
                    let (at, n) = before(toks, j);
                    let swap = if dir && n < want[j] && toks.get(at + 1) == Some(&Tok::Spine) {
                        Some((at, at + 1))
                    } else if !dir && n > want[j] && at > 0 && toks[at - 1] == Tok::Spine {
                        Some((at - 1, at))
                    } else {
                        None
                    };
                    if let Some((p, q)) = swap {
                        if used[p] || used[q] {
                            continue;
                        }
                        used[p] = true;
                        used[q] = true;
                        toks.swap(p, q);
                        any = true;
                    }
                }
                if any {
                    self.push(path, toks);
                    moved = true;
                }
            }
            if (0..want.len()).all(|j| before(toks, j).1 == want[j]) {
                return Ok(());
            }
            if !moved {
                return Err(Error::Precondition(
                    "insertions cannot be re-anchored".into(),
                ));
            }
        }
    }
}

/// Runs segment paths side by side, advancing every part whose next step shares the chosen relation.
fn merge_parallel(g: &Graph, parts: &[SegPath]) -> Result<SegPath> {
    let mut idx = vec![0usize; parts.len()];
    let word = |idx: &[usize]| concat(parts.iter().zip(idx).map(|(p, &i)| &p[i][..]));
    let mut out = vec![word(&idx)];
    loop {
        let pending: Vec<usize> = (0..parts.len())
            .filter(|&i| idx[i] + 1 < parts[i].len())
            .collect();
        let Some(&first) = pending.first() else { break };
        let step = |idx: &[usize], i: usize, eps0: bool| {
            let (a, b) = (&parts[i][idx[i]], &parts[i][idx[i] + 1]);
            if eps0 {
                r0(g, a, b)
            } else {
                r1(g, a, b)
            }
        };
        let eps0 = step(&idx, first, true);
        if !eps0 && !step(&idx, first, false) {
            return Err(Error::Verification(idx[first]));
        }
        for i in pending {
            if step(&idx, i, eps0) {
                idx[i] += 1;
            }
        }
        out.push(word(&idx));
    }
    Ok(out)
}

/// Tokens of `Γ^r_z(t^s ⊙ c^n)`.
fn host_tokens(
    spec: &InsertionSpec,
    l: usize,
    s: usize,
    n: usize,
    a: V,
) -> Result<(Vec<Tok>, Vec<usize>)> {
    let mut toks = vec![Tok::Spine; s];
    if spec.is_empty() {
        toks.extend(std::iter::repeat_n(Tok::Copy, n));
        return Ok((toks, Vec::new()));
    }
    let bad = |m: String| Err(Error::Precondition(m));
    if spec.r.len() != spec.z.len() || spec.z.is_empty() {
        return bad("one insertion per block".into());
    }
    if spec.z[0] != 2 * s {
        return bad(format!("first block must cover the {} spines", s));
    }
    if spec.r.iter().any(|r| !r.is_cycle() || r.start() != a) {
        return bad("insertions must be cycles at the host base".into());
    }
    let mut want = Vec::new();
    let mut acc = 0;
    let mut copies = 0;
    for (j, &z) in spec.z.iter().enumerate() {
        if j > 0 {
            if z % l != 0 {
                return bad(format!("block {j} is not a whole number of copies"));
            }
            toks.extend(std::iter::repeat_n(Tok::Copy, z / l));
            copies += z / l;
        }
        acc += z;
        want.push(acc / 2);
        toks.push(Tok::Ins(j));
    }
    if copies != n {
        return bad(format!("blocks hold {copies} copies, expected {n}"));
    }
    Ok((toks, want))
}

/// R segment from `Γ^r_z(t^s ⊙ c^n)` to `Γ^r_z(t^{s + n l(c)/2})`.
fn compress_seg(
    ctx: &Context,
    spec: &InsertionSpec,
    c: &[V],
    s: usize,
    n: usize,
) -> Result<SegPath> {
    let g = ctx.g;
    let a = c[0];
    let x = partner(g, a)?;
    let l = c.len() - 1;
    let (toks, want) = host_tokens(spec, l.max(1), s, n, a)?;
    let lam = ctx.padding(c)?;
    if l <= 2 {
        // copies are already spines; only partners differ
        let red = vec![
            concat([&spine_power(a, x, lam)[..], c]),
            spine_power(a, x, lam + l / 2),
        ];
        let eng = Engine {
            b: a,
            x,
            copy: c,
            ins: &spec.r,
            red: &red,
            lam: 0,
        };
        let mut path = vec![eng.render(&toks)];
        let mut toks = toks;
        for t in toks.iter_mut() {
            if *t == Tok::Copy {
                *t = Tok::Spine;
            }
        }
        eng.push(&mut path, &toks);
        return finish_anchor(&eng, toks, &want, path);
    }
    if s < lam {
        return Err(Error::Precondition(format!(
            "host has {s} spines, reduction needs {lam}"
        )));
    }
    let red = ctx.reduction_seg(c, lam)?;
    let eng = Engine {
        b: a,
        x,
        copy: c,
        ins: &spec.r,
        red: &red,
        lam,
    };
    let (path, toks) = eng.compress(g, toks)?;
    finish_anchor(&eng, toks, &want, path)
}

fn finish_anchor(
    eng: &Engine,
    mut toks: Vec<Tok>,
    want: &[usize],
    mut path: SegPath,
) -> Result<SegPath> {
    if !want.is_empty() {
        eng.reanchor(&mut toks, want, &mut path)?;
    }
    Ok(path)
}

/// Dichotomic compression of `Γ^r_z(t^{λ l/2} ⊙ c^{(2^n−1)λ})` into `Γ^r_z(t^{2^{n−1} λ l})`.
pub fn parallel_compress(
    ctx: &Context,
    spec: &InsertionSpec,
    c: &Walk,
    n: u32,
) -> Result<TransformOutput> {
    let g = ctx.g;
    if !c.is_cycle() {
        return Err(Error::Precondition(
            "parallel_compress needs a cycle".into(),
        ));
    }
    let a = c.start();
    let x = partner(g, a)?;
    let l = c.len();
    let lam = ctx.lambda;
    let s = lam * l / 2;
    let copies = ((1usize << n) - 1) * lam;
    let d = concat([
        &spine_power(a, x, s)[..],
        &crate::graph_core::power(c, copies)?.seq[..],
    ]);
    let start = build_gamma(spec, &Walk::new(d))?;
    let bound = (30 * lam * lam * n as usize) as f64;
    let formula = "30*lambda^2*n";
    if n == 0 || l <= 2 {
        let end = build_gamma(spec, &Walk::new(spine_power(a, x, s + copies * l / 2)))?;
        let mut tape = Tape::new(g, start.seq);
        tape.push(end.seq)?;
        return TransformOutput::new(g, tape.into_path(), "parallel_compress", formula, bound);
    }
    let seg = compress_seg(ctx, spec, &c.seq, s, copies)?;
    let mut tape = Tape::new(g, start.seq);
    tape.apply(0, &seg)?;
    TransformOutput::new(g, tape.into_path(), "parallel_compress", formula, bound)
}

/// Δ-path from `Γ^r_z(t^{λ l/2} ⊙ c^n)` to `Γ^r_z(t^{(λ+n) l/2})`.
pub fn power_compress(
    ctx: &Context,
    spec: &InsertionSpec,
    c: &Walk,
    n: usize,
) -> Result<TransformOutput> {
    let g = ctx.g;
    if !c.is_cycle() || n == 0 {
        return Err(Error::Precondition(
            "power_compress needs a cycle and n ≥ 1".into(),
        ));
    }
    let a = c.start();
    let x = partner(g, a)?;
    let l = c.len();
    let s = ctx.lambda * l / 2;
    let d = concat([
        &spine_power(a, x, s)[..],
        &crate::graph_core::power(c, n)?.seq[..],
    ]);
    let start = build_gamma(spec, &Walk::new(d))?;
    let mut tape = Tape::new(g, start.seq);
    if l > 0 {
        let seg = compress_seg(ctx, spec, &c.seq, s, n)?;
        tape.apply(0, &seg)?;
    }
    let delta = r_to_delta(g, &tape.into_path())?;
    let bound = ctx.alpha as f64 * (n as f64).log2().max(1.0);
    TransformOutput::new(g, delta, "power_compress", "alpha*max(1, log2 n)", bound)
}

/// Δ-path from an even-length walk to a cycle, of length at most `diam + 1` on bipartite graphs.
/// The flag is set when the non-bipartite search fallback was used.
pub fn walk_to_cycle(g: &Graph, p: &Walk) -> Result<(WitnessPath, bool)> {
    if !p.len().is_multiple_of(2) {
        return Err(Error::Precondition("walk length must be even".into()));
    }
    let mut out = WitnessPath::new(WitnessKind::Delta, p.clone());
    if p.is_cycle() {
        return Ok((out, false));
    }
    let n = p.len();
    let s = &p.seq;
    if !g.is_bipartite() {
        return walk_to_cycle_search(g, p).map(|w| (w, true));
    }
    let dist = g.bfs(s[n]);
    let m = (1..=n)
        .find(|&k| dist[s[k] as usize] == Some(k))
        .ok_or_else(|| Error::Precondition("no splice point".into()))?;
    let q = g.shortest_walk(s[n], s[m])?;
    for k in 1..=m {
        let mut w = s[k..].to_vec();
        w.extend_from_slice(&q.seq[1..=k]);
        out.push(Walk::new(w));
    }
    Ok((out, false))
}

fn walk_to_cycle_search(g: &Graph, p: &Walk) -> Result<WitnessPath> {
    let mut prev: HashMap<Vec<V>, Vec<V>> = HashMap::new();
    prev.insert(p.seq.clone(), Vec::new());
    let mut queue = VecDeque::from([p.seq.clone()]);
    while let Some(w) = queue.pop_front() {
        if w[0] == *w.last().unwrap() {
            let mut chain = vec![w.clone()];
            while let Some(pv) = prev.get(chain.last().unwrap()).filter(|v| !v.is_empty()) {
                chain.push(pv.clone());
            }
            chain.reverse();
            let mut out = WitnessPath::new(WitnessKind::Delta, p.clone());
            for w in chain.into_iter().skip(1) {
                out.push(Walk::new(w));
            }
            return Ok(out);
        }
        if prev.len() > crate::walkspace::DEFAULT_STATE_BUDGET {
            break;
        }
        let mut nbs = Vec::new();
        crate::walkspace::for_each_delta_neighbor(g, &w, |q| nbs.push(q.to_vec()));
        for q in nbs {
            if !prev.contains_key(&q) {
                prev.insert(q.clone(), w.clone());
                queue.push_back(q);
            }
        }
    }
    Err(Error::Budget("no cycle reached".into()))
}

/// Sweeps a cactus forest, turning every cycle into spines at its base.
struct Sweep<'c, 'g> {
    ctx: &'c Context<'g>,
    tape: Tape<'g>,
}

impl Sweep<'_, '_> {
    fn runs(items: &[Cactus]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < items.len() {
            let mut j = i + 1;
            if items[i].is_leaf() && items[i].xi.len() >= 5 {
                while j < items.len() && items[j] == items[i] {
                    j += 1;
                }
            }
            out.push((i, j));
            i = j;
        }
        out
    }

    fn need_list(&self, items: &[Cactus]) -> Result<usize> {
        let mut need = 0;
        for (i, j) in Self::runs(items) {
            need = need.max(if j - i >= 2 {
                self.ctx.padding(&items[i].xi)?
            } else {
                self.need(&items[i])?
            });
        }
        Ok(need)
    }

    fn need(&self, t: &Cactus) -> Result<usize> {
        let own = self.ctx.padding(&t.xi)?;
        if t.is_leaf() {
            return Ok(own);
        }
        let mut first = Vec::new();
        let mut m = 0;
        for (j, ch) in group(t).into_iter().enumerate() {
            if j == 0 {
                first = ch;
            } else {
                m = m.max(self.need_list(&ch)?);
            }
        }
        Ok(self.need_list(&first)?.max(m + own))
    }

    fn forest(&mut self, items: &[Cactus], mut pos: usize, mut k: usize) -> Result<()> {
        for (i, j) in Self::runs(items) {
            let len = items[i].encode()?.len() - 1;
            if j - i >= 2 {
                let d = &items[i].xi;
                let lam = self.ctx.padding(d)?;
                if k < lam {
                    return Err(Error::Precondition("spine bundle too small".into()));
                }
                self.tape.normalize(pos - 2 * lam, pos)?;
                let seg = compress_seg(self.ctx, &InsertionSpec::none(), d, lam, j - i)?;
                self.tape.apply(pos - 2 * lam, &seg)?;
                pos += (j - i) * len;
                k += (j - i) * len / 2;
            } else {
                self.tree(&items[i], pos, k)?;
                pos += len;
                k += len / 2;
            }
        }
        Ok(())
    }

    fn tree(&mut self, t: &Cactus, mut pos: usize, mut k: usize) -> Result<()> {
        let groups = group(t);
        if !groups[0].is_empty() {
            self.forest(&groups[0], pos, k)?;
            let len: usize = groups[0]
                .iter()
                .map(|c| c.encode().map(|e| e.len() - 1))
                .sum::<Result<usize>>()?;
            pos += len;
            k += len / 2;
        }
        let s = t.xi.len() - 1;
        let own = self.ctx.padding(&t.xi)?;
        let mut m = 0;
        for ch in &groups[1..] {
            m = m.max(self.need_list(ch)?);
        }
        if k < m + own {
            return Err(Error::Precondition("spine bundle too small".into()));
        }
        let s0 = pos - 2 * m;
        let mut q = pos + 1;
        for j in 1..=s {
            let from = s0 + j - 1;
            if q - from > 1 {
                let seg = self.tape.cur()[from..=q].to_vec();
                let (b, v) = (seg[0], seg[seg.len() - 1]);
                let crossed: Vec<V> = (0..seg.len())
                    .map(|i| if i % 2 == 0 { b } else { v })
                    .collect();
                self.tape.apply(from, &[seg, crossed])?;
            }
            if j < s {
                let ch = &groups[j];
                let bundle = (q - (s0 + j)) / 2;
                self.forest(ch, q, bundle)?;
                let len: usize = ch
                    .iter()
                    .map(|c| c.encode().map(|e| e.len() - 1))
                    .sum::<Result<usize>>()?;
                q += len + 1;
            }
        }
        if own > 0 {
            self.tape.normalize(s0 - 2 * own, s0)?;
            let seg = self.ctx.reduction_seg(&t.xi, own)?;
            self.tape.apply(s0 - 2 * own, &seg)?;
        }
        Ok(())
    }
}

/// Children of `t` grouped by the skeleton index they hang from.
fn group(t: &Cactus) -> Vec<Vec<Cactus>> {
    let mut out = vec![Vec::new(); t.xi.len()];
    for (c, &j) in t.s.iter().zip(&t.chi) {
        out[j].push(c.clone());
    }
    out
}

/// Verified Δ-path from a cycle `c` to `t^{l(c)/2}` through the cactus sweep.
pub fn cycle_to_spines(ctx: &Context, c: &Walk) -> Result<TransformOutput> {
    let g = ctx.g;
    if !c.is_cycle() || !c.len().is_multiple_of(2) {
        return Err(Error::Precondition(
            "cycle_to_spines needs a cycle of even length".into(),
        ));
    }
    let l = c.len();
    let formula = "2|V|(|C0|*alpha*log2 l + |C0|*diam + |V|)";
    let a = c.start();
    let x = partner(g, a)?;
    let target = spine_power(a, x, l / 2);
    if c.seq == target {
        return TransformOutput::new(
            g,
            WitnessPath::new(WitnessKind::Delta, c.clone()),
            "cycle_to_spines",
            formula,
            ctx.bound(l),
        );
    }
    let forest = cactus_decompose(c)?;
    let mut sweep = Sweep {
        ctx,
        tape: Tape::new(g, Vec::new()),
    };
    let p = sweep.need_list(&forest.trees)?;
    sweep.tape = Tape::new(g, padded(a, x, p, &c.seq));
    sweep.forest(&forest.trees, 2 * p, p)?;
    let len = sweep.tape.cur().len();
    sweep.tape.normalize(0, len)?;
    let r = sweep.tape.into_path();
    let delta = r_to_delta(g, &r)?;
    let mut out = WitnessPath::new(WitnessKind::Delta, c.clone());
    for w in delta.steps.iter().skip(1) {
        let cut = Walk::new(w.seq[2 * p..].to_vec());
        if cut != *out.last() {
            out.push(cut);
        }
    }
    if out.last().seq != target {
        return Err(Error::Verification(out.len()));
    }
    TransformOutput::new(g, out, "cycle_to_spines", formula, ctx.bound(l))
}

/// [`cycle_to_spines`], replaced by an exact search result when the walk space is small enough.
pub fn cycle_to_spines_best(
    ctx: &Context,
    c: &Walk,
    exact_cap: usize,
) -> Result<(TransformOutput, bool)> {
    let built = cycle_to_spines(ctx, c)?;
    let target = built.path.last().clone();
    if exact_cap > 0 {
        if let Ok((_, Some(p))) = delta_search(ctx.g, c, &target, exact_cap) {
            if p.len() < built.path.len() {
                let bound = built.manifest.bound_value;
                let formula = built.manifest.bound_formula.clone();
                return Ok((
                    TransformOutput::new(ctx.g, p, "cycle_to_spines", &formula, bound)?,
                    true,
                ));
            }
        }
    }
    Ok((built, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::corpus::{builtin, KEN_EXTERIOR};
    use crate::cycles::tests::random_cycle;
    use crate::graph_core::power;
    use crate::walkspace::{delta_distance, r_distance, verify_witness};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(g: &Graph, s: &str) -> Walk {
        Walk::new(s.chars().map(|c| g.id(&c.to_string()).unwrap()).collect())
    }

    #[test]
    fn gamma_examples() {
        let g = builtin("c4").unwrap();
        let d = power(&w(&g, "abcda"), 2).unwrap();
        let empty = InsertionSpec {
            r: vec![w(&g, "a")],
            z: vec![8],
        };
        assert_eq!(build_gamma(&empty, &d).unwrap(), d);
        let spec = InsertionSpec {
            r: vec![w(&g, "ada"), w(&g, "ada")],
            z: vec![4, 4],
        };
        assert_eq!(build_gamma(&spec, &d).unwrap(), w(&g, "abcdadabcdada"));
        let bad = InsertionSpec {
            r: vec![w(&g, "ada")],
            z: vec![3],
        };
        assert!(matches!(
            build_gamma(&bad, &w(&g, "abc")),
            Err(Error::Gamma(_))
        ));
    }

    #[test]
    fn reduce_step_within_small_steps_bound() {
        for name in ["c4", "fig_b", "ken", "cluster_1"] {
            let g = builtin(name).unwrap();
            let ctx = Context::new(&g).unwrap();
            for d in ctx.report.decompositions.values() {
                for st in d.steps.windows(2) {
                    let (u, v) = if st[0].len() >= st[1].len() {
                        (&st[0], &st[1])
                    } else {
                        (&st[1], &st[0])
                    };
                    let u = if u.is_empty() { continue } else { u };
                    let v = if v.is_empty() {
                        Walk::point(u.start())
                    } else {
                        v.clone()
                    };
                    let p = reduce_step(&g, u, &v).unwrap();
                    assert!(verify_witness(&g, &p));
                    assert!(
                        p.len() <= ((u.len() - v.len()) / 2).max(2),
                        "{name}: {}",
                        p.len()
                    );
                    let x = g.spine_partner(u.start()).unwrap();
                    assert_eq!(
                        p.last().seq,
                        padded(u.start(), x, (u.len() - v.len()) / 2, &v.seq)
                    );
                    if g.vertex_count() <= 6 && u.len() <= 8 {
                        let o = r_distance(&g, p.first(), p.last(), 1_000_000).unwrap();
                        assert!(o <= p.len());
                    }
                }
            }
        }
    }

    #[test]
    fn reduce_step_rejects_unrelated() {
        let g = builtin("c4").unwrap();
        assert!(matches!(
            reduce_step(&g, &w(&g, "abcdabcda"), &w(&g, "ababa")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cycle_reduction_examples() {
        let g = builtin("c4").unwrap();
        let ctx = Context::new(&g).unwrap();
        let out = cycle_reduction(&ctx, &w(&g, "abcda")).unwrap();
        assert!(out.within_bound());
        assert!(out.path.len() <= 2);
        let o = r_distance(&g, out.path.first(), out.path.last(), 1_000_000).unwrap();
        assert!(o <= out.path.len());
        let triv = cycle_reduction(&ctx, &w(&g, "a")).unwrap();
        assert!(triv.path.is_empty());
    }

    #[test]
    fn cycle_reduction_on_every_rotation() {
        for name in ["fig_b", "ken", "cluster_2"] {
            let g = builtin(name).unwrap();
            let ctx = Context::new(&g).unwrap();
            for c in enumerate_simple_cycles(&g)
                .unwrap()
                .cycles
                .iter()
                .filter(|c| c.len() <= 8)
            {
                for b in crate::graph_core::based_versions(&c.seq) {
                    let b2 = b.clone();
                    let out = cycle_reduction(&ctx, &Walk::new(b)).unwrap();
                    assert!(verify_witness(&g, &out.path));
                    assert!(out.path.len() <= ctx.padding(&b2).unwrap(), "{name}");
                }
            }
        }
    }

    #[test]
    fn move_spines_examples() {
        let g = builtin("c4").unwrap();
        let (a, b, c, d) = (0, 1, 2, 3);
        let p = move_spines(&g, &w(&g, "ab"), d, c, 1).unwrap();
        assert!(verify_witness(&g, &p) && p.len() <= 2);
        assert_eq!(p.first().seq, vec![a, d, a, b]);
        assert_eq!(p.last().seq, vec![a, b, c, b]);
        let p3 = move_spines(&g, &w(&g, "ab"), d, c, 3).unwrap();
        assert!(verify_witness(&g, &p3) && p3.len() <= 2);
        let e = move_spines(&g, &w(&g, "a"), d, d, 2).unwrap();
        assert!(e.is_empty());
        let o = r_distance(&g, p3.first(), p3.last(), 1_000_000).unwrap();
        assert!(o <= p3.len());
    }

    #[test]
    fn move_spines_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for name in ["fig_b", "ken", "p3"] {
            let g = builtin(name).unwrap();
            for _ in 0..30 {
                let u = random_cycle(&g, &mut rng, 6);
                let x = g.spine_partner(u.start()).unwrap();
                let z = *g.neighbors(u.end()).last().unwrap();
                for m in 1..4 {
                    let p = move_spines(&g, &u, x, z, m).unwrap();
                    assert!(verify_witness(&g, &p));
                    assert!(p.len() <= u.len() + 1);
                }
            }
        }
    }

    #[test]
    fn parallel_compress_examples() {
        let g = builtin("c4").unwrap();
        let ctx = Context::new(&g).unwrap();
        let c = w(&g, "abcda");
        let out = parallel_compress(&ctx, &InsertionSpec::none(), &c, 2).unwrap();
        assert!(out.within_bound(), "{:?}", out.manifest);
        let lam = ctx.lambda;
        assert_eq!(out.path.last().seq, spine_power(0, 1, 2 * lam * 4));
        let zero = parallel_compress(&ctx, &InsertionSpec::none(), &c, 0).unwrap();
        assert!(zero.path.is_empty());
        let sp = parallel_compress(&ctx, &InsertionSpec::none(), &w(&g, "aba"), 3).unwrap();
        assert!(sp.path.is_empty());
    }

    #[test]
    fn parallel_compress_with_insertions() {
        let g = builtin("c4").unwrap();
        let ctx = Context::new(&g).unwrap();
        let c = w(&g, "abcda");
        let lam = ctx.lambda;
        let copies = 3 * lam;
        let z = vec![lam * 4, 4 * lam, 4 * (copies - lam)];
        let spec = InsertionSpec {
            r: vec![w(&g, "adcba"), w(&g, "a"), w(&g, "abcda")],
            z,
        };
        let out = parallel_compress(&ctx, &spec, &c, 2).unwrap();
        assert!(
            verify_witness(&g, &out.path) && out.within_bound(),
            "{:?}",
            out.manifest
        );
        let end = build_gamma(&spec, &Walk::new(spine_power(0, 1, 2 * lam * 4))).unwrap();
        assert_eq!(*out.path.last(), end);
    }

    #[test]
    fn power_compress_examples() {
        let g = builtin("c4").unwrap();
        let ctx = Context::new(&g).unwrap();
        let c = w(&g, "abcda");
        let out = power_compress(&ctx, &InsertionSpec::none(), &c, 8).unwrap();
        assert!(out.manifest.actual_length as f64 <= 3.0 * ctx.alpha as f64);
        assert_eq!(out.path.first().len(), out.path.last().len());
        let one = power_compress(&ctx, &InsertionSpec::none(), &c, 1).unwrap();
        assert!(one.path.len() <= ctx.alpha);
        for n in [2, 5, 17, 64] {
            let o = power_compress(&ctx, &InsertionSpec::none(), &c, n).unwrap();
            assert!(o.within_bound(), "{n}: {:?}", o.manifest);
        }
    }

    #[test]
    fn walk_to_cycle_examples() {
        let g = builtin("c4").unwrap();
        let (p, flag) = walk_to_cycle(&g, &w(&g, "abcbc")).unwrap();
        assert!(!flag && verify_witness(&g, &p) && p.last().is_cycle() && p.len() <= 3);
        assert!(
            delta_distance(&g, p.first(), p.last(), 100_000)
                .unwrap()
                .exact()
                .unwrap()
                <= p.len()
        );
        assert!(walk_to_cycle(&g, &w(&g, "abab")).is_err());
        let k2 = builtin("k2").unwrap();
        let (p, _) = walk_to_cycle(&k2, &w(&k2, "ababa")).unwrap();
        assert!(p.len() <= 2 && p.last().is_cycle());
        let (p, _) = walk_to_cycle(&g, &w(&g, "abcda")).unwrap();
        assert!(p.is_empty());
        let (p, flag) = walk_to_cycle(&builtin("k3").unwrap(), &Walk::new(vec![0, 1, 2])).unwrap();
        let _ = &p;
        assert!(flag && p.last().is_cycle());
    }

    #[test]
    fn walk_to_cycle_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for b in crate::cli::corpus::all() {
            if !b.graph.is_bipartite() {
                continue;
            }
            let g = &b.graph;
            let diam = g.diameter().unwrap();
            for _ in 0..50 {
                let n = 2 * rand::Rng::gen_range(&mut rng, 1..8);
                let mut seq = vec![rand::Rng::gen_range(&mut rng, 0..g.vertex_count() as V)];
                for _ in 0..n {
                    let nb = g.neighbors(*seq.last().unwrap());
                    seq.push(nb[rand::Rng::gen_range(&mut rng, 0..nb.len())]);
                }
                let (p, _) = walk_to_cycle(g, &Walk::new(seq)).unwrap();
                assert!(
                    verify_witness(g, &p) && p.last().is_cycle() && p.len() <= diam + 1,
                    "{}",
                    b.name
                );
            }
        }
    }

    #[test]
    fn cycle_to_spines_c4() {
        let g = builtin("c4").unwrap();
        let ctx = Context::new(&g).unwrap();
        let c = w(&g, "abcda");
        let out = cycle_to_spines(&ctx, &c).unwrap();
        assert!(out.within_bound());
        assert_eq!(out.path.last().seq, w(&g, "ababa").seq);
        let oracle = delta_distance(&g, &c, out.path.last(), 1_000_000)
            .unwrap()
            .exact()
            .unwrap();
        assert_eq!(oracle, 2);
        assert!(oracle <= out.path.len());
        let (best, exact) = cycle_to_spines_best(&ctx, &c, 100_000).unwrap();
        assert!(best.path.len() == 2 || !exact);
        let triv = cycle_to_spines(&ctx, &w(&g, "ababa")).unwrap();
        assert!(triv.path.is_empty());
    }

    #[test]
    fn cycle_to_spines_ken_hexagon() {
        let g = builtin("ken").unwrap();
        let ctx = Context::new(&g).unwrap();
        let hex = g.parse_walk(&KEN_EXTERIOR.join(",")).unwrap();
        let c = power(&hex, 4).unwrap();
        let out = cycle_to_spines(&ctx, &c).unwrap();
        assert!(
            verify_witness(&g, &out.path) && out.within_bound(),
            "{:?}",
            out.manifest
        );
    }

    #[test]
    fn cycle_to_spines_random_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for name in ["c4", "fig_b", "ken", "p3", "k2", "cluster_2"] {
            let g = builtin(name).unwrap();
            let ctx = Context::new(&g).unwrap();
            for _ in 0..25 {
                let c = random_cycle(&g, &mut rng, 20);
                if c.len() % 2 != 0 {
                    continue;
                }
                let out = cycle_to_spines(&ctx, &c)
                    .unwrap_or_else(|e| panic!("{name} {}: {e}", g.format_walk(&c.seq)));
                assert!(out.within_bound(), "{name}");
                if g.vertex_count() <= 6 && c.len() <= 8 {
                    let o = delta_distance(&g, &c, out.path.last(), 1_000_000)
                        .unwrap()
                        .exact()
                        .unwrap();
                    assert!(o <= out.path.len());
                }
            }
        }
    }
}
