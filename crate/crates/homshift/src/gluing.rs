//! Patterns on finite grid supports: admissibility, block-like completion,
//! extension by reflection and gluing of two blocks.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde_json::json;

use crate::error::{Error, Result};
use crate::graph_core::{Graph, Walk, V};
use crate::walkspace::{
    delta_search, for_each_delta_neighbor, Distance, UnreachedReason, WitnessKind, WitnessPath,
};

pub type Coord = (i32, i32);

/// Finite partial map from grid cells to vertices. `x` grows right, `y` grows up.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pattern {
    pub cells: BTreeMap<Coord, V>,
}

/// Inclusive rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rect {
    pub x0: i32,
    pub y0: i32,
    pub x1: i32,
    pub y1: i32,
}

impl Rect {
    pub fn new(x0: i32, y0: i32, x1: i32, y1: i32) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    pub fn cells(&self) -> impl Iterator<Item = Coord> + '_ {
        (self.y0..=self.y1).flat_map(move |y| (self.x0..=self.x1).map(move |x| (x, y)))
    }

    pub fn contains(&self, (x, y): Coord) -> bool {
        self.x0 <= x && x <= self.x1 && self.y0 <= y && y <= self.y1
    }

    pub fn area(&self) -> usize {
        ((self.x1 - self.x0 + 1) * (self.y1 - self.y0 + 1)) as usize
    }
}

impl Pattern {
    pub fn new() -> Self {
        Pattern::default()
    }

    pub fn get(&self, c: Coord) -> Option<V> {
        self.cells.get(&c).copied()
    }

    pub fn set(&mut self, c: Coord, v: V) {
        self.cells.insert(c, v);
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// A full rectangle from rows listed top-down, bottom-left corner at `origin`.
    pub fn from_rows(rows: &[Vec<V>], origin: Coord) -> Self {
        let mut p = Pattern::new();
        let h = rows.len() as i32;
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                p.set((origin.0 + c as i32, origin.1 + h - 1 - r as i32), v);
            }
        }
        p
    }

    pub fn bounding_box(&self) -> Option<Rect> {
        let mut it = self.cells.keys();
        let &(x, y) = it.next()?;
        let mut r = Rect::new(x, y, x, y);
        for &(x, y) in it {
            r.x0 = r.x0.min(x);
            r.x1 = r.x1.max(x);
            r.y0 = r.y0.min(y);
            r.y1 = r.y1.max(y);
        }
        Some(r)
    }

    pub fn is_rectangle(&self) -> bool {
        self.bounding_box().is_none_or(|r| r.area() == self.len())
    }

    pub fn translate(&self, (dx, dy): Coord) -> Pattern {
        Pattern {
            cells: self
                .cells
                .iter()
                .map(|(&(x, y), &v)| ((x + dx, y + dy), v))
                .collect(),
        }
    }

    pub fn transpose(&self) -> Pattern {
        Pattern {
            cells: self.cells.iter().map(|(&(x, y), &v)| ((y, x), v)).collect(),
        }
    }

    pub fn restrict(&self, r: Rect) -> Pattern {
        Pattern {
            cells: self
                .cells
                .iter()
                .filter(|(c, _)| r.contains(**c))
                .map(|(&c, &v)| (c, v))
                .collect(),
        }
    }

    /// True when `other` agrees with `self` on every cell of `other`.
    pub fn contains_pattern(&self, other: &Pattern) -> bool {
        other.cells.iter().all(|(c, v)| self.get(*c) == Some(*v))
    }

    /// Rows top-down over the bounding box, `.` for absent cells.
    pub fn to_text(&self, g: &Graph) -> String {
        let Some(r) = self.bounding_box() else {
            return String::new();
        };
        let mut out = String::new();
        for y in (r.y0..=r.y1).rev() {
            let row: Vec<&str> = (r.x0..=r.x1)
                .map(|x| self.get((x, y)).map_or(".", |v| g.name(v)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses [`Pattern::to_text`]; the bottom-left cell lands at `(0, 0)`.
    pub fn from_text(g: &Graph, text: &str) -> Result<Pattern> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let h = lines.len() as i32;
        let mut p = Pattern::new();
        for (r, line) in lines.iter().enumerate() {
            for (c, tok) in line.split_whitespace().enumerate() {
                if tok == "." {
                    continue;
                }
                let v = g.id(tok).map_err(|_| Error::Parse {
                    line: r + 1,
                    msg: format!("unknown vertex `{tok}`"),
                })?;
                p.set((c as i32, h - 1 - r as i32), v);
            }
        }
        Ok(p)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let support: Vec<serde_json::Value> = self
            .cells
            .iter()
            .map(|(&(x, y), &v)| json!([x, y, g.name(v)]))
            .collect();
        json!({ "support": support })
    }

    pub fn from_json(g: &Graph, value: &serde_json::Value) -> Result<Pattern> {
        let bad = |m: &str| Error::Parse {
            line: 0,
            msg: m.to_string(),
        };
        let cells = value
            .get("support")
            .and_then(|s| s.as_array())
            .ok_or_else(|| bad("missing `support` array"))?;
        let mut p = Pattern::new();
        for cell in cells {
            let t = cell
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| bad("cells are [x, y, name]"))?;
            let x = t[0].as_i64().ok_or_else(|| bad("x must be an integer"))? as i32;
            let y = t[1].as_i64().ok_or_else(|| bad("y must be an integer"))? as i32;
            let name = t[2].as_str().ok_or_else(|| bad("name must be a string"))?;
            p.set((x, y), g.id(name)?);
        }
        Ok(p)
    }
}

pub fn grid_neighbors((x, y): Coord) -> [Coord; 4] {
    [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
}

pub fn is_locally_admissible(g: &Graph, p: &Pattern) -> bool {
    p.cells.iter().all(|(&(x, y), &v)| {
        [(x + 1, y), (x, y + 1)]
            .iter()
            .all(|c| p.get(*c).is_none_or(|w| g.has_edge(v, w)))
    })
}

/// Connected, with every row and column meeting the support in an interval.
pub fn is_block_like(p: &Pattern) -> bool {
    if p.is_empty() {
        return true;
    }
    let mut rows: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    let mut cols: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    for &(x, y) in p.cells.keys() {
        rows.entry(y).or_default().push(x);
        cols.entry(x).or_default().push(y);
    }
    let interval = |v: &Vec<i32>| v.last().unwrap() - v[0] + 1 == v.len() as i32;
    if !rows.values().all(interval) || !cols.values().all(interval) {
        return false;
    }
    let start = *p.cells.keys().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for nb in grid_neighbors(c) {
            if p.cells.contains_key(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == p.len()
}

/// Fills the bounding rectangle of a block-like admissible pattern, one concave corner at a time.
pub fn complete_blocklike(g: &Graph, p: &Pattern) -> Result<Pattern> {
    if !is_block_like(p) {
        return Err(Error::Shape(
            "support is not connected with interval rows and columns".into(),
        ));
    }
    if !is_locally_admissible(g, p) {
        return Err(Error::Precondition(
            "pattern is not locally admissible".into(),
        ));
    }
    let Some(r) = p.bounding_box() else {
        return Ok(p.clone());
    };
    let mut out = p.clone();
    while out.len() < r.area() {
        let mut filled = false;
        let mut single = None;
        for c in r.cells() {
            if out.get(c).is_some() {
                continue;
            }
            let (x, y) = c;
            let h = [(x - 1, y), (x + 1, y)]
                .into_iter()
                .find(|n| out.get(*n).is_some());
            let v = [(x, y - 1), (x, y + 1)]
                .into_iter()
                .find(|n| out.get(*n).is_some());
            match (h, v) {
                (Some(h), Some(v)) => {
                    let need: Vec<V> = grid_neighbors(c)
                        .iter()
                        .filter_map(|n| out.get(*n))
                        .collect();
                    let diag = (h.0, v.1);
                    let val = out
                        .get(diag)
                        .filter(|d| need.iter().all(|w| g.has_edge(*d, *w)))
                        .or_else(|| {
                            g.vertices()
                                .find(|u| need.iter().all(|w| g.has_edge(*u, *w)))
                        });
                    let val = val
                        .ok_or_else(|| Error::Shape(format!("no value fits corner ({x}, {y})")))?;
                    out.set(c, val);
                    filled = true;
                    break;
                }
                (Some(n), None) | (None, Some(n)) if single.is_none() => single = Some((c, n)),
                _ => {}
            }
        }
        if !filled {
            let (c, n) = single.ok_or_else(|| Error::Shape("completion stalled".into()))?;
            out.set(c, g.neighbors(out.get(n).unwrap())[0]);
        }
    }
    Ok(out)
}

/// Reflects an integer into `[0, b]` with period `2b`.
pub fn fold(i: i32, b: i32) -> i32 {
    if b == 0 {
        return 0;
    }
    let m = i.rem_euclid(2 * b);
    if m <= b {
        m
    } else {
        2 * b - m
    }
}

/// Values of a full rectangular pattern on `window`, by reflection through its sides.
pub fn extend_by_folding(g: &Graph, p: &Pattern, window: Rect) -> Result<Pattern> {
    let r = p
        .bounding_box()
        .ok_or_else(|| Error::Precondition("empty pattern".into()))?;
    if !p.is_rectangle() || !is_locally_admissible(g, p) {
        return Err(Error::Precondition(
            "extension needs an admissible full rectangle".into(),
        ));
    }
    let (w, h) = (r.x1 - r.x0, r.y1 - r.y0);
    let at = |x: i32, y: i32| p.get((r.x0 + x, r.y0 + y)).unwrap();
    let mut out = Pattern::new();
    for (x, y) in window.cells() {
        let (dx, dy) = (x - r.x0, y - r.y0);
        let v = match (w, h) {
            (0, 0) => {
                let v = at(0, 0);
                if !g.has_edge(v, v) && window.area() > 1 {
                    return Err(Error::FoldImpossible);
                }
                v
            }
            // a single column or row runs diagonally
            (0, _) => at(0, fold(dy + dx, h)),
            (_, 0) => at(fold(dx + dy, w), 0),
            _ => at(fold(dx, w), fold(dy, h)),
        };
        out.set((x, y), v);
    }
    Ok(out)
}

/// Δ-path of length exactly `k` from `p` to `q`; `None` when none exists.
pub fn connect_columns(
    g: &Graph,
    p: &Walk,
    q: &Walk,
    k: usize,
    cap: usize,
) -> Result<Option<WitnessPath>> {
    let (d, path) = delta_search(g, p, q, cap)?;
    match d {
        Distance::Unreached {
            reason: UnreachedReason::Budget,
            ..
        } => {
            return Err(Error::Budget(format!("Δ search exceeded {cap} states")));
        }
        Distance::Unreached { .. } => return Ok(None),
        Distance::Exact(d) if d <= k && (k - d).is_multiple_of(2) => {
            let mut path = path.unwrap();
            pad_even(g, &mut path, k - d)?;
            return Ok(Some(path));
        }
        Distance::Exact(d) if d > k => return Ok(None),
        Distance::Exact(_) => {}
    }
    if g.is_bipartite() {
        return Ok(None);
    }
    // shortest walk of the other parity in the doubled graph
    let mut prev: HashMap<(Vec<V>, bool), (Vec<V>, bool)> = HashMap::new();
    let start = (p.seq.clone(), false);
    prev.insert(start.clone(), start.clone());
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    let goal = (q.seq.clone(), k % 2 == 1);
    while let Some((u, du)) = queue.pop_front() {
        if u == goal {
            let mut chain = vec![u.0.clone()];
            let mut cur = u;
            while cur != start {
                cur = prev[&cur].clone();
                chain.push(cur.0.clone());
            }
            chain.reverse();
            if du > k {
                return Ok(None);
            }
            let mut path = WitnessPath::new(WitnessKind::Delta, p.clone());
            for w in chain.into_iter().skip(1) {
                path.push(Walk::new(w));
            }
            pad_even(g, &mut path, k - du)?;
            return Ok(Some(path));
        }
        if du >= k {
            continue;
        }
        if prev.len() > cap {
            return Err(Error::Budget(format!(
                "parity search exceeded {cap} states"
            )));
        }
        let mut nbs = Vec::new();
        for_each_delta_neighbor(g, &u.0, |w| nbs.push(w.to_vec()));
        for w in nbs {
            let key = (w, !u.1);
            if !prev.contains_key(&key) {
                prev.insert(key.clone(), u.clone());
                queue.push_back((key, du + 1));
            }
        }
    }
    Ok(None)
}

/// Appends `extra` (even) steps bouncing off a neighbour of the last walk.
fn pad_even(g: &Graph, path: &mut WitnessPath, extra: usize) -> Result<()> {
    if extra == 0 {
        return Ok(());
    }
    let last = path.last().clone();
    let mut nb = None;
    for_each_delta_neighbor(g, &last.seq, |w| {
        if nb.is_none() {
            nb = Some(w.to_vec());
        }
    });
    let nb = Walk::new(nb.ok_or_else(|| Error::Precondition("walk has no Δ-neighbour".into()))?);
    for _ in 0..extra / 2 {
        path.push(nb.clone());
        path.push(last.clone());
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct GlueResult {
    pub window: Pattern,
    /// Offset applied to the second block; nonzero only on bipartite graphs.
    pub shift: Coord,
    pub phase: u8,
    pub parity_shift_used: bool,
}

/// Joins two admissible square blocks of side `n` placed at `u` and `u2` into one admissible window.
pub fn glue(
    g: &Graph,
    p: &Pattern,
    p2: &Pattern,
    u: Coord,
    u2: Coord,
    cap: usize,
) -> Result<GlueResult> {
    let side = |q: &Pattern| -> Result<i32> {
        let r = q
            .bounding_box()
            .ok_or_else(|| Error::Precondition("empty block".into()))?;
        if !q.is_rectangle() || r.x1 - r.x0 != r.y1 - r.y0 || !is_locally_admissible(g, q) {
            return Err(Error::Precondition(
                "blocks must be admissible squares".into(),
            ));
        }
        Ok(r.x1 - r.x0 + 1)
    };
    let n = side(p)?;
    if side(p2)? != n {
        return Err(Error::Precondition("blocks differ in size".into()));
    }
    let norm = |q: &Pattern, at: Coord| {
        let r = q.bounding_box().unwrap();
        q.translate((at.0 - r.x0, at.1 - r.y0))
    };
    let (a, b) = (norm(p, u), norm(p2, u2));
    let gx = (u2.0 - u.0).abs() - n + 1;
    let gy = (u2.1 - u.1).abs() - n + 1;
    if gx <= 0 && gy <= 0 {
        return Err(Error::Precondition("blocks overlap".into()));
    }
    let phase = if g.is_bipartite() { 2 } else { 1 };
    if gx >= gy {
        let (left, right, flip) = if u.0 <= u2.0 {
            (a, b, false)
        } else {
            (b, a, true)
        };
        let (window, shift) = glue_horizontal(g, &left, &right, n, cap)?;
        let shift = if flip { (-shift.0, shift.1) } else { shift };
        Ok(GlueResult {
            window,
            shift,
            phase,
            parity_shift_used: shift != (0, 0),
        })
    } else {
        let (lo, hi, flip) = if u.1 <= u2.1 {
            (a.transpose(), b.transpose(), false)
        } else {
            (b.transpose(), a.transpose(), true)
        };
        let (window, shift) = glue_horizontal(g, &lo, &hi, n, cap)?;
        let shift = if flip { (0, -shift.0) } else { (0, shift.0) };
        Ok(GlueResult {
            window: window.transpose(),
            shift,
            phase,
            parity_shift_used: shift != (0, 0),
        })
    }
}

/// `left` lies strictly left of `right`; returns the window and the shift given to `right`.
fn glue_horizontal(
    g: &Graph,
    left: &Pattern,
    right: &Pattern,
    n: i32,
    cap: usize,
) -> Result<(Pattern, Coord)> {
    let (rl, rr) = (left.bounding_box().unwrap(), right.bounding_box().unwrap());
    let (y0, y1) = (rl.y0.min(rr.y0), rl.y1.max(rr.y1));
    for dx in [0, 1] {
        let right = right.translate((dx, 0));
        let rr = right.bounding_box().unwrap();
        let ext_l = extend_by_folding(g, left, Rect::new(rl.x0, y0, rl.x1, y1))?;
        let ext_r = extend_by_folding(g, &right, Rect::new(rr.x0, y0, rr.x1, y1))?;
        let column =
            |q: &Pattern, x: i32| Walk::new((y0..=y1).map(|y| q.get((x, y)).unwrap()).collect());
        let (cl, cr) = (column(&ext_l, rl.x1), column(&ext_r, rr.x0));
        let k = (rr.x0 - rl.x1) as usize;
        if let Some(path) = connect_columns(g, &cl, &cr, k, cap)? {
            let mut window = ext_l;
            window.cells.extend(ext_r.cells);
            for (i, col) in path
                .steps
                .iter()
                .enumerate()
                .skip(1)
                .take(k.saturating_sub(1))
            {
                for (j, &v) in col.seq.iter().enumerate() {
                    window.set((rl.x1 + i as i32, y0 + j as i32), v);
                }
            }
            debug_assert!(is_locally_admissible(g, &window));
            return Ok((window, (dx, 0)));
        }
        if !g.is_bipartite() {
            break;
        }
    }
    Err(Error::GluingFailed(format!(
        "no Δ-path of the required length between columns {n} apart"
    )))
}

/// Random admissible `n × n` block with bottom-left cell at `origin`: a random walk as the
/// bottom row, each further row a uniform Δ-neighbour of the one below.
pub fn random_block<R: rand::Rng>(
    g: &Graph,
    n: usize,
    origin: Coord,
    rng: &mut R,
) -> Result<Pattern> {
    if n == 0 {
        return Err(Error::Precondition("block side must be positive".into()));
    }
    let mut row = vec![rng.gen_range(0..g.vertex_count()) as V];
    while row.len() < n {
        let nb = g.neighbors(*row.last().unwrap());
        if nb.is_empty() {
            return Err(Error::Precondition("isolated vertex".into()));
        }
        row.push(nb[rng.gen_range(0..nb.len())]);
    }
    let mut rows = vec![row];
    while rows.len() < n {
        let mut options = Vec::new();
        crate::walkspace::for_each_delta_neighbor(g, rows.last().unwrap(), |q| {
            options.push(q.to_vec())
        });
        rows.push(options.swap_remove(rng.gen_range(0..options.len())));
    }
    rows.reverse();
    Ok(Pattern::from_rows(&rows, origin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::corpus::builtin;
    use proptest::prelude::*;

    fn rows(g: &Graph, s: &[&str]) -> Vec<Vec<V>> {
        s.iter()
            .map(|r| r.chars().map(|c| g.id(&c.to_string()).unwrap()).collect())
            .collect()
    }

    #[test]
    fn admissibility_examples() {
        let g = builtin("k2").unwrap();
        assert!(is_locally_admissible(
            &g,
            &Pattern::from_rows(&rows(&g, &["ab", "ba"]), (0, 0))
        ));
        assert!(!is_locally_admissible(
            &g,
            &Pattern::from_rows(&rows(&g, &["aa"]), (0, 0))
        ));
        assert!(is_locally_admissible(&g, &Pattern::new()));
    }

    #[test]
    fn text_and_json_round_trip() {
        let g = builtin("c4").unwrap();
        let mut p = Pattern::from_rows(&rows(&g, &["ab", "dc"]), (0, 0));
        p.cells.remove(&(1, 1));
        let t = p.to_text(&g);
        assert_eq!(t, "a .\nd c\n");
        assert_eq!(Pattern::from_text(&g, &t).unwrap(), p);
        assert_eq!(Pattern::from_json(&g, &p.to_json(&g)).unwrap(), p);
    }

    #[test]
    fn completion_examples() {
        let g = builtin("c4").unwrap();
        let rect = Pattern::from_rows(&rows(&g, &["ab", "dc"]), (0, 0));
        assert_eq!(complete_blocklike(&g, &rect).unwrap(), rect);
        let mut l = Pattern::new();
        l.set((0, 0), 0);
        l.set((1, 0), 1);
        l.set((1, 1), 2);
        let full = complete_blocklike(&g, &l).unwrap();
        assert_eq!(full.get((0, 1)), Some(1));
        assert!(is_locally_admissible(&g, &full) && full.is_rectangle());
        let k2 = builtin("k2").unwrap();
        let mut stair = Pattern::new();
        for (x, y) in [
            (0, 0),
            (1, 0),
            (2, 0),
            (3, 0),
            (1, 1),
            (2, 1),
            (3, 1),
            (2, 2),
            (3, 2),
            (3, 3),
        ] {
            stair.set((x, y), ((x + y) % 2) as V);
        }
        let full = complete_blocklike(&k2, &stair).unwrap();
        assert_eq!(full.len(), 16);
        assert!(full
            .cells
            .iter()
            .all(|(&(x, y), &v)| v == ((x + y) % 2) as V));
        let mut gap = Pattern::new();
        gap.set((0, 0), 0);
        gap.set((2, 0), 0);
        assert!(matches!(
            complete_blocklike(&k2, &gap),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn folding_examples() {
        let g = builtin("c4").unwrap();
        let p = Pattern::from_rows(&rows(&g, &["ab", "dc"]), (0, 0));
        assert_eq!(
            extend_by_folding(&g, &p, Rect::new(0, 0, 1, 0)).unwrap(),
            p.restrict(Rect::new(0, 0, 1, 0))
        );
        let big = extend_by_folding(&g, &p, Rect::new(0, 0, 3, 3)).unwrap();
        assert!(is_locally_admissible(&g, &big));
        for y in 0..4 {
            let row: Vec<V> = (0..4).map(|x| big.get((x, y)).unwrap()).collect();
            assert_eq!(row[0], row[2]);
            assert_eq!(row[1], row[3]);
        }
        let k2 = builtin("k2").unwrap();
        let bar = Pattern::from_rows(&rows(&k2, &["ab"]), (0, 0));
        let board = extend_by_folding(&k2, &bar, Rect::new(-3, -3, 6, 6)).unwrap();
        assert_eq!(board.len(), 100);
        assert!(is_locally_admissible(&k2, &board));
        let dot = Pattern::from_rows(&rows(&k2, &["a"]), (0, 0));
        assert!(matches!(
            extend_by_folding(&k2, &dot, Rect::new(0, 0, 1, 1)),
            Err(Error::FoldImpossible)
        ));
        let tl = builtin("tri_loop").unwrap();
        let loopy = Pattern::from_rows(&rows(&tl, &["a"]), (0, 0));
        assert_eq!(
            extend_by_folding(&tl, &loopy, Rect::new(0, 0, 2, 2))
                .unwrap()
                .len(),
            9
        );
    }

    #[test]
    fn connect_columns_examples() {
        let k2 = builtin("k2").unwrap();
        let ab = Walk::new(vec![0, 1]);
        let ba = Walk::new(vec![1, 0]);
        let p = connect_columns(&k2, &ab, &ba, 1, 10_000).unwrap().unwrap();
        assert_eq!(p.steps, vec![ab.clone(), ba.clone()]);
        assert!(connect_columns(&k2, &ab, &ba, 2, 10_000).unwrap().is_none());
        let k3 = builtin("k3").unwrap();
        let p = connect_columns(&k3, &ab, &ab, 3, 10_000).unwrap().unwrap();
        assert_eq!(p.len(), 3);
        assert!(crate::walkspace::verify_witness(&k3, &p));
    }

    #[test]
    fn glue_examples() {
        let k2 = builtin("k2").unwrap();
        let a = Pattern::from_rows(&[vec![0]], (0, 0));
        let b = Pattern::from_rows(&[vec![1]], (0, 0));
        let r = glue(&k2, &a, &b, (0, 0), (1, 0), 10_000).unwrap();
        assert_eq!(r.shift, (0, 0));
        let r = glue(&k2, &a, &a, (0, 0), (1, 0), 10_000).unwrap();
        assert_eq!(r.shift, (1, 0));
        assert!(r.window.contains_pattern(&a.translate((2, 0))));
        let c4 = builtin("c4").unwrap();
        let p = Pattern::from_rows(&rows(&c4, &["ab", "dc"]), (0, 0));
        let q = Pattern::from_rows(&rows(&c4, &["ba", "ab"]), (0, 0));
        for (u2, _) in [((4, 0), 0), ((5, 2), 0), ((0, -5), 0), ((-4, 1), 0)] {
            let r = glue(&c4, &p, &q, (0, 0), u2, 100_000).unwrap();
            assert!(is_locally_admissible(&c4, &r.window));
            assert!(r.window.contains_pattern(&p));
            assert!(r
                .window
                .contains_pattern(&q.translate((u2.0 + r.shift.0, u2.1 + r.shift.1))));
            assert!(r.shift.0.abs() <= 1 && r.shift.1.abs() <= 1);
        }
        let k3 = builtin("k3").unwrap();
        let s = Pattern::from_rows(&[vec![0]], (0, 0));
        let r = glue(&k3, &s, &s, (0, 0), (2, 0), 10_000).unwrap();
        assert_eq!(r.shift, (0, 0));
        assert_eq!(r.phase, 1);
    }

    proptest! {
        #[test]
        fn folding_stays_admissible(w in 1i32..4, h in 1i32..4, seed in 0u64..1000, x0 in -6i32..0, y0 in -6i32..0) {
            let g = builtin("fig_b").unwrap();
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let mut row = vec![0];
            for _ in 0..w {
                let nb = g.neighbors(*row.last().unwrap());
                row.push(nb[rand::Rng::gen_range(&mut rng, 0..nb.len())]);
            }
            let rect = extend_by_folding(&g, &Pattern::from_rows(&[row], (0, 0)), Rect::new(0, 0, w, h)).unwrap();
            let out = extend_by_folding(&g, &rect, Rect::new(x0, y0, 8, 8)).unwrap();
            prop_assert!(is_locally_admissible(&g, &out));
            prop_assert!(out.contains_pattern(&rect));
        }
    }
}
