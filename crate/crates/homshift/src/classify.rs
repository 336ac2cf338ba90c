//! Gap profiles, the classification ladder and the μ_c machinery for the
//! Ken-katabami graph.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::covers::{build_square_cover, CoverAtlas, CoverBudget, CoverStatus};
use crate::cycles::{is_square_decomposable, DecompBudget, Verdict};
use crate::error::{Error, Result};
use crate::graph_core::{power, spine_power, Graph, Walk, V};
use crate::walkspace::{
    delta_diameter, delta_distance, for_each_delta_neighbor, Exactness, DEFAULT_STATE_BUDGET,
};

pub const CITE_TREE: &str = "thm-chandgotia";
pub const CITE_LOG: &str = "theorem.square.dismantable.to.log";
pub const CITE_COVER: &str = "proposition.square.to.gamma";
pub const CITE_LINEAR: &str = "thm:main1";
pub const CITE_KEN: &str = "theorem.kenkatabami-μ-argument";
pub const CITE_PHASE: &str = "prop:block-gluing";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyBudget {
    pub cover: CoverBudget,
    pub states: usize,
    pub n_max: usize,
    pub decomp: DecompBudget,
    /// Largest `n` tried for the linear lower-bound certificate.
    pub linear_n_max: usize,
}

impl Default for ClassifyBudget {
    fn default() -> Self {
        ClassifyBudget {
            cover: CoverBudget::default(),
            states: DEFAULT_STATE_BUDGET,
            n_max: 6,
            decomp: DecompBudget::default(),
            linear_n_max: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProfilePoint {
    pub n: usize,
    pub value: usize,
    pub exactness: Exactness,
}

/// `diam(Δ_G^n)` for `n = 1..=n_max`; exact when the walk space fits in `states`.
pub fn measure_gap_profile(g: &Graph, n_max: usize, states: usize) -> Result<Vec<ProfilePoint>> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    Ok((1..=n_max)
        .into_par_iter()
        .map(|n| {
            let r = delta_diameter(g, n, states);
            ProfilePoint {
                n,
                value: r.value,
                exactness: r.exactness,
            }
        })
        .collect())
}

pub fn profile_csv(profile: &[ProfilePoint]) -> String {
    let mut out = String::from("n,value,exactness\n");
    for p in profile {
        let e = match p.exactness {
            Exactness::Exact => "exact",
            Exactness::LowerBound => "lower_bound",
        };
        out.push_str(&format!("{},{},{}\n", p.n, p.value, e));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lower {
    Constant,
    Log,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Upper {
    Constant,
    Log,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GapVerdict {
    Constant,
    Log,
    Linear,
    Interval(Lower, Upper),
}

impl fmt::Display for GapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = |l: &Lower| match l {
            Lower::Constant => "Ω(1)",
            Lower::Log => "Ω(log n)",
            Lower::Linear => "Ω(n)",
        };
        let up = |u: &Upper| match u {
            Upper::Constant => "O(1)",
            Upper::Log => "O(log n)",
            Upper::Linear => "O(n)",
        };
        match self {
            GapVerdict::Constant => write!(f, "Θ(1)"),
            GapVerdict::Log => write!(f, "Θ(log n)"),
            GapVerdict::Linear => write!(f, "Θ(n)"),
            GapVerdict::Interval(l, u) => write!(f, "between {} and {}", lo(l), up(u)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    Certificate,
    Experiment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub source: Source,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub graph: String,
    pub profile: Vec<ProfilePoint>,
    pub lower: Lower,
    pub lower_evidence: Vec<Evidence>,
    pub upper: Upper,
    pub upper_evidence: Vec<Evidence>,
    pub verdict: GapVerdict,
    /// True when the verdict rests on a cover exploration that hit its budget.
    pub budget_conditional: bool,
    pub phase: u8,
    pub citations: Vec<String>,
    pub cover_classes: Option<usize>,
    pub cover_closed: Option<bool>,
    pub fit: String,
    pub budgets: ClassifyBudget,
}

impl GapReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "graph": self.graph,
            "profile": self.profile,
            "verdict": self.verdict.to_string(),
            "lower": {"class": self.lower, "evidence": self.lower_evidence},
            "upper": {"class": self.upper, "evidence": self.upper_evidence},
            "phase": self.phase,
            "citations": self.citations,
            "budgets": self.budgets,
            "budget_conditional": self.budget_conditional,
            "cover": {"classes": self.cover_classes, "closed": self.cover_closed},
            "fit": self.fit,
        })
    }

    pub fn has_citation(&self, c: &str) -> bool {
        self.citations.iter().any(|x| x == c)
    }
}

/// The pair `(u, v)` from a cover geodesic of length `2n` and the spine power at its base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearCertificate {
    pub n: usize,
    pub u: Walk,
    pub v: Walk,
    pub class_distance: usize,
    /// `u` lifts to a class at distance `2n` and `v` lifts back to the base class.
    pub certified: bool,
}

fn class_adjacency(atlas: &CoverAtlas) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); atlas.class_count()];
    for (a, row) in atlas.ext.iter().enumerate() {
        for &(_, b) in row {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    adj
}

/// Replays the linear lower-bound argument for one `n` on an explored atlas.
pub fn linear_certificate(atlas: &CoverAtlas, n: usize) -> Option<LinearCertificate> {
    let target = (0..atlas.class_count()).find(|&c| atlas.depth[c] == 2 * n)?;
    let adj = class_adjacency(atlas);
    let mut parent = vec![usize::MAX; atlas.class_count()];
    parent[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for &d in &adj[c] {
            if parent[d] == usize::MAX {
                parent[d] = c;
                queue.push_back(d);
            }
        }
    }
    let mut chain = vec![target];
    while *chain.last().unwrap() != 0 {
        chain.push(parent[*chain.last().unwrap()]);
    }
    chain.reverse();
    let u = Walk::new(chain.iter().map(|&c| atlas.eta[c]).collect());
    let v = Walk::new(spine_power(atlas.base, u.seq[1], n));
    let certified = match (atlas.lift_walk(&u), atlas.lift_walk(&v)) {
        (Ok(lu), Ok(lv)) => atlas.depth[*lu.last().unwrap()] == 2 * n && *lv.last().unwrap() == 0,
        _ => false,
    };
    Some(LinearCertificate {
        n,
        u,
        v,
        class_distance: chain.len() - 1,
        certified,
    })
}

fn is_ken(g: &Graph) -> bool {
    g.vertex_count() == 16 && g.edge_count() == 27 && crate::cli::corpus::validate_ken(g).is_ok()
}

/// Growth shape of a profile; advisory only.
pub fn empirical_fit(profile: &[ProfilePoint]) -> String {
    if profile.len() < 2 {
        return "insufficient data".into();
    }
    let top: Vec<usize> = profile[profile.len() / 2..]
        .iter()
        .map(|p| p.value)
        .collect();
    if top.iter().max().unwrap() - top.iter().min().unwrap() <= 2 {
        return "constant".into();
    }
    let at = |n: usize| profile.iter().find(|p| p.n == n).map(|p| p.value as i64);
    let doubling: Vec<i64> = profile
        .iter()
        .filter_map(|p| Some(at(2 * p.n)? - p.value as i64))
        .collect();
    if !doubling.is_empty() && doubling.iter().all(|&d| d <= 2) {
        return "log-like".into();
    }
    let ratios: Vec<f64> = profile[profile.len() / 2..]
        .iter()
        .map(|p| p.value as f64 / p.n as f64)
        .collect();
    let (lo, hi) = ratios
        .iter()
        .fold((f64::MAX, 0f64), |(a, b), &r| (a.min(r), b.max(r)));
    if lo > 0.0 && hi <= 1.2 * lo {
        return "linear-like".into();
    }
    "undetermined".into()
}

pub fn classify(g: &Graph, name: &str, budget: ClassifyBudget) -> Result<GapReport> {
    if !g.is_connected() {
        return Err(Error::Precondition(
            "disconnected graphs are not phased block gluing".into(),
        ));
    }
    let profile = measure_gap_profile(g, budget.n_max, budget.states)?;
    let fit = empirical_fit(&profile);
    let phase = if g.is_bipartite() { 2 } else { 1 };
    let mut r = GapReport {
        graph: name.to_string(),
        profile,
        lower: Lower::Constant,
        lower_evidence: vec![Evidence {
            source: Source::Certificate,
            detail: "γ ≥ 1 for every graph".into(),
        }],
        upper: Upper::Linear,
        upper_evidence: vec![Evidence {
            source: Source::Certificate,
            detail: "γ = O(n) for connected graphs".into(),
        }],
        verdict: GapVerdict::Interval(Lower::Constant, Upper::Linear),
        budget_conditional: false,
        phase,
        citations: vec![CITE_PHASE.to_string()],
        cover_classes: None,
        cover_closed: None,
        fit,
        budgets: budget,
    };
    if g.is_tree() {
        r.upper = Upper::Constant;
        r.upper_evidence.push(Evidence {
            source: Source::Certificate,
            detail: "tree: universal cover is finite".into(),
        });
        r.verdict = GapVerdict::Constant;
        r.citations.push(CITE_TREE.into());
        return Ok(r);
    }
    let decomposable =
        g.is_bipartite() && is_square_decomposable(g, budget.decomp)?.verdict == Verdict::Yes;
    if decomposable {
        r.upper = Upper::Log;
        r.upper_evidence.push(Evidence {
            source: Source::Certificate,
            detail: "every simple cycle is square-decomposable".into(),
        });
        r.citations.push(CITE_LOG.into());
    }
    let atlas = build_square_cover(g, budget.cover);
    r.cover_classes = Some(atlas.class_count());
    r.cover_closed = Some(atlas.is_closed());
    match atlas.status {
        CoverStatus::ClosedFinite => {
            if r.upper != Upper::Log {
                r.upper = Upper::Log;
                r.citations.push(CITE_LOG.into());
            }
            r.upper_evidence.push(Evidence {
                source: Source::Certificate,
                detail: format!("square cover closed with {} classes", atlas.class_count()),
            });
            r.citations.push(CITE_COVER.into());
        }
        CoverStatus::BudgetExceeded { max_distance, .. } => {
            let certs: Vec<LinearCertificate> = (1..=budget.linear_n_max)
                .filter_map(|n| linear_certificate(&atlas, n))
                .filter(|c| c.certified)
                .collect();
            if r.upper == Upper::Log {
                r.verdict = GapVerdict::Interval(r.lower, r.upper);
                return Ok(r);
            }
            if !certs.is_empty() {
                r.lower = Lower::Linear;
                r.budget_conditional = true;
                r.lower_evidence.push(Evidence {
                    source: Source::Experiment,
                    detail: format!(
                        "cover still growing at distance {max_distance}; γ(2n) ≥ n certified for n ∈ {:?}",
                        certs.iter().map(|c| c.n).collect::<Vec<_>>()
                    ),
                });
                r.citations.push(CITE_LINEAR.into());
            }
        }
    }
    if r.upper == Upper::Log && is_ken(g) {
        let checks: Vec<MuClaim> = [4, 5]
            .into_iter()
            .map(check_mu_claim_on)
            .collect::<Result<_>>()?;
        if checks.iter().all(|c| c.holds) {
            r.lower = Lower::Log;
            r.lower_evidence.push(Evidence {
                source: Source::Certificate,
                detail: "μ_c of the exterior hexagon at least halves (minus 3) per Δ step, checked exhaustively for n = 4, 5".into(),
            });
            r.citations.push(CITE_KEN.into());
        }
    }
    r.verdict = match (r.lower, r.upper) {
        (Lower::Constant, Upper::Constant) => GapVerdict::Constant,
        (Lower::Log, Upper::Log) => GapVerdict::Log,
        (Lower::Linear, Upper::Linear) => GapVerdict::Linear,
        (Lower::Linear, Upper::Log)
        | (Lower::Linear, Upper::Constant)
        | (Lower::Log, Upper::Constant) => {
            return Err(Error::Precondition(
                "lower and upper bounds contradict".into(),
            ))
        }
        (l, u) => GapVerdict::Interval(l, u),
    };
    Ok(r)
}

/// Largest `m` with `c^m` occurring as a subword of `p`.
pub fn mu_c(p: &[V], c: &[V]) -> usize {
    let l = c.len() - 1;
    if l == 0 || p.len() < c.len() {
        return 0;
    }
    let matches = |i: usize| i + l < p.len() && p[i..=i + l] == *c;
    let mut best = 0;
    for i in 0..p.len() {
        let mut m = 0;
        while i + (m + 1) * l < p.len() && matches(i + m * l) {
            m += 1;
        }
        best = best.max(m);
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuClaim {
    pub n: usize,
    pub holds: bool,
    pub neighbors: usize,
    /// Counts per structural form: `uwv`, `uw|wv`, `u|v`.
    pub forms: BTreeMap<String, usize>,
    pub min_mu: usize,
    /// `⌈log₂((n + 6) / 6)⌉`, the number of steps needed to bring `μ_c` from `n` to 0.
    pub implied_lower_bound: usize,
    pub small_n: bool,
}

/// Longest prefix of positions where `p_k = q_{k+s}`, and longest suffix where `p_k = q_{k+t}`.
fn shifted_run(p: &[V], q: &[V], s: isize, from_left: bool) -> usize {
    let n = p.len() as isize;
    let ok = |k: isize| {
        let j = k + s;
        if j < 0 || j >= n {
            true
        } else {
            p[k as usize] == q[j as usize]
        }
    };
    if from_left {
        (0..n).take_while(|&k| ok(k)).count()
    } else {
        (0..n).rev().take_while(|&k| ok(k)).count()
    }
}

fn form_of(p: &[V], q: &[V]) -> Option<&'static str> {
    let n = p.len();
    let mut best: Option<(usize, &'static str)> = None;
    for s in [-1isize, 1] {
        for t in [-1isize, 1] {
            let u = shifted_run(p, q, s, true);
            let v = shifted_run(p, q, t, false);
            if u >= n || v >= n {
                return Some("u|v");
            }
            let w = n.saturating_sub(u + v);
            let form = if u > 0 && v > 0 {
                (w <= 3).then_some("uwv")
            } else {
                (w == 1).then_some("uw|wv")
            };
            if let Some(f) = form {
                if best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, f));
                }
            }
        }
    }
    best.map(|(_, f)| f)
}

/// Exhaustive check of the μ_c halving claim on the Ken-katabami graph.
pub fn check_mu_claim(n: usize) -> Result<MuClaim> {
    check_mu_claim_on(n)
}

fn check_mu_claim_on(n: usize) -> Result<MuClaim> {
    let g = crate::cli::corpus::builtin("ken")?;
    let hex = crate::cli::corpus::ken_exterior(&g)?;
    let q = power(&hex, n)?;
    let mut forms: BTreeMap<String, usize> = BTreeMap::new();
    let mut count = 0usize;
    let mut min_mu = usize::MAX;
    let mut holds = true;
    let limit = 50_000_000usize;
    let mut over = false;
    for_each_delta_neighbor(&g, &q.seq, |p| {
        count += 1;
        if count > limit {
            over = true;
            return;
        }
        let mu = mu_c(p, &hex.seq);
        min_mu = min_mu.min(mu);
        let form = form_of(p, &q.seq);
        *forms
            .entry(form.unwrap_or("other").to_string())
            .or_default() += 1;
        if form.is_none() || (mu as f64) < n as f64 / 2.0 - 3.0 {
            holds = false;
        }
    });
    if over {
        return Err(Error::Budget(format!(
            "more than {limit} neighbours; partial forms {forms:?}"
        )));
    }
    let implied = ((n as f64 + 6.0) / 6.0).log2().ceil() as usize;
    Ok(MuClaim {
        n,
        holds,
        neighbors: count,
        forms,
        min_mu,
        implied_lower_bound: implied,
        small_n: n < 4,
    })
}

/// Exact `d(u, v)` for the linear certificate pair.
pub fn certificate_distance(
    g: &Graph,
    c: &LinearCertificate,
    cap: usize,
) -> Result<crate::walkspace::Distance> {
    delta_distance(g, &c.u, &c.v, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::corpus::builtin;
    use proptest::prelude::*;

    #[test]
    fn profiles_of_small_graphs() {
        let k2 = builtin("k2").unwrap();
        let p = measure_gap_profile(&k2, 6, 1_000_000).unwrap();
        assert!(p
            .iter()
            .all(|x| x.value == 1 && x.exactness == Exactness::Exact));
        let p3 = builtin("p3").unwrap();
        let p = measure_gap_profile(&p3, 4, 1_000_000).unwrap();
        assert!(p.iter().all(|x| x.value == 2));
        let c4 = builtin("c4").unwrap();
        let p = measure_gap_profile(&c4, 6, 1_000_000).unwrap();
        assert!(p
            .iter()
            .all(|x| x.value <= 3 && x.exactness == Exactness::Exact));
        assert!(profile_csv(&p).starts_with("n,value,exactness\n1,"));
    }

    #[test]
    fn mu_examples() {
        let g = builtin("ken").unwrap();
        let hex = crate::cli::corpus::ken_exterior(&g).unwrap();
        assert_eq!(mu_c(&power(&hex, 3).unwrap().seq, &hex.seq), 3);
        let a = hex.start();
        let x = g.spine_partner(a).unwrap();
        assert_eq!(mu_c(&spine_power(a, x, 9), &hex.seq), 0);
        let mut w = hex.seq.clone();
        w.extend([x, a]);
        w.extend_from_slice(&power(&hex, 2).unwrap().seq[1..]);
        assert_eq!(mu_c(&w, &hex.seq), 2);
    }

    #[test]
    fn classify_tree_and_fig_b() {
        let p3 = builtin("p3").unwrap();
        let r = classify(
            &p3,
            "p3",
            ClassifyBudget {
                n_max: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.verdict, GapVerdict::Constant);
        assert!(r.has_citation(CITE_TREE));
        let fb = builtin("fig_b").unwrap();
        let r = classify(
            &fb,
            "fig_b",
            ClassifyBudget {
                n_max: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.upper, Upper::Log);
        assert_eq!(r.cover_classes, Some(6));
        assert_eq!(r.phase, 2);
    }

    #[test]
    fn linear_certificate_fig_a() {
        let g = builtin("fig_a").unwrap();
        let atlas = build_square_cover(&g, CoverBudget::default());
        for n in 2..=4 {
            let c = linear_certificate(&atlas, n).unwrap();
            assert!(c.certified);
            assert_eq!(c.class_distance, 2 * n);
            let d = certificate_distance(&g, &c, 2_000_000).unwrap();
            assert!(d.exact().unwrap() >= n);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mu_of_powers_and_concatenations(m in 0usize..8, k in 0usize..8, gap in 0usize..3) {
            let g = builtin("ken").unwrap();
            let hex = crate::cli::corpus::ken_exterior(&g).unwrap();
            let a = hex.start();
            let x = g.spine_partner(a).unwrap();
            prop_assert_eq!(mu_c(&power(&hex, m).unwrap().seq, &hex.seq), m);
            let mut w = power(&hex, m).unwrap().seq;
            w.extend_from_slice(&spine_power(a, x, gap)[1..]);
            w.extend_from_slice(&power(&hex, k).unwrap().seq[1..]);
            let mu = mu_c(&w, &hex.seq);
            prop_assert!(mu >= m.max(k));
            prop_assert!(mu <= m + k);
            if gap > 0 {
                prop_assert_eq!(mu, m.max(k));
            }
        }

        #[test]
        fn fit_labels_are_known(vals in proptest::collection::vec(0usize..20, 1..8)) {
            let profile: Vec<ProfilePoint> = vals
                .iter()
                .enumerate()
                .map(|(i, &v)| ProfilePoint { n: i + 1, value: v, exactness: Exactness::Exact })
                .collect();
            let f = empirical_fit(&profile);
            prop_assert!(["insufficient data", "constant", "log-like", "linear-like", "undetermined"].contains(&f.as_str()));
        }
    }
}
