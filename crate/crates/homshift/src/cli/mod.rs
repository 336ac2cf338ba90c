//! Command-line frontend. [`run`] parses arguments, dispatches to the library
//! and returns the exit code with the text that belongs on stdout and stderr.

pub mod corpus;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::classify::{check_mu_claim, classify, profile_csv, ClassifyBudget, GapVerdict};
use crate::covers::{build_square_cover, CoverBudget, CoverStatus};
use crate::cycles::{
    cactus_decompose, is_square_decomposable, lambda_bound, square_decompose, DecompResult, Verdict,
};
use crate::error::{Error, Result};
use crate::gluing::{glue, is_locally_admissible, random_block, Pattern};
use crate::graph_core::{parse_graph, Graph};
use crate::transform::{
    cycle_reduction, cycle_to_spines_best, parallel_compress, power_compress, reduce_step,
    walk_to_cycle, Context, InsertionSpec, TransformOutput,
};
use crate::walkspace::{
    delta_diameter, delta_search, verify_witness_diag, Distance, Exactness, WitnessPath,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_DEGRADED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "homshift",
    version,
    about = "Walk-space distances, square covers and gluing gaps of Hom shifts"
)]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 12)]
    budget_cover_length: usize,
    #[arg(long, global = true, default_value_t = 100_000)]
    budget_cover_classes: usize,
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget_states: usize,
    #[arg(long, global = true, default_value_t = 6)]
    nmax: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct GraphArg {
    /// Name of a built-in graph.
    #[arg(long, conflicts_with = "graph")]
    builtin: Option<String>,
    /// Edge-list file.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Gap profile and Θ class.
    Classify {
        #[command(flatten)]
        g: GraphArg,
        /// Also write the profile as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Square cover exploration.
    Cover {
        #[command(flatten)]
        g: GraphArg,
    },
    /// Square decomposition of one cycle, or of every simple cycle.
    Decompose {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        cycle: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The constant λ_G.
    Lambda {
        #[command(flatten)]
        g: GraphArg,
    },
    /// diam(Δ_G^n), for one `n` or for 1..=nmax.
    Diameter {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Δ distance between two walks.
    Dist {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a verified transformation path.
    Transform {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        cycle: String,
        /// spines, reduce, step, parallel, power or walk-to-cycle.
        #[arg(long, default_value = "spines")]
        op: String,
        /// Target cycle for `step`.
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Glue two square blocks, read from files or drawn at random.
    Glue {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, requires = "p2")]
        p: Option<PathBuf>,
        #[arg(long)]
        p2: Option<PathBuf>,
        /// Bottom-left cell of the first block, `x,y`.
        #[arg(long, default_value = "0,0")]
        at: String,
        /// Bottom-left cell of the second block; defaults to a horizontal gap of the measured separation.
        #[arg(long)]
        at2: Option<String>,
        /// Side of random blocks.
        #[arg(long, default_value_t = 3)]
        side: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cactus decomposition of a cycle.
    Cactus {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        cycle: String,
    },
    /// Structural checks and the μ_c claim on the Ken-katabami graph.
    KenVerify {
        #[arg(long, value_delimiter = ',', default_value = "4,5")]
        n: Vec<usize>,
    },
    /// Re-verify a witness path (and manifest) or a glued window.
    Verify {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
}

struct Budgets {
    cover: CoverBudget,
    states: usize,
    nmax: usize,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

type Res = std::result::Result<i32, Failure>;

/// Sizes the global thread pool from `HOMSHIFT_THREADS`, once per process.
fn init_threads() {
    if let Some(n) = std::env::var("HOMSHIFT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    init_threads();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let budgets = Budgets {
        cover: CoverBudget {
            max_len: cli.budget_cover_length,
            max_classes: cli.budget_cover_classes,
            ..CoverBudget::default()
        },
        states: cli.budget_states,
        nmax: cli.nmax,
    };
    let mut out = String::new();
    match dispatch(&cli.cmd, cli.json, &budgets, &mut out) {
        Ok(code) => Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: EXIT_USAGE,
            stdout: out,
            stderr: format!("usage error: {m}\n"),
        },
        Err(Failure::Lib(e)) => Outcome {
            code: EXIT_ERROR,
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load_graph(a: &GraphArg) -> std::result::Result<(String, Graph), Failure> {
    match (&a.builtin, &a.graph) {
        (Some(name), _) => {
            if !corpus::NAMES.contains(&name.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown builtin `{name}`; known: {}",
                    corpus::NAMES.join(", ")
                )));
            }
            Ok((name.clone(), corpus::builtin(name)?))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok((path.display().to_string(), parse_graph(&text)?))
        }
        (None, None) => Err(Failure::Usage(
            "one of --builtin or --graph is required".into(),
        )),
    }
}

fn parse_coord(s: &str) -> std::result::Result<(i32, i32), Failure> {
    let bad = || Failure::Usage(format!("bad coordinate `{s}`, expected x,y"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        x.trim().parse().map_err(|_| bad())?,
        y.trim().parse().map_err(|_| bad())?,
    ))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn dispatch(cmd: &Cmd, as_json: bool, b: &Budgets, out: &mut String) -> Res {
    match cmd {
        Cmd::Classify { g, csv } => {
            let (name, g) = load_graph(g)?;
            let budget = ClassifyBudget {
                cover: b.cover,
                states: b.states,
                n_max: b.nmax,
                ..ClassifyBudget::default()
            };
            let r = classify(&g, &name, budget)?;
            if let Some(path) = csv {
                write_file(path, &profile_csv(&r.profile))?;
            }
            if as_json {
                out.push_str(&pretty(&r.to_json()));
            } else {
                let _ = writeln!(out, "graph    {}", r.graph);
                let _ = writeln!(out, "verdict  {}", r.verdict);
                let _ = writeln!(out, "phase    {}", r.phase);
                if let Some(c) = r.cover_classes {
                    let state = if r.cover_closed == Some(true) {
                        "closed"
                    } else {
                        "open"
                    };
                    let _ = writeln!(out, "cover    {c} classes ({state})");
                }
                let _ = writeln!(out, "fit      {} (advisory)", r.fit);
                for e in r.lower_evidence.iter().chain(&r.upper_evidence) {
                    let _ = writeln!(out, "evidence [{:?}] {}", e.source, e.detail);
                }
                let _ = writeln!(out, "cites    {}", r.citations.join(", "));
                let _ = writeln!(out, "n   diam  exactness");
                for p in &r.profile {
                    let _ = writeln!(out, "{:<3} {:<5} {:?}", p.n, p.value, p.exactness);
                }
            }
            let degraded = r.budget_conditional
                || r.profile.iter().any(|p| p.exactness != Exactness::Exact)
                || matches!(r.verdict, GapVerdict::Interval(..)) && r.cover_closed == Some(false);
            Ok(if degraded { EXIT_DEGRADED } else { EXIT_OK })
        }
        Cmd::Cover { g } => {
            let (_, g) = load_graph(g)?;
            let atlas = build_square_cover(&g, b.cover);
            if as_json {
                out.push_str(&pretty(&atlas.to_json(&g)));
            } else {
                match atlas.status {
                    CoverStatus::ClosedFinite => {
                        let _ = writeln!(out, "ClosedFinite, {} classes", atlas.class_count());
                    }
                    CoverStatus::BudgetExceeded {
                        classes,
                        max_distance,
                    } => {
                        let _ = writeln!(
                            out,
                            "BudgetExceeded, {classes} classes, max distance {max_distance}"
                        );
                    }
                }
            }
            Ok(if atlas.is_closed() {
                EXIT_OK
            } else {
                EXIT_DEGRADED
            })
        }
        Cmd::Decompose {
            g,
            cycle,
            out: file,
        } => {
            let (_, g) = load_graph(g)?;
            let budget = ClassifyBudget::default().decomp;
            match cycle {
                Some(c) => {
                    let c = g.parse_walk(c)?;
                    match square_decompose(&g, &c, budget)? {
                        DecompResult::Found(d) => {
                            if let Some(path) = file {
                                write_file(
                                    path,
                                    &pretty(&serde_json::to_value(&d).expect("serializable")),
                                )?;
                            }
                            if as_json {
                                out.push_str(&pretty(&json!({"result": "found", "area": d.area, "cost": d.cost, "exact": d.exact,
                                    "steps": d.steps.iter().map(|w| w.display(&g)).collect::<Vec<_>>()})));
                            } else {
                                let _ = writeln!(
                                    out,
                                    "decomposable, area {}, cost {}{}",
                                    d.area,
                                    d.cost,
                                    if d.exact { "" } else { " (not minimal)" }
                                );
                                for w in &d.steps {
                                    let _ = writeln!(
                                        out,
                                        "  {}",
                                        if w.is_empty() {
                                            g.name(w.start()).to_string()
                                        } else {
                                            w.display(&g)
                                        }
                                    );
                                }
                            }
                            Ok(EXIT_OK)
                        }
                        DecompResult::NotDecomposable => {
                            let _ = writeln!(
                                out,
                                "{}",
                                if as_json {
                                    "{\"result\": \"not_decomposable\"}"
                                } else {
                                    "not decomposable"
                                }
                            );
                            Ok(EXIT_OK)
                        }
                        DecompResult::Unknown => {
                            let _ = writeln!(
                                out,
                                "{}",
                                if as_json {
                                    "{\"result\": \"unknown\"}"
                                } else {
                                    "unknown (budget exhausted)"
                                }
                            );
                            Ok(EXIT_DEGRADED)
                        }
                    }
                }
                None => {
                    let r = is_square_decomposable(&g, budget)?;
                    if as_json {
                        out.push_str(&pretty(&json!({
                            "verdict": r.verdict,
                            "odd_cycle": r.odd_cycle_shortcut,
                            "cycles": r.per_cycle.iter().map(|(c, o)| json!({"cycle": c.display(&g), "outcome": o})).collect::<Vec<_>>(),
                        })));
                    } else {
                        let _ = writeln!(out, "verdict {:?}", r.verdict);
                        for (c, o) in &r.per_cycle {
                            let _ = writeln!(out, "  {:<30} {:?}", c.display(&g), o);
                        }
                    }
                    Ok(if r.verdict == Verdict::Unknown {
                        EXIT_DEGRADED
                    } else {
                        EXIT_OK
                    })
                }
            }
        }
        Cmd::Lambda { g } => {
            let (_, g) = load_graph(g)?;
            let r = lambda_bound(&g, ClassifyBudget::default().decomp)?;
            if as_json {
                out.push_str(&pretty(&serde_json::to_value(&r).expect("serializable")));
            } else {
                let _ = writeln!(
                    out,
                    "lambda {}{}",
                    r.lambda,
                    if r.exact { "" } else { " (upper estimate)" }
                );
            }
            Ok(if r.exact { EXIT_OK } else { EXIT_DEGRADED })
        }
        Cmd::Diameter { g, n } => {
            let (_, g) = load_graph(g)?;
            let ns: Vec<usize> = match n {
                Some(n) => vec![*n],
                None => (1..=b.nmax).collect(),
            };
            let reports: Vec<_> = ns
                .iter()
                .map(|&n| delta_diameter(&g, n, b.states))
                .collect();
            if as_json {
                out.push_str(&pretty(
                    &serde_json::to_value(&reports).expect("serializable"),
                ));
            } else {
                let _ = writeln!(out, "n   diam  exactness   walks");
                for r in &reports {
                    let _ = writeln!(
                        out,
                        "{:<3} {:<5} {:<11} {}",
                        r.n,
                        r.value,
                        format!("{:?}", r.exactness),
                        r.vertex_count
                    );
                }
            }
            Ok(if reports.iter().all(|r| r.exactness == Exactness::Exact) {
                EXIT_OK
            } else {
                EXIT_DEGRADED
            })
        }
        Cmd::Dist { g, p, q, out: file } => {
            let (_, g) = load_graph(g)?;
            let (p, q) = (g.parse_walk(p)?, g.parse_walk(q)?);
            let (d, path) = delta_search(&g, &p, &q, b.states)?;
            if let (Some(file), Some(path)) = (file, &path) {
                write_file(file, &path.to_text(&g))?;
            }
            if as_json {
                out.push_str(&pretty(&json!({"distance": d})));
            } else {
                match d {
                    Distance::Exact(k) => {
                        let _ = writeln!(out, "distance {k}");
                    }
                    Distance::Unreached { reason, lower } => {
                        let _ = writeln!(out, "unreached ({reason:?}), distance > {lower}");
                    }
                }
            }
            Ok(match d {
                Distance::Unreached {
                    reason: crate::walkspace::UnreachedReason::Budget,
                    ..
                } => EXIT_DEGRADED,
                _ => EXIT_OK,
            })
        }
        Cmd::Transform {
            g,
            cycle,
            op,
            to,
            n,
            out: file,
        } => {
            let (_, g) = load_graph(g)?;
            let c = g.parse_walk(cycle)?;
            let result: TransformOutput = match op.as_str() {
                "walk-to-cycle" => {
                    let (path, _) = walk_to_cycle(&g, &c)?;
                    TransformOutput::unbounded(&g, path, "walk_to_cycle")?
                }
                "step" => {
                    let to = to
                        .as_ref()
                        .ok_or_else(|| Failure::Usage("--op step needs --to".into()))?;
                    let path = reduce_step(&g, &c, &g.parse_walk(to)?)?;
                    TransformOutput::unbounded(&g, path, "reduce_step")?
                }
                "spines" | "reduce" | "parallel" | "power" => {
                    let ctx = Context::new(&g)?;
                    match op.as_str() {
                        "spines" => cycle_to_spines_best(&ctx, &c, b.states)?.0,
                        "reduce" => cycle_reduction(&ctx, &c)?,
                        "parallel" => {
                            parallel_compress(&ctx, &InsertionSpec::none(), &c, *n as u32)?
                        }
                        _ => power_compress(&ctx, &InsertionSpec::none(), &c, *n)?,
                    }
                }
                other => return Err(Failure::Usage(format!("unknown transform op `{other}`"))),
            };
            let verified = verify_witness_diag(&g, &result.path).is_ok();
            if let Some(file) = file {
                write_file(file, &result.path.to_text(&g))?;
                write_file(
                    &manifest_path(file),
                    &pretty(&serde_json::to_value(&result.manifest).expect("serializable")),
                )?;
            }
            if as_json {
                out.push_str(&pretty(
                    &json!({"verified": verified, "manifest": result.manifest}),
                ));
            } else {
                let rel = if result.within_bound() { "≤" } else { ">" };
                let bound = if result.manifest.bound_value.is_finite() {
                    format!("bound {}", result.manifest.bound_value)
                } else {
                    "bound".to_string()
                };
                let _ = writeln!(
                    out,
                    "{}, length {} {rel} {bound}",
                    if verified { "VERIFIED" } else { "FAILED" },
                    result.manifest.actual_length
                );
            }
            Ok(if verified { EXIT_OK } else { EXIT_ERROR })
        }
        Cmd::Glue {
            g,
            p,
            p2,
            at,
            at2,
            side,
            seed,
            out: file,
        } => {
            let (_, g) = load_graph(g)?;
            let u = parse_coord(at)?;
            let (a, bb) = match (p, p2) {
                (Some(p), Some(p2)) => {
                    let read = |f: &PathBuf| -> std::result::Result<Pattern, Failure> {
                        let text = std::fs::read_to_string(f)
                            .map_err(|e| Failure::Usage(format!("{}: {e}", f.display())))?;
                        Ok(Pattern::from_text(&g, &text)?)
                    };
                    (read(p)?, read(p2)?)
                }
                _ => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    (
                        random_block(&g, *side, (0, 0), &mut rng)?,
                        random_block(&g, *side, (0, 0), &mut rng)?,
                    )
                }
            };
            let n = a.bounding_box().map_or(0, |r| r.x1 - r.x0 + 1);
            let u2 = match at2 {
                Some(s) => parse_coord(s)?,
                None => {
                    let sep =
                        delta_diameter(&g, (n as usize).saturating_sub(1), b.states).value as i32;
                    (u.0 + n + sep.max(1), u.1)
                }
            };
            let r = glue(&g, &a, &bb, u, u2, b.states)?;
            let ok = is_locally_admissible(&g, &r.window);
            if let Some(file) = file {
                write_file(file, &r.window.to_text(&g))?;
            }
            if as_json {
                out.push_str(&pretty(&json!({
                    "admissible": ok, "shift": [r.shift.0, r.shift.1], "phase": r.phase,
                    "parity_shift_used": r.parity_shift_used, "window": r.window.to_json(&g),
                })));
            } else {
                let _ = writeln!(
                    out,
                    "{}, shift ({}, {}), phase {}",
                    if ok { "ADMISSIBLE" } else { "NOT ADMISSIBLE" },
                    r.shift.0,
                    r.shift.1,
                    r.phase
                );
                out.push_str(&r.window.to_text(&g));
            }
            Ok(if ok { EXIT_OK } else { EXIT_ERROR })
        }
        Cmd::Cactus { g, cycle } => {
            let (_, g) = load_graph(g)?;
            let c = g.parse_walk(cycle)?;
            let f = cactus_decompose(&c)?;
            let round_trip = f.encode()? == c;
            if as_json {
                out.push_str(&pretty(
                    &json!({"round_trip": round_trip, "depth": f.depth(), "forest": f.to_json(&g)}),
                ));
            } else {
                let _ = writeln!(
                    out,
                    "{} trees, depth {}, round trip {}",
                    f.trees.len(),
                    f.depth(),
                    if round_trip { "ok" } else { "FAILED" }
                );
                out.push_str(&pretty(&f.to_json(&g)));
            }
            Ok(if round_trip { EXIT_OK } else { EXIT_ERROR })
        }
        Cmd::KenVerify { n } => {
            let g = corpus::builtin("ken")?;
            corpus::validate_ken(&g)?;
            let decomposable = is_square_decomposable(&g, ClassifyBudget::default().decomp)?
                .verdict
                == Verdict::Yes;
            let claims = n
                .iter()
                .map(|&k| check_mu_claim(k))
                .collect::<Result<Vec<_>>>()?;
            let holds = decomposable && claims.iter().all(|c| c.holds);
            if as_json {
                out.push_str(&pretty(&json!({"structure": "ok", "square_decomposable": decomposable, "claims": claims})));
            } else {
                let _ = writeln!(out, "structure ok, square-decomposable {decomposable}");
                for c in &claims {
                    let _ = writeln!(
                        out,
                        "n={} holds={} neighbours={} min μ={} forms {:?}",
                        c.n, c.holds, c.neighbors, c.min_mu, c.forms
                    );
                }
            }
            Ok(if holds { EXIT_OK } else { EXIT_ERROR })
        }
        Cmd::Verify {
            g,
            path,
            manifest,
            pattern,
        } => {
            let (_, g) = load_graph(g)?;
            let mut ok = true;
            if let Some(f) = path {
                let text = std::fs::read_to_string(f)?;
                let w = WitnessPath::from_text(&g, &text)?;
                match verify_witness_diag(&g, &w) {
                    Ok(()) => {
                        let _ = writeln!(out, "path VERIFIED, length {}", w.len());
                    }
                    Err(i) => {
                        ok = false;
                        let _ = writeln!(out, "path FAILED at step {i}");
                    }
                }
                let mpath = manifest.clone().unwrap_or_else(|| manifest_path(f));
                if mpath.exists() {
                    let m: serde_json::Value =
                        serde_json::from_str(&std::fs::read_to_string(&mpath)?).map_err(|e| {
                            Error::Parse {
                                line: e.line(),
                                msg: e.to_string(),
                            }
                        })?;
                    let len_ok = m["actual_length"].as_u64() == Some(w.len() as u64);
                    let bound_ok = m["bound_value"]
                        .as_f64()
                        .is_none_or(|b| w.len() as f64 <= b + 1e-9);
                    ok &= len_ok && bound_ok;
                    let _ = writeln!(
                        out,
                        "manifest {}",
                        if len_ok && bound_ok {
                            "consistent"
                        } else {
                            "INCONSISTENT"
                        }
                    );
                }
            }
            if let Some(f) = pattern {
                let p = Pattern::from_text(&g, &std::fs::read_to_string(f)?)?;
                let adm = is_locally_admissible(&g, &p);
                ok &= adm;
                let _ = writeln!(
                    out,
                    "pattern {}",
                    if adm { "ADMISSIBLE" } else { "NOT ADMISSIBLE" }
                );
            }
            if path.is_none() && pattern.is_none() {
                return Err(Failure::Usage("verify needs --path or --pattern".into()));
            }
            Ok(if ok { EXIT_OK } else { EXIT_ERROR })
        }
    }
}
