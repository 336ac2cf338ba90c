//! Built-in graphs. Every entry is checked against its recorded vertex and
//! edge counts when loaded; the Ken-katabami graph is also checked against the
//! common-neighbour facts its lower-bound argument relies on.

use crate::error::{Error, Result};
use crate::graph_core::{Graph, V};

pub struct Builtin {
    pub name: &'static str,
    pub graph: Graph,
}

pub const NAMES: &[&str] = &[
    "k2",
    "p3",
    "k3",
    "c4",
    "tri_loop",
    "fig_a",
    "fig_b",
    "fig_c",
    "fig_d",
    "ken",
    "cluster_1",
    "cluster_2",
    "glued_1",
    "glued_2",
];

const KEN_EDGES: &[(&str, &str)] = &[
    ("mu3", "omega"),
    ("omega", "mu6"),
    ("mu3", "gam1"),
    ("gam1", "mu2"),
    ("mu6", "gam3"),
    ("gam3", "mu1"),
    ("mu2", "omega"),
    ("omega", "mu1"),
    ("mu4", "omega"),
    ("omega", "mu5"),
    ("mu4", "gam2"),
    ("gam2", "mu5"),
    ("mu2", "del1"),
    ("del1", "mu1"),
    ("gam1", "eps1"),
    ("eps1", "del1"),
    ("eps1", "gam3"),
    ("mu3", "del2"),
    ("del2", "mu4"),
    ("mu6", "del3"),
    ("del3", "mu5"),
    ("del3", "eps3"),
    ("eps3", "gam2"),
    ("eps3", "gam3"),
    ("del2", "eps2"),
    ("eps2", "gam2"),
    ("eps2", "gam1"),
];

/// Exterior hexagon of the Ken-katabami graph.
pub const KEN_EXTERIOR: &[&str] = &["eps1", "gam1", "eps2", "gam2", "eps3", "gam3", "eps1"];

type Pt = (i32, i32);

const CLUSTER_1: &[(Pt, Pt)] = &[
    ((0, 0), (0, 2)),
    ((0, 2), (2, 2)),
    ((2, 2), (2, 0)),
    ((2, 0), (0, 0)),
    ((0, 2), (1, 3)),
    ((1, 3), (3, 3)),
    ((3, 3), (2, 2)),
    ((3, 3), (3, 1)),
    ((3, 1), (2, 0)),
    ((3, 3), (4, 4)),
    ((4, 4), (4, 1)),
    ((4, 1), (3, 1)),
    ((2, 0), (2, -1)),
    ((2, -1), (4, 1)),
    ((2, -1), (-1, -1)),
    ((-1, -1), (0, 0)),
    ((-1, -1), (-1, 2)),
    ((-1, 2), (0, 2)),
    ((-1, 2), (1, 4)),
    ((1, 4), (1, 3)),
    ((1, 4), (4, 4)),
];

const CLUSTER_2: &[(Pt, Pt)] = &[
    ((0, 0), (1, 1)),
    ((1, 1), (2, 0)),
    ((2, 0), (1, -1)),
    ((1, -1), (0, 0)),
    ((1, 1), (1, 3)),
    ((1, 3), (3, 1)),
    ((1, 3), (-2, 0)),
    ((-2, 0), (0, 0)),
    ((-2, 0), (1, -3)),
    ((1, -3), (1, -1)),
    ((1, -3), (3, -1)),
    ((2, 0), (3, 1)),
    ((3, 1), (4, 0)),
    ((4, 0), (3, -1)),
    ((3, -1), (2, 0)),
];

const CLUSTER_2_TAIL: &[(Pt, Pt)] = &[
    ((4, 0), (5, 1)),
    ((5, 1), (6, 0)),
    ((6, 0), (5, -1)),
    ((5, -1), (4, 0)),
    ((5, 1), (7, 3)),
    ((7, 3), (10, 0)),
    ((10, 0), (8, 0)),
    ((7, 1), (7, 3)),
    ((5, -1), (7, -3)),
    ((7, -3), (10, 0)),
    ((7, -3), (7, -1)),
    ((6, 0), (7, 1)),
    ((7, 1), (8, 0)),
    ((8, 0), (7, -1)),
    ((7, -1), (6, 0)),
];

fn coord_name((x, y): Pt) -> String {
    let part = |v: i32| {
        if v < 0 {
            format!("n{}", -v)
        } else {
            v.to_string()
        }
    };
    format!("v{}_{}", part(x), part(y))
}

fn add_points(g: &mut Graph, edges: &[(Pt, Pt)], shift: Pt) {
    for &((ax, ay), (bx, by)) in edges {
        let a = coord_name((ax + shift.0, ay + shift.1));
        let b = coord_name((bx + shift.0, by + shift.1));
        g.add_edge(&a, &b);
    }
}

fn expected_counts(name: &str) -> Option<(usize, usize)> {
    Some(match name {
        "k2" => (2, 1),
        "p3" => (3, 2),
        "k3" => (3, 3),
        "c4" => (4, 4),
        "tri_loop" => (3, 4),
        "fig_a" => (5, 6),
        "fig_b" => (6, 7),
        "fig_c" => (4, 6),
        "fig_d" => (4, 5),
        "ken" => (16, 27),
        "cluster_1" => (13, 21),
        "cluster_2" => (10, 15),
        "glued_1" => (25, 42),
        "glued_2" => (19, 30),
        _ => return None,
    })
}

fn construct(name: &str) -> Option<Graph> {
    let e = Graph::from_edges;
    Some(match name {
        "k2" => e(&[("a", "b")]),
        "p3" => e(&[("a", "b"), ("b", "c")]),
        "k3" => e(&[("a", "b"), ("b", "c"), ("c", "a")]),
        "c4" => e(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
        "tri_loop" => e(&[("a", "a"), ("a", "b"), ("b", "c"), ("c", "a")]),
        "fig_a" => e(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "a"),
            ("b", "e"),
            ("c", "e"),
        ]),
        "fig_b" => e(&[
            ("a", "b"),
            ("b", "c"),
            ("a", "d"),
            ("b", "e"),
            ("c", "f"),
            ("d", "e"),
            ("e", "f"),
        ]),
        "fig_c" => e(&[
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "d"),
        ]),
        "fig_d" => e(&[("a", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
        "ken" => e(KEN_EDGES),
        "cluster_1" => {
            let mut g = Graph::new();
            add_points(&mut g, CLUSTER_1, (0, 0));
            g
        }
        "glued_1" => {
            let mut g = Graph::new();
            add_points(&mut g, CLUSTER_1, (0, 0));
            add_points(&mut g, CLUSTER_1, (-5, -5));
            g
        }
        "cluster_2" => {
            let mut g = Graph::new();
            add_points(&mut g, CLUSTER_2, (0, 0));
            g
        }
        "glued_2" => {
            let mut g = Graph::new();
            add_points(&mut g, CLUSTER_2, (0, 0));
            add_points(&mut g, CLUSTER_2_TAIL, (0, 0));
            g
        }
        _ => return None,
    })
}

fn common_neighbors(g: &Graph, a: V, b: V) -> Vec<V> {
    g.neighbors(a)
        .iter()
        .copied()
        .filter(|&x| g.has_edge(x, b))
        .collect()
}

/// Structural facts about the Ken-katabami graph used by the μ argument.
pub fn validate_ken(g: &Graph) -> Result<()> {
    let id = |s: &str| g.id(s);
    let bad = |m: String| Err(Error::Shape(format!("ken transcription: {m}")));
    for i in 1..=3 {
        let j = i % 3 + 1;
        let (ei, ej) = (id(&format!("eps{i}"))?, id(&format!("eps{j}"))?);
        let (gi, gj) = (id(&format!("gam{i}"))?, id(&format!("gam{j}"))?);
        if common_neighbors(g, ei, ej) != vec![gi] {
            return bad(format!("eps{i}, eps{j} must share exactly gam{i}"));
        }
        if common_neighbors(g, gi, gj) != vec![ej] {
            return bad(format!("gam{i}, gam{j} must share exactly eps{j}"));
        }
    }
    let ext: Vec<V> = KEN_EXTERIOR.iter().map(|s| id(s)).collect::<Result<_>>()?;
    if !ext.windows(2).all(|w| g.has_edge(w[0], w[1])) {
        return bad("exterior hexagon is not a cycle".into());
    }
    if !g.is_bipartite() || g.has_loops() {
        return bad("graph must be bipartite and loop-free".into());
    }
    Ok(())
}

fn load(name: &str) -> Result<Graph> {
    let g = construct(name).ok_or_else(|| Error::UnknownVertex(format!("builtin `{name}`")))?;
    let (nv, ne) = expected_counts(name).unwrap();
    if g.vertex_count() != nv || g.edge_count() != ne || !g.is_connected() {
        return Err(Error::Shape(format!(
            "builtin {name}: {} vertices, {} edges, connected={}",
            g.vertex_count(),
            g.edge_count(),
            g.is_connected()
        )));
    }
    if name == "ken" {
        validate_ken(&g)?;
    }
    Ok(g)
}

/// Loads a built-in graph by name.
pub fn builtin(name: &str) -> Result<Graph> {
    load(name)
}

pub fn all() -> Vec<Builtin> {
    NAMES
        .iter()
        .map(|&name| Builtin {
            name,
            graph: load(name).expect("built-in graphs validate"),
        })
        .collect()
}

/// Exterior hexagon of the Ken-katabami graph as a walk.
pub fn ken_exterior(g: &Graph) -> Result<crate::graph_core::Walk> {
    let seq = KEN_EXTERIOR
        .iter()
        .map(|s| g.id(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::graph_core::Walk::new(seq))
}
