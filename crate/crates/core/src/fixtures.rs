//! Small named graphs used by tests, examples and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycle_map::EdgeOrdering;
use crate::graph::Multigraph;
use crate::ribbon::{trace_faces, PlaneEmbedding, RibbonGraph};

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Multigraph {
    Multigraph::new(vertices, edges).expect("fixture is valid")
}

/// Two vertices joined by three parallel edges, all `v1 -> v2`.
pub fn theta() -> Multigraph {
    build(
        &["v1", "v2"],
        &[("e1", "v1", "v2"), ("e2", "v1", "v2"), ("e3", "v1", "v2")],
    )
}

pub fn k4() -> Multigraph {
    build(
        &["a", "b", "c", "d"],
        &[
            ("ab", "a", "b"),
            ("ac", "a", "c"),
            ("ad", "a", "d"),
            ("bc", "b", "c"),
            ("bd", "b", "d"),
            ("cd", "c", "d"),
        ],
    )
}

/// The 3-cube, vertices named by their coordinates.
pub fn cube() -> Multigraph {
    let names: Vec<String> = ["000", "100", "110", "010", "001", "101", "111", "011"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut edges = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let diff = a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count();
            if diff == 1 {
                edges.push((format!("{a}-{b}"), a.clone(), b.clone()));
            }
        }
    }
    Multigraph::new(&names, &edges).expect("cube is valid")
}

/// Cycle graph on `n >= 2` vertices, edges `c{i}: v{i} -> v{i+1}`.
pub fn cycle(n: usize) -> Multigraph {
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..n)
        .map(|i| {
            (
                format!("c{i}"),
                vertices[i].clone(),
                vertices[(i + 1) % n].clone(),
            )
        })
        .collect();
    Multigraph::new(&vertices, &edges).expect("cycle is valid")
}

pub fn c5() -> Multigraph {
    cycle(5)
}

pub fn path3() -> Multigraph {
    build(
        &["p1", "p2", "p3"],
        &[("p12", "p1", "p2"), ("p23", "p2", "p3")],
    )
}

/// Genus-two graph on `q, a, d, x` with a distinguished tree `{e1, e3, e5}`.
pub fn diamond() -> Multigraph {
    build(
        &["q", "a", "d", "x"],
        &[
            ("e1", "q", "a"),
            ("e2", "q", "d"),
            ("e3", "x", "a"),
            ("e4", "x", "d"),
            ("e5", "a", "d"),
        ],
    )
}

/// Two cycles glued at `u1`: `e'1, e'2` join `u1, u2` and `e'3, e'4` join `u1, u3`.
pub fn bng2_graph() -> Multigraph {
    build(
        &["u1", "u2", "u3"],
        &[
            ("e'1", "u1", "u2"),
            ("e'2", "u1", "u2"),
            ("e'3", "u1", "u3"),
            ("e'4", "u1", "u3"),
        ],
    )
}

/// Theta with `e1` split at `u` and `e3` split at `w`.
pub fn bng1_subdivision_graph() -> Multigraph {
    build(
        &["v1", "v2", "u", "w"],
        &[
            ("e11", "v1", "u"),
            ("e12", "u", "v2"),
            ("e2", "v1", "v2"),
            ("e31", "v1", "w"),
            ("e32", "w", "v2"),
        ],
    )
}

/// Every plain-graph fixture with its name.
pub fn all_graphs() -> Vec<(&'static str, Multigraph)> {
    vec![
        ("theta", theta()),
        ("k4", k4()),
        ("cube", cube()),
        ("c5", c5()),
        ("p3", path3()),
        ("diamond", diamond()),
        ("bng2", bng2_graph()),
        ("bng1-subdivision", bng1_subdivision_graph()),
    ]
}

/// Deterministic pseudo-random edge orderings. The first is the reference
/// ordering; the rest alternate between empty and nonempty forests.
pub fn orderings(g: &Multigraph, count: usize, seed: u64) -> Vec<EdgeOrdering> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![EdgeOrdering::reference(g)];
    for k in 1..count {
        let mut edges: Vec<usize> = (0..g.m()).collect();
        edges.shuffle(&mut rng);
        let mut forest = Vec::new();
        if k % 2 == 0 {
            for &e in &edges {
                forest.push(e);
                if !g.is_forest(&forest) || rng.random_bool(0.4) {
                    forest.pop();
                }
            }
        }
        let order = edges
            .iter()
            .copied()
            .filter(|e| !forest.contains(e))
            .map(|e| (e, if rng.random_bool(0.5) { 1 } else { -1 }))
            .collect();
        forest.sort_unstable();
        out.push(EdgeOrdering::new(g, forest, order).expect("constructed ordering is valid"));
    }
    out
}

fn ribbon(g: Multigraph, rotations: &[(&str, &[&str])]) -> RibbonGraph {
    let rot: Vec<(&str, Vec<&str>)> = rotations.iter().map(|(v, es)| (*v, es.to_vec())).collect();
    RibbonGraph::from_ids(g, &rot).expect("fixture rotation is valid")
}

/// Rotations listing incident edges counterclockwise around given points.
fn from_coordinates(g: Multigraph, points: &[(f64, f64)]) -> PlaneEmbedding {
    let rotation = (0..g.n())
        .map(|v| {
            let mut es = g.incident(v).to_vec();
            let angle = |e: usize| {
                let w = g.edge(e).other(v);
                (points[w].1 - points[v].1).atan2(points[w].0 - points[v].0)
            };
            es.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
            es
        })
        .collect();
    let r = RibbonGraph::new(g, rotation).expect("fixture rotation is valid");
    // The unbounded face is the only one traced counterclockwise.
    let faces = trace_faces(&r);
    let area = |orbit: &Vec<usize>| {
        orbit
            .iter()
            .map(|&d| {
                let (a, b) = (points[r.origin(d)], points[r.target(d)]);
                a.0 * b.1 - a.1 * b.0
            })
            .sum::<f64>()
    };
    let outer = faces
        .orbits
        .iter()
        .position(|o| area(o) > 0.0)
        .expect("one face is unbounded");
    PlaneEmbedding::new(r, outer).expect("fixture is planar")
}

/// Theta drawn in the plane: three faces.
pub fn planar_theta() -> PlaneEmbedding {
    let r = ribbon(
        theta(),
        &[("v1", &["e1", "e2", "e3"]), ("v2", &["e3", "e2", "e1"])],
    );
    PlaneEmbedding::new(r, 0).expect("fixture is planar")
}

/// K4 with `a` in the middle of the triangle `b, c, d`.
pub fn k4_planar() -> PlaneEmbedding {
    from_coordinates(k4(), &[(0.0, 0.0), (0.0, 10.0), (-9.0, -5.0), (9.0, -5.0)])
}

/// The cube as two nested squares joined by spokes.
pub fn cube_planar() -> PlaneEmbedding {
    from_coordinates(
        cube(),
        &[
            (-2.0, -2.0),
            (2.0, -2.0),
            (2.0, 2.0),
            (-2.0, 2.0),
            (-1.0, -1.0),
            (1.0, -1.0),
            (1.0, 1.0),
            (-1.0, 1.0),
        ],
    )
}

/// Theta with the same rotation at both vertices: one face, genus one.
pub fn bng1() -> RibbonGraph {
    ribbon(
        theta(),
        &[("v1", &["e1", "e2", "e3"]), ("v2", &["e1", "e2", "e3"])],
    )
}

/// Two digons at `u1` with interleaved rotation.
pub fn bng2() -> RibbonGraph {
    ribbon(
        bng2_graph(),
        &[
            ("u1", &["e'1", "e'3", "e'2", "e'4"]),
            ("u2", &["e'1", "e'2"]),
            ("u3", &["e'3", "e'4"]),
        ],
    )
}

/// [`bng1`] with `e1` and `e3` subdivided, rotations inherited.
pub fn bng1_subdivision() -> RibbonGraph {
    ribbon(
        bng1_subdivision_graph(),
        &[
            ("v1", &["e11", "e2", "e31"]),
            ("v2", &["e12", "e2", "e32"]),
            ("u", &["e11", "e12"]),
            ("w", &["e31", "e32"]),
        ],
    )
}

/// Every planar ribbon fixture with its name.
pub fn all_planar() -> Vec<(&'static str, PlaneEmbedding)> {
    vec![
        ("planar-theta", planar_theta()),
        ("k4", k4_planar()),
        ("cube", cube_planar()),
    ]
}
