//! Cycle-space geometry with unit edge lengths: orthogonal projection onto
//! `H_1`, the Abel–Jacobi map to the torus and the cell decomposition.

use crate::cycle_map::{config_from_vector, cycle_orientation_map, Configuration};
use crate::divisor::{binomial, count_break_configurations, Divisor};
use crate::error::{Error, Result};
use crate::graph::{enumerate_spanning_trees, CycleCatalog, Multigraph, SpanningTree, TreePaths};
use crate::scalar::{determinant, solve, Scalar};

/// Fundamental cycles of a tree, each in canonical direction, with their
/// Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    pub tree: SpanningTree,
    /// Non-tree edges `e_1, ..., e_g`, ascending.
    pub edges: Vec<usize>,
    pub cycles: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
}

fn dot_int(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn cycle_basis(g: &Multigraph, t: &SpanningTree) -> CycleBasis {
    let paths = TreePaths::new(g, t, 0);
    let edges = t.complement(g);
    let cycles: Vec<Vec<i64>> = edges
        .iter()
        .map(|&e| {
            paths
                .fundamental_cycle(g, e)
                .signs()
                .iter()
                .map(|&s| s as i64)
                .collect()
        })
        .collect();
    let gram = cycles
        .iter()
        .map(|a| cycles.iter().map(|b| dot_int(a, b)).collect())
        .collect();
    CycleBasis {
        tree: t.clone(),
        edges,
        cycles,
        gram,
    }
}

/// Basis of the first spanning tree in enumeration order.
pub fn designated_basis(g: &Multigraph) -> CycleBasis {
    let t = enumerate_spanning_trees(g)
        .into_iter()
        .next()
        .expect("connected graphs have a spanning tree");
    cycle_basis(g, &t)
}

impl CycleBasis {
    pub fn genus(&self) -> usize {
        self.edges.len()
    }

    /// Coordinates of the orthogonal projection of an edge-space vector.
    pub fn project<S: Scalar>(&self, v: &[S]) -> Result<Vec<S>> {
        let m = self.cycles.first().map_or(v.len(), Vec::len);
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
        if self.genus() == 0 {
            return Ok(Vec::new());
        }
        let rhs: Vec<S> = self
            .cycles
            .iter()
            .map(|c| {
                c.iter().zip(v).fold(S::zero(), |acc, (&ci, vi)| {
                    acc + S::from_int(ci) * vi.clone()
                })
            })
            .collect();
        let gram: Vec<Vec<S>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| S::from_int(x)).collect())
            .collect();
        Ok(solve(&gram, &rhs).expect("Gram matrix of a basis is invertible"))
    }

    /// Coordinates of the unit vector of edge `e`.
    pub fn project_edge<S: Scalar>(&self, e: usize) -> Vec<S> {
        let m = self.cycles.first().map_or(0, Vec::len);
        let mut v = vec![S::zero(); m];
        v[e] = S::one();
        self.project(&v).expect("dimension matches")
    }

    /// Edge-space vector `Σ y_i C_i`.
    pub fn combine<S: Scalar>(&self, y: &[S]) -> Vec<S> {
        let m = self.cycles.first().map_or(0, Vec::len);
        let mut out = vec![S::zero(); m];
        for (c, yi) in self.cycles.iter().zip(y) {
            for (o, &ci) in out.iter_mut().zip(c) {
                *o = o.clone() + S::from_int(ci) * yi.clone();
            }
        }
        out
    }
}

/// A point of `H_1(G, R) / H_1(G, Z)` in basis coordinates, each in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint<S> {
    pub coords: Vec<S>,
}

impl<S: Scalar> TorusPoint<S> {
    pub fn from_coords(coords: Vec<S>) -> Self {
        TorusPoint {
            coords: coords.iter().map(Scalar::frac).collect(),
        }
    }

    pub fn zero(g: usize) -> Self {
        TorusPoint {
            coords: vec![S::zero(); g],
        }
    }

    /// Translation by a vector of coordinates.
    pub fn shifted(&self, by: &[S]) -> Self {
        Self::from_coords(
            self.coords
                .iter()
                .zip(by)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

/// A point of the metric graph: a vertex or a rational position along an
/// edge measured from its reference tail.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricPoint<S> {
    Vertex(usize),
    OnEdge { edge: usize, offset: S },
}

/// Edge-space vector of a path from `q` to `p`: the tree path to the tail
/// of `p`'s edge, then the fractional edge.
fn path_vector<S: Scalar>(
    g: &Multigraph,
    paths: &TreePaths,
    q: usize,
    p: &MetricPoint<S>,
) -> Vec<S> {
    let mut v = vec![S::zero(); g.m()];
    let (target, extra) = match p {
        MetricPoint::Vertex(x) => (*x, None),
        MetricPoint::OnEdge { edge, offset } => (g.edge(*edge).tail, Some((*edge, offset.clone()))),
    };
    for (e, s) in paths.path(g, q, target) {
        v[e] = v[e].clone() + S::from_int(s as i64);
    }
    if let Some((e, off)) = extra {
        v[e] = v[e].clone() + off;
    }
    v
}

/// `Φ(D)` for an effective divisor on the metric graph, using paths in the
/// basis tree.
pub fn abel_jacobi<S: Scalar>(
    g: &Multigraph,
    basis: &CycleBasis,
    points: &[MetricPoint<S>],
    q: usize,
) -> Result<TorusPoint<S>> {
    abel_jacobi_via(g, basis, &basis.tree, points, q)
}

/// [`abel_jacobi`] with paths taken in an arbitrary spanning tree.
pub fn abel_jacobi_via<S: Scalar>(
    g: &Multigraph,
    basis: &CycleBasis,
    path_tree: &SpanningTree,
    points: &[MetricPoint<S>],
    q: usize,
) -> Result<TorusPoint<S>> {
    for p in points {
        if let MetricPoint::OnEdge { offset, .. } = p {
            if offset.is_negative() || *offset > S::one() {
                return Err(Error::Parse(format!("edge offset {offset} outside [0, 1]")));
            }
        }
    }
    let paths = TreePaths::new(g, path_tree, q);
    let mut total = vec![S::zero(); g.m()];
    for p in points {
        for (t, x) in total.iter_mut().zip(path_vector(g, &paths, q, p)) {
            *t = t.clone() + x;
        }
    }
    Ok(TorusPoint::from_coords(basis.project(&total)?))
}

/// `Φ` of an integral divisor given as chips on vertices (effective).
pub fn abel_jacobi_divisor<S: Scalar>(
    g: &Multigraph,
    basis: &CycleBasis,
    d: &Divisor,
    q: usize,
) -> Result<TorusPoint<S>> {
    let mut points = Vec::new();
    for (v, &c) in d.values().iter().enumerate() {
        if c < 0 {
            return Err(Error::Parse("divisor is not effective".into()));
        }
        points.extend(std::iter::repeat_n(MetricPoint::Vertex(v), c as usize));
    }
    abel_jacobi(g, basis, &points, q)
}

/// The parallelotope of a spanning tree in torus coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell<S> {
    pub tree: SpanningTree,
    /// `Φ` of the divisor with a chip at the tail of every non-tree edge.
    pub base: TorusPoint<S>,
    /// `π(e_i)` for each non-tree edge, in basis coordinates.
    pub generators: Vec<Vec<S>>,
}

impl<S: Scalar> Cell<S> {
    /// Volume relative to the lattice `H_1(G, Z)`.
    pub fn volume(&self) -> S {
        determinant(&self.generators).abs()
    }

    /// The vertex selected by `heads`: `base + Σ_{s_i} π(e_i)`.
    pub fn vertex(&self, heads: &[bool]) -> TorusPoint<S> {
        let mut shift = vec![S::zero(); self.base.coords.len()];
        for (gen, &on) in self.generators.iter().zip(heads) {
            if on {
                for (s, x) in shift.iter_mut().zip(gen) {
                    *s = s.clone() + x.clone();
                }
            }
        }
        self.base.shifted(&shift)
    }
}

pub fn tail_divisor(g: &Multigraph, t: &SpanningTree) -> Divisor {
    let mut d = Divisor::zero(g.n());
    for e in t.complement(g) {
        d[g.edge(e).tail] += 1;
    }
    d
}

pub fn cell<S: Scalar>(g: &Multigraph, basis: &CycleBasis, t: &SpanningTree, q: usize) -> Cell<S> {
    let base = abel_jacobi_divisor(g, basis, &tail_divisor(g, t), q).expect("tails are effective");
    let generators = t
        .complement(g)
        .iter()
        .map(|&e| basis.project_edge(e))
        .collect();
    Cell {
        tree: t.clone(),
        base,
        generators,
    }
}

/// Entry `i` counts break `(g - i, i)`-configurations.
pub fn f_vector(g: &Multigraph) -> Vec<u64> {
    let genus = g.genus();
    (0..=genus)
        .map(|i| count_break_configurations(g, genus - i, i))
        .collect()
}

/// `C(g, i) · |S(G)|`, the closed form of [`f_vector`].
pub fn f_vector_formula(g: &Multigraph) -> Vec<u64> {
    let trees = enumerate_spanning_trees(g).len() as u64;
    (0..=g.genus())
        .map(|i| binomial(g.genus(), i) * trees)
        .collect()
}

/// Sign of `<w, C>` for every simple cycle, `w` an edge-space vector.
pub fn chamber_signature<S: Scalar>(catalog: &CycleCatalog, w: &[S]) -> Vec<i8> {
    catalog
        .cycles()
        .iter()
        .map(|c| {
            let dot = c.support().fold(S::zero(), |acc, e| {
                acc + S::from_int(c.sign(e) as i64) * w[e].clone()
            });
            match dot.sign() {
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 1,
            }
        })
        .collect()
}

pub fn is_generic<S: Scalar>(catalog: &CycleCatalog, w: &[S]) -> bool {
    chamber_signature(catalog, w).iter().all(|&s| s != 0)
}

/// The map induced by shifting the decomposition along a generic
/// edge-space vector `w`.
pub fn shift_bijection<S: Scalar>(
    g: &Multigraph,
    catalog: &CycleCatalog,
    w: &[S],
) -> Result<Vec<(SpanningTree, Divisor)>> {
    let cfg: Configuration = config_from_vector(g, catalog, w)?;
    enumerate_spanning_trees(g)
        .into_iter()
        .map(|t| {
            let d = cycle_orientation_map(g, catalog, &cfg, &t)?;
            Ok((t, d))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn diamond_basis_and_projection() {
        let g = fixtures::diamond();
        let t = g.spanning_tree(&["e1", "e3", "e5"]).unwrap();
        let b = cycle_basis(&g, &t);
        assert_eq!(b.cycles, vec![vec![1, -1, 0, 0, 1], vec![0, 0, 1, -1, 1]]);
        assert_eq!(b.gram, vec![vec![3, 1], vec![1, 3]]);
        let v = vec![q(1, 1), q(1, 1), q(0, 1), q(-1, 3), q(0, 1)];
        assert_eq!(b.project(&v).unwrap(), vec![q(-1, 24), q(1, 8)]);
        let c1: Vec<Rational> = b.cycles[0].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(b.project(&c1).unwrap(), vec![q(1, 1), q(0, 1)]);
    }

    #[test]
    fn theta_and_cycle_grams() {
        let g = fixtures::theta();
        let b = cycle_basis(&g, &g.spanning_tree(&["e1"]).unwrap());
        assert_eq!(b.gram, vec![vec![2, 1], vec![1, 2]]);
        let c = fixtures::c5();
        assert_eq!(designated_basis(&c).gram, vec![vec![5]]);
    }

    #[test]
    fn diamond_abel_jacobi() {
        let g = fixtures::diamond();
        let t = g.spanning_tree(&["e1", "e3", "e5"]).unwrap();
        let b = cycle_basis(&g, &t);
        let points = vec![
            MetricPoint::Vertex(g.vertex("a").unwrap()),
            MetricPoint::OnEdge {
                edge: g.edge_by_id("e4").unwrap(),
                offset: q(2, 3),
            },
        ];
        let p = abel_jacobi(&g, &b, &points, 0).unwrap();
        assert_eq!(p.coords, vec![q(23, 24), q(1, 8)]);
        let pf = abel_jacobi(
            &g,
            &b,
            &[
                MetricPoint::Vertex(1),
                MetricPoint::OnEdge {
                    edge: 3,
                    offset: 2.0 / 3.0,
                },
            ],
            0,
        )
        .unwrap();
        assert!((pf.coords[0] - 23.0 / 24.0).abs() < 1e-9);
    }

    #[test]
    fn f_vectors() {
        assert_eq!(f_vector(&fixtures::theta()), vec![3, 6, 3]);
        assert_eq!(f_vector(&fixtures::path3()), vec![1]);
    }
}
