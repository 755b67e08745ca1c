//! Ribbon graphs: rotation systems, face tracing, the Bernardi tour and its
//! divisor, plane embeddings, face-indexed Bernardi maps and plane duality.
//!
//! A dart is `2e` (tail to head) or `2e + 1` (head to tail). Face tracing
//! sends a dart arriving at `v` along `e` to the dart leaving `v` along the
//! edge after `e` in the rotation at `v`. With counterclockwise rotations the
//! face of a dart lies on its right.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cycle_map::{Configuration, EdgeOrdering};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{
    enumerate_spanning_trees, Cycle, CycleCatalog, GraphDocument, Multigraph, SpanningTree,
    TreePaths, UnionFind,
};
use crate::orientation::PartialOrientation;

pub fn dart_edge(d: usize) -> usize {
    d / 2
}

pub fn reverse_dart(d: usize) -> usize {
    d ^ 1
}

/// A multigraph with a cyclic order of incident edges at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    graph: Multigraph,
    rotation: Vec<Vec<usize>>,
    /// Position of each edge in the rotation at its tail and at its head.
    slot: Vec<[usize; 2]>,
}

/// JSON shape of a ribbon graph, optionally with an outer face.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RibbonDocument {
    pub graph: GraphDocument,
    pub rotations: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<usize>,
}

impl RibbonGraph {
    pub fn new(graph: Multigraph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::DimensionMismatch {
                expected: graph.n(),
                found: rotation.len(),
            });
        }
        let mut slot = vec![[usize::MAX; 2]; graph.m()];
        for (v, order) in rotation.iter().enumerate() {
            let mut listed = order.clone();
            listed.sort_unstable();
            let mut incident = graph.incident(v).to_vec();
            incident.sort_unstable();
            if listed != incident {
                return Err(Error::InvalidRotation(format!(
                    "rotation at `{}` must list each incident edge once",
                    graph.vertex_id(v)
                )));
            }
            for (i, &e) in order.iter().enumerate() {
                let side = usize::from(graph.edge(e).head == v);
                slot[e][side] = i;
            }
        }
        Ok(RibbonGraph {
            graph,
            rotation,
            slot,
        })
    }

    /// Rotations given by edge ids keyed by vertex id.
    pub fn from_ids<V: AsRef<str>, E: AsRef<str>>(
        graph: Multigraph,
        rotations: &[(V, Vec<E>)],
    ) -> Result<Self> {
        let mut rotation = vec![Vec::new(); graph.n()];
        let mut seen = vec![false; graph.n()];
        for (v, order) in rotations {
            let v = graph.vertex(v.as_ref())?;
            if seen[v] {
                return Err(Error::InvalidRotation(format!(
                    "vertex `{}` listed twice",
                    graph.vertex_id(v)
                )));
            }
            seen[v] = true;
            rotation[v] = order
                .iter()
                .map(|e| graph.edge_by_id(e.as_ref()))
                .collect::<Result<_>>()?;
        }
        Self::new(graph, rotation)
    }

    pub fn from_document(doc: &RibbonDocument) -> Result<Self> {
        let graph = Multigraph::from_document(&doc.graph)?;
        let rotations: Vec<(&String, Vec<&String>)> = doc
            .rotations
            .iter()
            .map(|(v, es)| (v, es.iter().collect()))
            .collect();
        Self::from_ids(graph, &rotations)
    }

    pub fn to_document(&self, outer_face: Option<usize>) -> RibbonDocument {
        let g = &self.graph;
        RibbonDocument {
            graph: g.to_document(),
            rotations: self
                .rotation
                .iter()
                .enumerate()
                .map(|(v, es)| {
                    (
                        g.vertex_id(v).to_string(),
                        es.iter().map(|&e| g.edge_id(e).to_string()).collect(),
                    )
                })
                .collect(),
            outer_face,
        }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// The edge after `e` around `v`.
    pub fn next_edge(&self, v: usize, e: usize) -> usize {
        let side = usize::from(self.graph.edge(e).head == v);
        let order = &self.rotation[v];
        order[(self.slot[e][side] + 1) % order.len()]
    }

    pub fn dart_from(&self, v: usize, e: usize) -> usize {
        2 * e + usize::from(self.graph.edge(e).head == v)
    }

    pub fn origin(&self, d: usize) -> usize {
        let edge = self.graph.edge(dart_edge(d));
        if d.is_multiple_of(2) {
            edge.tail
        } else {
            edge.head
        }
    }

    pub fn target(&self, d: usize) -> usize {
        self.origin(reverse_dart(d))
    }

    /// Face-tracing successor of a dart.
    pub fn successor(&self, d: usize) -> usize {
        let v = self.target(d);
        self.dart_from(v, self.next_edge(v, dart_edge(d)))
    }

    pub fn check_start(&self, start: (usize, usize)) -> Result<()> {
        let (v, e) = start;
        if v >= self.graph.n() || e >= self.graph.m() || !self.graph.edge(e).is_incident(v) {
            return Err(Error::StartNotIncident {
                vertex: self.graph.vertices().get(v).cloned().unwrap_or_default(),
                edge: self
                    .graph
                    .edges()
                    .get(e)
                    .map(|x| x.id.clone())
                    .unwrap_or_default(),
            });
        }
        Ok(())
    }

    /// Every starting pair `(v, e)`, grouped by vertex in rotation order.
    pub fn starts(&self) -> Vec<(usize, usize)> {
        (0..self.graph.n())
            .flat_map(|v| self.rotation[v].iter().map(move |&e| (v, e)))
            .collect()
    }
}

/// Face orbits of darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faces {
    pub orbits: Vec<Vec<usize>>,
    /// Face index of every dart.
    pub of_dart: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// The face to the right of the forward dart of `e` and of its reverse.
    pub fn sides(&self, e: usize) -> (usize, usize) {
        (self.of_dart[2 * e], self.of_dart[2 * e + 1])
    }
}

/// Orbits of the successor rule, numbered by their smallest dart.
pub fn trace_faces(r: &RibbonGraph) -> Faces {
    let darts = 2 * r.graph.m();
    let mut of_dart = vec![usize::MAX; darts];
    let mut orbits = Vec::new();
    for d in 0..darts {
        if of_dart[d] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = d;
        while of_dart[x] == usize::MAX {
            of_dart[x] = orbits.len();
            orbit.push(x);
            x = r.successor(x);
        }
        orbits.push(orbit);
    }
    Faces { orbits, of_dart }
}

/// Topological genus from Euler's formula.
pub fn surface_genus(r: &RibbonGraph) -> usize {
    let g = r.graph();
    let f = trace_faces(r).len();
    (2 + g.m() - g.n() - f) / 2
}

/// The tour of states `(v_i, e_i)` and the first-visit vertex of every
/// non-tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernardiTour {
    pub start: (usize, usize),
    pub states: Vec<(usize, usize)>,
    pub eta: Vec<Option<usize>>,
}

pub fn bernardi_tour(
    r: &RibbonGraph,
    t: &SpanningTree,
    start: (usize, usize),
) -> Result<BernardiTour> {
    r.check_start(start)?;
    let g = r.graph();
    let steps = 2 * g.m();
    let mut states = Vec::with_capacity(steps);
    let mut eta = vec![None; g.m()];
    let (mut v, mut e) = start;
    for _ in 0..steps {
        states.push((v, e));
        if t.contains(e) {
            v = g.edge(e).other(v);
        } else if eta[e].is_none() {
            eta[e] = Some(v);
        }
        e = r.next_edge(v, e);
    }
    Ok(BernardiTour { start, states, eta })
}

/// `β_(v,e)(T)`: a chip where each non-tree edge is first cut.
pub fn bernardi_divisor(
    r: &RibbonGraph,
    t: &SpanningTree,
    start: (usize, usize),
) -> Result<Divisor> {
    let tour = bernardi_tour(r, t, start)?;
    let mut d = Divisor::zero(r.graph().n());
    for v in tour.eta.iter().flatten() {
        d[*v] += 1;
    }
    Ok(d)
}

/// Non-tree edges directed toward their first-cut vertex.
pub fn bernardi_partial_orientation(
    r: &RibbonGraph,
    t: &SpanningTree,
    start: (usize, usize),
) -> Result<PartialOrientation> {
    let g = r.graph();
    let tour = bernardi_tour(r, t, start)?;
    Ok(PartialOrientation(
        (0..g.m())
            .map(|e| match tour.eta[e] {
                Some(v) if v == g.edge(e).head => 1,
                Some(_) => -1,
                None => 0,
            })
            .collect(),
    ))
}

/// Two trees sharing a fundamental cycle that the process directs oppositely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub cycle: usize,
    pub first: (SpanningTree, i8),
    pub second: (SpanningTree, i8),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducedConfiguration {
    Consistent(Configuration),
    /// One witness per conflicting cycle, in catalog order.
    Conflict(Vec<Witness>),
}

/// The cycle directions a Bernardi process induces across all trees.
pub fn induced_configuration(
    r: &RibbonGraph,
    catalog: &CycleCatalog,
    start: (usize, usize),
) -> Result<InducedConfiguration> {
    let g = r.graph();
    let mut seen: Vec<Option<(SpanningTree, i8)>> = vec![None; catalog.len()];
    let mut conflicts: BTreeMap<usize, Witness> = BTreeMap::new();
    for t in enumerate_spanning_trees(g) {
        let p = bernardi_partial_orientation(r, &t, start)?;
        let paths = TreePaths::new(g, &t, 0);
        for e in t.complement(g) {
            let c = paths.fundamental_cycle(g, e);
            let i = catalog.index_of(&c);
            let dir = p.sign(e) * c.sign(e);
            match &seen[i] {
                None => seen[i] = Some((t.clone(), dir)),
                Some((t0, d0)) if *d0 != dir => {
                    conflicts.entry(i).or_insert_with(|| Witness {
                        cycle: i,
                        first: (t0.clone(), *d0),
                        second: (t.clone(), dir),
                    });
                }
                Some(_) => {}
            }
        }
    }
    if !conflicts.is_empty() {
        return Ok(InducedConfiguration::Conflict(
            conflicts.into_values().collect(),
        ));
    }
    Ok(InducedConfiguration::Consistent(Configuration(
        seen.into_iter()
            .map(|s| s.expect("every cycle is fundamental for some tree").1)
            .collect(),
    )))
}

/// A genus-zero ribbon graph with its faces and a designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEmbedding {
    ribbon: RibbonGraph,
    faces: Faces,
    outer: usize,
}

impl PlaneEmbedding {
    pub fn new(ribbon: RibbonGraph, outer: usize) -> Result<Self> {
        let genus = surface_genus(&ribbon);
        if genus != 0 {
            return Err(Error::NotPlanar(genus));
        }
        let faces = trace_faces(&ribbon);
        if outer >= faces.len() {
            return Err(Error::UnknownFace(outer));
        }
        Ok(PlaneEmbedding {
            ribbon,
            faces,
            outer,
        })
    }

    pub fn from_document(doc: &RibbonDocument) -> Result<Self> {
        Self::new(
            RibbonGraph::from_document(doc)?,
            doc.outer_face.unwrap_or(0),
        )
    }

    pub fn ribbon(&self) -> &RibbonGraph {
        &self.ribbon
    }

    pub fn graph(&self) -> &Multigraph {
        self.ribbon.graph()
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn with_outer(&self, outer: usize) -> Result<Self> {
        if outer >= self.faces.len() {
            return Err(Error::UnknownFace(outer));
        }
        Ok(PlaneEmbedding {
            outer,
            ..self.clone()
        })
    }

    pub fn check_face(&self, f: usize) -> Result<()> {
        if f >= self.faces.len() {
            return Err(Error::UnknownFace(f));
        }
        Ok(())
    }
}

/// Faces separated from the outer face by the edges of `c`.
pub fn inside_faces(p: &PlaneEmbedding, c: &Cycle) -> Vec<bool> {
    let faces = p.faces();
    let mut reached = vec![false; faces.len()];
    reached[p.outer()] = true;
    let mut queue = VecDeque::from([p.outer()]);
    while let Some(f) = queue.pop_front() {
        for &d in &faces.orbits[f] {
            if c.contains(dart_edge(d)) {
                continue;
            }
            let other = faces.of_dart[reverse_dart(d)];
            if !reached[other] {
                reached[other] = true;
                queue.push_back(other);
            }
        }
    }
    reached.iter().map(|r| !r).collect()
}

/// The direction of `c`, relative to its canonical signs, that keeps the
/// inside on the left.
pub fn counterclockwise_direction(p: &PlaneEmbedding, c: &Cycle) -> i8 {
    let e = c.support().next().expect("cycles are nonempty");
    let dart = if c.sign(e) > 0 { 2 * e } else { 2 * e + 1 };
    if inside_faces(p, c)[p.faces().of_dart[dart]] {
        -1
    } else {
        1
    }
}

/// The face indexing the Bernardi map started at `(v, e)`.
pub fn face_for_start(p: &PlaneEmbedding, start: (usize, usize)) -> Result<usize> {
    p.ribbon().check_start(start)?;
    Ok(p.faces().of_dart[p.ribbon().dart_from(start.0, start.1)])
}

/// A start whose Bernardi map is indexed by face `f`.
pub fn start_for_face(p: &PlaneEmbedding, f: usize) -> Result<(usize, usize)> {
    p.check_face(f)?;
    let d = p.faces().orbits[f][0];
    Ok((p.ribbon().origin(d), dart_edge(d)))
}

/// Cycles containing `f` inside run counterclockwise, all others clockwise.
pub fn face_configuration(
    p: &PlaneEmbedding,
    catalog: &CycleCatalog,
    f: usize,
) -> Result<Configuration> {
    p.check_face(f)?;
    Ok(Configuration(
        catalog
            .cycles()
            .iter()
            .map(|c| {
                let ccw = counterclockwise_direction(p, c);
                if inside_faces(p, c)[f] {
                    ccw
                } else {
                    -ccw
                }
            })
            .collect(),
    ))
}

fn faces_of_subgraph(r: &RibbonGraph, present: &[bool]) -> Vec<usize> {
    let g = r.graph();
    let next = |v: usize, e: usize| {
        let mut x = r.next_edge(v, e);
        while !present[x] {
            x = r.next_edge(v, x);
        }
        x
    };
    let mut of_dart = vec![usize::MAX; 2 * g.m()];
    let mut count = 0;
    for d in 0..2 * g.m() {
        if !present[dart_edge(d)] || of_dart[d] != usize::MAX {
            continue;
        }
        let mut x = d;
        while of_dart[x] == usize::MAX {
            of_dart[x] = count;
            let v = r.target(x);
            x = r.dart_from(v, next(v, dart_edge(x)));
        }
        count += 1;
    }
    of_dart
}

/// Peels edges off the outer face of `f`'s re-rooted embedding, directing
/// every non-bridge along a clockwise cycle through it.
pub fn algorithm3_ordering(p: &PlaneEmbedding, f: usize) -> Result<EdgeOrdering> {
    algorithm3_ordering_from(p, f, None)
}

/// [`algorithm3_ordering`] with a prescribed first edge on the boundary of `f`.
pub fn algorithm3_ordering_from(
    p: &PlaneEmbedding,
    f: usize,
    first: Option<usize>,
) -> Result<EdgeOrdering> {
    p.check_face(f)?;
    let r = p.ribbon();
    let g = r.graph();
    let mut present = vec![true; g.m()];
    let mut outer = vec![false; 2 * g.m()];
    for &d in &p.faces().orbits[f] {
        outer[d] = true;
    }
    let mut order = Vec::with_capacity(g.m());
    for step in 0..g.m() {
        let e = match (step, first) {
            (0, Some(e)) => {
                if e >= g.m() || !(outer[2 * e] || outer[2 * e + 1]) {
                    return Err(Error::InvalidOrdering(format!(
                        "first edge is not on the boundary of face {f}"
                    )));
                }
                e
            }
            _ => (0..g.m())
                .find(|&e| present[e] && (outer[2 * e] || outer[2 * e + 1]))
                .expect("a connected plane graph has an edge on its outer face"),
        };
        let mut uf = UnionFind::new(g.n());
        for x in (0..g.m()).filter(|&x| present[x] && x != e) {
            uf.union(g.edge(x).tail, g.edge(x).head);
        }
        let bridge = uf.find(g.edge(e).tail) != uf.find(g.edge(e).head);
        let dir = if bridge || !outer[2 * e] { 1 } else { -1 };
        order.push((e, dir));
        present[e] = false;
        let of_dart = faces_of_subgraph(r, &present);
        let mut merged = vec![false; 2 * g.m()];
        for d in (0..2 * g.m()).filter(|&d| present[dart_edge(d)] && outer[d]) {
            merged[of_dart[d]] = true;
        }
        outer = (0..2 * g.m())
            .map(|d| present[dart_edge(d)] && merged[of_dart[d]])
            .collect();
    }
    EdgeOrdering::new(g, Vec::new(), order)
}

/// The dual plane embedding. Dual vertex `k` is face `k`; dual edge `e*`
/// shares the index of `e` and runs from the face left of `e` to the face
/// on its right, so equal signs on `e` and `e*` are the identified
/// orientations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDual {
    pub embedding: PlaneEmbedding,
    /// The dual face surrounding each primal vertex.
    pub face_of_vertex: Vec<usize>,
}

pub fn planar_dual(p: &PlaneEmbedding) -> Result<PlanarDual> {
    let g = p.graph();
    if let Some(&b) = g.bridges().first() {
        return Err(Error::HasBridge(g.edge_id(b).to_string()));
    }
    let faces = p.faces();
    let vertices: Vec<String> = (0..faces.len()).map(|k| format!("F{k}")).collect();
    let edges: Vec<(String, String, String)> = (0..g.m())
        .map(|e| {
            let (right, left) = faces.sides(e);
            (
                format!("{}*", g.edge_id(e)),
                vertices[left].clone(),
                vertices[right].clone(),
            )
        })
        .collect();
    let dual = Multigraph::new(&vertices, &edges)?;
    let rotation = faces
        .orbits
        .iter()
        .map(|o| o.iter().map(|&d| dart_edge(d)).collect())
        .collect();
    let ribbon = RibbonGraph::new(dual, rotation)?;
    let dual_faces = trace_faces(&ribbon);
    let mut face_of_vertex = vec![usize::MAX; g.n()];
    for (k, orbit) in dual_faces.orbits.iter().enumerate() {
        let d = orbit[0];
        let e = g.edge(dart_edge(d));
        let v = if d % 2 == 0 { e.head } else { e.tail };
        face_of_vertex[v] = k;
    }
    let outer = face_of_vertex[0];
    Ok(PlanarDual {
        embedding: PlaneEmbedding::new(ribbon, outer)?,
        face_of_vertex,
    })
}

/// `T* = {e* : e ∉ T}`.
pub fn dual_tree(g: &Multigraph, dual: &Multigraph, t: &SpanningTree) -> Result<SpanningTree> {
    SpanningTree::new(dual, t.complement(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn theta_rotations() {
        let bng1 = fixtures::bng1();
        assert_eq!(trace_faces(&bng1).len(), 1);
        assert_eq!(surface_genus(&bng1), 1);
        let planar = fixtures::planar_theta();
        assert_eq!(trace_faces(planar.ribbon()).len(), 3);
        assert_eq!(surface_genus(planar.ribbon()), 0);
        let r = RibbonGraph::from_ids(
            fixtures::path3(),
            &[
                ("p1", vec!["p12"]),
                ("p2", vec!["p12", "p23"]),
                ("p3", vec!["p23"]),
            ],
        )
        .unwrap();
        assert_eq!(trace_faces(&r).len(), 1);
    }

    #[test]
    fn subdivided_bng1_values() {
        let r = fixtures::bng1_subdivision();
        let g = r.graph();
        let start = (g.vertex("u").unwrap(), g.edge_by_id("e12").unwrap());
        let t1 = g.spanning_tree(&["e12", "e2", "e31"]).unwrap();
        let t2 = g.spanning_tree(&["e11", "e2", "e31"]).unwrap();
        let d1 = bernardi_divisor(&r, &t1, start).unwrap();
        let d2 = bernardi_divisor(&r, &t2, start).unwrap();
        assert_eq!(d1, Divisor(vec![1, 0, 0, 1]));
        assert_eq!(d2, Divisor(vec![0, 1, 1, 0]));
        assert_eq!(bernardi_tour(&r, &t1, start).unwrap().states.len(), 10);
    }

    #[test]
    fn rejects_bad_rotations() {
        let g = fixtures::theta();
        let err = RibbonGraph::from_ids(
            g.clone(),
            &[("v1", vec!["e1", "e2"]), ("v2", vec!["e1", "e2", "e3"])],
        );
        assert!(matches!(err, Err(Error::InvalidRotation(_))));
        let r = fixtures::bng1();
        assert!(matches!(
            PlaneEmbedding::new(r, 0),
            Err(Error::NotPlanar(1))
        ));
        let t = g.spanning_tree(&["e1"]).unwrap();
        let p = fixtures::planar_theta();
        assert!(matches!(
            bernardi_tour(p.ribbon(), &t, (0, 7)),
            Err(Error::StartNotIncident { .. })
        ));
    }
}
