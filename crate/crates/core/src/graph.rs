//! Loopless connected multigraphs with a reference orientation, spanning
//! trees, signed simple cycles and the Laplacian.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.tail {
            self.head
        } else {
            self.tail
        }
    }

    pub fn is_incident(&self, v: usize) -> bool {
        self.tail == v || self.head == v
    }
}

/// JSON shape shared by every command: `{"vertices": [...], "edges": [[id, tail, head], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

/// A connected, loopless multigraph. Vertex and edge order follow the input
/// and every deterministic enumeration in the crate is keyed on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    incident: Vec<Vec<usize>>,
}

impl Multigraph {
    pub fn new<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let doc = GraphDocument {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            edges: edges
                .iter()
                .map(|(e, t, h)| {
                    (
                        e.as_ref().to_string(),
                        t.as_ref().to_string(),
                        h.as_ref().to_string(),
                    )
                })
                .collect(),
        };
        Self::from_document(&doc)
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let g = Self::build(doc)?;
        if !g.is_connected_without(&[]) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Validates ids and loops but not connectivity.
    fn build(doc: &GraphDocument) -> Result<Self> {
        if doc.vertices.is_empty() {
            return Err(Error::Empty);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(doc.edges.len());
        let mut incident = vec![Vec::new(); doc.vertices.len()];
        for (i, (id, t, h)) in doc.edges.iter().enumerate() {
            let tail = *vertex_index
                .get(t)
                .ok_or_else(|| Error::UnknownVertex(t.clone()))?;
            let head = *vertex_index
                .get(h)
                .ok_or_else(|| Error::UnknownVertex(h.clone()))?;
            if tail == head {
                return Err(Error::Loop(id.clone()));
            }
            if edge_index.insert(id.clone(), i).is_some() || vertex_index.contains_key(id) {
                return Err(Error::DuplicateId(id.clone()));
            }
            incident[tail].push(i);
            incident[head].push(i);
            edges.push(Edge {
                id: id.clone(),
                tail,
                head,
            });
        }
        Ok(Multigraph {
            vertices: doc.vertices.clone(),
            edges,
            vertex_index,
            edge_index,
            incident,
        })
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        e.id.clone(),
                        self.vertices[e.tail].clone(),
                        self.vertices[e.head].clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Cyclomatic number `m - n + 1`.
    pub fn genus(&self) -> usize {
        self.m() + 1 - self.n()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_by_id(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Edges incident to `v`, in input order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// Subgraph on `vertices` using `edges` (indices into `self`). Ids are
    /// preserved and the induced order follows the given slices. Returns the
    /// subgraph together with the vertex map back into `self`.
    pub fn subgraph(
        &self,
        vertices: &[usize],
        edges: &[usize],
    ) -> Result<(Multigraph, Vec<usize>)> {
        let doc = GraphDocument {
            vertices: vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges: edges
                .iter()
                .map(|&e| {
                    let edge = &self.edges[e];
                    (
                        edge.id.clone(),
                        self.vertices[edge.tail].clone(),
                        self.vertices[edge.head].clone(),
                    )
                })
                .collect(),
        };
        Ok((Multigraph::from_document(&doc)?, vertices.to_vec()))
    }

    /// Same vertex set, with `removed` edges deleted.
    pub fn without_edges(&self, removed: &[usize]) -> Result<Multigraph> {
        let keep: Vec<usize> = (0..self.m()).filter(|e| !removed.contains(e)).collect();
        let all: Vec<usize> = (0..self.n()).collect();
        Ok(self.subgraph(&all, &keep)?.0)
    }

    pub fn is_connected_without(&self, removed: &[usize]) -> bool {
        let mut skip = vec![false; self.m()];
        for &e in removed {
            if e < skip.len() {
                skip[e] = true;
            }
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in &self.incident[v] {
                if skip[e] {
                    continue;
                }
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    /// Parses a list of edge ids.
    pub fn edge_set<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = ids
            .iter()
            .map(|s| self.edge_by_id(s.as_ref()))
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn spanning_tree<S: AsRef<str>>(&self, ids: &[S]) -> Result<SpanningTree> {
        SpanningTree::new(self, self.edge_set(ids)?)
    }

    pub fn laplacian(&self) -> Laplacian {
        let n = self.n();
        let mut rows = vec![vec![0i64; n]; n];
        for e in &self.edges {
            rows[e.tail][e.tail] += 1;
            rows[e.head][e.head] += 1;
            rows[e.tail][e.head] -= 1;
            rows[e.head][e.tail] -= 1;
        }
        Laplacian { rows }
    }

    /// Whether `edges` is acyclic.
    pub fn is_forest(&self, edges: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.n());
        edges
            .iter()
            .all(|&e| uf.union(self.edges[e].tail, self.edges[e].head))
    }

    /// Edges whose removal disconnects the graph.
    pub fn bridges(&self) -> Vec<usize> {
        (0..self.m())
            .filter(|&e| !self.is_connected_without(&[e]))
            .collect()
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "graph(n={}, m={}, g={})",
            self.n(),
            self.m(),
            self.genus()
        )
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// The `n x n` matrix `D - A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laplacian {
    pub rows: Vec<Vec<i64>>,
}

impl Laplacian {
    /// `Δu`.
    pub fn apply(&self, u: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(u).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Laplacian with row and column `q` deleted.
    pub fn reduced(&self, q: usize) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != q)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != q)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect()
    }
}

/// Sorted edge indices of a spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    edges: Vec<usize>,
}

impl SpanningTree {
    pub fn new(g: &Multigraph, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        if edges.len() + 1 != g.n() || edges.iter().any(|&e| e >= g.m()) || !g.is_forest(&edges) {
            return Err(Error::NotSpanningTree);
        }
        Ok(SpanningTree { edges })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Edges of `g` outside the tree, ascending.
    pub fn complement(&self, g: &Multigraph) -> Vec<usize> {
        (0..g.m()).filter(|&e| !self.contains(e)).collect()
    }

    pub fn ids<'a>(&self, g: &'a Multigraph) -> Vec<&'a str> {
        self.edges.iter().map(|&e| g.edge_id(e)).collect()
    }
}

/// Every spanning tree, each once. Trees containing earlier edges come first.
pub fn enumerate_spanning_trees(g: &Multigraph) -> Vec<SpanningTree> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(g.n().saturating_sub(1));
    spanning_rec(g, 0, &mut chosen, &mut out);
    out
}

fn spanning_rec(g: &Multigraph, next: usize, chosen: &mut Vec<usize>, out: &mut Vec<SpanningTree>) {
    let need = g.n() - 1;
    if chosen.len() == need {
        out.push(SpanningTree {
            edges: chosen.clone(),
        });
        return;
    }
    if next >= g.m() || g.m() - next < need - chosen.len() {
        return;
    }
    chosen.push(next);
    if g.is_forest(chosen) {
        spanning_rec(g, next + 1, chosen, out);
    }
    chosen.pop();
    // Skipping `next` is only useful if the remaining edges can still connect.
    let mut removed: Vec<usize> = (0..next + 1).filter(|e| !chosen.contains(e)).collect();
    removed.sort_unstable();
    if g.is_connected_without(&removed) {
        spanning_rec(g, next + 1, chosen, out);
    }
}

/// A signed simple cycle, stored in its canonical direction: the lowest
/// indexed support edge carries `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    signs: Vec<i8>,
}

impl Cycle {
    /// Builds a canonical cycle from any signed incidence vector of a simple cycle.
    pub fn from_signs(mut signs: Vec<i8>) -> Self {
        if let Some(first) = signs.iter().find(|&&s| s != 0) {
            if *first < 0 {
                signs.iter_mut().for_each(|s| *s = -*s);
            }
        }
        Cycle { signs }
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.signs[e]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(e, _)| e)
    }

    pub fn len(&self) -> usize {
        self.signs.iter().filter(|&&s| s != 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.signs[e] != 0
    }

    /// The signed vector when traversed in direction `dir` (`+1` canonical).
    pub fn directed(&self, dir: i8) -> Vec<i8> {
        self.signs.iter().map(|s| s * dir).collect()
    }

    /// Checks the degree-2 and consistent-direction invariants.
    pub fn is_valid(&self, g: &Multigraph) -> bool {
        let mut net = vec![0i32; g.n()];
        let mut deg = vec![0u32; g.n()];
        for e in self.support() {
            let edge = g.edge(e);
            let s = self.signs[e] as i32;
            net[edge.head] += s;
            net[edge.tail] -= s;
            deg[edge.head] += 1;
            deg[edge.tail] += 1;
        }
        if self.is_empty() || net.iter().any(|&x| x != 0) || deg.iter().any(|&d| d != 0 && d != 2) {
            return false;
        }
        let support: Vec<usize> = self.support().collect();
        let keep: Vec<usize> = (0..g.m()).filter(|e| !support.contains(e)).collect();
        // Connected support: walking from one support edge reaches all of them.
        let mut seen = vec![false; g.n()];
        let start = g.edge(support[0]).tail;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &e in g.incident(v) {
                if keep.contains(&e) {
                    continue;
                }
                let w = g.edge(e).other(v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        support
            .iter()
            .all(|&e| seen[g.edge(e).tail] && seen[g.edge(e).head])
    }

    pub fn to_map(&self, g: &Multigraph) -> Vec<(String, i8)> {
        self.support()
            .map(|e| (g.edge_id(e).to_string(), self.signs[e]))
            .collect()
    }
}

/// All simple cycles, each once in canonical direction. Cycles are grouped
/// by their lowest edge; within a group the order is depth-first over
/// incident edges in input order.
pub fn enumerate_cycles(g: &Multigraph) -> Vec<Cycle> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    let mut path: Vec<(usize, i8)> = Vec::new();
    for e0 in 0..g.m() {
        let edge = g.edge(e0);
        on_path[edge.tail] = true;
        on_path[edge.head] = true;
        path.push((e0, 1));
        cycles_rec(
            g,
            e0,
            edge.head,
            edge.tail,
            &mut on_path,
            &mut path,
            &mut out,
        );
        path.pop();
        on_path[edge.tail] = false;
        on_path[edge.head] = false;
    }
    out
}

fn cycles_rec(
    g: &Multigraph,
    e0: usize,
    at: usize,
    target: usize,
    on_path: &mut [bool],
    path: &mut Vec<(usize, i8)>,
    out: &mut Vec<Cycle>,
) {
    for &e in g.incident(at) {
        if e <= e0 {
            continue;
        }
        let edge = g.edge(e);
        let next = edge.other(at);
        let sign = if edge.tail == at { 1 } else { -1 };
        if next == target {
            let mut signs = vec![0i8; g.m()];
            for &(pe, s) in path.iter() {
                signs[pe] = s;
            }
            signs[e] = sign;
            out.push(Cycle { signs });
        } else if !on_path[next] {
            on_path[next] = true;
            path.push((e, sign));
            cycles_rec(g, e0, next, target, on_path, path, out);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// Rooted view of a spanning tree answering path queries.
#[derive(Debug, Clone)]
pub struct TreePaths {
    root: usize,
    parent_edge: Vec<Option<usize>>,
    parent: Vec<usize>,
    depth: Vec<usize>,
}

impl TreePaths {
    pub fn new(g: &Multigraph, t: &SpanningTree, root: usize) -> Self {
        let n = g.n();
        let mut parent_edge = vec![None; n];
        let mut parent = vec![root; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                if !t.contains(e) {
                    continue;
                }
                let w = g.edge(e).other(v);
                if !seen[w] {
                    seen[w] = true;
                    parent_edge[w] = Some(e);
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        TreePaths {
            root,
            parent_edge,
            parent,
            depth,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Parent edge of `v` toward the root.
    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        self.parent_edge[v]
    }

    /// Tree path from `from` to `to` as `(edge, sign)` steps, where the sign
    /// is `+1` when the step follows the reference orientation.
    pub fn path(&self, g: &Multigraph, from: usize, to: usize) -> Vec<(usize, i8)> {
        let (mut a, mut b) = (from, to);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let e = self.parent_edge[a].expect("non-root has a parent");
                let sign = if g.edge(e).tail == a { 1 } else { -1 };
                up.push((e, sign));
                a = self.parent[a];
            } else {
                let e = self.parent_edge[b].expect("non-root has a parent");
                // Traversed from parent[b] to b.
                let sign = if g.edge(e).head == b { 1 } else { -1 };
                down.push((e, sign));
                b = self.parent[b];
            }
        }
        down.reverse();
        up.extend(down);
        up
    }

    /// Fundamental cycle of the non-tree edge `e`, canonical direction.
    pub fn fundamental_cycle(&self, g: &Multigraph, e: usize) -> Cycle {
        let edge = g.edge(e);
        let mut signs = vec![0i8; g.m()];
        signs[e] = 1;
        for (pe, s) in self.path(g, edge.head, edge.tail) {
            signs[pe] = s;
        }
        Cycle::from_signs(signs)
    }
}

/// The unique cycle in `T + e`, canonical direction.
pub fn fundamental_cycle(g: &Multigraph, t: &SpanningTree, e: usize) -> Result<Cycle> {
    if e >= g.m() {
        return Err(Error::UnknownEdge(e.to_string()));
    }
    if t.contains(e) {
        return Err(Error::EdgeInTree(g.edge_id(e).to_string()));
    }
    Ok(TreePaths::new(g, t, 0).fundamental_cycle(g, e))
}

/// Simple cycles indexed for configuration lookups.
#[derive(Debug, Clone)]
pub struct CycleCatalog {
    cycles: Vec<Cycle>,
    index: HashMap<Vec<i8>, usize>,
}

impl CycleCatalog {
    pub fn new(g: &Multigraph) -> Self {
        let cycles = enumerate_cycles(g);
        let index = cycles
            .iter()
            .enumerate()
            .map(|(i, c)| (c.signs.clone(), i))
            .collect();
        CycleCatalog { cycles, index }
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn get(&self, i: usize) -> &Cycle {
        &self.cycles[i]
    }

    /// Position of a (canonical) cycle.
    pub fn index_of(&self, c: &Cycle) -> usize {
        self.index[&c.signs]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn minimal_and_theta_graphs() {
        let single = Multigraph::new::<&str, &str>(&["v"], &[]).unwrap();
        assert_eq!(single.genus(), 0);
        assert_eq!(enumerate_spanning_trees(&single).len(), 1);
        let theta = fixtures::theta();
        assert_eq!((theta.n(), theta.m(), theta.genus()), (2, 3, 2));
    }

    #[test]
    fn parse_rejections_are_distinct() {
        let loop_err = Multigraph::new(&["x"], &[("e", "x", "x")]).unwrap_err();
        assert_eq!(loop_err, Error::Loop("e".into()));
        let disc = Multigraph::new::<&str, &str>(&["a", "b"], &[]).unwrap_err();
        assert_eq!(disc, Error::Disconnected);
        let unknown = Multigraph::new(&["a"], &[("e", "a", "z")]).unwrap_err();
        assert_eq!(unknown, Error::UnknownVertex("z".into()));
        let dup = Multigraph::new(&["a", "b"], &[("e", "a", "b"), ("e", "b", "a")]).unwrap_err();
        assert_eq!(dup, Error::DuplicateId("e".into()));
    }

    #[test]
    fn theta_trees_and_cycles() {
        let g = fixtures::theta();
        let trees: Vec<Vec<&str>> = enumerate_spanning_trees(&g)
            .iter()
            .map(|t| t.ids(&g))
            .collect();
        assert_eq!(trees, vec![vec!["e1"], vec!["e2"], vec!["e3"]]);
        let cycles = enumerate_cycles(&g);
        assert_eq!(cycles.len(), 3);
        assert_eq!(cycles[0].signs(), &[1, -1, 0]);
        assert_eq!(cycles[1].signs(), &[1, 0, -1]);
        assert_eq!(cycles[2].signs(), &[0, 1, -1]);
    }

    #[test]
    fn path_graph_has_one_tree_and_no_cycles() {
        let g = fixtures::path3();
        assert_eq!(enumerate_spanning_trees(&g).len(), 1);
        assert!(enumerate_cycles(&g).is_empty());
    }

    #[test]
    fn k4_cycle_count() {
        let g = fixtures::k4();
        let cycles = enumerate_cycles(&g);
        assert_eq!(cycles.len(), 7);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
        assert!(cycles.iter().all(|c| c.is_valid(&g)));
    }

    #[test]
    fn fundamental_cycles() {
        let g = fixtures::theta();
        let t = g.spanning_tree(&["e1"]).unwrap();
        let c = fundamental_cycle(&g, &t, g.edge_by_id("e2").unwrap()).unwrap();
        assert_eq!(c.signs(), &[1, -1, 0]);
        assert_eq!(
            fundamental_cycle(&g, &t, 0),
            Err(Error::EdgeInTree("e1".into()))
        );

        let k4 = fixtures::k4();
        let star = k4.spanning_tree(&["ab", "ac", "ad"]).unwrap();
        let c = fundamental_cycle(&k4, &star, k4.edge_by_id("bc").unwrap()).unwrap();
        let support: Vec<&str> = c.support().map(|e| k4.edge_id(e)).collect();
        assert_eq!(support, vec!["ab", "ac", "bc"]);
        assert!(c.is_valid(&k4));
    }

    #[test]
    fn laplacians() {
        let g = fixtures::theta();
        assert_eq!(g.laplacian().rows, vec![vec![3, -3], vec![-3, 3]]);
        let k4 = fixtures::k4();
        let l = k4.laplacian();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(l.rows[i][j], if i == j { 3 } else { -1 });
            }
        }
        for g in fixtures::all_graphs() {
            let l = g.1.laplacian();
            assert!(l.rows.iter().all(|r| r.iter().sum::<i64>() == 0));
        }
    }

    #[test]
    fn connectivity_after_removal() {
        let g = fixtures::theta();
        assert!(g.is_connected_without(&[0]));
        assert!(!g.is_connected_without(&[0, 1, 2]));
        assert!(g.is_connected_without(&[]));
    }
}
