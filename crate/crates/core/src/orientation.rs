//! Orientations, indegree divisors, reversals and the flow-based
//! divisor-to-orientation routine.

use std::collections::{BTreeMap, VecDeque};

use crate::divisor::{fire_set, q_reduce, Divisor};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Cycle, Multigraph, SpanningTree, TreePaths};

/// `+1` keeps the reference direction of an edge, `-1` reverses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation(pub Vec<i8>);

impl Orientation {
    pub fn reference(g: &Multigraph) -> Self {
        Orientation(vec![1; g.m()])
    }

    /// The orientation whose bit `e` of `mask` set means edge `e` is reversed.
    pub fn from_mask(g: &Multigraph, mask: u64) -> Self {
        Orientation(
            (0..g.m())
                .map(|e| if mask >> e & 1 == 1 { -1 } else { 1 })
                .collect(),
        )
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.0[e]
    }

    pub fn head(&self, g: &Multigraph, e: usize) -> usize {
        let edge = g.edge(e);
        if self.0[e] > 0 {
            edge.head
        } else {
            edge.tail
        }
    }

    pub fn tail(&self, g: &Multigraph, e: usize) -> usize {
        g.edge(e).other(self.head(g, e))
    }

    pub fn indegrees(&self, g: &Multigraph) -> Vec<i64> {
        let mut d = vec![0; g.n()];
        for e in 0..g.m() {
            d[self.head(g, e)] += 1;
        }
        d
    }

    /// `D_O = Σ (indeg(v) - 1)(v)`.
    pub fn indegree_divisor(&self, g: &Multigraph) -> Divisor {
        Divisor(self.indegrees(g).into_iter().map(|x| x - 1).collect())
    }

    /// Vertices reachable from `q` along directed edges.
    pub fn reachable(&self, g: &Multigraph, q: usize) -> Vec<bool> {
        let mut seen = vec![false; g.n()];
        seen[q] = true;
        let mut queue = VecDeque::from([q]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                if self.tail(g, e) == v {
                    let w = self.head(g, e);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        seen
    }

    pub fn is_q_connected(&self, g: &Multigraph, q: usize) -> bool {
        self.reachable(g, q).iter().all(|&r| r)
    }

    pub fn from_map<S: AsRef<str>>(g: &Multigraph, map: &BTreeMap<S, i8>) -> Result<Self> {
        let mut o = vec![0i8; g.m()];
        for (id, &s) in map {
            let e = g.edge_by_id(id.as_ref())?;
            if s != 1 && s != -1 {
                return Err(Error::Parse(format!(
                    "edge `{}` has direction {s}",
                    id.as_ref()
                )));
            }
            o[e] = s;
        }
        if let Some(e) = o.iter().position(|&s| s == 0) {
            return Err(Error::Parse(format!(
                "edge `{}` is not oriented",
                g.edge_id(e)
            )));
        }
        Ok(Orientation(o))
    }

    pub fn to_map(&self, g: &Multigraph) -> BTreeMap<String, i8> {
        self.0
            .iter()
            .enumerate()
            .map(|(e, &s)| (g.edge_id(e).to_string(), s))
            .collect()
    }
}

/// Edge directions where `0` means unoriented.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialOrientation(pub Vec<i8>);

impl PartialOrientation {
    pub fn unoriented(m: usize) -> Self {
        PartialOrientation(vec![0; m])
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.0[e]
    }

    pub fn head(&self, g: &Multigraph, e: usize) -> Option<usize> {
        match self.0[e] {
            0 => None,
            s if s > 0 => Some(g.edge(e).head),
            _ => Some(g.edge(e).tail),
        }
    }

    /// Indegree counts of the oriented edges.
    pub fn indegree_divisor(&self, g: &Multigraph) -> Divisor {
        let mut d = Divisor::zero(g.n());
        for e in 0..g.m() {
            if let Some(h) = self.head(g, e) {
                d[h] += 1;
            }
        }
        d
    }
}

/// Flips a cycle that is directed in `o`.
pub fn reverse_cycle(g: &Multigraph, o: &Orientation, c: &Cycle) -> Result<Orientation> {
    let dirs: Vec<i8> = c.support().map(|e| o.sign(e) * c.sign(e)).collect();
    if dirs.is_empty() || dirs.iter().any(|&d| d != dirs[0]) {
        return Err(Error::NotDirected);
    }
    let mut out = o.clone();
    for e in c.support() {
        out.0[e] = -out.0[e];
    }
    debug_assert_eq!(out.indegree_divisor(g), o.indegree_divisor(g));
    Ok(out)
}

/// Flips the cut between `side` and its complement when it is directed.
pub fn reverse_cocycle(g: &Multigraph, o: &Orientation, side: &[bool]) -> Result<Orientation> {
    let cut: Vec<usize> = (0..g.m())
        .filter(|&e| side[g.edge(e).tail] != side[g.edge(e).head])
        .collect();
    if cut.is_empty() {
        return Err(Error::NotDirected);
    }
    let leaving = |e: usize| side[o.tail(g, e)];
    let first = leaving(cut[0]);
    if cut.iter().any(|&e| leaving(e) != first) {
        return Err(Error::NotDirected);
    }
    let mut out = o.clone();
    for e in cut {
        out.0[e] = -out.0[e];
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndegreeSolution {
    Oriented(Orientation),
    /// A vertex set `S` with `Σ_S d(v) < |E(S)|`.
    Infeasible(Vec<usize>),
}

/// An orientation with `indeg(v) = d(v)`, or a Hakimi violation.
pub fn orientation_with_indegrees(g: &Multigraph, d: &[i64]) -> Result<IndegreeSolution> {
    if d.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: d.len(),
        });
    }
    let total: i64 = d.iter().sum();
    if total != g.m() as i64 {
        return Err(Error::DegreeSumMismatch {
            expected: g.m() as i64,
            found: total,
        });
    }
    if let Some(v) = d.iter().position(|&x| x < 0) {
        return Ok(IndegreeSolution::Infeasible(vec![v]));
    }
    let (m, n) = (g.m(), g.n());
    let source = 0;
    let sink = m + n + 1;
    let mut net = FlowNetwork::new(m + n + 2);
    let mut to_head = Vec::with_capacity(m);
    for (e, edge) in g.edges().iter().enumerate() {
        net.add_arc(source, 1 + e, 1);
        to_head.push(net.add_arc(1 + e, 1 + m + edge.head, 1));
        net.add_arc(1 + e, 1 + m + edge.tail, 1);
    }
    for (v, &cap) in d.iter().enumerate() {
        net.add_arc(1 + m + v, sink, cap);
    }
    if net.max_flow(source, sink) == m as i64 {
        let o = to_head
            .iter()
            .map(|&arc| if net.flow(arc) == 1 { 1 } else { -1 })
            .collect();
        return Ok(IndegreeSolution::Oriented(Orientation(o)));
    }
    let reach = net.residual_reachable(source);
    let witness = (0..n).filter(|&v| reach[1 + m + v]).collect();
    Ok(IndegreeSolution::Infeasible(witness))
}

/// Indegree targets of a `q`-connected orientation realizing `D = D_O + (q)`.
fn targets(d: &Divisor, q: usize) -> Vec<i64> {
    d.values()
        .iter()
        .enumerate()
        .map(|(v, &c)| if v == q { c } else { c + 1 })
        .collect()
}

/// The `q`-connected orientation with `D = D_O + (q)` for a break divisor `D`.
pub fn divisor_to_orientation(g: &Multigraph, d: &Divisor, q: usize) -> Result<Orientation> {
    if d.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: d.len(),
        });
    }
    if d.degree() != g.genus() as i64 || !d.is_effective() {
        return Err(Error::NotBreak);
    }
    match orientation_with_indegrees(g, &targets(d, q))? {
        IndegreeSolution::Oriented(o) if o.is_q_connected(g, q) => Ok(o),
        _ => Err(Error::NotBreak),
    }
}

/// The break divisor linearly equivalent to a degree-`g` divisor.
pub fn break_representative(g: &Multigraph, d: &Divisor, q: usize) -> Result<Divisor> {
    let genus = g.genus() as i64;
    if d.degree() != genus {
        return Err(Error::WrongDegree {
            expected: genus,
            found: d.degree(),
        });
    }
    let cap = 10 * g.m().max(1) * g.n();
    let mut d = q_reduce(g, d, q);
    for _ in 0..cap {
        match orientation_with_indegrees(g, &targets(&d, q))? {
            IndegreeSolution::Infeasible(s) => {
                // S is short of chips: its complement fires once.
                let mut outside = vec![true; g.n()];
                for v in s {
                    outside[v] = false;
                }
                fire_set(g, &mut d, &outside, 1);
            }
            IndegreeSolution::Oriented(mut o) => {
                loop {
                    let reach = o.reachable(g, q);
                    if reach.iter().all(|&r| r) {
                        break;
                    }
                    let unreachable: Vec<bool> = reach.iter().map(|r| !r).collect();
                    o = reverse_cocycle(g, &o, &unreachable)?;
                }
                let mut out = o.indegree_divisor(g);
                out[q] += 1;
                return Ok(out);
            }
        }
    }
    Err(Error::IterationCap(cap))
}

/// Extends a partial orientation of the non-tree edges by directing tree
/// edges away from `q`.
pub fn complete_orientation(
    g: &Multigraph,
    t: &SpanningTree,
    p: &PartialOrientation,
    q: usize,
) -> Result<Orientation> {
    if p.0.len() != g.m() {
        return Err(Error::DimensionMismatch {
            expected: g.m(),
            found: p.0.len(),
        });
    }
    let mut o = p.0.clone();
    for e in t.complement(g) {
        if o[e] == 0 {
            return Err(Error::Parse(format!(
                "non-tree edge `{}` is unoriented",
                g.edge_id(e)
            )));
        }
    }
    let paths = TreePaths::new(g, t, q);
    for v in 0..g.n() {
        if let Some(e) = paths.parent_edge(v) {
            o[e] = if g.edge(e).head == v { 1 } else { -1 };
        }
    }
    Ok(Orientation(o))
}

/// All `2^m` orientations grouped by indegree divisor, which is exactly the
/// cycle reversal class.
pub fn cycle_reversal_classes(g: &Multigraph) -> BTreeMap<Divisor, Vec<Orientation>> {
    let mut classes: BTreeMap<Divisor, Vec<Orientation>> = BTreeMap::new();
    for mask in 0u64..(1u64 << g.m()) {
        let o = Orientation::from_mask(g, mask);
        classes.entry(o.indegree_divisor(g)).or_default().push(o);
    }
    classes
}
