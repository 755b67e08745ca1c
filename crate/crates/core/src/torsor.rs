//! Torsor structures induced by tree bijections, translating elements and
//! the plane-duality diagram.

use std::collections::{BTreeMap, VecDeque};

use crate::cycle_map::{cycle_orientation_map, edge_ordering_map, eom_inverse, EdgeOrdering};
use crate::divisor::{is_break_divisor, linearly_equivalent, q_reduce, Divisor};
use crate::error::{Error, Result};
use crate::graph::{enumerate_spanning_trees, CycleCatalog, Multigraph, SpanningTree};
use crate::jacobian::shift_bijection;
use crate::orientation::{break_representative, divisor_to_orientation, Orientation};
use crate::ribbon::{
    bernardi_divisor, dart_edge, dual_tree, face_configuration, planar_dual, reverse_dart,
    start_for_face, PlaneEmbedding, RibbonGraph,
};
use crate::Rational;

/// Where a bijection came from; edge orderings are inverted directly,
/// everything else through the image table.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    EdgeOrdering(EdgeOrdering),
    BernardiStart { vertex: usize, edge: usize },
    Face(usize),
    Shift(Vec<Rational>),
    Table,
}

/// A bijection from spanning trees onto break divisors.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeBijection {
    pub provenance: Provenance,
    table: BTreeMap<SpanningTree, Divisor>,
    inverse: BTreeMap<Divisor, SpanningTree>,
}

impl TreeBijection {
    /// Checks that the pairs cover every tree once and hit distinct break
    /// divisors.
    pub fn from_pairs(
        g: &Multigraph,
        provenance: Provenance,
        pairs: Vec<(SpanningTree, Divisor)>,
    ) -> Result<Self> {
        let trees = enumerate_spanning_trees(g).len();
        let table: BTreeMap<SpanningTree, Divisor> = pairs.into_iter().collect();
        let inverse: BTreeMap<Divisor, SpanningTree> =
            table.iter().map(|(t, d)| (d.clone(), t.clone())).collect();
        if table.len() != trees
            || inverse.len() != trees
            || !inverse.keys().all(|d| is_break_divisor(g, d))
        {
            return Err(Error::NotBijective);
        }
        Ok(TreeBijection {
            provenance,
            table,
            inverse,
        })
    }

    pub fn from_edge_ordering(g: &Multigraph, ord: &EdgeOrdering) -> Result<Self> {
        let pairs = enumerate_spanning_trees(g)
            .into_iter()
            .map(|t| edge_ordering_map(g, ord, &t).map(|d| (t, d)))
            .collect::<Result<_>>()?;
        Self::from_pairs(g, Provenance::EdgeOrdering(ord.clone()), pairs)
    }

    pub fn from_bernardi(r: &RibbonGraph, start: (usize, usize)) -> Result<Self> {
        let g = r.graph();
        let pairs = enumerate_spanning_trees(g)
            .into_iter()
            .map(|t| bernardi_divisor(r, &t, start).map(|d| (t, d)))
            .collect::<Result<_>>()?;
        Self::from_pairs(
            g,
            Provenance::BernardiStart {
                vertex: start.0,
                edge: start.1,
            },
            pairs,
        )
    }

    /// `β_F` as the cycle orientation map of the face configuration.
    pub fn from_face(p: &PlaneEmbedding, f: usize) -> Result<Self> {
        let g = p.graph();
        let catalog = CycleCatalog::new(g);
        let cfg = face_configuration(p, &catalog, f)?;
        let pairs = enumerate_spanning_trees(g)
            .into_iter()
            .map(|t| cycle_orientation_map(g, &catalog, &cfg, &t).map(|d| (t, d)))
            .collect::<Result<_>>()?;
        Self::from_pairs(g, Provenance::Face(f), pairs)
    }

    pub fn from_shift(g: &Multigraph, w: &[Rational]) -> Result<Self> {
        let catalog = CycleCatalog::new(g);
        Self::from_pairs(
            g,
            Provenance::Shift(w.to_vec()),
            shift_bijection(g, &catalog, w)?,
        )
    }

    pub fn trees(&self) -> impl Iterator<Item = &SpanningTree> {
        self.table.keys()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn image(&self, t: &SpanningTree) -> Result<&Divisor> {
        self.table.get(t).ok_or(Error::NotInDomain)
    }

    pub fn preimage(&self, g: &Multigraph, d: &Divisor) -> Result<SpanningTree> {
        match &self.provenance {
            Provenance::EdgeOrdering(ord) => eom_inverse(g, ord, d),
            _ => self.inverse.get(d).cloned().ok_or(Error::NotBreak),
        }
    }

    /// The same bijection with its images permuted cyclically by `shift`.
    pub fn permuted(&self, shift: usize) -> TreeBijection {
        let trees: Vec<SpanningTree> = self.table.keys().cloned().collect();
        let images: Vec<Divisor> = self.table.values().cloned().collect();
        let k = images.len().max(1);
        let table: BTreeMap<SpanningTree, Divisor> = trees
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, images[(i + shift) % k].clone()))
            .collect();
        let inverse = table.iter().map(|(t, d)| (d.clone(), t.clone())).collect();
        TreeBijection {
            provenance: Provenance::Table,
            table,
            inverse,
        }
    }
}

/// `[D] · T = β⁻¹([D] + [β(T)])` for a degree-zero `D`.
pub fn torsor_act(
    g: &Multigraph,
    beta: &TreeBijection,
    class: &Divisor,
    t: &SpanningTree,
) -> Result<SpanningTree> {
    if class.degree() != 0 {
        return Err(Error::WrongDegree {
            expected: 0,
            found: class.degree(),
        });
    }
    let image: &Divisor = beta.image(t)?;
    let d = class + image;
    beta.preimage(g, &break_representative(g, &d, 0)?)
}

/// The translating class `D0` with `β2(T) ~ D0 + β1(T)` for every tree,
/// reduced at the first vertex.
pub fn torsors_isomorphic(
    g: &Multigraph,
    b1: &TreeBijection,
    b2: &TreeBijection,
) -> Result<Option<Divisor>> {
    let mut found: Option<Divisor> = None;
    for t in b1.trees() {
        let (a, b): (&Divisor, &Divisor) = (b2.image(t)?, b1.image(t)?);
        let diff = a - b;
        let key = q_reduce(g, &diff, 0);
        match &found {
            None => found = Some(key),
            Some(k) if *k != key => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(found.or_else(|| Some(Divisor::zero(g.n()))))
}

/// `∂` of an oriented edge: `(head) - (tail)`.
pub fn boundary(g: &Multigraph, e: usize, dir: i8) -> Divisor {
    let edge = g.edge(e);
    let (from, to) = if dir > 0 {
        (edge.tail, edge.head)
    } else {
        (edge.head, edge.tail)
    };
    Divisor::point(g.n(), to) - Divisor::point(g.n(), from)
}

/// Outcome of comparing an edge ordering map with its first-edge flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipDelta {
    /// `∂(e1)` with `e1` as oriented in the unflipped ordering.
    pub delta: Divisor,
    pub holds: bool,
    pub trees_containing_first: usize,
    pub trees_avoiding_first: usize,
}

pub fn eom_flip_delta(g: &Multigraph, ord: &EdgeOrdering) -> Result<FlipDelta> {
    let Some(&(e1, dir)) = ord.order.first() else {
        return Ok(FlipDelta {
            delta: Divisor::zero(g.n()),
            holds: true,
            trees_containing_first: enumerate_spanning_trees(g).len(),
            trees_avoiding_first: 0,
        });
    };
    let flipped = ord.flip_first();
    let delta = boundary(g, e1, dir);
    let mut out = FlipDelta {
        delta: delta.clone(),
        holds: true,
        trees_containing_first: 0,
        trees_avoiding_first: 0,
    };
    for t in enumerate_spanning_trees(g) {
        if t.contains(e1) {
            out.trees_containing_first += 1;
        } else {
            out.trees_avoiding_first += 1;
        }
        let diff = edge_ordering_map(g, ord, &t)? - edge_ordering_map(g, &flipped, &t)?;
        out.holds &= linearly_equivalent(g, &diff, &delta);
    }
    Ok(out)
}

/// `∂(f_1 + ... + f_l)` along a shortest dual path from `f` to `f2`, each
/// `f_i` directed with the face it leaves on its right.
pub fn bernardi_face_path_delta(p: &PlaneEmbedding, f: usize, f2: usize) -> Result<Divisor> {
    p.check_face(f)?;
    p.check_face(f2)?;
    let g = p.graph();
    let faces = p.faces();
    let mut via: Vec<Option<usize>> = vec![None; faces.len()];
    let mut seen = vec![false; faces.len()];
    seen[f] = true;
    let mut queue = VecDeque::from([f]);
    while let Some(a) = queue.pop_front() {
        for &d in &faces.orbits[a] {
            let b = faces.of_dart[reverse_dart(d)];
            if !seen[b] {
                seen[b] = true;
                via[b] = Some(d);
                queue.push_back(b);
            }
        }
    }
    let mut total = Divisor::zero(g.n());
    let mut at = f2;
    while let Some(d) = via[at] {
        total += &boundary(g, dart_edge(d), if d % 2 == 0 { 1 } else { -1 });
        at = faces.of_dart[d];
    }
    Ok(q_reduce(g, &total, 0))
}

/// How dual edges inherit orientations across a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualConvention {
    /// Equal signs on `e` and `e*`.
    Standard,
    /// Opposite signs; kept as a negative control.
    Reversed,
}

pub fn dual_orientation(o: &Orientation, convention: DualConvention) -> Orientation {
    match convention {
        DualConvention::Standard => o.clone(),
        DualConvention::Reversed => Orientation(o.0.iter().map(|s| -s).collect()),
    }
}

/// Checks, tree by tree, that the class of `β_F(T) - (v)` maps under the
/// dual orientation map to the class of `β_{v*}(T*) - (F*)`.
pub fn duality_diagram_check(
    p: &PlaneEmbedding,
    f: usize,
    v: usize,
    convention: DualConvention,
) -> Result<bool> {
    p.check_face(f)?;
    let g = p.graph();
    if v >= g.n() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let dual = planar_dual(p)?;
    let gs = dual.embedding.graph();
    let start = start_for_face(p, f)?;
    let dual_start = start_for_face(&dual.embedding, dual.face_of_vertex[v])?;
    for t in enumerate_spanning_trees(g) {
        let beta = bernardi_divisor(p.ribbon(), &t, start)?;
        let o = divisor_to_orientation(g, &beta, v)?;
        let os = dual_orientation(&o, convention);
        let ts = dual_tree(g, gs, &t)?;
        let target =
            bernardi_divisor(dual.embedding.ribbon(), &ts, dual_start)? - Divisor::point(gs.n(), f);
        if !linearly_equivalent(gs, &os.indegree_divisor(gs), &target) {
            return Ok(false);
        }
    }
    Ok(true)
}
