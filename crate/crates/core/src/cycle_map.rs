//! Cycle orientation configurations, the geometricity test, edge ordering
//! maps and their inverse.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::{enumerate_spanning_trees, CycleCatalog, Multigraph, SpanningTree, TreePaths};
use crate::orientation::{divisor_to_orientation, reverse_cycle, Orientation};
use crate::scalar::Scalar;
use crate::simplex::{feasible_geq, LpOutcome};
use crate::Rational;

/// A direction (`+1` canonical, `-1` reversed) for every simple cycle, in
/// catalog order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(pub Vec<i8>);

impl Configuration {
    /// Every configuration of a catalog, as bit patterns (set bit = reversed).
    pub fn all(catalog: &CycleCatalog) -> impl Iterator<Item = Configuration> + '_ {
        (0u64..(1u64 << catalog.len())).map(move |mask| {
            Configuration(
                (0..catalog.len())
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect(),
            )
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn direction(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn reversed(&self) -> Configuration {
        Configuration(self.0.iter().map(|d| -d).collect())
    }

    fn check(&self, catalog: &CycleCatalog) -> Result<()> {
        if self.0.len() != catalog.len() {
            return Err(Error::ConfigurationSize {
                expected: catalog.len(),
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

/// Orients each non-tree edge along the configured direction of its
/// fundamental cycle and places a chip at its head.
pub fn cycle_orientation_map(
    g: &Multigraph,
    catalog: &CycleCatalog,
    cfg: &Configuration,
    t: &SpanningTree,
) -> Result<Divisor> {
    cfg.check(catalog)?;
    let paths = TreePaths::new(g, t, 0);
    let mut d = Divisor::zero(g.n());
    for e in t.complement(g) {
        let c = paths.fundamental_cycle(g, e);
        let dir = cfg.direction(catalog.index_of(&c)) * c.sign(e);
        let edge = g.edge(e);
        d[if dir > 0 { edge.head } else { edge.tail }] += 1;
    }
    Ok(d)
}

/// Evidence returned by [`is_geometric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometricCertificate {
    /// Weights on the non-tree edges of `tree` giving every directed cycle a
    /// signed sum of at least one.
    Weights {
        tree: SpanningTree,
        alpha: Vec<(usize, Rational)>,
    },
    /// Nonnegative integers, one per cycle, whose combination of the
    /// configured directed cycles vanishes.
    Relation(Vec<u64>),
}

/// Row `C` of the LP: `s_C · sign(C, e)` over the non-tree edges of `t`.
fn lp_rows(catalog: &CycleCatalog, cfg: &Configuration, outside: &[usize]) -> Vec<Vec<Rational>> {
    catalog
        .cycles()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            outside
                .iter()
                .map(|&e| Rational::from_int((cfg.direction(i) * c.sign(e)) as i64))
                .collect()
        })
        .collect()
}

/// Decides whether a configuration is geometric (equivalently acyclic) by
/// exact LP, returning weights or an integral cycle relation.
pub fn is_geometric(
    g: &Multigraph,
    catalog: &CycleCatalog,
    cfg: &Configuration,
) -> Result<(bool, GeometricCertificate)> {
    cfg.check(catalog)?;
    let tree = enumerate_spanning_trees(g)
        .into_iter()
        .next()
        .expect("connected graphs have a spanning tree");
    let outside = tree.complement(g);
    let rows = lp_rows(catalog, cfg, &outside);
    let ones = vec![Rational::one(); rows.len()];
    match feasible_geq(&rows, &ones) {
        LpOutcome::Feasible(x) => Ok((
            true,
            GeometricCertificate::Weights {
                tree,
                alpha: outside.into_iter().zip(x).collect(),
            },
        )),
        LpOutcome::Infeasible(y) => {
            Ok((false, GeometricCertificate::Relation(integral_multiple(&y))))
        }
    }
}

/// Clears denominators and common factors of a nonnegative rational vector.
fn integral_multiple(y: &[Rational]) -> Vec<u64> {
    let lcm = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = y.iter().map(|v| (v * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.iter()
        .map(|v| {
            let v = if gcd.is_zero() { v.clone() } else { v / &gcd };
            v.abs().to_u64().expect("relation coefficient fits in u64")
        })
        .collect()
}

/// `Σ n_C · s_C · C` in the edge space.
pub fn relation_sum(
    g: &Multigraph,
    catalog: &CycleCatalog,
    cfg: &Configuration,
    coefficients: &[u64],
) -> Vec<i64> {
    let mut sum = vec![0i64; g.m()];
    for (i, (c, &n)) in catalog.cycles().iter().zip(coefficients).enumerate() {
        for e in c.support() {
            sum[e] += n as i64 * (cfg.direction(i) * c.sign(e)) as i64;
        }
    }
    sum
}

/// Directs each cycle so that its signed weighted sum over the edges
/// outside `forest` is positive.
pub fn config_from_weights(
    g: &Multigraph,
    catalog: &CycleCatalog,
    forest: &[usize],
    alpha: &[(usize, Rational)],
) -> Result<Configuration> {
    if !g.is_forest(forest) {
        return Err(Error::NotForest);
    }
    let mut w = vec![Rational::zero(); g.m()];
    for (e, a) in alpha {
        if forest.contains(e) {
            return Err(Error::InvalidOrdering(format!(
                "weight given for forest edge `{}`",
                g.edge_id(*e)
            )));
        }
        w[*e] = a.clone();
    }
    config_from_vector(g, catalog, &w)
}

/// Directs each cycle `C` so that `<w, C> > 0` for an edge-space vector `w`.
pub fn config_from_vector<S: Scalar>(
    g: &Multigraph,
    catalog: &CycleCatalog,
    w: &[S],
) -> Result<Configuration> {
    if w.len() != g.m() {
        return Err(Error::DimensionMismatch {
            expected: g.m(),
            found: w.len(),
        });
    }
    let mut out = Vec::with_capacity(catalog.len());
    for (i, c) in catalog.cycles().iter().enumerate() {
        let dot = c.support().fold(S::zero(), |acc, e| {
            acc + S::from_int(c.sign(e) as i64) * w[e].clone()
        });
        match dot.sign() {
            std::cmp::Ordering::Equal => return Err(Error::NonGeneric(i)),
            std::cmp::Ordering::Greater => out.push(1),
            std::cmp::Ordering::Less => out.push(-1),
        }
    }
    Ok(Configuration(out))
}

/// A forest together with an oriented order on the remaining edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrdering {
    pub forest: Vec<usize>,
    /// `(edge, direction)` from smallest to largest.
    pub order: Vec<(usize, i8)>,
}

/// JSON shape `{"forest": [...], "order": [["e1", 1], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeOrderingDocument {
    #[serde(default)]
    pub forest: Vec<String>,
    pub order: Vec<(String, i8)>,
}

impl EdgeOrdering {
    pub fn new(g: &Multigraph, forest: Vec<usize>, order: Vec<(usize, i8)>) -> Result<Self> {
        let ord = EdgeOrdering { forest, order };
        ord.validate(g)?;
        Ok(ord)
    }

    /// Empty forest, every edge in input order with its reference direction.
    pub fn reference(g: &Multigraph) -> Self {
        EdgeOrdering {
            forest: Vec::new(),
            order: (0..g.m()).map(|e| (e, 1)).collect(),
        }
    }

    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.forest.iter().any(|&e| e >= g.m()) || !g.is_forest(&self.forest) {
            return Err(Error::NotForest);
        }
        let mut seen = vec![false; g.m()];
        for &e in &self.forest {
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidOrdering(format!(
                    "edge `{}` repeated",
                    g.edge_id(e)
                )));
            }
        }
        for &(e, d) in &self.order {
            if e >= g.m() {
                return Err(Error::UnknownEdge(e.to_string()));
            }
            if d != 1 && d != -1 {
                return Err(Error::InvalidOrdering(format!(
                    "direction {d} on `{}`",
                    g.edge_id(e)
                )));
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidOrdering(format!(
                    "edge `{}` repeated",
                    g.edge_id(e)
                )));
            }
        }
        if let Some(e) = seen.iter().position(|s| !s) {
            return Err(Error::MissingOrderingCoverage(g.edge_id(e).to_string()));
        }
        Ok(())
    }

    /// Position of each edge in the order, `None` for forest edges.
    pub fn ranks(&self, m: usize) -> Vec<Option<(usize, i8)>> {
        let mut r = vec![None; m];
        for (k, &(e, d)) in self.order.iter().enumerate() {
            r[e] = Some((k, d));
        }
        r
    }

    /// Same data with the first ordered edge reversed.
    pub fn flip_first(&self) -> EdgeOrdering {
        let mut out = self.clone();
        if let Some(first) = out.order.first_mut() {
            first.1 = -first.1;
        }
        out
    }

    pub fn from_document(g: &Multigraph, doc: &EdgeOrderingDocument) -> Result<Self> {
        let forest = doc
            .forest
            .iter()
            .map(|id| g.edge_by_id(id))
            .collect::<Result<Vec<_>>>()?;
        let order = doc
            .order
            .iter()
            .map(|(id, d)| Ok((g.edge_by_id(id)?, *d)))
            .collect::<Result<Vec<_>>>()?;
        EdgeOrdering::new(g, forest, order)
    }

    pub fn to_document(&self, g: &Multigraph) -> EdgeOrderingDocument {
        EdgeOrderingDocument {
            forest: self
                .forest
                .iter()
                .map(|&e| g.edge_id(e).to_string())
                .collect(),
            order: self
                .order
                .iter()
                .map(|&(e, d)| (g.edge_id(e).to_string(), d))
                .collect(),
        }
    }

    /// The weights `2^-k` on the `k`-th ordered edge, oriented by its direction.
    pub fn weights(&self) -> Vec<(usize, Rational)> {
        self.order
            .iter()
            .enumerate()
            .map(|(k, &(e, d))| {
                let denom = BigInt::one() << (k + 1);
                (e, Rational::new(BigInt::from(d), denom))
            })
            .collect()
    }
}

/// Each cycle follows the direction of its smallest ordered edge.
pub fn edge_ordering_config(
    g: &Multigraph,
    catalog: &CycleCatalog,
    ord: &EdgeOrdering,
) -> Result<Configuration> {
    ord.validate(g)?;
    let ranks = ord.ranks(g.m());
    let cfg = catalog
        .cycles()
        .iter()
        .map(|c| {
            let (e, (_, d)) = c
                .support()
                .filter_map(|e| ranks[e].map(|r| (e, r)))
                .min_by_key(|(_, (k, _))| *k)
                .expect("every cycle leaves the forest");
            d * c.sign(e)
        })
        .collect();
    Ok(Configuration(cfg))
}

/// The edge ordering map evaluated directly on one tree.
pub fn edge_ordering_map(g: &Multigraph, ord: &EdgeOrdering, t: &SpanningTree) -> Result<Divisor> {
    ord.validate(g)?;
    let ranks = ord.ranks(g.m());
    let paths = TreePaths::new(g, t, 0);
    let mut d = Divisor::zero(g.n());
    for f in t.complement(g) {
        let c = paths.fundamental_cycle(g, f);
        let (ei, (_, di)) = c
            .support()
            .filter_map(|e| ranks[e].map(|r| (e, r)))
            .min_by_key(|(_, (k, _))| *k)
            .expect("every cycle leaves the forest");
        // Traverse C so that e_i follows its ordered direction.
        let dir = di * c.sign(ei) * c.sign(f);
        let edge = g.edge(f);
        d[if dir > 0 { edge.head } else { edge.tail }] += 1;
    }
    Ok(d)
}

/// Inverse of the edge ordering map.
pub fn eom_inverse(g: &Multigraph, ord: &EdgeOrdering, d: &Divisor) -> Result<SpanningTree> {
    Ok(eom_inverse_counted(g, ord, d)?.0)
}

/// [`eom_inverse`] together with the number of orientation (max-flow) calls.
pub fn eom_inverse_counted(
    g: &Multigraph,
    ord: &EdgeOrdering,
    d: &Divisor,
) -> Result<(SpanningTree, usize)> {
    ord.validate(g)?;
    if d.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: d.len(),
        });
    }
    let ranks = ord.ranks(g.m());
    let mut calls = 0;
    let vertices: Vec<usize> = (0..g.n()).collect();
    let edges: Vec<usize> = (0..g.m()).collect();
    let mut tree = Vec::new();
    invert(g, &ranks, &vertices, &edges, d, &mut tree, &mut calls)?;
    Ok((SpanningTree::new(g, tree)?, calls))
}

fn invert(
    g: &Multigraph,
    ranks: &[Option<(usize, i8)>],
    vertices: &[usize],
    edges: &[usize],
    d: &Divisor,
    tree: &mut Vec<usize>,
    calls: &mut usize,
) -> Result<()> {
    if vertices.iter().all(|&v| d[v] == 0) {
        if edges.len() + 1 != vertices.len() {
            return Err(Error::NotBreak);
        }
        tree.extend_from_slice(edges);
        return Ok(());
    }
    let Some(ei) = edges
        .iter()
        .copied()
        .filter(|&e| ranks[e].is_some())
        .min_by_key(|&e| ranks[e].map(|(k, _)| k))
    else {
        return Err(Error::NotBreak);
    };
    let (_, di) = ranks[ei].expect("filtered to ordered edges");
    let edge = g.edge(ei);
    let (ui, vi) = if di > 0 {
        (edge.tail, edge.head)
    } else {
        (edge.head, edge.tail)
    };

    let (h, _) = g.subgraph(vertices, edges).map_err(|_| Error::NotBreak)?;
    let local: std::collections::HashMap<usize, usize> =
        vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let local_d = Divisor(vertices.iter().map(|&v| d[v]).collect());
    *calls += 1;
    let o = divisor_to_orientation(&h, &local_d, local[&vi])?;
    let reach = o.reachable(&h, local[&ui]);
    let in_u = |v: usize| reach[local[&v]];

    if in_u(vi) {
        let rest: Vec<usize> = edges.iter().copied().filter(|&e| e != ei).collect();
        let mut d2 = d.clone();
        d2[vi] -= 1;
        return invert(g, ranks, vertices, &rest, &d2, tree, calls);
    }
    let u: Vec<usize> = vertices.iter().copied().filter(|&v| in_u(v)).collect();
    let uc: Vec<usize> = vertices.iter().copied().filter(|&v| !in_u(v)).collect();
    let mut dl = d.clone();
    for (k, &f) in edges.iter().enumerate() {
        if f == ei {
            continue;
        }
        let head = vertices[o.head(&h, k)];
        let tail = vertices[o.tail(&h, k)];
        if !in_u(tail) && in_u(head) {
            dl[head] -= 1;
        }
    }
    let inside = |set: &dyn Fn(usize) -> bool| -> Vec<usize> {
        edges
            .iter()
            .copied()
            .filter(|&e| set(g.edge(e).tail) && set(g.edge(e).head))
            .collect()
    };
    let left_edges = inside(&|v| in_u(v));
    let right_edges = inside(&|v| !in_u(v));
    tree.push(ei);
    invert(g, ranks, &u, &left_edges, &dl, tree, calls)?;
    invert(g, ranks, &uc, &right_edges, d, tree, calls)
}

/// The orientation in the cycle reversal class of `o` whose directed cycles
/// all agree with `cfg`.
pub fn faithful_orientation(
    g: &Multigraph,
    catalog: &CycleCatalog,
    cfg: &Configuration,
    o: &Orientation,
) -> Result<Orientation> {
    if !is_geometric(g, catalog, cfg)?.0 {
        return Err(Error::NotAcyclic);
    }
    let cap = 1usize << g.m().min(20);
    let mut o = o.clone();
    for _ in 0..=cap {
        let wrong = catalog.cycles().iter().enumerate().find(|(i, c)| {
            let mut dirs = c.support().map(|e| o.sign(e) * c.sign(e));
            let first = dirs.next().expect("cycles are nonempty");
            dirs.all(|x| x == first) && first != cfg.direction(*i)
        });
        match wrong {
            Some((_, c)) => o = reverse_cycle(g, &o, c)?,
            None => return Ok(o),
        }
    }
    Err(Error::IterationCap(cap))
}

/// Image of every spanning tree under a configuration.
pub fn map_table(
    g: &Multigraph,
    catalog: &CycleCatalog,
    cfg: &Configuration,
) -> Result<Vec<(SpanningTree, Divisor)>> {
    enumerate_spanning_trees(g)
        .into_iter()
        .map(|t| {
            let d = cycle_orientation_map(g, catalog, cfg, &t)?;
            Ok((t, d))
        })
        .collect()
}

/// Whether the images of all trees are pairwise distinct.
pub fn is_injective(table: &[(SpanningTree, Divisor)]) -> bool {
    let mut seen = BTreeMap::new();
    table
        .iter()
        .all(|(t, d)| seen.insert(d.clone(), t.clone()).is_none())
}
