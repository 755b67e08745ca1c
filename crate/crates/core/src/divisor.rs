//! Divisors, linear equivalence and break divisors.

use std::collections::{BTreeMap, HashSet};
use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::{enumerate_spanning_trees, Multigraph};
use crate::orientation::divisor_to_orientation;
use crate::snf::smith_normal_form;

/// Integer chips on the vertices of a fixed graph, indexed like its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// The divisor `(v)`.
    pub fn point(n: usize, v: usize) -> Self {
        let mut d = Self::zero(n);
        d.0[v] = 1;
        d
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn from_map<S: AsRef<str>>(g: &Multigraph, map: &BTreeMap<S, i64>) -> Result<Self> {
        let mut d = Self::zero(g.n());
        for (id, &chips) in map {
            d.0[g.vertex(id.as_ref())?] += chips;
        }
        Ok(d)
    }

    pub fn to_map(&self, g: &Multigraph) -> BTreeMap<String, i64> {
        self.0
            .iter()
            .enumerate()
            .map(|(v, &c)| (g.vertex_id(v).to_string(), c))
            .collect()
    }

    /// Sum notation such as `(v1) + 2(v2)`; `0` for the zero divisor.
    pub fn display(&self, g: &Multigraph) -> String {
        let mut parts = Vec::new();
        for (v, &c) in self.0.iter().enumerate() {
            let id = g.vertex_id(v);
            match c {
                0 => {}
                1 => parts.push(format!("({id})")),
                -1 => parts.push(format!("-({id})")),
                c => parts.push(format!("{c}({id})")),
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

impl Index<usize> for Divisor {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl IndexMut<usize> for Divisor {
    fn index_mut(&mut self, v: usize) -> &mut i64 {
        &mut self.0[v]
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(self, rhs: Divisor) -> Divisor {
        &self + &rhs
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(self, rhs: Divisor) -> Divisor {
        &self - &rhs
    }
}

impl AddAssign<&Divisor> for Divisor {
    fn add_assign(&mut self, rhs: &Divisor) {
        self.0.iter_mut().zip(&rhs.0).for_each(|(a, b)| *a += b);
    }
}

impl SubAssign<&Divisor> for Divisor {
    fn sub_assign(&mut self, rhs: &Divisor) {
        self.0.iter_mut().zip(&rhs.0).for_each(|(a, b)| *a -= b);
    }
}

impl Neg for Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor(self.0.into_iter().map(|x| -x).collect())
    }
}

/// `D - Δu`: vertex `v` fires `u(v)` times.
pub fn apply_principal(g: &Multigraph, d: &Divisor, u: &[i64]) -> Result<Divisor> {
    if u.len() != g.n() || d.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: if d.len() != g.n() { d.len() } else { u.len() },
        });
    }
    let lu = g.laplacian().apply(u);
    Ok(Divisor(d.0.iter().zip(lu).map(|(a, b)| a - b).collect()))
}

/// Fires every vertex of `set` `times` times.
pub(crate) fn fire_set(g: &Multigraph, d: &mut Divisor, set: &[bool], times: i64) {
    for e in g.edges() {
        if set[e.tail] != set[e.head] {
            let (inside, outside) = if set[e.tail] {
                (e.tail, e.head)
            } else {
                (e.head, e.tail)
            };
            d.0[inside] -= times;
            d.0[outside] += times;
        }
    }
}

fn bfs_distances(g: &Multigraph, q: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[q] = 0;
    let mut queue = std::collections::VecDeque::from([q]);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            let w = g.edge(e).other(v);
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// The unique q-reduced divisor equivalent to `d`.
pub fn q_reduce(g: &Multigraph, d: &Divisor, q: usize) -> Divisor {
    let mut d = d.clone();
    let n = g.n();
    // Make every vertex other than q nonnegative, fixing the farthest layer
    // first; firing the ball of smaller radius only feeds the outer layers.
    let dist = bfs_distances(g, q);
    let radius = dist.iter().copied().max().unwrap_or(0);
    for layer in (1..=radius).rev() {
        let ball: Vec<bool> = dist.iter().map(|&x| x < layer).collect();
        let mut times = 0;
        for v in 0..n {
            if dist[v] == layer && d[v] < 0 {
                let into_ball = g
                    .incident(v)
                    .iter()
                    .filter(|&&e| ball[g.edge(e).other(v)])
                    .count() as i64;
                times = times.max(Integer::div_ceil(&-d[v], &into_ball));
            }
        }
        if times > 0 {
            fire_set(g, &mut d, &ball, times);
        }
    }
    // Dhar burning; an unburnt set can fire without going into debt.
    loop {
        let mut burnt = vec![false; n];
        burnt[q] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if burnt[v] {
                    continue;
                }
                let fire = g
                    .incident(v)
                    .iter()
                    .filter(|&&e| burnt[g.edge(e).other(v)])
                    .count() as i64;
                if fire > d[v] {
                    burnt[v] = true;
                    changed = true;
                }
            }
        }
        if burnt.iter().all(|&b| b) {
            return d;
        }
        let unburnt: Vec<bool> = burnt.iter().map(|b| !b).collect();
        let times = (0..n)
            .filter(|&v| unburnt[v])
            .filter_map(|v| {
                let out = g
                    .incident(v)
                    .iter()
                    .filter(|&&e| burnt[g.edge(e).other(v)])
                    .count() as i64;
                (out > 0).then(|| d[v] / out)
            })
            .min()
            .unwrap_or(1)
            .max(1);
        fire_set(g, &mut d, &unburnt, times);
    }
}

pub fn linearly_equivalent(g: &Multigraph, a: &Divisor, b: &Divisor) -> bool {
    a.degree() == b.degree() && q_reduce(g, a, 0) == q_reduce(g, b, 0)
}

/// Invariant factors of `Pic^0(G)` with a degree-zero generator per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicGroupStructure {
    /// Base vertex whose row and column were deleted from the Laplacian.
    pub q: usize,
    /// Factors greater than one, each dividing the next.
    pub factors: Vec<BigInt>,
    pub generators: Vec<Divisor>,
    /// Row `i` maps a non-`q` divisor vector to the coordinate of factor `i`.
    coordinate_rows: Vec<Vec<BigInt>>,
}

impl PicGroupStructure {
    pub fn order(&self) -> BigInt {
        self.factors.iter().fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Coordinates of a degree-zero class, each reduced into `[0, d_i)`.
    pub fn coordinates(&self, d: &Divisor) -> Vec<BigInt> {
        let reduced: Vec<BigInt> = d
            .values()
            .iter()
            .enumerate()
            .filter(|(v, _)| *v != self.q)
            .map(|(_, &c)| BigInt::from(c))
            .collect();
        self.coordinate_rows
            .iter()
            .zip(&self.factors)
            .map(|(row, f)| {
                let s: BigInt = row.iter().zip(&reduced).map(|(a, b)| a * b).sum();
                s.mod_floor(f)
            })
            .collect()
    }

    /// `Σ c_i · generator_i` as a divisor.
    pub fn element(&self, coords: &[BigInt]) -> Divisor {
        let n = self.generators.first().map_or(0, Divisor::len);
        let mut d = Divisor::zero(n.max(self.q + 1));
        for (c, gen) in coords.iter().zip(&self.generators) {
            let c = c.to_i64().expect("coordinate fits in i64");
            for (x, y) in d.0.iter_mut().zip(gen.values()) {
                *x += c * y;
            }
        }
        d
    }
}

/// Smith normal form of the Laplacian with the base vertex removed.
pub fn pic_group_structure(g: &Multigraph, q: usize) -> PicGroupStructure {
    let reduced: Vec<Vec<BigInt>> = g
        .laplacian()
        .reduced(q)
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let snf = smith_normal_form(&reduced);
    let others: Vec<usize> = (0..g.n()).filter(|&v| v != q).collect();
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    let mut coordinate_rows = Vec::new();
    for (i, f) in snf.diagonal.iter().enumerate() {
        if f.is_one() {
            continue;
        }
        factors.push(f.clone());
        coordinate_rows.push(snf.u[i].clone());
        let mut d = Divisor::zero(g.n());
        for (k, &v) in others.iter().enumerate() {
            let x = snf.u_inv[k][i].mod_floor(f);
            d[v] = x.to_i64().expect("generator entry fits in i64");
        }
        d[q] = -d.degree();
        generators.push(d);
    }
    PicGroupStructure {
        q,
        factors,
        generators,
        coordinate_rows,
    }
}

/// All break divisors, in order of first appearance over trees and
/// orientations of the non-tree edges.
pub fn enumerate_break_divisors(g: &Multigraph) -> Vec<Divisor> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in enumerate_spanning_trees(g) {
        let outside = t.complement(g);
        for mask in 0u64..(1u64 << outside.len()) {
            let mut d = Divisor::zero(g.n());
            for (k, &e) in outside.iter().enumerate() {
                let edge = g.edge(e);
                let v = if mask >> k & 1 == 0 {
                    edge.head
                } else {
                    edge.tail
                };
                d[v] += 1;
            }
            if seen.insert(d.clone()) {
                out.push(d);
            }
        }
    }
    out
}

pub fn is_break_divisor(g: &Multigraph, d: &Divisor) -> bool {
    d.len() == g.n()
        && d.degree() == g.genus() as i64
        && d.is_effective()
        && divisor_to_orientation(g, d, 0).is_ok()
}

/// Number of pairs `(D', E')` with `|E'| = j`, `G - E'` connected and `D'` a
/// degree-`i` break divisor of `G - E'`.
pub fn count_break_configurations(g: &Multigraph, i: usize, j: usize) -> u64 {
    if j > g.genus() || i + j != g.genus() {
        return 0;
    }
    let mut total = 0;
    for removed in combinations(g.m(), j) {
        if !g.is_connected_without(&removed) {
            continue;
        }
        let h = g.without_edges(&removed).expect("connected by check");
        total += enumerate_break_divisors(&h).len() as u64;
    }
    total
}

/// Ascending `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Whether the class of `d` in `Pic^0` is trivial.
pub fn is_principal(g: &Multigraph, d: &Divisor) -> bool {
    d.degree() == 0 && q_reduce(g, d, 0).is_zero()
}

/// Canonical class key: the q-reduced form for base vertex 0.
pub fn class_key(g: &Multigraph, d: &Divisor) -> Divisor {
    q_reduce(g, d, 0)
}
