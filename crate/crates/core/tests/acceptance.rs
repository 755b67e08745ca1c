//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;

use breakdiv::cycle_map::map_table;
use breakdiv::jacobian::f_vector_formula;
use breakdiv::ribbon::face_configuration;
use breakdiv::sampler::flow_call_bound;
use breakdiv::*;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Break divisors by brute force over trees and endpoint choices.
fn brute_break_set(g: &Multigraph) -> BTreeSet<Divisor> {
    let mut out = BTreeSet::new();
    for t in enumerate_spanning_trees(g) {
        let rest = t.complement(g);
        for mask in 0u32..(1 << rest.len()) {
            let mut d = Divisor::zero(g.n());
            for (i, &e) in rest.iter().enumerate() {
                let edge = g.edge(e);
                d[if mask >> i & 1 == 1 {
                    edge.head
                } else {
                    edge.tail
                }] += 1;
            }
            out.insert(d);
        }
    }
    out
}

/// Sign patterns `(support, negated)` of every vanishing combination
/// `Σ ±n_C C` with `1 <= n_C <= bound`.
fn vanishing_patterns(g: &Multigraph, catalog: &CycleCatalog, bound: i64) -> HashSet<(u32, u32)> {
    fn walk(
        i: usize,
        cycles: &[Vec<i64>],
        bound: i64,
        acc: &mut Vec<i64>,
        support: u32,
        neg: u32,
        out: &mut HashSet<(u32, u32)>,
    ) {
        if i == cycles.len() {
            if support != 0 && acc.iter().all(|&x| x == 0) {
                out.insert((support, neg));
            }
            return;
        }
        walk(i + 1, cycles, bound, acc, support, neg, out);
        for c in (-bound..=bound).filter(|&c| c != 0) {
            for (a, s) in acc.iter_mut().zip(&cycles[i]) {
                *a += c * s;
            }
            let neg = if c < 0 { neg | 1 << i } else { neg };
            walk(i + 1, cycles, bound, acc, support | 1 << i, neg, out);
            for (a, s) in acc.iter_mut().zip(&cycles[i]) {
                *a -= c * s;
            }
        }
    }
    let cycles: Vec<Vec<i64>> = catalog
        .cycles()
        .iter()
        .map(|c| c.signs().iter().map(|&s| s as i64).collect())
        .collect();
    let mut out = HashSet::new();
    walk(0, &cycles, bound, &mut vec![0; g.m()], 0, 0, &mut out);
    out
}

fn config_mask(cfg: &Configuration) -> u32 {
    (0..cfg.len())
        .filter(|&i| cfg.direction(i) < 0)
        .fold(0, |m, i| m | 1 << i)
}

fn c1_abel_jacobi() -> Outcome {
    let g = fixtures::diamond();
    let t = g.spanning_tree(&["e1", "e3", "e5"]).map_err(err)?;
    let basis = cycle_basis(&g, &t);
    let (a, e4, base) = (
        g.vertex("a").map_err(err)?,
        g.edge_by_id("e4").map_err(err)?,
        g.vertex("q").map_err(err)?,
    );
    ensure(g.edge(e4).tail == g.vertex("x").map_err(err)?, || {
        "e4 should start at x".into()
    })?;
    let points = vec![
        MetricPoint::Vertex(a),
        MetricPoint::OnEdge {
            edge: e4,
            offset: q(2, 3),
        },
    ];
    let p = abel_jacobi(&g, &basis, &points, base).map_err(err)?;
    let expected = vec![q(23, 24), q(1, 8)];
    ensure(p.coords == expected, || format!("got {:?}", p.coords))?;
    Ok("(23/24, 1/8)".into())
}

fn c2_bernardi_values() -> Outcome {
    let r = fixtures::bng1_subdivision();
    let g = r.graph();
    let v = |id: &str| g.vertex(id).unwrap();
    let start = (v("u"), g.edge_by_id("e12").map_err(err)?);
    let point = |ids: &[&str]| {
        let mut d = Divisor::zero(g.n());
        for id in ids {
            d[v(id)] += 1;
        }
        d
    };
    let t1 = g.spanning_tree(&["e12", "e2", "e31"]).map_err(err)?;
    let t2 = g.spanning_tree(&["e11", "e2", "e31"]).map_err(err)?;
    let b1 = bernardi_divisor(&r, &t1, start).map_err(err)?;
    let b2 = bernardi_divisor(&r, &t2, start).map_err(err)?;
    ensure(b1 == point(&["v1", "w"]), || {
        format!("T1 -> {}", b1.display(g))
    })?;
    ensure(b2 == point(&["u", "v2"]), || {
        format!("T2 -> {}", b2.display(g))
    })?;
    let catalog = CycleCatalog::new(g);
    match induced_configuration(&r, &catalog, start).map_err(err)? {
        InducedConfiguration::Conflict(ws) => {
            Ok(format!("(v1)+(w), (u)+(v2), {} witness(es)", ws.len()))
        }
        InducedConfiguration::Consistent(_) => Err("no conflict witness".into()),
    }
}

fn c3_round_trip() -> Outcome {
    let mut checked = 0;
    let mut forests = 0;
    for (name, g) in fixtures::all_graphs() {
        let trees = enumerate_spanning_trees(&g);
        for ord in fixtures::orderings(&g, 6, 101) {
            forests += usize::from(!ord.forest.is_empty());
            for t in &trees {
                let d = edge_ordering_map(&g, &ord, t).map_err(err)?;
                let back = eom_inverse(&g, &ord, &d).map_err(err)?;
                ensure(&back == t, || {
                    format!("{name}: {:?} -> {:?}", t.ids(&g), back.ids(&g))
                })?;
                checked += 1;
            }
        }
    }
    ensure(forests > 0, || "no ordering with a nonempty forest".into())?;
    Ok(format!(
        "{checked} inversions, {forests} orderings with forests"
    ))
}

fn c4_criteria() -> Outcome {
    let mut summary = Vec::new();
    for (name, g, expected) in [
        ("theta", fixtures::theta(), Some(6)),
        ("k4", fixtures::k4(), None),
    ] {
        let catalog = CycleCatalog::new(&g);
        let patterns = vanishing_patterns(&g, &catalog, 6);
        let mut geometric = 0;
        let mut total = 0;
        for cfg in Configuration::all(&catalog) {
            let mask = config_mask(&cfg);
            let relation = patterns.iter().any(|&(s, n)| mask & s == n);
            let lp = is_geometric(&g, &catalog, &cfg).map_err(err)?.0;
            ensure(lp != relation, || {
                format!("{name}: {:?} lp={lp} relation={relation}", cfg.0)
            })?;
            geometric += usize::from(lp);
            total += 1;
        }
        if let Some(e) = expected {
            ensure(geometric == e, || format!("{name}: {geometric} geometric"))?;
        }
        summary.push(format!("{name} {geometric}/{total}"));
    }
    Ok(summary.join(", "))
}

fn c5_bijectivity() -> Outcome {
    let mut summary = Vec::new();
    for (name, g) in [("theta", fixtures::theta()), ("k4", fixtures::k4())] {
        let catalog = CycleCatalog::new(&g);
        let breaks = brute_break_set(&g);
        let mut count = 0;
        for cfg in Configuration::all(&catalog) {
            if !is_geometric(&g, &catalog, &cfg).map_err(err)?.0 {
                continue;
            }
            let table = map_table(&g, &catalog, &cfg).map_err(err)?;
            let image: BTreeSet<Divisor> = table.iter().map(|(_, d)| d.clone()).collect();
            ensure(image.len() == table.len() && image == breaks, || {
                format!("{name}: {:?}", cfg.0)
            })?;
            count += 1;
        }
        summary.push(format!("{name} {count} bijective"));
    }
    let g = fixtures::theta();
    let catalog = CycleCatalog::new(&g);
    let t2 = g.spanning_tree(&["e2"]).map_err(err)?;
    let t3 = g.spanning_tree(&["e3"]).map_err(err)?;
    let both = Divisor(vec![1, 1]);
    let mut collision = false;
    for cfg in Configuration::all(&catalog) {
        if is_geometric(&g, &catalog, &cfg).map_err(err)?.0 {
            continue;
        }
        let a = cycle_orientation_map(&g, &catalog, &cfg, &t2).map_err(err)?;
        let b = cycle_orientation_map(&g, &catalog, &cfg, &t3).map_err(err)?;
        collision |= a == both && b == both;
    }
    ensure(collision, || {
        "no relation configuration collides on {e2}, {e3}".into()
    })?;
    summary.push("theta collision at (v1)+(v2)".into());
    Ok(summary.join(", "))
}

fn c6_planar_bernardi() -> Outcome {
    let mut summary = Vec::new();
    for (name, p) in [
        ("planar-theta", fixtures::planar_theta()),
        ("k4", fixtures::k4_planar()),
    ] {
        let g = p.graph();
        let catalog = CycleCatalog::new(g);
        let starts = p.ribbon().starts();
        for &start in &starts {
            let cfg = match induced_configuration(p.ribbon(), &catalog, start).map_err(err)? {
                InducedConfiguration::Consistent(c) => c,
                InducedConfiguration::Conflict(_) => {
                    return Err(format!("{name}: conflict at {start:?}"))
                }
            };
            ensure(is_geometric(g, &catalog, &cfg).map_err(err)?.0, || {
                format!("{name}: not geometric")
            })?;
            let f = face_for_start(&p, start).map_err(err)?;
            let rule = face_configuration(&p, &catalog, f).map_err(err)?;
            for i in 0..catalog.len() {
                ensure(cfg.direction(i) == rule.direction(i), || {
                    format!("{name}: start {start:?} cycle {i}")
                })?;
            }
        }
        for f in 0..p.faces().len() {
            let ord = algorithm3_ordering(&p, f).map_err(err)?;
            let start = breakdiv::ribbon::start_for_face(&p, f).map_err(err)?;
            for t in enumerate_spanning_trees(g) {
                let a = edge_ordering_map(g, &ord, &t).map_err(err)?;
                let b = bernardi_divisor(p.ribbon(), &t, start).map_err(err)?;
                ensure(a == b, || format!("{name}: face {f} tree {:?}", t.ids(g)))?;
            }
        }
        summary.push(format!(
            "{name} {} starts, {} faces",
            starts.len(),
            p.faces().len()
        ));
    }
    Ok(summary.join(", "))
}

fn c7_torsor_deltas() -> Outcome {
    let mut mixed = 0;
    let mut orderings = 0;
    for (name, g) in fixtures::all_graphs() {
        for ord in fixtures::orderings(&g, 6, 23) {
            let Some(&(e1, dir)) = ord.order.first() else {
                continue;
            };
            let flipped = ord.flip_first();
            let edge = g.edge(e1);
            let mut delta = Divisor::zero(g.n());
            let (head, tail) = if dir > 0 {
                (edge.head, edge.tail)
            } else {
                (edge.tail, edge.head)
            };
            delta[head] += 1;
            delta[tail] -= 1;
            let (mut with, mut without) = (0, 0);
            for t in enumerate_spanning_trees(&g) {
                if t.contains(e1) {
                    with += 1;
                } else {
                    without += 1;
                }
                let diff = &edge_ordering_map(&g, &ord, &t).map_err(err)?
                    - &edge_ordering_map(&g, &flipped, &t).map_err(err)?;
                ensure(linearly_equivalent(&g, &diff, &delta), || {
                    format!("{name}: {:?}", t.ids(&g))
                })?;
            }
            mixed += usize::from(with > 0 && without > 0);
            orderings += 1;
        }
    }
    ensure(mixed > 0, || "no ordering exercised both cases".into())?;
    let mut pairs = 0;
    for (name, p) in fixtures::all_planar() {
        let g = p.graph();
        let maps: Vec<TreeBijection> = (0..p.faces().len())
            .map(|f| TreeBijection::from_face(&p, f))
            .collect::<Result<_>>()
            .map_err(err)?;
        for (f, a) in maps.iter().enumerate() {
            for (f2, b) in maps.iter().enumerate() {
                let direct = torsors_isomorphic(g, a, b)
                    .map_err(err)?
                    .ok_or(format!("{name}: {f} {f2} not isomorphic"))?;
                let path = bernardi_face_path_delta(&p, f, f2).map_err(err)?;
                ensure(linearly_equivalent(g, &direct, &path), || {
                    format!("{name}: faces {f}, {f2}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{orderings} flips ({mixed} mixed), {pairs} face pairs"
    ))
}

fn c8_duality() -> Outcome {
    let mut summary = Vec::new();
    for (name, p) in fixtures::all_planar() {
        let mut control = 0;
        let mut pairs = 0;
        for f in 0..p.faces().len() {
            for v in 0..p.graph().n() {
                ensure(
                    duality_diagram_check(&p, f, v, DualConvention::Standard).map_err(err)?,
                    || format!("{name}: face {f} vertex {v}"),
                )?;
                control += usize::from(
                    !duality_diagram_check(&p, f, v, DualConvention::Reversed).map_err(err)?,
                );
                pairs += 1;
            }
        }
        ensure(control > 0, || {
            format!("{name}: reversed control never fails")
        })?;
        summary.push(format!("{name} {pairs} pairs, control fails {control}"));
    }
    Ok(summary.join(", "))
}

fn c9_f_vector() -> Outcome {
    let mut summary = Vec::new();
    for (name, g, expected) in [
        ("theta", fixtures::theta(), Some(vec![3u64, 6, 3])),
        ("k4", fixtures::k4(), Some(vec![16, 48, 48, 16])),
        ("cube", fixtures::cube(), None),
    ] {
        let genus = g.genus();
        let oracle: Vec<u64> = (0..=genus)
            .map(|i| {
                breakdiv::divisor::combinations(g.m(), i)
                    .into_iter()
                    .filter(|removed| g.is_connected_without(removed))
                    .map(|removed| {
                        brute_break_set(&g.without_edges(&removed).unwrap()).len() as u64
                    })
                    .sum()
            })
            .collect();
        let counted: Vec<u64> = (0..=genus)
            .map(|i| count_break_configurations(&g, genus - i, i))
            .collect();
        let formula = f_vector_formula(&g);
        ensure(oracle == formula && counted == formula, || {
            format!("{name}: {oracle:?} {counted:?} {formula:?}")
        })?;
        if let Some(e) = expected {
            ensure(formula == e, || format!("{name}: {formula:?}"))?;
        }
        summary.push(format!("{name} {formula:?}"));
    }
    Ok(summary.join(", "))
}

fn c10_faithful() -> Outcome {
    let mut classes_checked = 0;
    for (name, g) in [("theta", fixtures::theta()), ("k4", fixtures::k4())] {
        let catalog = CycleCatalog::new(&g);
        let orientations: Vec<Orientation> = (0..1u64 << g.m())
            .map(|m| Orientation::from_mask(&g, m))
            .collect();
        for cfg in Configuration::all(&catalog) {
            if !is_geometric(&g, &catalog, &cfg).map_err(err)?.0 {
                continue;
            }
            let mut per_class: BTreeMap<Divisor, usize> = BTreeMap::new();
            for o in &orientations {
                let agrees = catalog.cycles().iter().enumerate().all(|(i, c)| {
                    let dirs: BTreeSet<i8> = c.support().map(|e| o.sign(e) * c.sign(e)).collect();
                    dirs.len() != 1 || dirs.contains(&cfg.direction(i))
                });
                *per_class.entry(o.indegree_divisor(&g)).or_default() += usize::from(agrees);
            }
            ensure(per_class.values().all(|&k| k == 1), || {
                format!("{name}: {:?}", cfg.0)
            })?;
            classes_checked += per_class.len();
        }
    }
    Ok(format!("{classes_checked} (configuration, class) pairs"))
}

fn c11_group_structure() -> Outcome {
    let k4 = pic_group_structure(&fixtures::k4(), 0);
    let theta = pic_group_structure(&fixtures::theta(), 0);
    ensure(k4.factors == vec![BigInt::from(4), BigInt::from(4)], || {
        format!("K4 {:?}", k4.factors)
    })?;
    ensure(theta.factors == vec![BigInt::from(3)], || {
        format!("theta {:?}", theta.factors)
    })?;
    for (name, g) in fixtures::all_graphs() {
        let order = pic_group_structure(&g, 0).order().to_usize();
        let trees = enumerate_spanning_trees(&g).len();
        ensure(order == Some(trees), || {
            format!("{name}: {order:?} vs {trees}")
        })?;
    }
    Ok("Z/4 x Z/4, Z/3, orders match tree counts".into())
}

fn c12_sampler() -> Outcome {
    let mut summary = Vec::new();
    for (name, g, count) in [
        ("theta", fixtures::theta(), 3000),
        ("k4", fixtures::k4(), 16000),
    ] {
        let cfg = SamplerConfig {
            seed: 20,
            count,
            q: 0,
            ordering: EdgeOrdering::reference(&g),
        };
        let h = flow_call_bound(&cfg.ordering);
        let samples = sample_spanning_trees(&g, &cfg).map_err(err)?;
        ensure(
            samples == sample_spanning_trees(&g, &cfg).map_err(err)?,
            || format!("{name}: replay differs"),
        )?;
        let mut counts: BTreeMap<SpanningTree, u64> = enumerate_spanning_trees(&g)
            .into_iter()
            .map(|t| (t, 0))
            .collect();
        for s in &samples {
            ensure(s.flow_calls <= h, || {
                format!("{name}: {} flow calls > {h}", s.flow_calls)
            })?;
            *counts.get_mut(&s.tree).ok_or("sample outside S(G)")? += 1;
        }
        let (_, p) = chi_square_uniform(&counts.into_values().collect::<Vec<_>>());
        ensure(p > 0.001, || format!("{name}: p = {p}"))?;
        summary.push(format!("{name} p={p:.3}"));
    }
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("abel-jacobi value", c1_abel_jacobi),
        ("bernardi values and witness", c2_bernardi_values),
        ("edge ordering round trip", c3_round_trip),
        ("lp vs relation criteria", c4_criteria),
        ("geometric bijectivity", c5_bijectivity),
        ("planar bernardi structure", c6_planar_bernardi),
        ("torsor deltas", c7_torsor_deltas),
        ("duality diagram", c8_duality),
        ("f-vector", c9_f_vector),
        ("faithful representatives", c10_faithful),
        ("group structure", c11_group_structure),
        ("sampler", c12_sampler),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
