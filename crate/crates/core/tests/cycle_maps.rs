use std::collections::BTreeSet;

use breakdiv::cycle_map::{is_injective, map_table, relation_sum};
use breakdiv::fixtures;
use breakdiv::{
    cycle_orientation_map, cycle_reversal_classes, edge_ordering_config, edge_ordering_map,
    enumerate_break_divisors, enumerate_spanning_trees, eom_inverse, eom_inverse_counted,
    faithful_orientation, is_geometric, Configuration, CycleCatalog, Divisor, EdgeOrdering,
    GeometricCertificate, Multigraph, Rational,
};
use num_traits::{One, Zero};

/// Searches for a nonzero relation with coefficients in `0..=bound`.
fn has_small_relation(g: &Multigraph, cat: &CycleCatalog, cfg: &Configuration, bound: u64) -> bool {
    let t = cat.len();
    let vectors: Vec<Vec<i64>> = cat
        .cycles()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.signs()
                .iter()
                .map(|&s| (s * cfg.direction(i)) as i64)
                .collect()
        })
        .collect();
    let mut coeffs = vec![0u64; t];
    let mut sum = vec![0i64; g.m()];
    loop {
        let mut i = 0;
        while i < t && coeffs[i] == bound {
            for (s, v) in sum.iter_mut().zip(&vectors[i]) {
                *s -= bound as i64 * v;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == t {
            return false;
        }
        coeffs[i] += 1;
        for (s, v) in sum.iter_mut().zip(&vectors[i]) {
            *s += v;
        }
        if sum.iter().all(|&x| x == 0) {
            return true;
        }
    }
}

fn check_certificate(
    g: &Multigraph,
    cat: &CycleCatalog,
    cfg: &Configuration,
    cert: &GeometricCertificate,
) {
    match cert {
        GeometricCertificate::Weights { alpha, .. } => {
            for (i, c) in cat.cycles().iter().enumerate() {
                let s = alpha.iter().fold(Rational::zero(), |acc, (e, a)| {
                    acc + a * Rational::from_integer(
                        ((cfg.direction(i) * c.sign(*e)) as i64).into(),
                    )
                });
                assert!(s >= Rational::one());
            }
        }
        GeometricCertificate::Relation(n) => {
            assert!(n.iter().any(|&x| x > 0));
            assert!(relation_sum(g, cat, cfg, n).iter().all(|&x| x == 0));
        }
    }
}

#[test]
fn lp_agrees_with_bounded_relation_search() {
    for g in [fixtures::theta(), fixtures::k4()] {
        let cat = CycleCatalog::new(&g);
        let mut geometric = 0;
        for cfg in Configuration::all(&cat) {
            let (geo, cert) = is_geometric(&g, &cat, &cfg).unwrap();
            check_certificate(&g, &cat, &cfg, &cert);
            assert_eq!(geo, !has_small_relation(&g, &cat, &cfg, 6));
            geometric += geo as usize;
        }
        if g.m() == 3 {
            assert_eq!(geometric, 6);
        }
    }
}

#[test]
fn geometric_configurations_are_bijective() {
    for g in [fixtures::theta(), fixtures::k4()] {
        let cat = CycleCatalog::new(&g);
        let breaks: BTreeSet<Divisor> = enumerate_break_divisors(&g).into_iter().collect();
        for cfg in Configuration::all(&cat) {
            if !is_geometric(&g, &cat, &cfg).unwrap().0 {
                continue;
            }
            let table = map_table(&g, &cat, &cfg).unwrap();
            assert!(is_injective(&table));
            let image: BTreeSet<Divisor> = table.into_iter().map(|(_, d)| d).collect();
            assert_eq!(image, breaks);
        }
    }
}

#[test]
fn edge_ordering_map_matches_configuration_map() {
    for (name, g) in fixtures::all_graphs() {
        let cat = CycleCatalog::new(&g);
        for ord in fixtures::orderings(&g, 5, 11) {
            let cfg = edge_ordering_config(&g, &cat, &ord).unwrap();
            assert!(is_geometric(&g, &cat, &cfg).unwrap().0, "{name}");
            for t in enumerate_spanning_trees(&g) {
                assert_eq!(
                    edge_ordering_map(&g, &ord, &t).unwrap(),
                    cycle_orientation_map(&g, &cat, &cfg, &t).unwrap()
                );
            }
        }
    }
}

#[test]
fn eom_inverse_round_trips() {
    for (name, g) in fixtures::all_graphs() {
        let trees = enumerate_spanning_trees(&g);
        for ord in fixtures::orderings(&g, 6, 3) {
            let h = ord.order.len();
            let mut images = BTreeSet::new();
            for t in &trees {
                let d = edge_ordering_map(&g, &ord, t).unwrap();
                let (back, calls) = eom_inverse_counted(&g, &ord, &d).unwrap();
                assert_eq!(&back, t, "{name}");
                assert!(calls <= h);
                images.insert(d);
            }
            assert_eq!(images.len(), trees.len());
        }
    }
}

#[test]
fn forest_edges_behave_like_trailing_edges() {
    for (_, g) in fixtures::all_graphs() {
        for ord in fixtures::orderings(&g, 6, 5) {
            if ord.forest.is_empty() {
                continue;
            }
            let mut order = ord.order.clone();
            order.extend(ord.forest.iter().map(|&e| (e, 1)));
            let flat = EdgeOrdering::new(&g, vec![], order).unwrap();
            for t in enumerate_spanning_trees(&g) {
                assert_eq!(
                    edge_ordering_map(&g, &ord, &t).unwrap(),
                    edge_ordering_map(&g, &flat, &t).unwrap()
                );
            }
        }
    }
}

#[test]
fn k4_reference_images_are_distinct() {
    let g = fixtures::k4();
    let ord = EdgeOrdering::reference(&g);
    let images: BTreeSet<Divisor> = enumerate_spanning_trees(&g)
        .iter()
        .map(|t| edge_ordering_map(&g, &ord, t).unwrap())
        .collect();
    assert_eq!(images.len(), 16);
}

#[test]
fn tree_inverse_returns_the_tree() {
    let g = fixtures::path3();
    let ord = EdgeOrdering::reference(&g);
    let t = eom_inverse(&g, &ord, &Divisor::zero(3)).unwrap();
    assert_eq!(t.edges(), &[0, 1]);
}

#[test]
fn faithful_orientations_represent_classes() {
    for g in [fixtures::theta(), fixtures::k4()] {
        let cat = CycleCatalog::new(&g);
        let classes = cycle_reversal_classes(&g);
        for cfg in Configuration::all(&cat) {
            if !is_geometric(&g, &cat, &cfg).unwrap().0 {
                continue;
            }
            for members in classes.values() {
                let faithful: Vec<_> = members
                    .iter()
                    .filter(|o| {
                        cat.cycles().iter().enumerate().all(|(i, c)| {
                            let dirs: BTreeSet<i8> =
                                c.support().map(|e| o.sign(e) * c.sign(e)).collect();
                            dirs.len() != 1 || dirs.contains(&cfg.direction(i))
                        })
                    })
                    .collect();
                assert_eq!(faithful.len(), 1);
                for o in members {
                    assert_eq!(
                        &faithful_orientation(&g, &cat, &cfg, o).unwrap(),
                        faithful[0]
                    );
                }
            }
        }
    }
}
