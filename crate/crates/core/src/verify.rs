//! Named property suites producing machine-readable reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cycle_map::{
    config_from_weights, edge_ordering_map, eom_inverse, eom_inverse_counted, is_geometric,
    is_injective, map_table, relation_sum, Configuration, EdgeOrdering, GeometricCertificate,
};
use crate::divisor::{enumerate_break_divisors, is_break_divisor, pic_group_structure, Divisor};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{enumerate_spanning_trees, CycleCatalog, Multigraph, SpanningTree};
use crate::jacobian::{f_vector, f_vector_formula};
use crate::ribbon::{
    algorithm3_ordering, bernardi_divisor, bernardi_tour, face_configuration, face_for_start,
    induced_configuration, InducedConfiguration, PlaneEmbedding, RibbonGraph,
};
use crate::sampler::{chi_square_uniform, flow_call_bound, Sampler, SamplerConfig};
use crate::torsor::{
    bernardi_face_path_delta, duality_diagram_check, eom_flip_delta, torsors_isomorphic,
    DualConvention, TreeBijection,
};

/// Largest catalog swept exhaustively by the geometric-criteria suite.
pub const MAX_SWEEP_CYCLES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    RoundTrip,
    BreakDivisors,
    GeometricCriteria,
    FVector,
    GroupStructure,
    Torsors,
    Sampler,
    Bernardi,
    Planar,
    Duality,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::RoundTrip,
        Suite::BreakDivisors,
        Suite::GeometricCriteria,
        Suite::FVector,
        Suite::GroupStructure,
        Suite::Torsors,
        Suite::Sampler,
        Suite::Bernardi,
        Suite::Planar,
        Suite::Duality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RoundTrip => "round-trip",
            Suite::BreakDivisors => "break-divisors",
            Suite::GeometricCriteria => "geometric-criteria",
            Suite::FVector => "f-vector",
            Suite::GroupStructure => "group-structure",
            Suite::Torsors => "torsors",
            Suite::Sampler => "sampler",
            Suite::Bernardi => "bernardi",
            Suite::Planar => "planar",
            Suite::Duality => "duality",
        }
    }

    /// Whether the suite needs rotation data.
    pub fn needs_ribbon(self) -> bool {
        matches!(self, Suite::Bernardi | Suite::Planar | Suite::Duality)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

pub enum VerifyInput {
    Graph(Multigraph),
    Ribbon {
        ribbon: RibbonGraph,
        outer: Option<usize>,
    },
}

impl VerifyInput {
    pub fn graph(&self) -> &Multigraph {
        match self {
            VerifyInput::Graph(g) => g,
            VerifyInput::Ribbon { ribbon, .. } => ribbon.graph(),
        }
    }

    fn ribbon(&self, suite: Suite) -> Result<&RibbonGraph> {
        match self {
            VerifyInput::Ribbon { ribbon, .. } => Ok(ribbon),
            VerifyInput::Graph(_) => Err(Error::Parse(format!(
                "suite `{suite}` needs a ribbon graph"
            ))),
        }
    }

    fn plane(&self, suite: Suite) -> Result<PlaneEmbedding> {
        let r = self.ribbon(suite)?;
        let outer = match self {
            VerifyInput::Ribbon { outer, .. } => outer.unwrap_or(0),
            VerifyInput::Graph(_) => 0,
        };
        PlaneEmbedding::new(r.clone(), outer)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Property {
    pub name: String,
    pub pass: bool,
    /// Summary on success, counterexample on failure.
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub pass: bool,
    pub properties: Vec<Property>,
}

impl Report {
    fn new(suite: Suite, properties: Vec<Property>) -> Self {
        Report {
            suite: suite.name().to_string(),
            pass: properties.iter().all(|p| p.pass),
            properties,
        }
    }
}

fn prop(name: &str, pass: bool, detail: Value) -> Property {
    Property {
        name: name.to_string(),
        pass,
        detail,
    }
}

/// First counterexample of a check, or a summary.
fn first_failure<T>(
    name: &str,
    items: impl IntoIterator<Item = T>,
    summary: Value,
    mut check: impl FnMut(T) -> Option<Value>,
) -> Property {
    for x in items {
        if let Some(bad) = check(x) {
            return prop(name, false, bad);
        }
    }
    prop(name, true, summary)
}

fn tree_json(g: &Multigraph, t: &SpanningTree) -> Value {
    json!(t.ids(g))
}

fn divisor_json(g: &Multigraph, d: &Divisor) -> Value {
    json!(d.to_map(g))
}

pub fn verify(input: &VerifyInput, suite: Suite) -> Result<Report> {
    let g = input.graph();
    let props = match suite {
        Suite::RoundTrip => round_trip(g)?,
        Suite::BreakDivisors => break_divisors(g)?,
        Suite::GeometricCriteria => geometric_criteria(g)?,
        Suite::FVector => f_vector_suite(g),
        Suite::GroupStructure => group_structure(g),
        Suite::Torsors => torsors(g)?,
        Suite::Sampler => sampler(g)?,
        Suite::Bernardi => bernardi(input.ribbon(suite)?)?,
        Suite::Planar => planar(&input.plane(suite)?)?,
        Suite::Duality => duality(&input.plane(suite)?)?,
    };
    Ok(Report::new(suite, props))
}

fn round_trip(g: &Multigraph) -> Result<Vec<Property>> {
    let trees = enumerate_spanning_trees(g);
    let ords = fixtures::orderings(g, 5, 1);
    let mut bad = None;
    'outer: for ord in &ords {
        for t in &trees {
            let d = edge_ordering_map(g, ord, t)?;
            let back = eom_inverse(g, ord, &d)?;
            if &back != t {
                bad = Some(json!({
                    "ordering": ord.to_document(g),
                    "tree": tree_json(g, t),
                    "divisor": divisor_json(g, &d),
                    "recovered": tree_json(g, &back),
                }));
                break 'outer;
            }
        }
    }
    let summary = json!({ "orderings": ords.len(), "trees": trees.len() });
    Ok(vec![match bad {
        Some(b) => prop("inverse-recovers-tree", false, b),
        None => prop("inverse-recovers-tree", true, summary),
    }])
}

fn break_divisors(g: &Multigraph) -> Result<Vec<Property>> {
    let trees = enumerate_spanning_trees(g);
    let breaks = enumerate_break_divisors(g);
    let mut out = vec![prop(
        "count-equals-trees",
        breaks.len() == trees.len(),
        json!({ "break_divisors": breaks.len(), "trees": trees.len() }),
    )];
    out.push(first_failure(
        "all-are-break",
        &breaks,
        json!(breaks.len()),
        |d| (!is_break_divisor(g, d)).then(|| divisor_json(g, d)),
    ));
    let ord = EdgeOrdering::reference(g);
    let image: BTreeSet<Divisor> = trees
        .iter()
        .map(|t| edge_ordering_map(g, &ord, t))
        .collect::<Result<_>>()?;
    let expected: BTreeSet<Divisor> = breaks.into_iter().collect();
    out.push(prop(
        "reference-ordering-is-onto",
        image == expected,
        json!(image.len()),
    ));
    Ok(out)
}

fn geometric_criteria(g: &Multigraph) -> Result<Vec<Property>> {
    let catalog = CycleCatalog::new(g);
    if catalog.len() > MAX_SWEEP_CYCLES {
        return Err(Error::Parse(format!(
            "{} cycles exceed the exhaustive sweep limit of {MAX_SWEEP_CYCLES}",
            catalog.len()
        )));
    }
    let breaks: BTreeSet<Divisor> = enumerate_break_divisors(g).into_iter().collect();
    let mut geometric = 0usize;
    let mut bad_certificate = None;
    let mut bad_bijection = None;
    let mut certificates = Vec::new();
    let total = 1usize << catalog.len();
    for cfg in Configuration::all(&catalog) {
        let (ok, cert) = is_geometric(g, &catalog, &cfg)?;
        let valid = match &cert {
            GeometricCertificate::Weights { tree, alpha } => {
                config_from_weights(g, &catalog, tree.edges(), alpha)? == cfg
            }
            GeometricCertificate::Relation(n) => {
                n.iter().any(|&x| x > 0)
                    && relation_sum(g, &catalog, &cfg, n).iter().all(|&x| x == 0)
            }
        };
        if !valid && bad_certificate.is_none() {
            bad_certificate = Some(json!({ "configuration": cfg.0 }));
        }
        if ok {
            geometric += 1;
            let table = map_table(g, &catalog, &cfg)?;
            let image: BTreeSet<Divisor> = table.iter().map(|(_, d)| d.clone()).collect();
            if (!is_injective(&table) || image != breaks) && bad_bijection.is_none() {
                bad_bijection = Some(json!({ "configuration": cfg.0 }));
            }
        }
        if total <= 16 {
            certificates.push(json!({
                "configuration": cfg.0,
                "geometric": ok,
                "certificate": certificate_json(g, &cert),
            }));
        }
    }
    let mut summary = json!({ "configurations": total, "geometric": geometric });
    if !certificates.is_empty() {
        summary["certificates"] = json!(certificates);
    }
    Ok(vec![
        match bad_certificate {
            Some(b) => prop("certificates-check", false, b),
            None => prop("certificates-check", true, summary),
        },
        match bad_bijection {
            Some(b) => prop("geometric-is-bijective", false, b),
            None => prop("geometric-is-bijective", true, json!(geometric)),
        },
    ])
}

fn certificate_json(g: &Multigraph, cert: &GeometricCertificate) -> Value {
    match cert {
        GeometricCertificate::Weights { tree, alpha } => json!({
            "tree": tree_json(g, tree),
            "weights": alpha.iter().map(|(e, a)| (g.edge_id(*e).to_string(), a.to_string())).collect::<BTreeMap<_, _>>(),
        }),
        GeometricCertificate::Relation(n) => json!({ "relation": n }),
    }
}

fn f_vector_suite(g: &Multigraph) -> Vec<Property> {
    let counted = f_vector(g);
    let formula = f_vector_formula(g);
    vec![prop(
        "binomial-times-trees",
        counted == formula,
        json!({ "counted": counted, "formula": formula }),
    )]
}

fn group_structure(g: &Multigraph) -> Vec<Property> {
    let s = pic_group_structure(g, 0);
    let trees = enumerate_spanning_trees(g).len();
    let factors: Vec<String> = s.factors.iter().map(|f| f.to_string()).collect();
    let order = s.order();
    vec![
        prop(
            "order-equals-trees",
            order.to_usize() == Some(trees),
            json!({ "factors": factors, "trees": trees }),
        ),
        first_failure(
            "factors-divide",
            s.factors.windows(2),
            json!(factors),
            |w| {
                (&w[1] % &w[0] != num_bigint::BigInt::from(0))
                    .then(|| json!([w[0].to_string(), w[1].to_string()]))
            },
        ),
    ]
}

fn torsors(g: &Multigraph) -> Result<Vec<Property>> {
    let ords = fixtures::orderings(g, 6, 2);
    let mut both = 0;
    let mut bad = None;
    for ord in &ords {
        let r = eom_flip_delta(g, ord)?;
        if r.trees_containing_first > 0 && r.trees_avoiding_first > 0 {
            both += 1;
        }
        let b1 = TreeBijection::from_edge_ordering(g, ord)?;
        let b2 = TreeBijection::from_edge_ordering(g, &ord.flip_first())?;
        let direct = torsors_isomorphic(g, &b2, &b1)?;
        let agrees = direct.is_some_and(|d| crate::divisor::linearly_equivalent(g, &d, &r.delta));
        if (!r.holds || !agrees) && bad.is_none() {
            bad =
                Some(json!({ "ordering": ord.to_document(g), "delta": divisor_json(g, &r.delta) }));
        }
    }
    Ok(vec![match bad {
        Some(b) => prop("flip-shifts-by-boundary", false, b),
        None => prop(
            "flip-shifts-by-boundary",
            true,
            json!({ "orderings": ords.len(), "mixed_cases": both }),
        ),
    }])
}

fn sampler(g: &Multigraph) -> Result<Vec<Property>> {
    let trees = enumerate_spanning_trees(g);
    let cfg = SamplerConfig {
        seed: 0,
        count: (200 * trees.len()).clamp(1000, 20000),
        q: 0,
        ordering: EdgeOrdering::reference(g),
    };
    let index: BTreeMap<&SpanningTree, usize> =
        trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut counts = vec![0u64; trees.len()];
    let mut max_calls = 0;
    for s in Sampler::new(g, &cfg)? {
        let s = s?;
        counts[index[&s.tree]] += 1;
        max_calls = max_calls.max(s.flow_calls);
    }
    let (stat, p) = chi_square_uniform(&counts);
    let h = flow_call_bound(&cfg.ordering);
    let replay = Sampler::new(g, &cfg)?.sample(cfg.count - 1)?
        == Sampler::new(g, &cfg)?.sample(cfg.count - 1)?;
    let mut worst = 0;
    for d in enumerate_break_divisors(g) {
        worst = worst.max(eom_inverse_counted(g, &cfg.ordering, &d)?.1);
    }
    Ok(vec![
        prop(
            "chi-square-uniform",
            trees.len() == 1 || p > 0.001,
            json!({ "samples": cfg.count, "statistic": stat, "p_value": p }),
        ),
        prop("deterministic-replay", replay, json!({ "seed": cfg.seed })),
        prop(
            "flow-calls-bounded",
            max_calls <= h && worst <= h,
            json!({ "bound": h, "max_sampled": max_calls, "max_over_break_divisors": worst }),
        ),
    ])
}

fn bernardi(r: &RibbonGraph) -> Result<Vec<Property>> {
    let g = r.graph();
    let trees = enumerate_spanning_trees(g);
    let breaks: BTreeSet<Divisor> = enumerate_break_divisors(g).into_iter().collect();
    let starts = r.starts();
    let mut bad_tour = None;
    let mut bad_bijection = None;
    for &start in &starts {
        let mut image = BTreeSet::new();
        for t in &trees {
            let tour = bernardi_tour(r, t, start)?;
            let mut visits = vec![0usize; g.m()];
            for &(_, e) in &tour.states {
                visits[e] += 1;
            }
            if visits.iter().any(|&k| k != 2) && bad_tour.is_none() {
                bad_tour = Some(json!({ "start": start_json(g, start), "tree": tree_json(g, t) }));
            }
            image.insert(bernardi_divisor(r, t, start)?);
        }
        if image != breaks && bad_bijection.is_none() {
            bad_bijection =
                Some(json!({ "start": start_json(g, start), "image_size": image.len() }));
        }
    }
    let summary = json!({ "starts": starts.len(), "trees": trees.len() });
    Ok(vec![
        match bad_tour {
            Some(b) => prop("edges-visited-twice", false, b),
            None => prop("edges-visited-twice", true, summary.clone()),
        },
        match bad_bijection {
            Some(b) => prop("every-start-bijective", false, b),
            None => prop("every-start-bijective", true, summary),
        },
    ])
}

fn start_json(g: &Multigraph, (v, e): (usize, usize)) -> Value {
    json!([g.vertex_id(v), g.edge_id(e)])
}

fn planar(p: &PlaneEmbedding) -> Result<Vec<Property>> {
    let g = p.graph();
    let catalog = CycleCatalog::new(g);
    let mut bad_rule = None;
    let mut bad_geometric = None;
    let starts = p.ribbon().starts();
    for &start in &starts {
        let f = face_for_start(p, start)?;
        match induced_configuration(p.ribbon(), &catalog, start)? {
            InducedConfiguration::Consistent(cfg) => {
                if cfg != face_configuration(p, &catalog, f)? && bad_rule.is_none() {
                    bad_rule = Some(json!({ "start": start_json(g, start), "face": f }));
                }
                if !is_geometric(g, &catalog, &cfg)?.0 && bad_geometric.is_none() {
                    bad_geometric = Some(json!({ "start": start_json(g, start) }));
                }
            }
            InducedConfiguration::Conflict(w) => {
                bad_geometric.get_or_insert_with(
                    || json!({ "start": start_json(g, start), "conflicts": w.len() }),
                );
            }
        }
    }
    let faces = p.faces().len();
    let maps: Vec<TreeBijection> = (0..faces)
        .map(|f| TreeBijection::from_face(p, f))
        .collect::<Result<_>>()?;
    let mut bad_alg3 = None;
    for (f, bf) in maps.iter().enumerate() {
        let ord = algorithm3_ordering(p, f)?;
        for t in bf.trees() {
            if &edge_ordering_map(g, &ord, t)? != bf.image(t)? {
                bad_alg3.get_or_insert_with(|| json!({ "face": f, "tree": tree_json(g, t) }));
            }
        }
    }
    let mut bad_delta = None;
    for (f, bf) in maps.iter().enumerate() {
        for (f2, bf2) in maps.iter().enumerate() {
            let direct = torsors_isomorphic(g, bf, bf2)?;
            let path = bernardi_face_path_delta(p, f, f2)?;
            if direct.as_ref() != Some(&path) {
                bad_delta.get_or_insert_with(|| json!({ "faces": [f, f2] }));
            }
        }
    }
    let summary = json!({ "starts": starts.len(), "faces": faces });
    let pick = |name: &str, bad: Option<Value>| match bad {
        Some(b) => prop(name, false, b),
        None => prop(name, true, summary.clone()),
    };
    Ok(vec![
        pick("consistent-and-geometric", bad_geometric),
        pick("face-rule", bad_rule),
        pick("algorithm3-matches-face-map", bad_alg3),
        pick("face-path-deltas", bad_delta),
    ])
}

fn duality(p: &PlaneEmbedding) -> Result<Vec<Property>> {
    let g = p.graph();
    let mut bad = None;
    let mut control_failures = 0;
    let pairs = p.faces().len() * g.n();
    for f in 0..p.faces().len() {
        for v in 0..g.n() {
            if !duality_diagram_check(p, f, v, DualConvention::Standard)? {
                bad.get_or_insert_with(|| json!({ "face": f, "vertex": g.vertex_id(v) }));
            }
            if !duality_diagram_check(p, f, v, DualConvention::Reversed)? {
                control_failures += 1;
            }
        }
    }
    Ok(vec![
        match bad {
            Some(b) => prop("diagram-commutes", false, b),
            None => prop("diagram-commutes", true, json!({ "pairs": pairs })),
        },
        prop(
            "reversed-convention-fails",
            control_failures > 0,
            json!({ "pairs": pairs, "failures": control_failures }),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn theta_geometric_count() {
        let r = verify(
            &VerifyInput::Graph(fixtures::theta()),
            Suite::GeometricCriteria,
        )
        .unwrap();
        assert!(r.pass);
        assert_eq!(r.properties[0].detail["geometric"], 6);
        assert_eq!(
            r.properties[0].detail["certificates"]
                .as_array()
                .unwrap()
                .len(),
            8
        );
    }

    #[test]
    fn ribbon_suites_need_rotations() {
        assert!(verify(&VerifyInput::Graph(fixtures::theta()), Suite::Planar).is_err());
    }
}
