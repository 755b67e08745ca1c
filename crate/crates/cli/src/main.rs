use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use breakdiv::cycle_map::GeometricCertificate;
use breakdiv::ribbon::{start_for_face, PlanarDual};
use breakdiv::sampler::flow_call_bound;
use breakdiv::verify::{verify, Suite, VerifyInput};
use breakdiv::*;
use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

/// Spanning trees, break divisors and the bijections between them.
///
/// Every command reads a graph (`{"vertices", "edges"}`) or ribbon graph
/// (`{"graph", "rotations", "outer_face"}`) document and writes JSON.
#[derive(Parser)]
#[command(name = "breakdiv", version)]
struct Cli {
    /// Input document; stdin when absent or `-`.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List spanning trees.
    Trees,
    /// List break divisors.
    BreakDivisors,
    /// List simple cycles in catalog order, each with its canonical direction.
    Cycles,
    /// Test a cycle orientation configuration for geometricity.
    CheckGeometric {
        /// JSON array of +1/-1, one per cycle in catalog order.
        #[arg(long)]
        config: PathBuf,
    },
    /// Image of a tree under an edge ordering map.
    Eom {
        #[arg(long)]
        order: PathBuf,
        /// Comma-separated edge ids.
        #[arg(long)]
        tree: String,
    },
    /// Spanning tree of a break divisor under an edge ordering map.
    EomInvert {
        #[arg(long)]
        order: PathBuf,
        /// JSON object from vertex id to chip count.
        #[arg(long)]
        divisor: PathBuf,
    },
    /// Bernardi divisor of a tree.
    Bernardi {
        /// `vertex,edge`.
        #[arg(long)]
        start: String,
        #[arg(long)]
        tree: String,
    },
    /// Cycle directions induced by a Bernardi process, or conflict witnesses.
    InducedConfig {
        #[arg(long)]
        start: String,
    },
    /// Edge ordering reproducing the face-indexed Bernardi map.
    Alg3 {
        #[arg(long)]
        face: usize,
    },
    /// Planar dual as a ribbon document.
    Dual,
    /// Cells of the torus decomposition.
    Cells {
        /// Tree whose fundamental cycles give the coordinates; defaults to
        /// the first spanning tree.
        #[arg(long)]
        basis_tree: Option<String>,
    },
    /// Counts of break (g-i, i)-configurations.
    FVector,
    /// Translating class between two bijection torsors.
    TorsorDelta {
        /// `order:FILE`, `face:K`, `start:V,E` or `shift:W1,...,Wm`.
        spec_a: String,
        spec_b: String,
    },
    /// Check the duality diagram for one face and vertex.
    DualityCheck {
        #[arg(long)]
        face: usize,
        #[arg(long)]
        vertex: String,
        /// Use the opposite orientation identification.
        #[arg(long)]
        reversed: bool,
    },
    /// Sample uniform spanning trees.
    Sample {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Edge ordering; the reference ordering when absent.
        #[arg(long)]
        order: Option<PathBuf>,
        /// Base vertex id; the first vertex when absent.
        #[arg(long)]
        base: Option<String>,
    },
    /// Run a named property suite.
    Verify { suite: String },
}

/// Input and usage errors, reported with exit code 2.
struct Failure(String);

impl From<breakdiv::Error> for Failure {
    fn from(e: breakdiv::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure(s)
    }
}

impl From<&str> for Failure {
    fn from(s: &str) -> Self {
        Failure(s.to_string())
    }
}

/// A successful run: the JSON payload and whether the checked property held.
struct Outcome {
    value: Value,
    holds: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, holds: true }
    }
}

enum Input {
    Graph(Multigraph),
    Ribbon(RibbonGraph, Option<usize>),
}

impl Input {
    fn graph(&self) -> &Multigraph {
        match self {
            Input::Graph(g) => g,
            Input::Ribbon(r, _) => r.graph(),
        }
    }

    fn ribbon(&self) -> Result<&RibbonGraph, Failure> {
        match self {
            Input::Ribbon(r, _) => Ok(r),
            Input::Graph(_) => Err("this command needs a ribbon graph with `rotations`".into()),
        }
    }

    fn plane(&self) -> Result<PlaneEmbedding, Failure> {
        let outer = match self {
            Input::Ribbon(_, o) => o.unwrap_or(0),
            Input::Graph(_) => 0,
        };
        Ok(PlaneEmbedding::new(self.ribbon()?.clone(), outer)?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.value).expect("values serialize");
            // A closed downstream pipe is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            Ok(fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?)
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| e.to_string())?;
            Ok(s)
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    Ok(serde_json::from_str(&read_text(Some(path))?)
        .map_err(|e| format!("{}: {e}", path.display()))?)
}

fn read_input(path: Option<&Path>) -> Result<Input, Failure> {
    let value: Value =
        serde_json::from_str(&read_text(path)?).map_err(|e| format!("input: {e}"))?;
    if value.get("rotations").is_some() {
        let doc: RibbonDocument =
            serde_json::from_value(value).map_err(|e| format!("input: {e}"))?;
        Ok(Input::Ribbon(
            RibbonGraph::from_document(&doc)?,
            doc.outer_face,
        ))
    } else {
        let doc: GraphDocument =
            serde_json::from_value(value).map_err(|e| format!("input: {e}"))?;
        Ok(Input::Graph(Multigraph::from_document(&doc)?))
    }
}

fn parse_tree(g: &Multigraph, ids: &str) -> Result<SpanningTree, Failure> {
    let ids: Vec<&str> = ids
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(g.spanning_tree(&ids)?)
}

fn parse_start(r: &RibbonGraph, spec: &str) -> Result<(usize, usize), Failure> {
    let (v, e) = spec.split_once(',').ok_or("start must be `vertex,edge`")?;
    let g = r.graph();
    let start = (g.vertex(v.trim())?, g.edge_by_id(e.trim())?);
    r.check_start(start)?;
    Ok(start)
}

fn read_ordering(g: &Multigraph, path: &Path) -> Result<EdgeOrdering, Failure> {
    Ok(EdgeOrdering::from_document(g, &read_json(path)?)?)
}

fn rational_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn tree_json(g: &Multigraph, t: &SpanningTree) -> Value {
    json!(t.ids(g))
}

fn divisor_json(g: &Multigraph, d: &Divisor) -> Value {
    json!(d.to_map(g))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let input = read_input(cli.input.as_deref())?;
    let g = input.graph();
    match &cli.command {
        Command::Trees => Ok(Outcome::ok(json!(enumerate_spanning_trees(g)
            .iter()
            .map(|t| tree_json(g, t))
            .collect::<Vec<_>>()))),
        Command::BreakDivisors => Ok(Outcome::ok(json!(enumerate_break_divisors(g)
            .iter()
            .map(|d| divisor_json(g, d))
            .collect::<Vec<_>>()))),
        Command::Cycles => Ok(Outcome::ok(json!(CycleCatalog::new(g)
            .cycles()
            .iter()
            .map(|c| c.to_map(g))
            .collect::<Vec<_>>()))),
        Command::CheckGeometric { config } => {
            let catalog = CycleCatalog::new(g);
            let cfg = Configuration(read_json(config)?);
            let (geometric, cert) = is_geometric(g, &catalog, &cfg)?;
            let certificate = match cert {
                GeometricCertificate::Weights { tree, alpha } => json!({
                    "tree": tree_json(g, &tree),
                    "weights": alpha
                        .iter()
                        .map(|(e, a)| (g.edge_id(*e).to_string(), rational_string(a)))
                        .collect::<BTreeMap<_, _>>(),
                }),
                GeometricCertificate::Relation(n) => json!({ "relation": n }),
            };
            Ok(Outcome {
                value: json!({ "geometric": geometric, "certificate": certificate }),
                holds: geometric,
            })
        }
        Command::Eom { order, tree } => {
            let ord = read_ordering(g, order)?;
            let t = parse_tree(g, tree)?;
            Ok(Outcome::ok(divisor_json(
                g,
                &edge_ordering_map(g, &ord, &t)?,
            )))
        }
        Command::EomInvert { order, divisor } => {
            let ord = read_ordering(g, order)?;
            let map: BTreeMap<String, i64> = read_json(divisor)?;
            let d = Divisor::from_map(g, &map)?;
            let (t, calls) = eom_inverse_counted(g, &ord, &d)?;
            Ok(Outcome::ok(
                json!({ "tree": tree_json(g, &t), "flow_calls": calls }),
            ))
        }
        Command::Bernardi { start, tree } => {
            let r = input.ribbon()?;
            let start = parse_start(r, start)?;
            let t = parse_tree(g, tree)?;
            let tour = bernardi_tour(r, &t, start)?;
            let po = bernardi_partial_orientation(r, &t, start)?;
            let eta: BTreeMap<&str, &str> = tour
                .eta
                .iter()
                .enumerate()
                .filter_map(|(e, v)| v.map(|v| (g.edge_id(e), g.vertex_id(v))))
                .collect();
            let heads: BTreeMap<&str, &str> = (0..g.m())
                .filter_map(|e| po.head(g, e).map(|h| (g.edge_id(e), g.vertex_id(h))))
                .collect();
            Ok(Outcome::ok(json!({
                "divisor": divisor_json(g, &bernardi_divisor(r, &t, start)?),
                "first_visit": eta,
                "heads": heads,
            })))
        }
        Command::InducedConfig { start } => {
            let r = input.ribbon()?;
            let start = parse_start(r, start)?;
            let catalog = CycleCatalog::new(g);
            let value = match induced_configuration(r, &catalog, start)? {
                InducedConfiguration::Consistent(cfg) => json!({ "configuration": cfg.0 }),
                InducedConfiguration::Conflict(ws) => json!({
                    "witnesses": ws.iter().map(|w| json!({
                        "cycle": catalog.get(w.cycle).to_map(g),
                        "first": { "tree": tree_json(g, &w.first.0), "direction": w.first.1 },
                        "second": { "tree": tree_json(g, &w.second.0), "direction": w.second.1 },
                    })).collect::<Vec<_>>(),
                }),
            };
            Ok(Outcome::ok(value))
        }
        Command::Alg3 { face } => {
            let p = input.plane()?;
            Ok(Outcome::ok(json!(
                algorithm3_ordering(&p, *face)?.to_document(g)
            )))
        }
        Command::Dual => {
            let p = input.plane()?;
            let PlanarDual {
                embedding,
                face_of_vertex,
            } = planar_dual(&p)?;
            let faces: BTreeMap<&str, usize> = face_of_vertex
                .iter()
                .enumerate()
                .map(|(v, &k)| (g.vertex_id(v), k))
                .collect();
            Ok(Outcome::ok(json!({
                "dual": embedding.ribbon().to_document(Some(embedding.outer())),
                "face_of_vertex": faces,
            })))
        }
        Command::Cells { basis_tree } => {
            let basis = match basis_tree {
                Some(ids) => cycle_basis(g, &parse_tree(g, ids)?),
                None => designated_basis(g),
            };
            let cells: Vec<Value> = enumerate_spanning_trees(g)
                .iter()
                .map(|t| {
                    let c: Cell<Rational> = cell(g, &basis, t, 0);
                    json!({
                        "tree": tree_json(g, &c.tree),
                        "base": c.base.coords.iter().map(rational_string).collect::<Vec<_>>(),
                        "generators": c.generators
                            .iter()
                            .map(|v| v.iter().map(rational_string).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome::ok(json!(cells)))
        }
        Command::FVector => Ok(Outcome::ok(json!(f_vector(g)))),
        Command::TorsorDelta { spec_a, spec_b } => {
            let a = bijection(&input, spec_a)?;
            let b = bijection(&input, spec_b)?;
            let value = match torsors_isomorphic(g, &a, &b)? {
                Some(d) => divisor_json(g, &q_reduce(g, &d, 0)),
                None => json!("not-isomorphic"),
            };
            Ok(Outcome::ok(value))
        }
        Command::DualityCheck {
            face,
            vertex,
            reversed,
        } => {
            let p = input.plane()?;
            let v = g.vertex(vertex)?;
            let convention = if *reversed {
                DualConvention::Reversed
            } else {
                DualConvention::Standard
            };
            let commutes = duality_diagram_check(&p, *face, v, convention)?;
            // Surface the starts used on both sides for inspection.
            let dual = planar_dual(&p)?;
            let (sv, se) = start_for_face(&p, *face)?;
            let gs = dual.embedding.graph();
            let (dv, de) = start_for_face(&dual.embedding, dual.face_of_vertex[v])?;
            Ok(Outcome {
                value: json!({
                    "commutes": commutes,
                    "start": [g.vertex_id(sv), g.edge_id(se)],
                    "dual_start": [gs.vertex_id(dv), gs.edge_id(de)],
                }),
                holds: commutes,
            })
        }
        Command::Sample {
            seed,
            count,
            order,
            base,
        } => {
            let ordering = match order {
                Some(p) => read_ordering(g, p)?,
                None => EdgeOrdering::reference(g),
            };
            let q = match base {
                Some(id) => g.vertex(id)?,
                None => 0,
            };
            let cfg = SamplerConfig {
                seed: *seed,
                count: *count,
                q,
                ordering,
            };
            let sampler = Sampler::new(g, &cfg)?;
            let factors: Vec<String> = sampler
                .structure()
                .factors
                .iter()
                .map(|f| f.to_string())
                .collect();
            let bits = minimal_bits(sampler.structure());
            let samples = sampler
                .map(|s| {
                    s.map(|s| {
                        json!({
                            "tree": tree_json(g, &s.tree),
                            "divisor": divisor_json(g, &s.divisor),
                            "flow_calls": s.flow_calls,
                        })
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::ok(json!({
                "factors": factors,
                "minimal_bits": bits,
                "flow_call_bound": flow_call_bound(&cfg.ordering),
                "samples": samples,
            })))
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let vi = match input {
                Input::Graph(g) => VerifyInput::Graph(g),
                Input::Ribbon(ribbon, outer) => VerifyInput::Ribbon { ribbon, outer },
            };
            let report = verify(&vi, suite)?;
            Ok(Outcome {
                holds: report.pass,
                value: serde_json::to_value(&report).expect("reports serialize"),
            })
        }
    }
}

fn bijection(input: &Input, spec: &str) -> Result<TreeBijection, Failure> {
    let g = input.graph();
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| format!("bijection spec `{spec}` must be kind:argument"))?;
    match kind {
        "order" => Ok(TreeBijection::from_edge_ordering(
            g,
            &read_ordering(g, Path::new(arg))?,
        )?),
        "face" => {
            let f = arg.parse().map_err(|_| format!("bad face index `{arg}`"))?;
            Ok(TreeBijection::from_face(&input.plane()?, f)?)
        }
        "start" => {
            let r = input.ribbon()?;
            Ok(TreeBijection::from_bernardi(r, parse_start(r, arg)?)?)
        }
        "shift" => {
            let w = arg
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<Rational>()
                        .map_err(|_| format!("bad rational `{x}`"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TreeBijection::from_shift(g, &w)?)
        }
        _ => Err(format!("unknown bijection kind `{kind}`").into()),
    }
}
