//! `strongmatch` command-line tool.
//!
//! Exit codes: 0 on success or a certified matching, 1 when a matching is
//! refuted (a witness is printed), 2 on usage or input errors. JSON goes to
//! stdout, diagnostics to stderr.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use strongmatch::alternating::{find_finitely_improving_path, is_strongly_w_maximal, WeightVerdict};
use strongmatch::counterexample::{self, build_prefix, build_prefix_with, demonstrate_improvement, Improvement};
use strongmatch::gallai_edmonds::gallai_edmonds;
use strongmatch::graph::{format_rational, Graph, Matching};
use strongmatch::io::{format_edge_list, matching_json, parse_edge_list, parse_matching};
use strongmatch::primal_dual::{self, verify_certificate, DualCertificate, RunOptions};
use strongmatch::{oracle, reduction};

#[derive(Parser)]
#[command(name = "strongmatch", version, about = "Strongly minimal and maximal weighted matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Objective {
    /// Strongly w-minimal perfect or almost perfect matching of a complete graph.
    MinPerfect,
    /// Strongly w-maximal matching of any graph.
    Max,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a matching together with its dual certificate.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "min-perfect")]
        objective: Objective,
        /// Run the brute-force per-step checks as well.
        #[arg(long)]
        thorough: bool,
        /// Skip re-verifying the certificate before printing it.
        #[arg(long)]
        no_certify: bool,
    },
    /// Check a matching for strong maximality, or strong w-maximality with --weighted.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long)]
        weighted: bool,
    },
    /// Print a Gallai-Edmonds decomposition.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Check a certificate (or the full output of `solve`) against a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Build a prefix of the irrational-weight path family and check its inequalities.
    Counterexample {
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Truncation level of the enclosure of `a` (default: depth + 4).
        #[arg(long)]
        truncation: Option<u32>,
        #[command(subcommand)]
        action: Option<CounterexampleAction>,
    },
    /// Brute-force reference answer, for small graphs.
    #[command(hide = true)]
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "min-perfect")]
        objective: Objective,
    },
    /// Print a random complete graph as an edge list.
    #[command(hide = true)]
    Generate {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_weight: i64,
    },
}

#[derive(Subcommand)]
enum CounterexampleAction {
    /// Show the improving switch for a matching of the prefix.
    Improve {
        #[arg(long)]
        matching: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_matching(g: &Graph, path: &Path) -> Result<Matching> {
    parse_matching(g, &read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn print(value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // a closed pipe (`| head`) is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn object(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(map) => map,
        _ => unreachable!("built as an object"),
    }
}

fn solve(path: &Path, objective: Objective, thorough: bool, no_certify: bool) -> Result<u8> {
    let g = read_graph(path)?;
    let options = RunOptions { thorough };
    let mut out = object(json!({ "objective": match objective { Objective::MinPerfect => "min-perfect", Objective::Max => "max" } }));
    let (matching, certificate, certified_on) = match objective {
        Objective::MinPerfect => {
            let sol = primal_dual::run_with(&g, options)?;
            out.insert("steps".into(), json!(sol.steps));
            let cert = sol.certificate.to_json(&g);
            (sol.matching, cert, (g.clone(), sol.certificate))
        }
        Objective::Max => {
            let r = reduction::solve(&g, options)?;
            out.insert("steps".into(), json!(r.solution.steps));
            let mut cert = object(r.solution.certificate.to_json(&r.completed));
            // names the complete instance the certificate lives on
            cert.insert("instance".into(), json!("completed"));
            (r.matching, Value::Object(cert), (r.completed, r.solution.certificate))
        }
    };
    out.extend(object(matching_json(&g, &matching)));
    if !no_certify {
        let (host, cert) = certified_on;
        let report = verify_certificate(&host, &cert.matching, &cert);
        if !report.passed() {
            bail!("internal error: certificate failed verification: {:?}", report.violations);
        }
        out.insert("verified".into(), json!(true));
    }
    out.insert("certificate".into(), certificate);
    print(&Value::Object(out));
    Ok(0)
}

fn check(graph: &Path, matching: &Path, weighted: bool) -> Result<u8> {
    let g = read_graph(graph)?;
    let m = read_matching(&g, matching)?;
    let names = |vs: &[strongmatch::VertexId]| vs.iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>();
    if weighted {
        match is_strongly_w_maximal(&g, &m) {
            WeightVerdict::Certified => {
                print(&json!({ "certified": true, "property": "strongly w-maximal" }));
                Ok(0)
            }
            WeightVerdict::Improvable(imp) => {
                print(&json!({
                    "certified": false,
                    "property": "strongly w-maximal",
                    "witness": {
                        "kind": imp.switched.kind,
                        "vertices": names(&imp.switched.vertices),
                        "gain": format_rational(&imp.gain),
                        "improved": matching_json(&g, &imp.matching),
                    },
                }));
                Ok(1)
            }
        }
    } else {
        match find_finitely_improving_path(&g, &m) {
            None => {
                print(&json!({ "certified": true, "property": "strongly maximal" }));
                Ok(0)
            }
            Some(path) => {
                let mut improved = m.clone();
                improved.switch(&g, &path.edges)?;
                print(&json!({
                    "certified": false,
                    "property": "strongly maximal",
                    "witness": {
                        "kind": path.class,
                        "vertices": names(&path.vertices),
                        "improved": matching_json(&g, &improved),
                    },
                }));
                Ok(1)
            }
        }
    }
}

fn decompose(path: &Path) -> Result<u8> {
    let g = read_graph(path)?;
    let ge = gallai_edmonds(&g);
    let name = |v: &strongmatch::VertexId| g.name(*v).to_string();
    let components: Vec<Value> = ge
        .components
        .iter()
        .map(|c| json!({ "vertices": c.vertices.iter().map(name).collect::<Vec<_>>(), "factor_critical": c.factor_critical }))
        .collect();
    let f_map: Map<String, Value> = ge.f_map.iter().map(|(t, c)| (name(t), json!(c))).collect();
    let contact: Map<String, Value> = ge.contact.iter().map(|(t, v)| (name(t), json!(name(v)))).collect();
    print(&json!({
        "T": ge.t.iter().map(name).collect::<Vec<_>>(),
        "components": components,
        "f_map": f_map,
        "contact": contact,
        "rest": ge.rest.iter().map(name).collect::<Vec<_>>(),
    }));
    Ok(0)
}

fn verify(graph: &Path, certificate: &Path) -> Result<u8> {
    let g = read_graph(graph)?;
    let text = read(certificate)?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", certificate.display()))?;
    let cert_value = value.get("certificate").unwrap_or(&value);
    let on_completed = cert_value.get("instance").and_then(Value::as_str) == Some("completed");
    let (report, mismatch) = if on_completed {
        let (completed, origin, back) = reduction::completed_instance(&g);
        let cert = DualCertificate::from_json(&completed, cert_value)?;
        let report = verify_certificate(&completed, &cert.matching, &cert);
        // the reported matching, if present, must be the original part of the certified one
        let mismatch = match value.get("edge_ids") {
            Some(_) => {
                let claimed = parse_matching(&g, &value.to_string())?;
                let mut expected = reduction::original_edges(&origin, &back, &cert.matching);
                expected.sort();
                claimed.edges().collect::<Vec<_>>() != expected
            }
            None => false,
        };
        (report, mismatch)
    } else {
        let cert = DualCertificate::from_json(&g, cert_value)?;
        let m = match value.get("edge_ids") {
            Some(_) if value.get("certificate").is_some() => parse_matching(&g, &value.to_string())?,
            _ => cert.matching.clone(),
        };
        (verify_certificate(&g, &m, &cert), false)
    };
    let mut violations: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    if mismatch {
        violations.push("reported matching is not the original part of the certified matching".into());
    }
    print(&json!({ "valid": violations.is_empty(), "violations": violations }));
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn run_counterexample(depth: usize, truncation: Option<u32>, action: Option<CounterexampleAction>) -> Result<u8> {
    let prefix = match truncation {
        Some(k) => build_prefix_with(depth, k, counterexample::edge_budget())?,
        None => build_prefix(depth)?,
    };
    match action {
        None => {
            let report = counterexample::verify_inequalities(&prefix)?;
            print(&report.to_json());
            Ok(if report.all_hold() { 0 } else { 1 })
        }
        Some(CounterexampleAction::Improve { matching }) => {
            let m = read_matching(prefix.graph(), &matching)?;
            let found = demonstrate_improvement(&prefix, &m)?;
            print(&found.to_json(&prefix));
            Ok(match found {
                Improvement::Improves(_) => 1,
                Improvement::PrefixOptimal { .. } => 0,
            })
        }
    }
}

fn run_oracle(path: &Path, objective: Objective) -> Result<u8> {
    let g = read_graph(path)?;
    let (weight, edges) = match objective {
        Objective::MinPerfect => oracle::min_weight_near_perfect(&g).context("no perfect or almost perfect matching")?,
        Objective::Max => oracle::max_weight_matching(&g),
    };
    let m = Matching::from_edges(&g, edges)?;
    let mut out = object(matching_json(&g, &m));
    out.insert("weight".into(), json!(format_rational(&weight)));
    print(&Value::Object(out));
    Ok(0)
}

fn generate(vertices: usize, seed: u64, max_weight: i64) -> Result<u8> {
    if max_weight < 1 {
        bail!("--max-weight must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Graph::complete(vertices, |_, _| strongmatch::graph::integer(rng.gen_range(1..=max_weight)));
    let _ = write!(std::io::stdout().lock(), "{}", format_edge_list(&g));
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { graph, objective, thorough, no_certify } => solve(&graph, objective, thorough, no_certify),
        Command::Check { graph, matching, weighted } => check(&graph, &matching, weighted),
        Command::Decompose { graph } => decompose(&graph),
        Command::Verify { graph, certificate } => verify(&graph, &certificate),
        Command::Counterexample { depth, truncation, action } => run_counterexample(depth, truncation, action),
        Command::Oracle { graph, objective } => run_oracle(&graph, objective),
        Command::Generate { vertices, seed, max_weight } => generate(vertices, seed, max_weight),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
