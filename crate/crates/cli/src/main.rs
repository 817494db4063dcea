//! `occupancy`: exact occupancy fractions, LP certificates and bound checks,
//! reported as JSON.

mod graph_arg;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use occupancy::acceptance::{self, SuiteConfig};
use occupancy::bounds::{self, Transitivity, Verdict};
use occupancy::corpus::NamedGraph;
use occupancy::exact::{format_rational, parse_rational, rat};
use occupancy::polynomials::{edge_occupancy, independence_poly, matching_gen_poly, occupancy};
use occupancy::{hardcore_lp, matching_lp, Error, Rational, Result};
use serde::Serialize;
use serde_json::{json, Value};

use graph_arg::{parse_corpus, parse_graph, Format};

#[derive(Parser)]
#[command(name = "occupancy", version, about = "Exact occupancy fractions and LP certificates on regular graphs")]
struct Cli {
    /// Format of `file:` graphs and corpus files.
    #[arg(long, value_enum, global = true, default_value_t)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Independence and matching polynomial coefficients.
    Poly {
        #[arg(long)]
        graph: String,
        /// Also evaluate both polynomials here.
        #[arg(long, value_parser = positive_rational)]
        lambda: Option<Rational>,
    },
    /// Occupancy and edge occupancy fractions.
    Occupancy {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        fugacity: Fugacity,
    },
    /// Check the explicit dual certificate of a linear program.
    Certify {
        #[command(subcommand)]
        model: CertifyModel,
    },
    /// Bracket the occupancy fraction on the infinite d-regular tree.
    Tree {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = positive_rational)]
        lambda: Rational,
        #[arg(long, value_parser = positive_rational, default_value = "1/1000000000")]
        tol: Rational,
    },
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Independent set and matching counts by size.
    Counts { graph: String },
    /// Successive count ratios against H_{d,n}, grouped by (d, n).
    Conjectures {
        /// Corpus file, or `bundled`.
        #[arg(long)]
        corpus: String,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Reduced grids.
        #[arg(long)]
        quick: bool,
        /// Build the matching program from a corrupted marginal formula.
        #[arg(long, hide = true)]
        mutate_gamma_f: bool,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct Fugacity {
    #[arg(long, value_parser = positive_rational)]
    lambda: Option<Rational>,
    /// Comma-separated fugacities.
    #[arg(long, value_parser = positive_rational, value_delimiter = ',')]
    grid: Vec<Rational>,
}

impl Fugacity {
    fn values(&self, default: &[(i64, i64)]) -> Vec<Rational> {
        match (&self.lambda, self.grid.is_empty()) {
            (Some(l), _) => vec![l.clone()],
            (None, false) => self.grid.clone(),
            (None, true) => default.iter().map(|&(p, q)| rat(p, q)).collect(),
        }
    }

    /// A single `--lambda` reports one object; a grid reports a list.
    fn shape(&self, mut items: Vec<Value>) -> Value {
        if self.lambda.is_some() && items.len() == 1 {
            items.pop().expect("one item")
        } else {
            Value::Array(items)
        }
    }

    fn echo(&self, values: &[Rational]) -> Value {
        json!(values.iter().map(format_rational).collect::<Vec<_>>())
    }
}

#[derive(Subcommand)]
enum CertifyModel {
    Hardcore(CertifyArgs),
    Matching(CertifyArgs),
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    d: usize,
    #[command(flatten)]
    fugacity: Fugacity,
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// Occupancy above the tree value for vertex-transitive bipartite graphs.
    LowerBound {
        /// Corpus file, or `bundled` for the vertex-transitive bipartite list.
        #[arg(long)]
        corpus: String,
        #[command(flatten)]
        fugacity: Fugacity,
        #[arg(long, value_parser = positive_rational, default_value = "1/1000000000")]
        tol: Rational,
        /// Skip the automorphism search (for graphs above its size limit).
        #[arg(long)]
        assume_transitive: bool,
    },
    /// Counts of each size within 2√n of H_{d,n}.
    GivenSize {
        /// Corpus file, or `bundled`.
        #[arg(long)]
        corpus: String,
    },
}

fn positive_rational(s: &str) -> std::result::Result<Rational, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if r > rat(0, 1) {
        Ok(r)
    } else {
        Err(format!("`{s}` must be positive"))
    }
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Value,
    results: Value,
    verdict: Verdict,
    /// Milliseconds.
    timing: u128,
}

struct Outcome {
    inputs: Value,
    results: Value,
    verdict: Verdict,
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn all_pass(flags: impl IntoIterator<Item = bool>) -> Verdict {
    if flags.into_iter().all(|f| f) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn run(command: &Command, format: Format) -> Result<Outcome> {
    Ok(match command {
        Command::Poly { graph, lambda } => {
            let g = parse_graph(graph, format)?;
            let (p, m) = (independence_poly(&g)?, matching_gen_poly(&g)?);
            let mut results = to_json(&bounds::counts(&g)?);
            if let Some(l) = lambda {
                results["independence_value"] = json!(format_rational(&p.eval(l)));
                results["matching_value"] = json!(format_rational(&m.eval(l)));
            }
            Outcome {
                inputs: json!({ "graph": graph, "lambda": lambda.as_ref().map(format_rational) }),
                results,
                verdict: Verdict::Pass,
            }
        }
        Command::Occupancy { graph, fugacity } => {
            let g = parse_graph(graph, format)?;
            let lambdas = fugacity.values(&[(1, 1)]);
            let items = lambdas
                .iter()
                .map(|l| {
                    Ok(json!({
                        "lambda": format_rational(l),
                        "occupancy": format_rational(&occupancy(&g, l)?),
                        "edge_occupancy": format_rational(&edge_occupancy(&g, l)?),
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Outcome {
                inputs: json!({ "graph": graph, "lambdas": fugacity.echo(&lambdas) }),
                results: fugacity.shape(items),
                verdict: Verdict::Pass,
            }
        }
        Command::Certify { model } => {
            let (name, args) = match model {
                CertifyModel::Hardcore(a) => ("hardcore", a),
                CertifyModel::Matching(a) => ("matching", a),
            };
            let lambdas = args.fugacity.values(&[(1, 1)]);
            let mut passed = Vec::new();
            let mut items = Vec::new();
            for l in &lambdas {
                if name == "hardcore" {
                    let r = hardcore_lp::certificate_report(args.d, l)?;
                    passed.push(r.valid);
                    items.push(to_json(&r));
                } else {
                    let c = matching_lp::certify(args.d, l)?;
                    passed.push(c.passed());
                    items.push(to_json(&c));
                }
            }
            Outcome {
                inputs: json!({ "model": name, "d": args.d, "lambdas": args.fugacity.echo(&lambdas) }),
                results: args.fugacity.shape(items),
                verdict: all_pass(passed),
            }
        }
        Command::Tree { d, lambda, tol } => {
            let t = bounds::tree_occupancy(*d, lambda, tol)?;
            let mut results = to_json(&t);
            results["midpoint"] = json!(t.midpoint());
            results["lambda_c"] = json!(bounds::lambda_c(*d).ok().as_ref().map(format_rational));
            Outcome {
                inputs: json!({ "d": d, "lambda": format_rational(lambda), "tol": format_rational(tol) }),
                results,
                verdict: Verdict::Pass,
            }
        }
        Command::Verify { check: VerifyCheck::LowerBound { corpus, fugacity, tol, assume_transitive } } => {
            let graphs = parse_corpus(corpus, format, true)?;
            let lambdas = fugacity.values(&acceptance::LAMBDA_GRID);
            let transitivity = if *assume_transitive { Transitivity::Assume } else { Transitivity::Check };
            let mut verdicts = Vec::new();
            let mut items = Vec::new();
            for g in &graphs {
                for l in &lambdas {
                    match bounds::verify_lower_bound(&g.graph, l, tol, transitivity) {
                        Ok(r) => {
                            verdicts.push(r.verdict);
                            items.push(json!({ "graph": g.name, "lambda": format_rational(l), "report": to_json(&r) }));
                        }
                        // Graphs outside the theorem's hypotheses are listed, not judged.
                        Err(Error::Domain(why)) => {
                            items.push(json!({ "graph": g.name, "lambda": format_rational(l), "skipped": why }));
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            let verdict = if verdicts.is_empty() {
                Verdict::NotApplicable
            } else if verdicts.contains(&Verdict::Fail) {
                Verdict::Fail
            } else if verdicts.contains(&Verdict::Inconclusive) {
                Verdict::Inconclusive
            } else {
                Verdict::Pass
            };
            Outcome {
                inputs: json!({
                    "corpus": corpus,
                    "lambdas": fugacity.echo(&lambdas),
                    "tol": format_rational(tol),
                    "assume_transitive": assume_transitive,
                }),
                results: Value::Array(items),
                verdict,
            }
        }
        Command::Verify { check: VerifyCheck::GivenSize { corpus } } => {
            let graphs = parse_corpus(corpus, format, false)?;
            let mut verdicts = Vec::new();
            let mut items = Vec::new();
            for g in &graphs {
                let r = bounds::given_size_bound(&g.graph)?;
                verdicts.push(r.verdict);
                items.push(json!({ "graph": g.name, "report": to_json(&r) }));
            }
            let verdict = if verdicts.contains(&Verdict::Fail) {
                Verdict::Fail
            } else if verdicts.contains(&Verdict::Pass) {
                Verdict::Pass
            } else {
                Verdict::NotApplicable
            };
            Outcome { inputs: json!({ "corpus": corpus }), results: Value::Array(items), verdict }
        }
        Command::Counts { graph } => {
            let g = parse_graph(graph, format)?;
            Outcome {
                inputs: json!({ "graph": graph }),
                results: to_json(&bounds::counts(&g)?),
                verdict: Verdict::Pass,
            }
        }
        Command::Conjectures { corpus } => {
            let graphs = parse_corpus(corpus, format, false)?;
            let mut groups: Vec<((usize, usize), Vec<NamedGraph>)> = Vec::new();
            for g in graphs {
                let d = g.graph.regular_degree().ok_or_else(|| Error::Domain(format!("{} is not regular", g.name)))?;
                let key = (d, g.graph.vertex_count());
                match groups.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, gs)) => gs.push(g),
                    None => groups.push((key, vec![g])),
                }
            }
            let mut items = Vec::new();
            for ((d, n), gs) in &groups {
                let graphs: Vec<_> = gs.iter().map(|g| g.graph.clone()).collect();
                let r = bounds::conjecture_ratio_check(&graphs, *d, *n)?;
                let names: Vec<&str> = gs.iter().map(|g| g.name.as_str()).collect();
                items.push(json!({ "graphs": names, "report": to_json(&r) }));
            }
            // Open conjectures: evidence only, never a failure.
            Outcome { inputs: json!({ "corpus": corpus }), results: Value::Array(items), verdict: Verdict::Pass }
        }
        Command::Selftest { quick, mutate_gamma_f } => {
            let config = SuiteConfig {
                quick: *quick,
                marginals: if *mutate_gamma_f { acceptance::mutated_marginals() } else { Default::default() },
            };
            let results = acceptance::run(&config);
            for r in results.iter().filter(|r| !r.passed) {
                eprintln!("FAIL {} {}: {}", r.id, r.name, r.detail);
            }
            Outcome {
                inputs: json!({ "quick": quick, "mutate_gamma_f": mutate_gamma_f }),
                verdict: all_pass(results.iter().map(|r| r.passed)),
                results: to_json(&results),
            }
        }
    })
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Poly { .. } => "poly",
        Command::Occupancy { .. } => "occupancy",
        Command::Certify { model: CertifyModel::Hardcore(_) } => "certify hardcore",
        Command::Certify { model: CertifyModel::Matching(_) } => "certify matching",
        Command::Tree { .. } => "tree",
        Command::Verify { check: VerifyCheck::LowerBound { .. } } => "verify lower-bound",
        Command::Verify { check: VerifyCheck::GivenSize { .. } } => "verify given-size",
        Command::Counts { .. } => "counts",
        Command::Conjectures { .. } => "conjectures",
        Command::Selftest { .. } => "selftest",
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capability(_) => 3,
        Error::CertificateFailure { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command, cli.format) {
        Ok(out) => {
            let report = RunReport {
                command: command_name(&cli.command).into(),
                inputs: out.inputs,
                results: out.results,
                verdict: out.verdict,
                timing: start.elapsed().as_millis(),
            };
            // A closed pipe is the reader's choice, not an error of ours.
            let _ = writeln!(
                std::io::stdout().lock(),
                "{}",
                serde_json::to_string_pretty(&report).expect("reports serialize")
            );
            match report.verdict {
                Verdict::Pass | Verdict::NotApplicable => ExitCode::SUCCESS,
                Verdict::Fail | Verdict::Inconclusive => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
