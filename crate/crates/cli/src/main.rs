use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pcr_core::acceptance::{self, AcceptanceOptions};
use pcr_core::arrangement::{non_pappus_9, validate_raw, WiringDiagram, WiringJson};
use pcr_core::constructions::{build_ga, expand_drawing, expand_graph, subdivide_for_straightening};
use pcr_core::graph::{GraphJson, WeightedGraphJson};
use pcr_core::oracle::{crossing_number, crossing_number_leq, CrossingNumber, Decision, OracleOptions};
use pcr_core::{
    find_extension_with, scan_clams, verify_witness, Drawing, DrawingJson, ExtensionOutcome, Graph, ModelJson,
    PseudolinearModel, SearchOptions, WeightedGraph,
};
use serde::Serialize;
use serde_json::json;

mod render;

#[derive(Parser)]
#[command(name = "pcr", version, about = "Pseudolinear crossing number toolkit")]
struct Cli {
    /// Output file; standard output when omitted.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Output format; JSON by default, a text table for `accept`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for the oracle.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Dot,
}

#[derive(Args)]
struct Budget {
    /// Search budget; defaults to $PCR_BUDGET or the library default.
    #[arg(long, env = "PCR_BUDGET")]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Wiring diagrams.
    #[command(subcommand)]
    Arr(ArrCommand),
    /// Gadget graphs.
    #[command(subcommand)]
    Ga(GaCommand),
    /// Replace every weighted edge by parallel unit paths.
    Expand { input: Option<PathBuf> },
    /// Subdivide each crossed edge twice per crossing.
    Subdivide { input: Option<PathBuf> },
    /// Pseudolinear model certificates.
    #[command(subcommand)]
    Model(ModelCommand),
    /// Drawings.
    #[command(subcommand)]
    Draw(DrawCommand),
    /// Exact crossing numbers of small graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run the acceptance suite.
    Accept {
        /// Run one criterion only.
        #[arg(long)]
        only: Option<usize>,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Subcommand)]
enum ArrCommand {
    Validate {
        input: Option<PathBuf>,
    },
    Render {
        input: Option<PathBuf>,
    },
    /// Print the bundled 9-wire non-Pappus arrangement.
    NonPappus,
}

#[derive(Subcommand)]
enum GaCommand {
    Build {
        #[arg(long, visible_alias = "s-file")]
        arrangement: PathBuf,
        #[arg(long)]
        m: u64,
        /// Expand weighted edges into unit paths.
        #[arg(long)]
        expand: bool,
        /// Emit the weighted graph instead of the drawing.
        #[arg(long)]
        graph: bool,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    Verify {
        input: Option<PathBuf>,
    },
    ToDrawing {
        input: Option<PathBuf>,
    },
    FromDrawing {
        input: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Subcommand)]
enum DrawCommand {
    /// Goodness, crossing counts, clam scan and extension search.
    Analyze {
        input: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
    },
    Render {
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    Cr {
        #[arg(long)]
        graph: PathBuf,
        /// Decide whether the crossing number is at most K.
        #[arg(long)]
        leq: Option<usize>,
        #[command(flatten)]
        budget: Budget,
    },
}

/// A command result: whether it passed, and what to print.
struct Out {
    ok: bool,
    text: String,
}

impl Out {
    fn pass(text: String) -> Self {
        Out { ok: true, text }
    }

    fn status(ok: bool, text: String) -> Self {
        Out { ok, text }
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

fn parse<T: serde::de::DeserializeOwned>(path: Option<&Path>, what: &str) -> Result<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} JSON"))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load_drawing(path: Option<&Path>) -> Result<Drawing> {
    let json: DrawingJson = parse(path, "drawing")?;
    Ok(Drawing::from_json(&json)?)
}

fn load_wiring(path: Option<&Path>) -> Result<WiringJson> {
    parse(path, "arrangement")
}

fn emit_drawing(d: &Drawing, format: Format) -> String {
    match format {
        Format::Json => pretty(&d.to_json()),
        Format::Svg => render::drawing_svg(d),
        Format::Dot => render::drawing_dot(d),
    }
}

fn emit_graph(g: &WeightedGraph, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(pretty(&g.to_json())),
        Format::Dot => Ok(render::graph_dot(g)),
        Format::Svg => bail!("weighted graphs have no SVG form; emit the drawing instead"),
    }
}

fn json_only(format: Format) -> Result<()> {
    if format != Format::Json {
        bail!("this command only writes JSON");
    }
    Ok(())
}

fn search(b: &Budget) -> SearchOptions {
    let mut s = SearchOptions::default();
    if let Some(x) = b.budget {
        s.budget = x;
    }
    s
}

fn outcome_json(out: &ExtensionOutcome) -> serde_json::Value {
    json!(out.label())
}

fn run(cli: &Cli) -> Result<Out> {
    let fmt = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Arr(ArrCommand::Validate { input }) => {
            json_only(fmt)?;
            let w = load_wiring(input.as_deref())?;
            let r = validate_raw(w.wires, &w.switches);
            let ok = r.passes() && w.wires > 0;
            let body = json!({
                "valid": ok,
                "wires": w.wires,
                "crossings": w.switches.len(),
                "failures": r.failures(),
            });
            Ok(Out::status(ok, pretty(&body)))
        }
        Command::Arr(ArrCommand::Render { input }) => {
            let w = WiringDiagram::try_from(load_wiring(input.as_deref())?)?;
            match fmt {
                Format::Svg => Ok(Out::pass(render::wiring_svg(&w))),
                Format::Json => Ok(Out::pass(w.to_json() + "\n")),
                Format::Dot => bail!("arrangements render as SVG or JSON"),
            }
        }
        Command::Arr(ArrCommand::NonPappus) => {
            let w = non_pappus_9();
            match fmt {
                Format::Svg => Ok(Out::pass(render::wiring_svg(&w))),
                Format::Json => Ok(Out::pass(w.to_json() + "\n")),
                Format::Dot => bail!("arrangements render as SVG or JSON"),
            }
        }
        Command::Ga(GaCommand::Build { arrangement, m, expand, graph }) => {
            if *m == 0 {
                bail!("--m must be at least 1");
            }
            let w = WiringDiagram::try_from(load_wiring(Some(arrangement))?)?;
            let ga = build_ga(&w, *m)?;
            if *expand {
                if *graph {
                    return Ok(Out::pass(emit_graph(&expand_graph(&ga.graph)?, fmt)?));
                }
                return Ok(Out::pass(emit_drawing(&expand_drawing(&ga.drawing)?, fmt)));
            }
            if *graph {
                return Ok(Out::pass(emit_graph(&ga.graph, fmt)?));
            }
            if fmt == Format::Svg {
                return Ok(Out::pass(render::geometry_svg(&ga.geometry, ga.graph.weights(), ga.graph.colors())));
            }
            Ok(Out::pass(emit_drawing(&ga.drawing, fmt)))
        }
        Command::Expand { input } => {
            let text = read_input(input.as_deref())?;
            if let Ok(json) = serde_json::from_str::<DrawingJson>(&text) {
                let d = Drawing::from_json(&json)?;
                return Ok(Out::pass(emit_drawing(&expand_drawing(&d)?, fmt)));
            }
            let json: WeightedGraphJson =
                serde_json::from_str(&text).context("expected a drawing or a weighted graph")?;
            let g = WeightedGraph::from_json(&json)?;
            Ok(Out::pass(emit_graph(&expand_graph(&g)?, fmt)?))
        }
        Command::Subdivide { input } => {
            let d = load_drawing(input.as_deref())?;
            Ok(Out::pass(emit_drawing(&subdivide_for_straightening(&d)?.drawing, fmt)))
        }
        Command::Model(ModelCommand::Verify { input }) => {
            json_only(fmt)?;
            let json: ModelJson = parse(input.as_deref(), "certificate")?;
            let m = PseudolinearModel::from_json(&json)?;
            let r = m.verify();
            let mut body = serde_json::to_value(&r)?;
            body["valid"] = json!(r.passes());
            if let Ok(sp) = m.special_vertices() {
                body["special_vertices"] = json!(sp.len());
            }
            Ok(Out::status(r.passes(), pretty(&body)))
        }
        Command::Model(ModelCommand::ToDrawing { input }) => {
            let json: ModelJson = parse(input.as_deref(), "certificate")?;
            let m = PseudolinearModel::from_json(&json)?;
            match m.to_drawing() {
                Ok(d) => Ok(Out::pass(emit_drawing(&d, fmt))),
                Err(e) => Ok(Out::status(false, pretty(&json!({ "error": e.to_string() })))),
            }
        }
        Command::Model(ModelCommand::FromDrawing { input, budget }) => {
            json_only(fmt)?;
            let d = load_drawing(input.as_deref())?;
            let out = find_extension_with(&d, &search(budget))?;
            let Some(w) = out.witness() else {
                return Ok(Out::status(false, pretty(&json!({ "extension": outcome_json(&out) }))));
            };
            let m = PseudolinearModel::from_drawing(&d, w)?;
            Ok(Out::pass(pretty(&m.to_json())))
        }
        Command::Draw(DrawCommand::Analyze { input, budget }) => {
            json_only(fmt)?;
            let d = load_drawing(input.as_deref())?;
            let good = d.is_good();
            let clams = scan_clams(&d);
            let out = find_extension_with(&d, &search(budget))?;
            let verified = out.witness().map(|w| verify_witness(&d, w).is_ok());
            let body = json!({
                "vertices": d.graph().vertex_count(),
                "edges": d.graph().edge_count(),
                "crossings": d.crossing_count(),
                "weighted_crossings": d.weighted_crossing_count(),
                "good": good.passes(),
                "goodness": good,
                "clams": clams,
                "extension": outcome_json(&out),
                "witness_verified": verified,
            });
            Ok(Out::pass(pretty(&body)))
        }
        Command::Draw(DrawCommand::Render { input }) => {
            let d = load_drawing(input.as_deref())?;
            Ok(Out::pass(emit_drawing(&d, fmt)))
        }
        Command::Oracle(OracleCommand::Cr { graph, leq, budget }) => {
            json_only(fmt)?;
            let json: GraphJson = parse(Some(graph), "graph")?;
            let g = Graph::from_json(&json)?;
            let mut opts = OracleOptions { jobs: cli.jobs.max(1), ..OracleOptions::default() };
            if let Some(b) = budget.budget {
                opts.budget = b;
            }
            let body = match leq {
                Some(k) => match crossing_number_leq(&g, *k, &opts) {
                    Decision::Yes(a) => json!({ "k": k, "answer": "yes", "assignment": a }),
                    Decision::No => json!({ "k": k, "answer": "no" }),
                    Decision::BudgetExceeded => {
                        return Ok(Out::status(false, pretty(&json!({ "k": k, "answer": "budget exceeded" }))))
                    }
                },
                None => match crossing_number(&g, &opts) {
                    CrossingNumber::Exact(k, a) => json!({ "crossing_number": k, "assignment": a }),
                    CrossingNumber::BudgetExceeded { lower } => {
                        return Ok(Out::status(
                            false,
                            pretty(&json!({ "answer": "budget exceeded", "lower_bound": lower })),
                        ))
                    }
                },
            };
            Ok(Out::pass(pretty(&body)))
        }
        Command::Accept { only, budget } => {
            let mut opts = AcceptanceOptions::default();
            opts.oracle.jobs = cli.jobs.max(1);
            if let Some(b) = budget.budget {
                opts.extension_budget = b;
            }
            let results = match only {
                Some(id) if (1..=9).contains(id) => vec![acceptance::run(*id, &opts)],
                Some(id) => bail!("no criterion {id}; criteria are numbered 1 to 9"),
                None => acceptance::run_all(&opts),
            };
            let ok = results.iter().all(|r| r.passed);
            let text = match cli.format {
                None => results.iter().map(|r| r.line() + "\n").collect(),
                Some(Format::Json) => pretty(&results),
                Some(_) => bail!("the acceptance table is text or JSON"),
            };
            Ok(Out::status(ok, text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &out.text).with_context(|| format!("writing {}", p.display())),
                None => std::io::stdout().write_all(out.text.as_bytes()).context("writing standard output"),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
