use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use log::info;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use coxdim::gp::{export_stage, verify_gp, Stage};
use coxdim::homology::{cohomology_groups, relative_cohomology_groups};
use coxdim::product::{product_dimension_report, FactorProfile, FactorProfileJson};
use coxdim::racg::{rigidity_certificate, vcd_davis};
use coxdim::simplicial::{flag_complex, ComplexJson, GraphJson};
use coxdim::spine::{aut_dimension_bounds, cell_bound, enumerate_trees, out_dimension_bounds, verify_stab_bound};
use coxdim::{Error, SimplicialComplex};

#[derive(Parser)]
#[command(name = "coxdim", version, about = "Cohomology and dimension bounds for right-angled Coxeter groups and free products")]
struct Cli {
    /// Emit the JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Properties of the right-angled Coxeter group of a graph or flag complex.
    #[command(subcommand)]
    Racg(RacgCommand),
    /// The Z_p-equivariant nerve L_p.
    #[command(subcommand)]
    Gp(GpCommand),
    /// Dimension bounds for direct products.
    #[command(subcommand)]
    Product(ProductCommand),
    /// Quotient trees of free splittings and bounds for Out and Aut.
    #[command(subcommand)]
    Spine(SpineCommand),
    /// Integral cohomology of a simplicial complex.
    Cohomology(CohomologyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Graph or complex JSON (default: stdin).
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RacgCommand {
    /// Run every checker and print the certificate.
    Check(InputArgs),
    /// Virtual cohomological dimension from the nerve.
    Vcd(InputArgs),
}

#[derive(Args)]
struct GpArgs {
    #[arg(short = 'p', value_name = "PRIME")]
    p: u64,
    #[arg(long, default_value_t = 3, value_name = "K")]
    subdivisions: usize,
}

#[derive(Subcommand)]
enum GpCommand {
    Verify(GpArgs),
    /// Write an intermediate complex as complex JSON.
    Export {
        #[command(flatten)]
        gp: GpArgs,
        /// Z, L, L_sing, L_prime, K or K_sing.
        #[arg(long)]
        stage: String,
        /// Destination file (default: stdout).
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ProductCommand {
    Bounds {
        /// Inline JSON list of {"d", "exponent", "mult"} objects.
        #[arg(long, value_name = "JSON", conflicts_with = "profiles")]
        profile: Option<String>,
        /// File with the same list.
        #[arg(long, value_name = "PATH")]
        profiles: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SpineArgs {
    #[arg(short = 'r', value_name = "COUNT")]
    r: usize,
}

#[derive(Subcommand)]
enum SpineCommand {
    Enumerate(SpineArgs),
    /// Check the stabiliser inequality on every quotient tree.
    Verify(SpineArgs),
    Bounds {
        #[command(flatten)]
        spine: SpineArgs,
        /// Factor profiles, one per factor (default: d = 3, distinct odd primes).
        #[arg(long, value_name = "PATH")]
        profiles: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Reduced cohomology.
    #[arg(long)]
    reduced: bool,
    /// Cohomology relative to this subcomplex.
    #[arg(long, value_name = "PATH")]
    relative: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Value,
    results: Value,
    timing: Option<Value>,
    version: &'static str,
}

/// A finished computation: the report body and whether its target held.
struct Outcome {
    command: &'static str,
    inputs: Value,
    results: Value,
    ok: bool,
}

impl Outcome {
    fn new(command: &'static str, inputs: Value, results: impl Serialize, ok: bool) -> Result<Self, Error> {
        let results = serde_json::to_value(results).map_err(|e| Error::Internal(e.to_string()))?;
        Ok(Outcome { command, inputs, results, ok })
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexInput {
    Graph(GraphJson),
    Complex(ComplexJson),
}

fn read_source(path: Option<&Path>) -> Result<String, Error> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed {what}: {e}")))
}

/// A graph becomes its flag complex; a complex is taken as is.
fn load_complex(path: Option<&Path>) -> Result<SimplicialComplex, Error> {
    let text = read_source(path)?;
    match parse_json::<ComplexInput>(&text, "graph or complex JSON")? {
        ComplexInput::Graph(g) => Ok(flag_complex(&coxdim::Graph::from_json(&g)?)),
        ComplexInput::Complex(c) => SimplicialComplex::from_json(&c),
    }
}

fn load_profiles(text: &str) -> Result<Vec<FactorProfile>, Error> {
    let raw: Vec<FactorProfileJson> = parse_json(text, "factor profiles")?;
    raw.into_iter().map(FactorProfile::try_from).collect()
}

fn path_value(p: &Option<PathBuf>) -> Value {
    p.as_ref().map_or(Value::Null, |p| Value::String(p.display().to_string()))
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Racg(RacgCommand::Check(a)) => {
            let l = load_complex(a.input.as_deref())?;
            let cert = rigidity_certificate(&l)?;
            // no verification target: the checks are the result
            Outcome::new("racg check", json!({ "input": path_value(&a.input) }), cert, true)
        }
        Command::Racg(RacgCommand::Vcd(a)) => {
            let l = load_complex(a.input.as_deref())?;
            if !l.is_flag() {
                return Err(Error::NotFlag);
            }
            let vcd = vcd_davis(&l)?;
            Outcome::new("racg vcd", json!({ "input": path_value(&a.input) }), json!({ "vcd": vcd, "dimension": l.dim() }), true)
        }
        Command::Gp(GpCommand::Verify(a)) => {
            let report = verify_gp(a.p, a.subdivisions)?;
            let ok = report.verdict;
            Outcome::new("gp verify", json!({ "p": a.p, "subdivisions": a.subdivisions }), report, ok)
        }
        Command::Gp(GpCommand::Export { gp, stage, output }) => {
            let stage: Stage = stage.parse()?;
            let k = export_stage(gp.p, gp.subdivisions, stage)?;
            let text = serde_json::to_string(&k.to_json()).map_err(|e| Error::Internal(e.to_string()))?;
            let faces: Vec<usize> = (0..=k.dim().max(0) as usize).map(|d| k.face_count(d)).collect();
            match &output {
                Some(p) => fs::write(p, text + "\n").map_err(|e| Error::Input(format!("{}: {e}", p.display())))?,
                None => println!("{text}"),
            }
            Outcome::new(
                "gp export",
                json!({ "p": gp.p, "subdivisions": gp.subdivisions, "stage": stage.to_string(), "output": path_value(&output) }),
                json!({ "vertices": k.vertex_count(), "dimension": k.dim(), "faces": faces }),
                true,
            )
        }
        Command::Product(ProductCommand::Bounds { profile, profiles }) => {
            let text = match (&profile, &profiles) {
                (Some(inline), _) => inline.clone(),
                (None, Some(p)) => read_source(Some(p))?,
                (None, None) => return Err(Error::Input("pass --profile JSON or --profiles PATH".into())),
            };
            let parsed = load_profiles(&text)?;
            let report = product_dimension_report(&parsed)?;
            let inputs = json!({ "profiles": serde_json::from_str::<Value>(&text).unwrap_or(Value::Null) });
            Outcome::new("product bounds", inputs, report, true)
        }
        Command::Spine(SpineCommand::Enumerate(a)) => {
            let trees = enumerate_trees(a.r)?;
            let rows = trees
                .iter()
                .map(|t| Ok(json!({ "tree": t, "cell_bound": cell_bound(t)? })))
                .collect::<Result<Vec<Value>, Error>>()?;
            Outcome::new("spine enumerate", json!({ "r": a.r }), json!({ "count": trees.len(), "trees": rows }), true)
        }
        Command::Spine(SpineCommand::Verify(a)) => {
            let report = verify_stab_bound(a.r)?;
            let ok = report.holds();
            Outcome::new("spine verify", json!({ "r": a.r }), report, ok)
        }
        Command::Spine(SpineCommand::Bounds { spine, profiles }) => {
            let parsed = match &profiles {
                Some(p) => Some(load_profiles(&read_source(Some(p))?)?),
                None => None,
            };
            let out = out_dimension_bounds(spine.r, parsed.as_deref())?;
            let aut = aut_dimension_bounds(spine.r)?;
            Outcome::new(
                "spine bounds",
                json!({ "r": spine.r, "profiles": path_value(&profiles) }),
                json!({ "out": out, "aut": aut }),
                true,
            )
        }
        Command::Cohomology(a) => {
            let k = load_complex(a.input.input.as_deref())?;
            let groups = match &a.relative {
                Some(p) => {
                    let sub = load_complex(Some(p))?;
                    relative_cohomology_groups(&k, &sub)?
                }
                None => cohomology_groups(&k, a.reduced),
            };
            let degrees: Vec<Value> = groups
                .iter()
                .enumerate()
                .map(|(n, g)| json!({ "degree": n, "group": g }))
                .collect();
            Outcome::new(
                "cohomology",
                json!({ "input": path_value(&a.input.input), "reduced": a.reduced, "relative": path_value(&a.relative) }),
                json!({ "dimension": k.dim(), "degrees": degrees }),
                true,
            )
        }
    }
}

fn render(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(m) if m.contains_key("display") => render(&m["display"]),
        other => other.to_string(),
    }
}

fn print_table(report: &Report) {
    println!("{} (coxdim {})", report.command, report.version);
    let Value::Object(fields) = &report.results else {
        println!("  {}", render(&report.results));
        return;
    };
    let width = fields.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in fields {
        match v {
            Value::Object(inner) if !inner.contains_key("display") => {
                println!("  {k}:");
                for (k2, v2) in inner {
                    println!("    {k2:<width$}  {}", render(v2));
                }
            }
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                println!("  {k}:");
                for item in items {
                    println!("    {}", item);
                }
            }
            _ => println!("  {k:<width$}  {}", render(v)),
        }
    }
    if let Some(t) = &report.timing {
        println!("  {:<width$}  {}", "seconds", t["seconds"]);
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("COXDIM_LOG")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: could not configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let outcome = match run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let elapsed = start.elapsed().as_secs_f64();
    info!("{} finished in {elapsed:.3}s", outcome.command);
    let report = Report {
        command: outcome.command.to_string(),
        inputs: outcome.inputs,
        results: outcome.results,
        timing: cli.timing.then(|| json!({ "seconds": elapsed })),
        version: env!("CARGO_PKG_VERSION"),
    };
    if cli.json {
        match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    } else {
        print_table(&report);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
