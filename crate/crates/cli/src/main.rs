//! `sepsearch`: generate instances, compute separators, run searches and
//! experiments.
//!
//! Exit codes: 0 on success, 1 when a search or check ends on a vertex that
//! is not a local minimum, 2 on usage, parse or I/O errors.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sepsearch::bench::{
    run_experiment, run_experiment_to_file, summary_path, write_csv, ExperimentConfig,
    FunctionFamily, GraphFamily, Summary,
};
use sepsearch::graph::{read_graph, write_graph, Graph};
use sepsearch::oracle::{is_local_min, read_values, write_values, CountingOracle, ValueFunction};
use sepsearch::search::{run_algorithm, Algorithm, RunOptions};
use sepsearch::separators::{
    ght_size_bound, high_degree_bound, strong_size_bound, strongify, AutoProvider,
    SeparatorProvider, Strategy,
};
use sepsearch::Error;

#[derive(Parser)]
#[command(name = "sepsearch", version, about = "Separator-based local search on graphs")]
struct Cli {
    /// Base seed for generators and randomized algorithms (default 0; for
    /// experiments it replaces the config's seed).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for experiments (defaults to the available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph (and optionally values) and report its bounds.
    Generate(GenerateArgs),
    /// Compute a separator for a graph file.
    Separate(SeparateArgs),
    /// Run one search on a graph and value file.
    Run(RunArgs),
    /// Run a multi-trial experiment from a JSON config.
    Experiment(ExperimentArgs),
    /// Per-size comparison of algorithms against the reference curves.
    Compare(ExperimentArgs),
    /// Check whether a vertex is a local minimum.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    family: String,
    /// Side length for grid families, vertex count otherwise.
    #[arg(long, conflicts_with = "n")]
    size: Option<usize>,
    /// Vertex count; grid families need a perfect square.
    #[arg(long)]
    n: Option<usize>,
    /// Graph file to write; the graph goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Value family for `--values`.
    #[arg(long, default_value = "random")]
    function: String,
    /// Value file to write.
    #[arg(long)]
    values: Option<PathBuf>,
}

#[derive(Args)]
struct SeparateArgs {
    graph: PathBuf,
    /// `auto` or one of grid, centroid, planar, bfs-fallback, trivial.
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Add every vertex of degree above sqrt(n).
    #[arg(long)]
    strong: bool,
}

#[derive(Args)]
struct RunArgs {
    graph: PathBuf,
    values: PathBuf,
    /// sd, rsd, rsd-converge, sep-det or sep-quantum.
    #[arg(long)]
    algorithm: String,
    /// Start vertex for sd.
    #[arg(long)]
    start: Option<usize>,
    /// Inject min-finder errors in sep-quantum.
    #[arg(long)]
    inject_errors: bool,
    /// Separator strategy for sep-det and sep-quantum.
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Write the JSON-lines trace here instead of stdout.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    config: PathBuf,
    /// CSV output path, overriding the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    values: PathBuf,
    vertex: usize,
}

/// Outcome of a command that completed without errors.
enum Outcome {
    Ok,
    NotLocalMin,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::NotLocalMin) => ExitCode::from(1),
        Err(e) => {
            eprintln!("sepsearch: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Generate(args) => generate(cli, args),
        Command::Separate(args) => separate(cli, args),
        Command::Run(args) => run(cli, args),
        Command::Experiment(args) => experiment(cli, args),
        Command::Compare(args) => compare(cli, args),
        Command::Verify(args) => verify(cli, args),
    }
}

fn seed(cli: &Cli) -> u64 {
    cli.seed.unwrap_or(0)
}

fn invalid(message: impl Into<String>) -> Error {
    Error::InvalidArgument(message.into())
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    let file = File::open(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    read_graph(BufReader::new(file)).map_err(|e| with_path(path, e))
}

fn load_values(path: &Path, g: &Graph) -> Result<ValueFunction, Error> {
    let file = File::open(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    read_values(BufReader::new(file), g.order()).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn provider(name: &str) -> Result<Box<dyn SeparatorProvider>, Error> {
    if name == "auto" {
        Ok(Box::new(AutoProvider))
    } else {
        Ok(Box::new(name.parse::<Strategy>()?))
    }
}

fn print_json(value: &Value) -> Result<(), Error> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn print_csv(header: &[&str], rows: &[Vec<String>]) -> Result<(), Error> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

fn generate(cli: &Cli, args: &GenerateArgs) -> Result<Outcome, Error> {
    let family: GraphFamily = args.family.parse()?;
    let size = match (args.size, args.n) {
        (Some(size), _) => size,
        (None, Some(n)) if family.size_is_side() => {
            let side = n.isqrt();
            if side * side != n {
                return Err(invalid(format!("{family} needs a square vertex count, got {n}")));
            }
            side
        }
        (None, Some(n)) => n,
        (None, None) => return Err(invalid("one of --size or --n is required")),
    };
    if size == 0 {
        return Err(invalid("size must be at least 1"));
    }
    let g = family.build(size, seed(cli))?;
    g.validate()?;
    let n = g.order();
    let planar_gate = if g.genus_bound() == 0 && n >= 3 {
        Some(g.check_edge_bound()?)
    } else {
        None
    };
    if planar_gate == Some(false) {
        return Err(invalid("generated graph violates the planar edge bound"));
    }

    match &args.out {
        Some(path) => write_graph(&g, BufWriter::new(File::create(path)?))?,
        None => write_graph(&g, io::stdout().lock())?,
    }
    if let Some(path) = &args.values {
        let f = args.function.parse::<FunctionFamily>()?.build(&g, seed(cli))?;
        write_values(&f, BufWriter::new(File::create(path)?))?;
    }

    let ght = ght_size_bound(n, g.genus_bound());
    let strong = strong_size_bound(n, g.genus_bound()).ok();
    let high = high_degree_bound(n, g.genus_bound()).ok();
    let report = json!({
        "family": family.as_str(),
        "n": n,
        "m": g.edge_count(),
        "g": g.genus_bound(),
        "d": g.max_degree(),
        "separator_bound": ght,
        "strong_separator_bound": strong,
        "high_degree_bound": high,
        "edge_bound_ok": planar_gate,
    });
    // the report goes to stderr when the graph itself is on stdout
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report)?,
        Format::Csv => {
            let fmt = |x: Option<f64>| x.map(|v| format!("{v:.4}")).unwrap_or_default();
            format!(
                "family,n,m,g,d,separator_bound,strong_separator_bound,high_degree_bound\n{},{},{},{},{},{:.4},{},{}",
                family,
                n,
                g.edge_count(),
                g.genus_bound(),
                g.max_degree(),
                ght,
                fmt(strong),
                fmt(high)
            )
        }
    };
    if args.out.is_some() {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    Ok(Outcome::Ok)
}

fn separate(cli: &Cli, args: &SeparateArgs) -> Result<Outcome, Error> {
    let g = load_graph(&args.graph)?;
    let provider = provider(&args.strategy)?;
    if !provider.applies_to(&g) {
        return Err(invalid(format!(
            "strategy {} does not apply to this graph",
            provider.name()
        )));
    }
    let base = provider.separate(&g)?;
    let (sep, high_degree) = if args.strong {
        let strong = strongify(&g, base)?;
        (strong.separator, Some(strong.high_degree))
    } else {
        (base, None)
    };
    match cli.format {
        Format::Json => {
            let mut value = sep.to_json();
            if let Some(high) = high_degree {
                value["high_degree"] = json!(high);
            }
            print_json(&value)?;
        }
        Format::Csv => {
            let vertices: Vec<String> = sep.vertices.iter().map(usize::to_string).collect();
            print_csv(
                &["strategy", "size", "largest_component", "size_bound", "met_bound", "vertices"],
                &[vec![
                    sep.strategy.to_string(),
                    sep.len().to_string(),
                    sep.largest_component().to_string(),
                    format!("{:.4}", sep.size_bound),
                    sep.met_bound.to_string(),
                    vertices.join(" "),
                ]],
            )?;
        }
    }
    Ok(Outcome::Ok)
}

fn run(cli: &Cli, args: &RunArgs) -> Result<Outcome, Error> {
    let algorithm: Algorithm = args.algorithm.parse()?;
    let g = load_graph(&args.graph)?;
    let f = load_values(&args.values, &g)?;
    let provider = provider(&args.strategy)?;
    let options = RunOptions {
        seed: seed(cli),
        inject_errors: args.inject_errors,
        start: args.start,
        provider: provider.as_ref(),
    };
    let result = run_algorithm(&g, &f, algorithm, &options)?;
    let totals = result.trace.totals;

    match &args.trace {
        Some(path) => result.trace.write_json_lines(BufWriter::new(File::create(path)?))?,
        None if cli.format == Format::Json => result.trace.write_json_lines(io::stdout().lock())?,
        None => {}
    }
    match cli.format {
        Format::Json => {
            let line = json!({
                "kind": "result",
                "algorithm": algorithm.as_str(),
                "n": g.order(),
                "d": g.max_degree(),
                "g": g.genus_bound(),
                "seed": seed(cli),
                "vertex": result.vertex,
                "success": result.verified,
                "raw_queries": totals.raw_queries,
                "modeled_cost": totals.modeled_cost,
                "depth": totals.depth,
                "steps": totals.steps,
            });
            println!("{line}");
        }
        Format::Csv => print_csv(
            &[
                "algorithm", "n", "d", "g", "seed", "vertex", "success", "raw_queries",
                "modeled_cost", "depth", "steps",
            ],
            &[vec![
                algorithm.to_string(),
                g.order().to_string(),
                g.max_degree().to_string(),
                g.genus_bound().to_string(),
                seed(cli).to_string(),
                result.vertex.to_string(),
                result.verified.to_string(),
                totals.raw_queries.to_string(),
                totals.modeled_cost.to_string(),
                totals.depth.to_string(),
                totals.steps.to_string(),
            ]],
        )?,
    }
    Ok(if result.verified { Outcome::Ok } else { Outcome::NotLocalMin })
}

fn jobs(cli: &Cli) -> usize {
    cli.jobs
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
}

fn load_config(cli: &Cli, args: &ExperimentArgs) -> Result<ExperimentConfig, Error> {
    let mut config = ExperimentConfig::load(&args.config)?;
    if let Some(out) = &args.out {
        config.output = Some(out.clone());
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn run_config(cli: &Cli, config: &ExperimentConfig) -> Result<sepsearch::bench::ExperimentOutcome, Error> {
    if config.output.is_some() {
        run_experiment_to_file(config, jobs(cli))
    } else {
        run_experiment(config, jobs(cli), &[])
    }
}

fn experiment(cli: &Cli, args: &ExperimentArgs) -> Result<Outcome, Error> {
    let config = load_config(cli, args)?;
    let outcome = run_config(cli, &config)?;
    match cli.format {
        Format::Json => print_json(&serde_json::to_value(&outcome.summary)?)?,
        Format::Csv => write_csv(&outcome.rows, io::stdout().lock())?,
    }
    if let Some(output) = &config.output {
        eprintln!(
            "wrote {} and {}",
            output.display(),
            summary_path(output).display()
        );
    }
    report_violations(&outcome.summary);
    Ok(Outcome::Ok)
}

fn report_violations(summary: &Summary) {
    for v in &summary.grid_query_violations {
        eprintln!(
            "warning: sep-det used {} raw queries at size {} trial {}, above d + 60 sqrt(n) = {:.1}",
            v.raw_queries, v.size, v.trial, v.limit
        );
    }
}

fn compare(cli: &Cli, args: &ExperimentArgs) -> Result<Outcome, Error> {
    let config = load_config(cli, args)?;
    let outcome = run_config(cli, &config)?;
    let groups = &outcome.summary.groups;
    let mut sizes: Vec<usize> = groups.iter().map(|g| g.size).collect();
    sizes.dedup();
    let algorithms: Vec<Algorithm> = {
        let mut a: Vec<Algorithm> = groups.iter().map(|g| g.algorithm).collect();
        a.sort();
        a.dedup();
        a
    };
    let mut table = Vec::new();
    for &size in &sizes {
        let here: Vec<_> = groups.iter().filter(|g| g.size == size).collect();
        let first = here[0];
        let mut row = json!({
            "size": size,
            "n": first.n,
            "d": first.d,
            "rsd_reference": first.rsd_reference,
            "qsd_reference": first.qsd_reference,
        });
        for g in &here {
            row[format!("{}_raw_queries", g.algorithm)] = json!(g.raw_queries_mean);
            row[format!("{}_modeled_cost", g.algorithm)] = json!(g.modeled_cost_mean);
            row[format!("{}_success_rate", g.algorithm)] = json!(g.success_rate);
        }
        table.push(row);
    }
    match cli.format {
        Format::Json => print_json(&json!({ "rows": table, "fits": outcome.summary.fits }))?,
        Format::Csv => {
            let mut header = vec![
                "size".to_string(),
                "n".into(),
                "d".into(),
                "rsd_reference".into(),
                "qsd_reference".into(),
            ];
            for a in &algorithms {
                for metric in ["raw_queries", "modeled_cost", "success_rate"] {
                    header.push(format!("{a}_{metric}"));
                }
            }
            let rows: Vec<Vec<String>> = table
                .iter()
                .map(|row| {
                    header
                        .iter()
                        .map(|h| match &row[h.as_str()] {
                            Value::Null => String::new(),
                            Value::Number(x) => x.to_string(),
                            other => other.to_string(),
                        })
                        .collect()
                })
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            print_csv(&header, &rows)?;
        }
    }
    report_violations(&outcome.summary);
    Ok(Outcome::Ok)
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome, Error> {
    let g = load_graph(&args.graph)?;
    let f = load_values(&args.values, &g)?;
    let mut oracle = CountingOracle::new(&f);
    let (ok, certificate) = is_local_min(&g, &mut oracle, args.vertex)?;
    match cli.format {
        Format::Json => {
            let mut value = certificate.to_json();
            value["local_min"] = json!(ok);
            print_json(&value)?;
        }
        Format::Csv => {
            let neighbors: Vec<String> = certificate
                .neighbors
                .iter()
                .map(|k| format!("{}:{}", k.vertex, k.value))
                .collect();
            print_csv(
                &["vertex", "value", "local_min", "neighbors"],
                &[vec![
                    certificate.vertex.to_string(),
                    certificate.key.value.to_string(),
                    ok.to_string(),
                    neighbors.join(" "),
                ]],
            )?;
        }
    }
    Ok(if ok { Outcome::Ok } else { Outcome::NotLocalMin })
}
