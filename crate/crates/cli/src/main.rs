mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tdcut::{
    brute_force_solve, greedy_decomposition, make_objective, parse_graph, parse_rational, parse_td,
    prepare, random_instance, solve, validate, InstanceParams, Mode, NodeKind, Objective, Optimum,
    Problem, TreeDecomposition, WeightedDigraph,
};

use report::{Format, Report, WidthSource};

#[derive(Parser)]
#[command(name = "tdcut", version, about = "Exact cut problems on graphs of bounded treewidth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a cut problem exactly.
    Solve(SolveArgs),
    /// Check that a `.td` file is a tree decomposition of the graph.
    Validate(InputArgs),
    /// Print the nice tree decomposition the solver would use.
    Nicify(InputArgs),
    /// Generate a random instance with a known decomposition.
    Gen(GenArgs),
    /// Time the solver over a grid of random instances and print CSV.
    Bench(BenchArgs),
    /// Solve by exhaustive enumeration (n at most 22).
    Oracle(OracleArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file: `p <n> <m>` header and `e <u> <v> <w>` lines.
    #[arg(long)]
    graph: PathBuf,
    /// Read every edge line as an undirected edge.
    #[arg(long, conflicts_with = "directed")]
    undirected: bool,
    /// Read every edge line as an arc u -> v (the default).
    #[arg(long)]
    directed: bool,
}

impl GraphArgs {
    fn mode(&self) -> Mode {
        if self.undirected {
            Mode::Undirected
        } else {
            Mode::Directed
        }
    }

    fn load(&self) -> Result<WeightedDigraph> {
        let text = read(&self.graph)?;
        let g = parse_graph(&text, self.mode())
            .with_context(|| format!("parsing {}", self.graph.display()))?;
        if g.self_loops_dropped() > 0 {
            eprintln!("note: dropped {} self-loop(s)", g.self_loops_dropped());
        }
        Ok(g)
    }
}

#[derive(Args)]
struct InputArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Tree decomposition in `.td` form; a min-degree heuristic is used when absent.
    #[arg(long)]
    td: Option<PathBuf>,
    /// 1-indexed bag to root the decomposition at (default: bag 1).
    #[arg(long)]
    root: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(long)]
    problem: Problem,
    /// Balance parameter `p/q` in (0, 1/2]; balanced-min-cut only.
    #[arg(long)]
    beta: Option<String>,
}

impl ProblemArgs {
    fn objective(&self, n: usize) -> Result<Objective> {
        let beta = match &self.beta {
            Some(s) => Some(parse_rational(s).with_context(|| format!("bad --beta value `{s}`"))?),
            None => None,
        };
        Ok(make_objective(self.problem, n, beta)?)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    problem: ProblemArgs,
    /// Also report an optimal vertex set.
    #[arg(long)]
    witness: bool,
    /// Cross-check the optimum against exhaustive enumeration.
    #[arg(long)]
    oracle_check: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    problem: ProblemArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Upper bound on the decomposition width.
    #[arg(long, default_value_t = 3)]
    width: usize,
    /// Probability that a pair sharing a bag is joined.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    min_weight: i64,
    #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
    max_weight: i64,
    /// Generate arcs instead of undirected edges.
    #[arg(long)]
    directed: bool,
    /// Write the graph here instead of standard output.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Write the decomposition here instead of standard output.
    #[arg(long)]
    td_out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', default_value = "100,200,400,800")]
    sizes: Vec<usize>,
    /// Comma-separated widths.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
    widths: Vec<usize>,
    /// Instances per grid point.
    #[arg(long, default_value_t = 3)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "max-bisection")]
    problem: Problem,
    #[arg(long, value_enum, default_value_t = BenchFormat::Csv)]
    format: BenchFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFormat {
    Csv,
}

/// Exit statuses.
const OK: u8 = 0;
const FAILURE: u8 = 1;
const INFEASIBLE: u8 = 2;
const ORACLE_MISMATCH: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => run_solve(&a),
        Command::Validate(a) => run_validate(&a),
        Command::Nicify(a) => run_nicify(&a),
        Command::Gen(a) => run_gen(&a),
        Command::Bench(a) => run_bench(&a),
        Command::Oracle(a) => run_oracle(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(FAILURE)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_td(input: &InputArgs, g: &WeightedDigraph) -> Result<(TreeDecomposition, WidthSource)> {
    let (td, source) = match &input.td {
        Some(path) => {
            let parsed = parse_td(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            if parsed.n != g.n() {
                bail!("decomposition is for {} vertices but the graph has {}", parsed.n, g.n());
            }
            (parsed.td, WidthSource::Given)
        }
        None => (greedy_decomposition(g), WidthSource::Heuristic),
    };
    match input.root {
        None => Ok((td, source)),
        Some(id) if (1..=td.node_count()).contains(&id) => Ok((td.with_root(id - 1), source)),
        Some(id) => bail!("--root {id} is not a bag id (1..={})", td.node_count()),
    }
}

fn run_solve(a: &SolveArgs) -> Result<u8> {
    let g = a.input.graph.load()?;
    let obj = a.problem.objective(g.n())?;
    let (td, source) = load_td(&a.input, &g)?;
    let nd = prepare(&g, &td)?;
    let r = solve(&g, &nd, &obj, a.witness)?;

    let mut code = if r.optimum == Optimum::Infeasible { INFEASIBLE } else { OK };
    let mut oracle = None;
    if a.oracle_check {
        let o = brute_force_solve(&g, &obj)?;
        let agrees = o.optimum == r.optimum;
        if !agrees {
            eprintln!("oracle mismatch: solver {} vs brute force {}", r.optimum, o.optimum);
            code = ORACLE_MISMATCH;
        }
        oracle = Some((o.optimum, agrees));
    }
    let report = Report::new(&g, &r, source, oracle);
    print!("{}", report.render(a.input.format));
    Ok(code)
}

fn run_validate(a: &InputArgs) -> Result<u8> {
    let g = a.graph.load()?;
    let Some(_) = &a.td else { bail!("validate needs --td") };
    let (td, _) = load_td(a, &g)?;
    match validate(&g, &td) {
        Ok(()) => {
            match a.format {
                Format::Json => println!("{}", serde_json::json!({ "valid": true, "width": td.width() })),
                Format::Text => println!("ok (width {})", td.width()),
            }
            Ok(OK)
        }
        Err(v) => {
            match a.format {
                Format::Json => println!("{}", serde_json::json!({ "valid": false, "violation": v.to_string() })),
                Format::Text => println!("invalid: {v}"),
            }
            Ok(FAILURE)
        }
    }
}

fn run_nicify(a: &InputArgs) -> Result<u8> {
    let g = a.graph.load()?;
    let (td, source) = load_td(a, &g)?;
    let nd = prepare(&g, &td)?;
    let names: Vec<String> = nd
        .nodes()
        .iter()
        .map(|node| match node.kind {
            NodeKind::Leaf => "leaf".to_string(),
            NodeKind::Introduce(v) => format!("introduce {}", v + 1),
            NodeKind::Forget(v) => format!("forget {}", v + 1),
            NodeKind::Join => "join".to_string(),
        })
        .collect();
    let [leaf, intro, forget, join] = nd.kind_counts();
    println!("c nice decomposition ({} width), root is bag {}", source.as_str(), nd.len());
    println!("c {leaf} leaf, {intro} introduce, {forget} forget, {join} join");
    print!("{}", tdcut::treedecomp::write_td(&nd.to_tree_decomposition(), g.n(), Some(&names)));
    Ok(OK)
}

/// Undirected instances list each edge once.
fn graph_text(g: &WeightedDigraph, directed: bool) -> String {
    if directed {
        return format!("c directed\n{}", g.to_directed_text());
    }
    let edges: Vec<_> = g.arcs().iter().filter(|(u, v, _)| u < v).collect();
    let mut out = format!("c undirected\np {} {}\n", g.n(), edges.len());
    for (u, v, w) in edges {
        out.push_str(&format!("e {} {} {}\n", u + 1, v + 1, w));
    }
    out
}

fn run_gen(a: &GenArgs) -> Result<u8> {
    if a.n == 0 || a.width >= a.n {
        bail!("need 0 <= width < n");
    }
    if a.min_weight > a.max_weight {
        bail!("--min-weight is above --max-weight");
    }
    let params = InstanceParams {
        n: a.n,
        max_width: a.width,
        arc_density: a.density.clamp(0.0, 1.0),
        weight_range: (a.min_weight, a.max_weight),
        directed: a.directed,
    };
    let (g, td) = random_instance(a.seed, &params);
    let graph = graph_text(&g, a.directed);
    let td = format!("c seed {}\n{}", a.seed, tdcut::treedecomp::write_td(&td, g.n(), None));
    match &a.graph_out {
        Some(p) => fs::write(p, graph).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{graph}"),
    }
    match &a.td_out {
        Some(p) => fs::write(p, td).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{td}"),
    }
    Ok(OK)
}

fn run_bench(a: &BenchArgs) -> Result<u8> {
    let BenchFormat::Csv = a.format;
    println!("n,t,seed,nodes,join_pair_sum,elapsed_ms");
    for &n in &a.sizes {
        for &t in &a.widths {
            if t >= n {
                eprintln!("skipping n={n} t={t}: width must be below n");
                continue;
            }
            for s in 0..a.seeds {
                let seed = a.seed + s;
                let params =
                    InstanceParams { n, max_width: t, arc_density: 0.6, weight_range: (0, 9), directed: false };
                let (g, td) = random_instance(seed, &params);
                let obj = make_objective(a.problem, n, None)?;
                let start = Instant::now();
                let nd = prepare(&g, &td)?;
                let r = solve(&g, &nd, &obj, false)?;
                let elapsed = start.elapsed();
                println!(
                    "{n},{},{seed},{},{},{:.3}",
                    nd.width(),
                    nd.len(),
                    r.stats.join_pair_sum,
                    elapsed.as_secs_f64() * 1e3
                );
            }
        }
    }
    Ok(OK)
}

fn run_oracle(a: &OracleArgs) -> Result<u8> {
    let g = a.graph.load()?;
    let obj = a.problem.objective(g.n())?;
    let o = brute_force_solve(&g, &obj)?;
    let witnesses: Vec<Vec<usize>> =
        o.witnesses.iter().map(|w| w.iter().map(|v| v + 1).collect()).collect();
    println!(
        "{}",
        serde_json::json!({
            "problem": obj.name(),
            "n": g.n(),
            "value": o.optimum.to_string(),
            "witnesses": witnesses,
        })
    );
    Ok(if o.optimum == Optimum::Infeasible { INFEASIBLE } else { OK })
}
