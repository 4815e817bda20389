//! Command-line frontend: load graphs, run analyses, construct graphs,
//! reproduce the registry facts, emit JSON (default) or plain tables.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 domain precondition
//! failure (including failed registry checks for `paperlab`).

use crate::error::Result;
use crate::graphs::{
    banana, banana_chain, banana_closed, complete, complete_bipartite, cone,
    graphical_parallel_connection, graphical_two_sum, one_extension, v_replacement, x_replacement,
    zero_extension, Graph, Vertex,
};
use crate::matroid::{balanced_report, closure, components, kfold_detect, principal_partition};
use crate::paperlab::{check_names, run_all, run_check, CheckContext, CheckResult};
use crate::rigidity::{Backend, OracleParams, RankOracle, DEFAULT_SEED};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "rigikit",
    version,
    about = "Exact generic rigidity matroid toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Args, Clone)]
struct OracleArgs {
    /// Dimension of the rigidity matroid.
    #[arg(long = "dim", short = 'd')]
    dim: usize,
    /// Seed for the pseudo-generic configurations.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Rank backend.
    #[arg(long, value_enum, default_value_t = BackendArg::Field)]
    backend: BackendArg,
    /// Re-sample the configuration this many times and take the maximum rank.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Output format.
    #[arg(long = "out", value_enum, default_value_t = OutputFormat::Json)]
    out: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum BackendArg {
    Field,
    Rational,
    Graphic,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Field => Backend::Field,
            BackendArg::Rational => Backend::Rational,
            BackendArg::Graphic => Backend::Graphic,
        }
    }
}

impl OracleArgs {
    fn params(&self) -> OracleParams {
        OracleParams::new(self.dim)
            .backend(self.backend.into())
            .seed(self.seed)
            .trials(self.trials)
    }

    fn oracle_for(&self, g: &Graph) -> RankOracle {
        self.params().oracle_for(g)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Rank of the graph's edge set.
    Rank {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Graph file (JSON or edge-list text); `-` or absent reads stdin.
        input: Option<PathBuf>,
    },
    /// Full k-fold circuit report: fold, partition, technicolour set, balance.
    Analyze {
        #[command(flatten)]
        oracle: OracleArgs,
        input: Option<PathBuf>,
    },
    /// Principal partition of a k-fold circuit.
    Partition {
        #[command(flatten)]
        oracle: OracleArgs,
        input: Option<PathBuf>,
    },
    /// Balancedness data of a k-fold circuit.
    Balanced {
        #[command(flatten)]
        oracle: OracleArgs,
        input: Option<PathBuf>,
    },
    /// Matroid components of the graph's edge set.
    Components {
        #[command(flatten)]
        oracle: OracleArgs,
        input: Option<PathBuf>,
    },
    /// Closure of the graph's edge set inside the complete graph.
    Closure {
        #[command(flatten)]
        oracle: OracleArgs,
        input: Option<PathBuf>,
    },
    /// Emit a constructed graph as canonical JSON.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Run registry checks; JSON lines, one result per check.
    Paperlab {
        /// Check names; use --all for the whole registry.
        names: Vec<String>,
        #[arg(long)]
        all: bool,
        /// List registered check names and exit.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BackendArg::Field)]
        backend: BackendArg,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long = "out", value_enum, default_value_t = OutputFormat::Json)]
        out: OutputFormat,
        /// Also write a JUnit-style XML report.
        #[arg(long)]
        junit: Option<PathBuf>,
    },
}

fn parse_edge_arg(text: &str) -> std::result::Result<(Vertex, Vertex), String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected u,v got {text:?}"));
    }
    let u = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad vertex {:?}", parts[0]))?;
    let v = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad vertex {:?}", parts[1]))?;
    Ok((u, v))
}

fn parse_vertex_list(text: &str) -> std::result::Result<Vec<Vertex>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad vertex {t:?}")))
        .collect()
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// Complete bipartite graph K_{m,n}.
    Bipartite {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Cone of the input graph over a new vertex.
    Cone {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Graphical 2-sum of two graphs along the given edges.
    Twosum {
        #[arg(long = "in1")]
        input1: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
        #[arg(long, value_parser = parse_edge_arg)]
        e1: (Vertex, Vertex),
        #[arg(long, value_parser = parse_edge_arg)]
        e2: (Vertex, Vertex),
    },
    /// Graphical parallel connection of two graphs along the given edges.
    Parallel {
        #[arg(long = "in1")]
        input1: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
        #[arg(long, value_parser = parse_edge_arg)]
        e1: (Vertex, Vertex),
        #[arg(long, value_parser = parse_edge_arg)]
        e2: (Vertex, Vertex),
    },
    /// Two complete blocks sharing a clique, least shared edge removed.
    Banana {
        #[arg(long)]
        d: usize,
    },
    /// The banana with the shared edge added back.
    BananaClosed {
        #[arg(long)]
        d: usize,
    },
    /// Iterated 2-sum of complete blocks along the shared edge.
    BananaChain {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        copies: usize,
    },
    /// 0-extension: new vertex joined to the listed vertices.
    ZeroExt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse_vertex_list)]
        neighbors: Vec<Vertex>,
    },
    /// 1-extension: split the edge and join a new vertex to the listed vertices.
    OneExt {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse_edge_arg)]
        edge: (Vertex, Vertex),
        #[arg(long, value_parser = parse_vertex_list)]
        neighbors: Vec<Vertex>,
    },
    /// X-replacement on two non-adjacent edges.
    XReplace {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse_edge_arg)]
        e1: (Vertex, Vertex),
        #[arg(long, value_parser = parse_edge_arg)]
        e2: (Vertex, Vertex),
        #[arg(long, value_parser = parse_vertex_list, default_value = "")]
        extra: Vec<Vertex>,
    },
    /// V-replacement on two adjacent edges.
    VReplace {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse_edge_arg)]
        e1: (Vertex, Vertex),
        #[arg(long, value_parser = parse_edge_arg)]
        e2: (Vertex, Vertex),
        #[arg(long, value_parser = parse_vertex_list, default_value = "")]
        extra: Vec<Vertex>,
    },
}

fn load_graph(path: &Option<PathBuf>) -> Result<Graph> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    Graph::parse(&text)
}

fn load_graph_file(path: &PathBuf) -> Result<Graph> {
    Graph::parse(&std::fs::read_to_string(path)?)
}

fn flat_cells(value: &serde_json::Value, prefix: &str, rows: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, inner) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flat_cells(inner, &path, rows);
            }
        }
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn emit(value: &serde_json::Value, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{value}"),
        OutputFormat::Table => {
            let mut rows = Vec::new();
            flat_cells(value, "", &mut rows);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (key, val) in rows {
                println!("{key:width$}  {val}");
            }
        }
    }
}

fn analysis_value(oracle: &RankOracle, g: &Graph, what: &str) -> Result<serde_json::Value> {
    match what {
        "rank" => Ok(serde_json::json!({
            "n": g.n(),
            "edges": g.edge_count(),
            "dim": oracle.dim(),
            "backend": oracle.backend().name(),
            "rank": oracle.rank_graph(g),
            "independent": oracle.is_independent(g.edges()),
            "rigid": oracle.is_rigid_graph(g),
            "circuit": oracle.is_circuit(g.edges()),
        })),
        "partition" => {
            let parts = principal_partition(oracle, g.edges())?;
            Ok(serde_json::json!({ "k": parts.k, "parts": parts.parts }))
        }
        "analyze" | "balanced" => {
            let report = balanced_report(oracle, g.edges())?;
            Ok(serde_json::to_value(&report).expect("report serializes"))
        }
        "components" => {
            let comps = components(oracle, g.edges());
            Ok(serde_json::json!({ "count": comps.len(), "components": comps }))
        }
        "closure" => {
            let closed = closure(oracle, g.edges(), None);
            let (cyclic, k) = kfold_detect(oracle, g.edges());
            Ok(serde_json::json!({
                "closure": closed,
                "added": closed.len() - g.edge_count(),
                "cyclic": cyclic,
                "k": k,
            }))
        }
        other => unreachable!("unknown analysis {other}"),
    }
}

fn junit_report(results: &[CheckResult]) -> String {
    let failures = results.iter().filter(|r| !r.passed).count();
    let mut xml = String::new();
    xml.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    xml.push_str(&format!(
        "<testsuite name=\"paperlab\" tests=\"{}\" failures=\"{failures}\">\n",
        results.len()
    ));
    for r in results {
        xml.push_str(&format!(
            "  <testcase name=\"{}\" time=\"{:.3}\"",
            r.name,
            r.elapsed_ms as f64 / 1000.0
        ));
        if r.passed {
            xml.push_str("/>\n");
        } else {
            xml.push_str(&format!(
                ">\n    <failure message=\"expected {} observed {}\"/>\n  </testcase>\n",
                xml_escape(&r.expected.to_string()),
                xml_escape(&r.observed.to_string())
            ));
        }
    }
    xml.push_str("</testsuite>\n");
    xml
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn run_analysis(oracle_args: &OracleArgs, input: &Option<PathBuf>, what: &str) -> Result<()> {
    let g = load_graph(input)?;
    let oracle = oracle_args.oracle_for(&g);
    let value = analysis_value(&oracle, &g, what)?;
    emit(&value, oracle_args.out);
    Ok(())
}

fn run_construct(kind: &ConstructKind) -> Result<()> {
    let g = match kind {
        ConstructKind::Complete { n } => complete(*n)?,
        ConstructKind::Bipartite { m, n } => complete_bipartite(*m, *n)?,
        ConstructKind::Cone { input } => cone(&load_graph_file(input)?),
        ConstructKind::Twosum {
            input1,
            input2,
            e1,
            e2,
        } => graphical_two_sum(
            &load_graph_file(input1)?,
            &load_graph_file(input2)?,
            *e1,
            *e2,
        )?,
        ConstructKind::Parallel {
            input1,
            input2,
            e1,
            e2,
        } => graphical_parallel_connection(
            &load_graph_file(input1)?,
            &load_graph_file(input2)?,
            *e1,
            *e2,
        )?,
        ConstructKind::Banana { d } => banana(*d)?,
        ConstructKind::BananaClosed { d } => banana_closed(*d)?,
        ConstructKind::BananaChain { d, copies } => banana_chain(*d, *copies)?,
        ConstructKind::ZeroExt { input, neighbors } => {
            zero_extension(&load_graph_file(input)?, neighbors)?
        }
        ConstructKind::OneExt {
            input,
            edge,
            neighbors,
        } => one_extension(&load_graph_file(input)?, *edge, neighbors)?,
        ConstructKind::XReplace {
            input,
            e1,
            e2,
            extra,
        } => x_replacement(&load_graph_file(input)?, *e1, *e2, extra)?,
        ConstructKind::VReplace {
            input,
            e1,
            e2,
            extra,
        } => v_replacement(&load_graph_file(input)?, *e1, *e2, extra)?,
    };
    println!("{}", g.to_json());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_paperlab(
    names: &[String],
    all: bool,
    list: bool,
    seed: u64,
    backend: BackendArg,
    trials: usize,
    out: OutputFormat,
    junit: &Option<PathBuf>,
) -> Result<i32> {
    if list {
        for name in check_names() {
            println!("{name}");
        }
        return Ok(0);
    }
    let ctx = CheckContext {
        seed,
        backend: backend.into(),
        trials,
    };
    let results = if all || names.is_empty() {
        run_all(&ctx)?
    } else {
        names
            .iter()
            .map(|n| run_check(n, &ctx))
            .collect::<Result<Vec<_>>>()?
    };
    for r in &results {
        match out {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string(r).expect("result serializes"))
            }
            OutputFormat::Table => println!(
                "{:32} {:4} {:>8} ms",
                r.name,
                if r.passed { "ok" } else { "FAIL" },
                r.elapsed_ms
            ),
        }
    }
    if let Some(path) = junit {
        std::fs::write(path, junit_report(&results))?;
    }
    Ok(if results.iter().all(|r| r.passed) {
        0
    } else {
        2
    })
}

/// Parses arguments from the environment and runs; returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome: Result<i32> = match &cli.command {
        Command::Rank { oracle, input } => run_analysis(oracle, input, "rank").map(|_| 0),
        Command::Analyze { oracle, input } => run_analysis(oracle, input, "analyze").map(|_| 0),
        Command::Partition { oracle, input } => run_analysis(oracle, input, "partition").map(|_| 0),
        Command::Balanced { oracle, input } => run_analysis(oracle, input, "balanced").map(|_| 0),
        Command::Components { oracle, input } => {
            run_analysis(oracle, input, "components").map(|_| 0)
        }
        Command::Closure { oracle, input } => run_analysis(oracle, input, "closure").map(|_| 0),
        Command::Construct { kind } => run_construct(kind).map(|_| 0),
        Command::Paperlab {
            names,
            all,
            list,
            seed,
            backend,
            trials,
            out,
            junit,
        } => run_paperlab(names, *all, *list, *seed, *backend, *trials, *out, junit),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("rigikit: {err}");
            if err.is_domain() {
                2
            } else {
                1
            }
        }
    }
}
