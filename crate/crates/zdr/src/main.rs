//! Command-line front end: generate family graphs, enumerate realizations,
//! screen graphs against necessary conditions, check recorded claims, and
//! compare tables.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 the screen rejected
//! the graph, 3 a search was cut short (timeout or limit) and the output is
//! partial, 64 malformed input or bad usage.

use std::io::Read as _;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use zdr::families::{figure, gamma_n, h_mn_family, l_n_family, m_nk};
use zdr::graph::{complete_bipartite, complete_graph, Graph};
use zdr::screen::screen;
use zdr::search::{enumerate_realizations, EnumerateOpts, SearchStatus};
use zdr::semigroup::{are_semigroups_isomorphic, MulTable};
use zdr::verify::{verify_claim, ClaimTag, Outcome, Verdict, VerifyOpts, CLAIMS};

#[derive(Parser)]
#[command(
    name = "zdr",
    version,
    about = "Decide and enumerate the commutative zero-divisor semigroups realizing a graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a graph from one of the built-in families.
    Generate {
        #[command(subcommand)]
        family: Family,
        // Global so it may follow the family, e.g. `generate kn 3 --format dot`.
        #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
        format: Format,
    },
    /// Enumerate the semigroups whose zero-divisor graph is the input.
    Enumerate {
        /// Graph JSON file, or "-" for stdin.
        #[arg(long)]
        graph: String,
        /// Keep every labeled table as its own class.
        #[arg(long)]
        no_dedup: bool,
        /// Stop after this many labeled tables.
        #[arg(long)]
        limit: Option<u64>,
        /// Wall-clock budget in seconds (default: ZDR_TIMEOUT_SECS when set).
        #[arg(long)]
        timeout: Option<f64>,
        /// Worker threads for the search.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Omit wall-clock fields so identical runs emit identical bytes.
        #[arg(long)]
        deterministic: bool,
    },
    /// Test necessary conditions; failure proves the graph unrealizable.
    Screen {
        /// Graph JSON file, or "-" for stdin.
        #[arg(long)]
        graph: String,
    },
    /// Re-check recorded claims by rerunning the search.
    Verify {
        /// Check a single claim by id.
        #[arg(long, conflicts_with = "tag")]
        claim: Option<String>,
        /// Check every claim with this tag: fast, slow, or stretch.
        #[arg(long)]
        tag: Option<ClaimTag>,
        /// Worker threads for each claim's search.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Omit wall-clock fields so identical runs emit identical bytes.
        #[arg(long)]
        deterministic: bool,
    },
    /// Decide whether two multiplication tables are isomorphic.
    Iso {
        /// First table JSON file, or "-" for stdin.
        a: String,
        /// Second table JSON file.
        b: String,
    },
    /// Re-emit a graph file in another format.
    Export {
        /// Graph JSON file, or "-" for stdin.
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Complete graph on n vertices.
    Kn { n: usize },
    /// Complete bipartite graph with parts of size m and n.
    Kmn { m: usize, n: usize },
    /// Graph on the nonempty proper subsets of {1..n}, joining disjoint sets.
    #[command(name = "gamma_n")]
    GammaN { n: usize },
    /// Complete graph on n vertices with k end vertices attached.
    #[command(name = "m_nk")]
    MNk { n: usize, k: usize },
    /// Complete graph on n vertices with a clique block hung on each vertex.
    #[command(name = "l_n")]
    LN {
        n: usize,
        /// Block sizes, one per clique vertex; the first four must be
        /// positive, later ones may be 0 for no block.
        #[arg(required = true, num_args = 1..)]
        sizes: Vec<usize>,
    },
    /// Complete bipartite graph with a clique block hung on each part.
    #[command(name = "h_mn")]
    HMn {
        m: usize,
        n: usize,
        /// Size of the block attached to the first left vertex.
        x: usize,
        /// Size of the block attached to the first right vertex.
        y: usize,
    },
    /// A recorded example graph: 2.4, 3.1, 3.2, 3.3, 3.4, or 3.5.
    Fig { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's default failure code collides with the screen-failure
            // exit code; remap usage errors to 64 (EX_USAGE).
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(64)
        }
    }
}

type CliResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Generate { family, format } => {
            let g = build_family(family)?;
            print_graph(&g, format);
            Ok(0)
        }
        Command::Enumerate {
            graph,
            no_dedup,
            limit,
            timeout,
            threads,
            deterministic,
        } => {
            let g = load_graph(&graph)?;
            let timeout = match timeout {
                Some(secs) => Some(Duration::from_secs_f64(secs)),
                None => env_timeout()?,
            };
            let opts = EnumerateOpts {
                limit,
                timeout,
                dedup: !no_dedup,
                threads,
                ..EnumerateOpts::default()
            };
            eprintln!(
                "searching a {}-vertex graph with {} edges",
                g.vertex_count(),
                g.edge_count()
            );
            let mut report = enumerate_realizations(&g, &opts)?;
            if deterministic {
                report.strip_timing();
            }
            eprintln!(
                "{}: {} labeled tables in {} classes",
                report_status_name(report.status),
                report.labeled_count,
                report.classes.len()
            );
            println!("{}", report.to_json());
            Ok(if report.status == SearchStatus::Exhaustive {
                0
            } else {
                3
            })
        }
        Command::Screen { graph } => {
            let g = load_graph(&graph)?;
            let report = screen(&g)?;
            println!("{}", report.to_json());
            Ok(if report.all_pass() { 0 } else { 2 })
        }
        Command::Verify {
            claim,
            tag,
            threads,
            deterministic,
        } => {
            let opts = VerifyOpts {
                budget_cap: env_timeout()?,
                threads,
            };
            let ids: Vec<&str> = match &claim {
                Some(id) => vec![id.as_str()],
                None => CLAIMS
                    .iter()
                    .filter(|c| tag.is_none_or(|t| c.tag == t))
                    .map(|c| c.id)
                    .collect(),
            };
            let mut verdicts: Vec<Verdict> = Vec::with_capacity(ids.len());
            for id in ids {
                let mut verdict = verify_claim(id, &opts)?;
                eprintln!(
                    "claim {}: {}{}",
                    verdict.claim,
                    outcome_name(verdict.outcome),
                    verdict
                        .wall_time_secs
                        .map(|t| format!(" ({t:.1}s)"))
                        .unwrap_or_default()
                );
                if deterministic {
                    verdict.strip_timing();
                }
                verdicts.push(verdict);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&verdicts).expect("verdicts serialize")
            );
            if verdicts.iter().any(|v| v.outcome == Outcome::Fail) {
                Ok(1)
            } else if verdicts.iter().any(|v| v.outcome == Outcome::Inconclusive) {
                Ok(3)
            } else {
                Ok(0)
            }
        }
        Command::Iso { a, b } => {
            let ta = load_table(&a)?;
            let tb = load_table(&b)?;
            let result = match are_semigroups_isomorphic(&ta, &tb) {
                Some(perm) => {
                    let mut mapping = serde_json::Map::new();
                    mapping.insert("0".into(), serde_json::Value::from("0"));
                    for i in 0..ta.rank() {
                        mapping.insert(
                            ta.elements[i + 1].clone(),
                            serde_json::Value::from(tb.elements[perm.apply(i) + 1].clone()),
                        );
                    }
                    serde_json::json!({ "isomorphic": true, "mapping": mapping })
                }
                None => serde_json::json!({ "isomorphic": false }),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&result).expect("iso result serializes")
            );
            Ok(0)
        }
        Command::Export { graph, format } => {
            let g = load_graph(&graph)?;
            print_graph(&g, format);
            Ok(0)
        }
    }
}

fn build_family(family: Family) -> CliResult<Graph> {
    let g = match family {
        Family::Kn { n } => complete_graph(n)?,
        Family::Kmn { m, n } => complete_bipartite(m, n)?,
        Family::GammaN { n } => gamma_n(n)?,
        Family::MNk { n, k } => m_nk(n, k)?,
        Family::LN { n, sizes } => {
            let blocks = sizes
                .iter()
                .map(|&s| block_graph(s))
                .collect::<Result<Vec<Graph>, zdr::Error>>()?;
            l_n_family(n, &blocks)?
        }
        Family::HMn { m, n, x, y } => h_mn_family(m, n, &block_graph(x)?, &block_graph(y)?)?,
        Family::Fig { name } => figure(&name)?,
    };
    Ok(g)
}

/// A clique block of the given size; 0 means no block.
fn block_graph(size: usize) -> zdr::Result<Graph> {
    if size == 0 {
        Graph::new::<&str>(&[], &[])
    } else {
        complete_graph(size)
    }
}

fn print_graph(g: &Graph, format: Format) {
    match format {
        Format::Json => println!("{}", g.to_json()),
        Format::Dot => print!("{}", g.to_dot()),
        Format::Text => print!("{}", g.to_text()),
    }
}

fn load_graph(path: &str) -> CliResult<Graph> {
    Ok(Graph::from_json(&read_input(path)?)?)
}

fn load_table(path: &str) -> CliResult<MulTable> {
    Ok(MulTable::from_json(&read_input(path)?)?)
}

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?)
    }
}

fn env_timeout() -> CliResult<Option<Duration>> {
    match std::env::var("ZDR_TIMEOUT_SECS") {
        Ok(raw) => {
            let secs: f64 = raw
                .parse()
                .map_err(|_| format!("ZDR_TIMEOUT_SECS must be a number, got {raw:?}"))?;
            if !secs.is_finite() || secs < 0.0 {
                return Err(format!("ZDR_TIMEOUT_SECS must be non-negative, got {raw}").into());
            }
            Ok(Some(Duration::from_secs_f64(secs)))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn report_status_name(status: SearchStatus) -> &'static str {
    match status {
        SearchStatus::Exhaustive => "exhaustive",
        SearchStatus::LimitReached => "limit reached",
        SearchStatus::Timeout => "timed out",
    }
}

fn outcome_name(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Pass => "PASS",
        Outcome::Fail => "FAIL",
        Outcome::Inconclusive => "INCONCLUSIVE",
    }
}
