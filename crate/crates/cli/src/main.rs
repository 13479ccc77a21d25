//! `johnson`: generate graphs, compute automorphism groups and verify the
//! automorphism groups of Johnson graphs.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! error, 3 vertex cap or time limit exceeded.

mod family;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use johnson_core::combinatorics::{binomial, intersection_size};
use johnson_core::formats::{parse_graph, to_dot, to_edge_list, to_graph6};
use johnson_core::graph::{distance_partition, johnson_graph, Graph, DEFAULT_VERTEX_CAP};
use johnson_core::schema::OUTPUT_SCHEMA;
use johnson_core::search::{automorphism_group_capped, check_isomorphism, find_isomorphism_capped};
use johnson_core::theory::{
    transitivity_profile, valid_parameters, verify_johnson_aut_with, Status, TransitivityProfile,
    VerificationReport, VerifyOptions, DEFAULT_SEED, TOOL_VERSION,
};
use johnson_core::Error;

const ASSERTION_FAILED: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "johnson",
    version,
    about = "Johnson graphs and their automorphism groups"
)]
struct Cli {
    /// Largest vertex count any command will build or read.
    #[arg(long, global = true, env = "JOHNSON_CAP", default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Dot,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph: johnson N M, kneser N M, complete N, bipartite S T,
    /// cycle N, path N, line-of FAMILY..., complement FAMILY...
    Gen {
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Automorphism group of a graph (file, `-` for stdin, or `johnson:5:2`).
    Aut { graph: String },
    /// Distance layers from a source vertex.
    Dist {
        graph: String,
        #[arg(long, default_value_t = 0)]
        source: usize,
    },
    /// Test two graphs for isomorphism.
    Iso { g: String, h: String },
    /// Verify `Aut(J(n, m))` for every valid pair in the given ranges.
    Verify {
        /// `A`, or an inclusive range `A..B`.
        #[arg(long)]
        n: String,
        #[arg(long)]
        m: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Wall-clock limit per pair, in seconds.
        #[arg(long, default_value_t = 60)]
        time_limit: u64,
        /// Run the per-vertex checks from every vertex.
        #[arg(long)]
        all_sources: bool,
    },
    /// Print the JSON schema of all outputs.
    Schema,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => RESOURCE,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

#[derive(Serialize)]
struct AutOutput {
    tool_version: &'static str,
    vertex_count: usize,
    edge_count: usize,
    order: String,
    generators: Vec<String>,
    orbit_sizes: Vec<usize>,
    transitivity: TransitivityProfile,
}

#[derive(Serialize)]
struct IntersectionCheck {
    n: usize,
    m: usize,
    pairs_checked: usize,
    agrees: bool,
}

#[derive(Serialize)]
struct DistOutput {
    tool_version: &'static str,
    source: usize,
    vertex_count: usize,
    layer_sizes: Vec<usize>,
    unreachable: usize,
    intersection_check: Option<IntersectionCheck>,
}

#[derive(Serialize)]
struct IsoOutput {
    tool_version: &'static str,
    isomorphic: bool,
    witness: Option<String>,
}

fn load(arg: &str, cap: usize) -> Result<Graph, Failure> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        Some(s)
    } else if std::path::Path::new(arg).is_file() {
        Some(std::fs::read_to_string(arg).map_err(|e| usage(format!("reading {arg}: {e}")))?)
    } else {
        None
    };
    let g = match text {
        Some(t) => parse_graph(&t)?,
        None if arg.contains(':') => family::build(&[arg.to_owned()], cap)?,
        None => {
            return Err(usage(format!(
                "{arg:?} is neither a file nor a family like johnson:5:2"
            )))
        }
    };
    if g.vertex_count() > cap {
        return Err(Error::CapExceeded {
            vertices: g.vertex_count() as u128,
            cap,
        }
        .into());
    }
    Ok(g)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn parse_range(text: &str, flag: &str) -> Result<(usize, usize), Failure> {
    let bad = || usage(format!("--{flag} expects A or A..B, got {text:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(usage(format!("--{flag} range {text:?} is empty")));
    }
    Ok((a, b))
}

fn intersection_check(g: &Graph) -> Option<IntersectionCheck> {
    let labels = g.labels()?;
    let first = labels.first()?;
    let (n, m) = (first.ground(), first.size());
    if labels.iter().any(|l| l.size() != m) || !johnson_graph(n, m).ok()?.same_edges(g) {
        return None;
    }
    let mut agrees = true;
    for u in 0..g.vertex_count() {
        let part = distance_partition(g, u).ok()?;
        for v in 0..g.vertex_count() {
            let by_sets = m - intersection_size(&labels[u], &labels[v]).ok()?;
            agrees &= part.dist[v] == Some(by_sets);
        }
    }
    Some(IntersectionCheck {
        n,
        m,
        pairs_checked: g.vertex_count() * g.vertex_count(),
        agrees,
    })
}

fn verify(
    n_range: (usize, usize),
    m_range: (usize, usize),
    opts: VerifyOptions,
    limit: Duration,
) -> Result<(Vec<VerificationReport>, u8), Failure> {
    let single = n_range.0 == n_range.1 && m_range.0 == m_range.1;
    let mut pairs = Vec::new();
    for n in n_range.0..=n_range.1 {
        for m in m_range.0..=m_range.1 {
            if valid_parameters(n, m) {
                pairs.push((n, m));
            } else if single {
                return Err(usage(format!("J({n},{m}) is outside 2 <= m <= n/2")));
            } else {
                eprintln!("skipping J({n},{m}): outside 2 <= m <= n/2");
            }
        }
    }
    if pairs.is_empty() {
        return Err(usage("no valid (n, m) pair in the requested ranges"));
    }
    let over: Vec<String> = pairs
        .iter()
        .filter(|&&(n, m)| binomial(n, m).map_or(true, |c| c > opts.cap as u64))
        .map(|&(n, m)| format!("J({n},{m})"))
        .collect();
    if !over.is_empty() {
        return Err(Failure {
            code: RESOURCE,
            message: format!("vertex cap {} exceeded by {}", opts.cap, over.join(", ")),
        });
    }
    let mut reports = Vec::new();
    let mut code = 0;
    for (n, m) in pairs {
        let (tx, rx) = mpsc::channel();
        let worker_opts = opts.clone();
        let start = Instant::now();
        std::thread::spawn(move || {
            let _ = tx.send(verify_johnson_aut_with(n, m, &worker_opts));
        });
        let report = match rx.recv_timeout(limit) {
            Ok(r) => r?,
            Err(_) => {
                eprintln!("J({n},{m}) exceeded {} s", limit.as_secs());
                VerificationReport::timed_out(n, m, opts.seed, start.elapsed().as_millis() as u64)
            }
        };
        code = match report.status {
            Status::Pass => code,
            Status::Fail => ASSERTION_FAILED,
            Status::Timeout if code == 0 => RESOURCE,
            Status::Timeout => code,
        };
        reports.push(report);
    }
    Ok((reports, code))
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let cap = cli.cap;
    match cli.command {
        Command::Gen { family, format } => {
            let g = family::build(&family, cap)?;
            let text = match format {
                Format::Graph6 => to_graph6(&g)? + "\n",
                Format::Dot => to_dot(&g),
                Format::Edgelist => to_edge_list(&g),
            };
            Ok((text, 0))
        }
        Command::Aut { graph } => {
            let g = load(&graph, cap)?;
            let aut = automorphism_group_capped(&g, cap)?;
            let out = AutOutput {
                tool_version: TOOL_VERSION,
                vertex_count: g.vertex_count(),
                edge_count: g.edge_count(),
                order: aut.order().to_string(),
                generators: aut.generators().iter().map(|p| p.to_string()).collect(),
                orbit_sizes: aut.orbits().iter().map(Vec::len).collect(),
                transitivity: transitivity_profile(&g, &aut)?,
            };
            Ok((json(&out), 0))
        }
        Command::Dist { graph, source } => {
            let g = load(&graph, cap)?;
            let part = distance_partition(&g, source)?;
            let out = DistOutput {
                tool_version: TOOL_VERSION,
                source,
                vertex_count: g.vertex_count(),
                layer_sizes: part.layer_sizes(),
                unreachable: part.unreachable().len(),
                intersection_check: intersection_check(&g),
            };
            let code = match &out.intersection_check {
                Some(c) if !c.agrees => ASSERTION_FAILED,
                _ => 0,
            };
            Ok((json(&out), code))
        }
        Command::Iso { g, h } => {
            let (g, h) = (load(&g, cap)?, load(&h, cap)?);
            let witness = find_isomorphism_capped(&g, &h, cap)?;
            if let Some(p) = &witness {
                if !check_isomorphism(&g, &h, p) {
                    return Err(Failure {
                        code: ASSERTION_FAILED,
                        message: "isomorphism witness failed verification".into(),
                    });
                }
            }
            let out = IsoOutput {
                tool_version: TOOL_VERSION,
                isomorphic: witness.is_some(),
                witness: witness.map(|p| p.to_string()),
            };
            Ok((json(&out), 0))
        }
        Command::Verify {
            n,
            m,
            seed,
            time_limit,
            all_sources,
        } => {
            let opts = VerifyOptions {
                seed,
                all_sources,
                cap,
                ..VerifyOptions::default()
            };
            let (reports, code) = verify(
                parse_range(&n, "n")?,
                parse_range(&m, "m")?,
                opts,
                Duration::from_secs(time_limit),
            )?;
            Ok((json(&reports), code))
        }
        Command::Schema => Ok((OUTPUT_SCHEMA.to_owned(), 0)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, code)) => {
            let written = match &out {
                Some(path) => std::fs::write(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("johnson: writing output: {e}");
                return ExitCode::from(USAGE);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("johnson: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
