//! `cubic-tsp`: solve, verify, brute-force, benchmark and generate cubic
//! 3-edge-connected instances.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 invalid input.

mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_tsp::generate::generate;
use cubic_tsp::io::{
    emit_edge_list, emit_json, emit_solution, parse_graph, parse_solution, subgraph_from_file,
    to_dot,
};
use cubic_tsp::oracle::{opt_eulerian, verify, DEFAULT_CAP};
use cubic_tsp::{solve, Error, Multigraph};

#[derive(Parser)]
#[command(
    name = "cubic-tsp",
    version,
    about = "Short TSP tours on cubic 3-edge-connected graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a tour and print its length against the bound.
    Solve {
        #[command(flatten)]
        input: Input,
        /// Print the solution JSON (with certificate) to stdout.
        #[arg(long)]
        json: bool,
        /// Write the solution JSON to a file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write a DOT drawing of the solution.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Check a solution file against a graph.
    Verify { graph: PathBuf, solution: PathBuf },
    /// Exact optimum by exhaustive search (small graphs only).
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Largest vertex count accepted.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Compare against this solution instead of solving.
        #[arg(long, value_name = "FILE")]
        solution: Option<PathBuf>,
    },
    /// Solve many generated instances and report per-instance statistics.
    Bench(bench::BenchArgs),
    /// Print a named graph or a random instance.
    Generate {
        /// A name (k4, prism, petersen, moebius-kantor, k33, cube) or
        /// `random:n=<even>,seed=<s>`.
        recipe: String,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file (JSON or edge list); `-` reads stdin.
    #[arg(required_unless_present = "gen", conflicts_with = "gen")]
    graph: Option<PathBuf>,
    /// Generate the graph instead of reading it.
    #[arg(long, value_name = "RECIPE")]
    gen: Option<String>,
    /// Reject graphs that are not cubic and 3-edge-connected.
    #[arg(long)]
    require_cubic_3ec: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Edges,
}

/// Errors caused by the input rather than the program.
#[derive(Debug)]
struct InvalidInput(anyhow::Error);

impl std::fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InvalidInput {}

pub(crate) fn invalid(e: impl Into<anyhow::Error>) -> anyhow::Error {
    InvalidInput(e.into()).into()
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).context("reading stdin");
    }
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(invalid)
}

fn load_graph(path: &Path) -> anyhow::Result<Multigraph> {
    let text = read_text(path)?;
    parse_graph(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(invalid)
}

impl Input {
    fn load(&self) -> anyhow::Result<Multigraph> {
        let g = match (&self.graph, &self.gen) {
            (_, Some(recipe)) => generate(recipe).map_err(invalid)?,
            (Some(path), None) => load_graph(path)?,
            (None, None) => bail!("no graph given"),
        };
        if self.require_cubic_3ec {
            g.check_cubic_3ec().map_err(invalid)?;
        }
        Ok(g)
    }
}

fn core_error(e: Error) -> anyhow::Error {
    match e {
        Error::Internal(_) => e.into(),
        other => invalid(other),
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Solve {
            input,
            json,
            out,
            dot,
        } => {
            let g = input.load()?;
            let sol = solve(&g).map_err(core_error)?;
            let cert = &sol.certificate;
            let bound = cert.bound.unwrap_or(cert.loose_bound);
            let verdict = if cert.passed() { "PASS" } else { "FAIL" };
            let line = format!("n={} tour={} ≤ {bound} {verdict}", cert.n, cert.tour_length);
            let text = emit_solution(&g, &sol);
            if json {
                println!("{text}");
                eprintln!("{line}");
            } else {
                println!("{line}");
            }
            if let Some(path) = out {
                fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = dot {
                fs::write(&path, to_dot(&g, Some(&sol.subgraph)))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(cert.passed())
        }
        Command::Verify { graph, solution } => {
            let g = load_graph(&graph)?;
            let file = parse_solution(&read_text(&solution)?)
                .with_context(|| format!("parsing {}", solution.display()))
                .map_err(invalid)?;
            let h = subgraph_from_file(&g, &file).map_err(invalid)?;
            let v = verify(&g, &h);
            let tour_ok = file.tour.is_empty() || tour_matches(&file);
            let mut failures = v.failures();
            if !tour_ok {
                failures.push("tour");
            }
            println!("n={} edges={}", g.vertex_count(), v.edges);
            if failures.is_empty() {
                println!("PASS");
            } else {
                println!("FAIL {}", failures.join(","));
            }
            Ok(failures.is_empty())
        }
        Command::Oracle {
            input,
            cap,
            solution,
        } => {
            let g = input.load()?;
            let opt = opt_eulerian(&g, cap).map_err(core_error)?;
            let mut line = format!("opt={}", opt.opt);
            let mut ok = true;
            let claimed = match solution {
                Some(path) => {
                    let file = parse_solution(&read_text(&path)?).map_err(invalid)?;
                    let h = subgraph_from_file(&g, &file).map_err(invalid)?;
                    ok = verify(&g, &h).passed();
                    Some(h.edge_count())
                }
                None if g.check_cubic_3ec().is_ok() => {
                    let sol = solve(&g).map_err(core_error)?;
                    ok = sol.certificate.passed();
                    Some(sol.certificate.tour_length)
                }
                None => None,
            };
            if let Some(len) = claimed {
                let ratio = len as f64 / opt.opt as f64;
                line.push_str(&format!(" solution={len} ratio={ratio:.4}"));
                ok &= 3 * len <= 4 * opt.opt;
            }
            println!("{line}");
            Ok(ok)
        }
        Command::Bench(args) => bench::run(&args),
        Command::Generate {
            recipe,
            format,
            out,
        } => {
            let g = generate(&recipe).map_err(invalid)?;
            let text = match format {
                Format::Json => emit_json(&g) + "\n",
                Format::Edges => emit_edge_list(&g),
            };
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            Ok(true)
        }
    }
}

/// The vertex sequence walks every listed edge copy exactly once.
fn tour_matches(file: &cubic_tsp::io::SolutionFile) -> bool {
    let mut left: std::collections::BTreeMap<(u32, u32), u32> = Default::default();
    for &[u, v, m] in &file.edges {
        *left.entry((u.min(v), u.max(v))).or_default() += m;
    }
    let total: u32 = left.values().sum();
    if file.tour.first() != file.tour.last() || file.tour.len() as u32 != total + 1 {
        return false;
    }
    for w in file.tour.windows(2) {
        let key = (w[0].min(w[1]), w[0].max(w[1]));
        match left.get_mut(&key) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return false,
        }
    }
    true
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InvalidInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
