use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use msvc_core::generate::erdos_renyi;
use msvc_core::io::{read_graph, write_graph};
use msvc_core::report::{solve, verify, Algorithm, RunConfig, SolveReport, VerifyReport};
use msvc_core::{Error, Graph};

#[derive(Parser)]
#[command(
    name = "msvc",
    version,
    about = "Exact Minimum Sum Vertex Cover solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph with one algorithm.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "auto", value_parser = parse_algo)]
        algo: Algorithm,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Run several algorithms and check that the exact ones agree.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "brute,vc,cm", value_delimiter = ',', value_parser = parse_algo)]
        algos: Vec<Algorithm>,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Print a seeded random graph in edge-list format.
    Generate {
        #[arg(long, num_args = 2, value_names = ["N", "P"], required = true)]
        random: Vec<String>,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct Input {
    /// Edge-list graph file (`n m` header, 1-based `u v` lines).
    file: Option<PathBuf>,
    /// Use an Erdős–Rényi G(N, P) graph instead of a file; requires --seed.
    #[arg(long, num_args = 2, value_names = ["N", "P"], conflicts_with = "file")]
    random: Option<Vec<String>>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct RunFlags {
    #[arg(long, default_value_t = 8)]
    max_k: usize,
    #[arg(long, default_value_t = 10)]
    brute_cap: usize,
    /// Configuration budget (vc) or per-program search-node budget (cm).
    #[arg(long)]
    budget: Option<u64>,
    /// Emit JSON on standard output.
    #[arg(long)]
    json: bool,
}

impl RunFlags {
    fn config(&self) -> RunConfig {
        RunConfig {
            max_k: self.max_k,
            brute_cap: self.brute_cap,
            budget: self.budget,
        }
    }
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn random_graph(spec: &[String], seed: Option<u64>) -> Result<Graph, Error> {
    let seed = seed.ok_or_else(|| Error::InvalidInput("--random requires --seed".into()))?;
    let n: usize = spec[0]
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad vertex count {:?}", spec[0])))?;
    let p: f64 = spec[1]
        .parse()
        .ok()
        .filter(|p: &f64| (0.0..=1.0).contains(p))
        .ok_or_else(|| Error::InvalidInput(format!("bad edge probability {:?}", spec[1])))?;
    Ok(erdos_renyi(n, p, seed))
}

fn load(input: &Input) -> Result<Graph, Error> {
    match (&input.file, &input.random) {
        (Some(path), None) => read_graph(path),
        (None, Some(spec)) => random_graph(spec, input.seed),
        _ => Err(Error::InvalidInput(
            "give a graph file or --random N P".into(),
        )),
    }
}

fn print_solve(r: &SolveReport, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(r).expect("report serializes"));
        return;
    }
    println!("algorithm: {}", r.algorithm);
    if let Some(k) = r.k {
        println!("k: {k}");
    }
    println!("cost: {}", r.cost);
    let labels: Vec<String> = r.ordering.iter().map(usize::to_string).collect();
    println!("ordering: {}", labels.join(" "));
    println!(
        "stats: nodes={} permutations={} configurations={}",
        r.stats.nodes, r.stats.permutations, r.stats.configurations
    );
    println!("elapsed_ms: {:.3}", r.elapsed_ms);
}

fn print_verify(v: &VerifyReport, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(v).expect("report serializes"));
        return;
    }
    for r in &v.runs {
        println!("{:<7} cost {}", r.algorithm, r.cost);
    }
    if let Some(ratio) = v.greedy_ratio {
        println!("greedy ratio {ratio:.4}");
    }
    if v.pass {
        println!(
            "PASS cost {}",
            v.optimum.map_or("-".into(), |c| c.to_string())
        );
    } else {
        for f in &v.failures {
            println!("mismatch: {f}");
        }
        for r in &v.runs {
            let labels: Vec<String> = r.ordering.iter().map(usize::to_string).collect();
            println!("{} ordering: {}", r.algorithm, labels.join(" "));
        }
        println!("FAIL");
    }
}

fn report_error(e: &Error, as_json: bool) -> ExitCode {
    if as_json {
        println!(
            "{}",
            json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
        );
    } else {
        eprintln!("error: {e}");
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve { input, algo, run } => {
            match load(&input).and_then(|g| solve(&g, algo, &run.config())) {
                Ok(report) => {
                    print_solve(&report, run.json);
                    ExitCode::SUCCESS
                }
                Err(e) => report_error(&e, run.json),
            }
        }
        Command::Verify { input, algos, run } => {
            match load(&input).and_then(|g| verify(&g, &algos, &run.config())) {
                Ok(report) => {
                    print_verify(&report, run.json);
                    if report.pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => report_error(&e, run.json),
            }
        }
        Command::Generate { random, seed } => match random_graph(&random, Some(seed)) {
            Ok(g) => {
                print!("{}", write_graph(&g));
                ExitCode::SUCCESS
            }
            Err(e) => report_error(&e, false),
        },
    }
}
