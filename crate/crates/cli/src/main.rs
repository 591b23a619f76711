//! Command-line front end: validate drawings, colour edges, run the
//! discharging rules, check the structural lemmas and generate instances.
//!
//! Exit codes: 0 all pass, 1 a check failed, 2 a search ran out of budget,
//! 3 input or usage error, 4 the generator gave up.

mod commands;
mod report;

use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use onechroma::generator::{GenMode, GenSpec};
use rayon::prelude::*;

use commands::{CheckSelection, ColorMode};
use report::{Item, RunReport, Status};

const DEFAULT_BUDGET: u64 = 5_000_000;
const BUDGET_VAR: &str = "ONECHROMA_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "onechroma", version, about = "Triangle-free 1-planar drawings, edge colouring and discharging checks")]
struct Cli {
    /// Print the run report as a single JSON document.
    #[arg(long, global = true)]
    json: bool,

    /// Leave the timestamp out of the report.
    #[arg(long, global = true)]
    deterministic: bool,

    /// Worker threads for multi-file runs.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a drawing for structural and embedding errors.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Edge-colour a graph exactly or with the fan algorithm.
    Color {
        #[arg(long, conflicts_with = "vizing")]
        exact: bool,
        #[arg(long)]
        vizing: bool,
        /// Search node budget (default 5000000, or $ONECHROMA_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Apply the charge rules and print the ledger.
    Discharge {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Run lemma checks and the class-one check for maximum degree >= 7.
    Check {
        /// 1, 2, 3, 4 or all. Defaults to all when --theorem1 is absent.
        #[arg(long)]
        lemma: Option<String>,
        #[arg(long)]
        theorem1: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Generate a triangle-free 1-planar drawing with a given maximum degree.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        crossings: usize,
        /// bipartite or triangle-free
        #[arg(long, default_value = "bipartite")]
        mode: String,
        /// Output file; the drawing goes to standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn budget(flag: Option<u64>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{BUDGET_VAR}={v:?} is not a non-negative integer")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn lemma_selection(lemma: Option<&str>, theorem1: bool) -> Result<CheckSelection, String> {
    let lemmas = match lemma {
        None if theorem1 => Vec::new(),
        None | Some("all") => vec![1, 2, 3, 4],
        Some(s) => match s.parse::<u8>() {
            Ok(k @ 1..=4) => vec![k],
            _ => return Err(format!("--lemma expects 1, 2, 3, 4 or all, got {s:?}")),
        },
    };
    Ok(CheckSelection { lemmas, theorem1 })
}

fn over_paths<F>(paths: &[PathBuf], jobs: u16, f: F) -> Vec<Item>
where
    F: Fn(&PathBuf) -> Item + Sync + Send,
{
    let mut paths = paths.to_vec();
    paths.sort();
    if jobs <= 1 {
        return paths.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs as usize)
        .build()
        .expect("thread pool");
    pool.install(|| paths.par_iter().map(f).collect())
}

fn usage_error(message: String) -> Vec<Item> {
    vec![Item::error("-", None, message)]
}

fn run(cli: &Cli) -> Vec<Item> {
    let jobs = cli.jobs;
    match &cli.command {
        Command::Validate { paths } => over_paths(paths, jobs, |p| commands::validate(p)),
        Command::Color {
            exact: _,
            vizing,
            budget: b,
            paths,
        } => {
            let b = match budget(*b) {
                Ok(b) => b,
                Err(e) => return usage_error(e),
            };
            let mode = if *vizing { ColorMode::Vizing } else { ColorMode::Exact };
            over_paths(paths, jobs, |p| commands::color(p, mode, b))
        }
        Command::Discharge { paths } => over_paths(paths, jobs, |p| commands::discharge(p)),
        Command::Check {
            lemma,
            theorem1,
            budget: b,
            paths,
        } => {
            let sel = match lemma_selection(lemma.as_deref(), *theorem1) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let b = match budget(*b) {
                Ok(b) => b,
                Err(e) => return usage_error(e),
            };
            over_paths(paths, jobs, |p| commands::check(p, &sel, b))
        }
        Command::Gen {
            seed,
            n,
            delta,
            crossings,
            mode,
            out,
        } => {
            let mode: GenMode = match mode.parse() {
                Ok(m) => m,
                Err(e) => return usage_error(e.to_string()),
            };
            let spec = GenSpec {
                seed: *seed,
                n: *n,
                target_delta: *delta,
                crossings: *crossings,
                mode,
            };
            vec![commands::generate(&spec, out.as_ref())]
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => Status::Error.exit_code(),
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let command: Vec<String> = std::env::args().skip(1).collect();
    let timestamp = if cli.deterministic {
        None
    } else {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs())
    };
    let report = RunReport::new(command, run(&cli), timestamp);
    if cli.json {
        print!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
        for e in report.errors() {
            eprintln!("onechroma: {e}");
        }
    }
    std::process::exit(report.exit_status);
}
