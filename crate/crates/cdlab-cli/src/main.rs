//! cdlab: compute and verify Chermak-Delgado lattices of finite groups.

mod cache;
mod dot;
mod error;
mod file;
mod report;
mod suites;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use error::CliError;
use file::GroupFile;
use report::AnalyzeOptions;

#[derive(Parser)]
#[command(name = "cdlab", version, about = "Chermak-Delgado lattice computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a group-description file and print the structured report
    Analyze {
        /// Path to the group-description TOML file
        path: PathBuf,
        /// Cross-check the lattice against the all-subgroups oracle
        #[arg(long)]
        oracle: bool,
        /// Use the subspace fast path (requires a class-2 description)
        #[arg(long)]
        fast: bool,
        /// Report cache directory (also CDLAB_CACHE_DIR)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Oracle cap for --oracle cross-checks
        #[arg(long, default_value_t = 128)]
        max_order: usize,
        /// Also write the Hasse diagram as DOT to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a named verification suite over the standard corpus
    Verify {
        /// One of: lattice-axioms, omegaspt1, basic, centralizing,
        /// theorem-w, xspec, pgrp, s-gt-1, corollary-w6, examples
        #[arg(long)]
        suite: String,
        /// Catalog bound for catalog-driven suites
        #[arg(long, default_value_t = 128)]
        max_order: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { path, oracle, fast, cache_dir, max_order, dot } => {
            run_analyze(path, oracle, fast, cache_dir, max_order, dot)
        }
        Command::Verify { suite, max_order } => run_verify(&suite, max_order),
    };
    std::process::exit(code);
}

fn run_analyze(
    path: PathBuf,
    oracle: bool,
    fast: bool,
    cache_dir: Option<PathBuf>,
    max_order: usize,
    dot: Option<PathBuf>,
) -> i32 {
    match try_analyze(path, oracle, fast, cache_dir, max_order, dot) {
        Ok(clean) => {
            if clean {
                0
            } else {
                eprintln!("cdlab: invariant violation reported");
                2
            }
        }
        Err(e) => {
            eprintln!("cdlab: {e}");
            e.exit_code()
        }
    }
}

fn try_analyze(
    path: PathBuf,
    oracle: bool,
    fast: bool,
    cache_dir: Option<PathBuf>,
    max_order: usize,
    dot: Option<PathBuf>,
) -> Result<bool, CliError> {
    let bytes = std::fs::read(&path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Parse("group file is not UTF-8".into()))?;
    let parsed = GroupFile::parse(&text)?;
    let opts = AnalyzeOptions { oracle, fast, max_order };
    let cache_dir = cache_dir.or_else(|| std::env::var_os("CDLAB_CACHE_DIR").map(PathBuf::from));
    let key = cache::cache_key(&bytes, opts);

    if dot.is_none() {
        if let Some(dir) = &cache_dir {
            if let Some(cached) = cache::lookup(dir, &key) {
                eprintln!("cdlab: cache hit {key}");
                print!("{cached}");
                let clean = !cached.contains("violated");
                return Ok(clean);
            }
        }
    }

    let t0 = Instant::now();
    let (rep, view) = report::analyze(&parsed, opts)?;
    let toml_text = rep.to_toml();
    eprintln!("cdlab: analyzed in {} ms", t0.elapsed().as_millis());
    if let Some(dir) = &cache_dir {
        cache::store(dir, &key, &toml_text)?;
    }
    if let Some(dot_path) = dot {
        std::fs::write(dot_path, dot::export_dot(&view))?;
    }
    print!("{toml_text}");
    Ok(rep.all_checks_clean())
}

fn run_verify(suite: &str, max_order: usize) -> i32 {
    let t0 = Instant::now();
    match suites::run_suite(suite, max_order) {
        Ok(outcome) => {
            for (name, pass, detail) in &outcome.lines {
                if *pass {
                    println!("ok    {name}");
                } else if detail.is_empty() {
                    println!("FAIL  {name}");
                } else {
                    println!("FAIL  {name}: {detail}");
                }
            }
            let total = outcome.lines.len();
            let failed = outcome.lines.iter().filter(|(_, p, _)| !p).count();
            eprintln!(
                "cdlab: suite {suite}: {}/{} checks passed in {} ms",
                total - failed,
                total,
                t0.elapsed().as_millis()
            );
            if failed == 0 {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("cdlab: {e}");
            e.exit_code()
        }
    }
}
