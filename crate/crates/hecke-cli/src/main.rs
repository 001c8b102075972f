use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::Parser;

use hecke_cli::{report, JobSpec, Task};
use hecke_core::repdata::GroupFlavor;

/// Enumerate, classify, and verify enhanced parameters over a declared
/// supply of symbolic irreducible building blocks.
#[derive(Parser)]
#[command(name = "hecke-cli", version)]
struct Args {
    /// Group flavor, e.g. `sp`, `so-odd`, `gspin-even:prime`
    #[arg(long)]
    flavor: String,
    /// Size of the standard representation of the dual group
    #[arg(long)]
    size: u32,
    /// JSON file with the rep supply (array of symbols)
    #[arg(long)]
    supply: PathBuf,
    /// Comma-separated subset of enumerate,classify,support,hecke,verify
    #[arg(long)]
    tasks: String,
    /// Output directory for results.json and summary.txt
    #[arg(long)]
    out: PathBuf,
    /// Seed for the randomized relation checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rank cap for exhaustive Hecke verification
    #[arg(long, default_value_t = 3)]
    max_rank: u32,
}

fn parse_job(args: &Args) -> Result<JobSpec> {
    let (family_str, prime) = match args.flavor.strip_suffix(":prime") {
        Some(f) => (f, true),
        None => (args.flavor.as_str(), false),
    };
    let flavor_string = format!(
        "{}:{}{}",
        family_str,
        args.size,
        if prime { ":prime" } else { "" }
    );
    let Some(flavor) = GroupFlavor::parse(&flavor_string) else {
        bail!("unknown flavor `{}`", args.flavor);
    };
    let mut tasks = BTreeSet::new();
    for part in args.tasks.split(',').filter(|s| !s.is_empty()) {
        match Task::parse(part.trim()) {
            Some(t) => {
                tasks.insert(t);
            }
            None => bail!("unknown task `{part}`"),
        }
    }
    if tasks.is_empty() {
        bail!("no tasks requested");
    }
    Ok(JobSpec {
        flavor,
        supply: args.supply.clone(),
        tasks,
        out: args.out.clone(),
        seed: args.seed,
        max_rank: args.max_rank,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let job = match parse_job(&args) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match report(&job) {
        Ok(outcome) => {
            println!("wrote {}", outcome.results_path.display());
            println!("wrote {}", outcome.summary_path.display());
            if outcome.verifications_passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failures reported");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
