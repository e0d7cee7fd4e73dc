use std::process::exit;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use covline::commands::{self, BenchParams, EXIT_INPUT};
use covline::io::{parse_instance, parse_solution, read_input};
use covline_core::gen::{Family, GenParams};
use covline_core::problem::Algorithm;
use covline_core::SweepConfig;

#[derive(Parser)]
#[command(name = "covline", version, about = "Minimum-weight coverage of points by disks centered on a line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Sweep,
    Baseline,
    Oracle,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Sweep => Algorithm::Sweep,
            AlgorithmArg::Baseline => Algorithm::Baseline,
            AlgorithmArg::Oracle => Algorithm::Oracle,
        }
    }
}

fn family(s: &str) -> Result<Family, String> {
    let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
    Family::parse(s).ok_or_else(|| format!("expected one of {}", names.join(", ")))
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file ("-" reads standard input).
    Solve {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "sweep")]
        algorithm: AlgorithmArg,
    },
    /// Print a random feasible instance.
    Gen {
        /// 1d, unit, l1, l2, linf, separable, lower or halfplane.
        #[arg(long, value_parser = family)]
        metric: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Width of the x-range per object.
        #[arg(long, default_value_t = GenParams::DEFAULT_SPREAD)]
        spread: f64,
    },
    /// Cross-check sweep, baseline and (for m <= 24) exhaustive search.
    Check {
        #[arg(default_value = "-")]
        input: String,
        /// Solution file the sweep result must reproduce exactly.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Time a solver over a series of total input sizes.
    Bench {
        #[arg(long, value_parser = family)]
        metric: Family,
        /// Comma-separated total sizes n + m.
        #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096,8192")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "sweep")]
        algorithm: AlgorithmArg,
        /// Fixed-width x-range, so disks overlap heavily.
        #[arg(long)]
        dense: bool,
        #[arg(long, default_value_t = 1.0)]
        spread: f64,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let cfg = SweepConfig::from_env();
    match cli.command {
        Command::Solve { input, algorithm } => {
            let problem = parse_instance(&read_input(&input)?)?.to_problem()?;
            let (file, code, diag) = commands::solve(&problem, algorithm.into(), cfg);
            if let Some(f) = file {
                println!("{}", serde_json::to_string_pretty(&f)?);
            }
            if let Some(d) = diag {
                eprintln!("covline: {d}");
            }
            Ok(code)
        }
        Command::Gen { metric, n, m, seed, spread } => {
            let file = commands::gen(metric, n, m, seed, spread)?;
            println!("{}", serde_json::to_string_pretty(&file)?);
            Ok(0)
        }
        Command::Check { input, expect } => {
            let problem = parse_instance(&read_input(&input)?)?.to_problem()?;
            let expect = match expect {
                Some(path) => Some(parse_solution(&read_input(&path)?)?),
                None => None,
            };
            let report = commands::check(&problem, expect.as_ref(), cfg);
            println!("{}", serde_json::to_string_pretty(&report)?);
            for c in report.checks.iter().filter(|c| !c.ok) {
                eprintln!("covline: check failed: {}: {}", c.name, c.detail);
            }
            Ok(report.exit)
        }
        Command::Bench { metric, sizes, seed, algorithm, dense, spread, repeats } => {
            let params = BenchParams { family: metric, algorithm: algorithm.into(), seed, dense, spread, repeats };
            let rows = commands::bench(params, &sizes).context("benchmark failed")?;
            for row in &rows {
                println!("{}", serde_json::to_string(row)?);
            }
            eprintln!("mean time ratio per step: {:.3}", commands::mean_doubling_ratio(&rows));
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("covline: {e:#}");
            exit(EXIT_INPUT);
        }
    }
}
