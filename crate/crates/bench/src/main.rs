use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use sieve_bench::fit::{fit_records, FitModel};
use sieve_bench::{
    adjust_limit, parse_csv, run_algorithm, run_benchmarks, verify_all, write_csv, AlgorithmId,
};
use std::io::Write;
use std::path::PathBuf;

/// Prime enumeration benchmarks: classical and odd-index algorithms.
#[derive(Parser)]
#[command(name = "sieve-bench", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate primes up to a limit with one algorithm.
    Enumerate {
        /// Algorithm to run.
        #[arg(long)]
        algo: AlgorithmId,
        /// Inclusive upper bound.
        #[arg(long)]
        limit: u64,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every algorithm and compare against the Eratosthenes oracle.
    Verify {
        /// Inclusive upper bound (at least 11).
        #[arg(long)]
        limit: u64,
    },
    /// Time algorithms over a set of limits and write a CSV.
    Bench {
        /// Comma-separated algorithm ids.
        #[arg(long, value_delimiter = ',')]
        algos: Vec<AlgorithmId>,
        /// Comma-separated limits.
        #[arg(long, value_delimiter = ',')]
        limits: Vec<u64>,
        /// Repetitions per measurement; the minimum is kept.
        #[arg(long, default_value_t = 1)]
        reps: u32,
        /// CSV output path.
        #[arg(long)]
        csv: PathBuf,
    },
    /// Fit a growth model to a benchmark CSV, per algorithm.
    Fit {
        /// CSV produced by the bench command.
        #[arg(long)]
        csv: PathBuf,
        /// Model family.
        #[arg(long)]
        model: FitModel,
    },
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Enumerate { algo, limit, out } => enumerate(algo, limit, out),
        Command::Verify { limit } => verify(limit),
        Command::Bench {
            algos,
            limits,
            reps,
            csv,
        } => bench(&algos, &limits, reps, &csv),
        Command::Fit { csv, model } => fit(&csv, model),
    }
}

fn enumerate(algo: AlgorithmId, limit: u64, out: Option<PathBuf>) -> anyhow::Result<()> {
    let (limit, adjusted) = adjust_limit(algo, limit)?;
    if adjusted {
        eprintln!("warning: limit adjusted down to {limit} (nearest odd in {algo}'s domain)");
    }
    let primes = run_algorithm(algo, limit)?;

    let mut body = String::with_capacity(primes.len() * 8);
    for p in &primes {
        body.push_str(&p.to_string());
        body.push('\n');
    }
    match out {
        Some(path) => std::fs::write(&path, body)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    eprintln!("{} primes <= {limit} ({algo})", primes.len());
    Ok(())
}

fn verify(limit: u64) -> anyhow::Result<()> {
    let reports = verify_all(limit)?;
    let mut failures = 0;
    for r in &reports {
        let status = if r.ok { "ok" } else { "MISMATCH" };
        println!("{:<12} {status}: {}", r.algorithm.to_string(), r.detail);
        if !r.ok {
            failures += 1;
        }
    }
    if failures > 0 {
        bail!("{failures} algorithm(s) diverge from the oracle at limit {limit}");
    }
    println!("all {} algorithms match the oracle at limit {limit}", reports.len());
    Ok(())
}

fn bench(algos: &[AlgorithmId], limits: &[u64], reps: u32, csv: &PathBuf) -> anyhow::Result<()> {
    let records = run_benchmarks(algos, limits, reps)?;
    std::fs::write(csv, write_csv(&records))
        .with_context(|| format!("writing {}", csv.display()))?;
    eprintln!("wrote {} records to {}", records.len(), csv.display());
    Ok(())
}

fn fit(csv: &PathBuf, model: FitModel) -> anyhow::Result<()> {
    let text =
        std::fs::read_to_string(csv).with_context(|| format!("reading {}", csv.display()))?;
    let records = parse_csv(&text)?;
    let fits = fit_records(&records, model)?;
    for (algo, fit) in fits {
        match model {
            FitModel::Quad => println!(
                "{:<12} {}: A = {:.6e}, B = {:.6e}, R = {:.8}",
                algo.to_string(),
                fit.model,
                fit.coefficients[0],
                fit.coefficients[1],
                fit.correlation
            ),
            _ => println!(
                "{:<12} {}: A = {:.6e}, b = {:.6}, R = {:.8}",
                algo.to_string(),
                fit.model,
                fit.coefficients[0],
                fit.coefficients[1],
                fit.correlation
            ),
        }
    }
    Ok(())
}
