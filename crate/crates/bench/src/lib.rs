//! Benchmark and verification front end for the `sieves` crate.
//!
//! Every algorithm is exposed under a common inclusive contract: *all
//! primes up to the limit*. The Atkin variants natively return primes
//! strictly below their bound, so the runner calls them with `limit + 1`.
//!
//! Benchmark results are written as CSV with the fixed header
//! `algorithm,n_max,elapsed_ns,modulo_ops,prime_count`, one row per
//! (algorithm, limit), taking the minimum elapsed time over the
//! configured repetitions. The `modulo_ops` column is populated only for
//! the two instrumented trial-division algorithms.

pub mod fit;

use clap::ValueEnum;
use sieves::{atkin, oracle, trial, wheel};
use std::fmt;
use std::time::Instant;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Sieve(#[from] sieves::Error),
    #[error("csv: line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, BenchError>;

/// The selectable enumeration algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum AlgorithmId {
    /// Number-form trial division.
    Trial,
    /// Index-form trial division.
    IndexTrial,
    /// Sieve of Atkin over numbers.
    Atkin,
    /// Sieve of Atkin over indices.
    IndexAtkin,
    /// Sieve of Atkin with the 12x12 residue-case table.
    AtkinTabled,
    /// Number-space wheel sieve.
    Wheel,
    /// Index wheel sieve.
    IndexWheel,
    /// Eratosthenes reference.
    Oracle,
}

pub const ALL_ALGORITHMS: [AlgorithmId; 8] = [
    AlgorithmId::Trial,
    AlgorithmId::IndexTrial,
    AlgorithmId::Atkin,
    AlgorithmId::IndexAtkin,
    AlgorithmId::AtkinTabled,
    AlgorithmId::Wheel,
    AlgorithmId::IndexWheel,
    AlgorithmId::Oracle,
];

impl AlgorithmId {
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::Trial => "trial",
            AlgorithmId::IndexTrial => "index-trial",
            AlgorithmId::Atkin => "atkin",
            AlgorithmId::IndexAtkin => "index-atkin",
            AlgorithmId::AtkinTabled => "atkin-tabled",
            AlgorithmId::Wheel => "wheel",
            AlgorithmId::IndexWheel => "index-wheel",
            AlgorithmId::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Option<AlgorithmId> {
        ALL_ALGORITHMS.into_iter().find(|a| a.name() == s)
    }

    /// Smallest accepted limit under the inclusive contract.
    pub fn min_limit(self) -> u64 {
        match self {
            AlgorithmId::Trial | AlgorithmId::IndexTrial => 7,
            AlgorithmId::Atkin | AlgorithmId::IndexAtkin | AlgorithmId::AtkinTabled => 4,
            AlgorithmId::Wheel | AlgorithmId::IndexWheel => 10,
            AlgorithmId::Oracle => 2,
        }
    }

    /// Whether the underlying algorithm is specified over odd limits.
    pub fn wants_odd_limit(self) -> bool {
        matches!(
            self,
            AlgorithmId::Trial
                | AlgorithmId::IndexTrial
                | AlgorithmId::Wheel
                | AlgorithmId::IndexWheel
        )
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs an algorithm under the inclusive contract: all primes `<= limit`.
pub fn run_algorithm(algo: AlgorithmId, limit: u64) -> Result<Vec<u64>> {
    Ok(run_instrumented(algo, limit)?.0)
}

/// As [`run_algorithm`], also returning the modulo-operation count for
/// the instrumented trial-division algorithms.
pub fn run_instrumented(algo: AlgorithmId, limit: u64) -> Result<(Vec<u64>, Option<u64>)> {
    let exclusive = || {
        limit
            .checked_add(1)
            .ok_or(sieves::Error::Overflow("limit + 1"))
    };
    let out = match algo {
        AlgorithmId::Trial => {
            let run = trial::prime_enumeration_instrumented(limit)?;
            (run.primes, Some(run.modulo_ops))
        }
        AlgorithmId::IndexTrial => {
            let run = trial::index_prime_enumeration_instrumented(limit)?;
            (run.primes, Some(run.modulo_ops))
        }
        AlgorithmId::Atkin => (atkin::sieve_of_atkin(exclusive()?)?.0, None),
        AlgorithmId::IndexAtkin => (atkin::index_sieve_of_atkin(exclusive()?)?.0, None),
        AlgorithmId::AtkinTabled => (atkin::sieve_of_atkin_tabled(exclusive()?, false)?.0, None),
        AlgorithmId::Wheel => (wheel::wheel_sieve_reference(limit)?.0, None),
        AlgorithmId::IndexWheel => (wheel::index_wheel_sieve(limit)?.0, None),
        AlgorithmId::Oracle => (oracle::eratosthenes(limit)?.primes, None),
    };
    Ok(out)
}

/// Nudges a limit into an algorithm's domain: odd-limit algorithms get
/// even limits rounded down (no prime is lost). Returns the adjusted
/// limit and whether an adjustment happened; limits below the minimum
/// are an error.
pub fn adjust_limit(algo: AlgorithmId, limit: u64) -> Result<(u64, bool)> {
    let mut adjusted = limit;
    let mut changed = false;
    if algo.wants_odd_limit() && limit % 2 == 0 {
        adjusted = limit - 1;
        changed = true;
    }
    if adjusted < algo.min_limit() || limit < algo.min_limit() {
        return Err(BenchError::InvalidInput(format!(
            "limit {limit} is below the domain of {algo} (minimum {})",
            algo.min_limit()
        )));
    }
    Ok((adjusted, changed))
}

// --- benchmark records ---------------------------------------------------

pub const CSV_HEADER: &str = "algorithm,n_max,elapsed_ns,modulo_ops,prime_count";

/// One benchmark measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub algorithm: AlgorithmId,
    pub n_max: u64,
    pub elapsed_ns: u64,
    pub modulo_ops: Option<u64>,
    pub prime_count: u64,
}

impl BenchRecord {
    pub fn to_csv_line(&self) -> String {
        let ops = self
            .modulo_ops
            .map(|v| v.to_string())
            .unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            self.algorithm, self.n_max, self.elapsed_ns, ops, self.prime_count
        )
    }

    pub fn parse_csv_line(line: &str, line_no: usize) -> Result<BenchRecord> {
        let err = |msg: String| BenchError::Csv {
            line: line_no,
            msg,
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(err(format!("expected 5 fields, found {}", fields.len())));
        }
        let algorithm = AlgorithmId::parse(fields[0])
            .ok_or_else(|| err(format!("unknown algorithm {:?}", fields[0])))?;
        let num = |s: &str, what: &str| -> Result<u64> {
            s.parse()
                .map_err(|_| err(format!("malformed {what}: {s:?}")))
        };
        let n_max = num(fields[1], "n_max")?;
        let elapsed_ns = num(fields[2], "elapsed_ns")?;
        let modulo_ops = if fields[3].is_empty() {
            None
        } else {
            Some(num(fields[3], "modulo_ops")?)
        };
        let prime_count = num(fields[4], "prime_count")?;
        if elapsed_ns == 0 {
            return Err(err("elapsed_ns must be positive".into()));
        }
        Ok(BenchRecord {
            algorithm,
            n_max,
            elapsed_ns,
            modulo_ops,
            prime_count,
        })
    }
}

/// Serializes records to CSV: header plus one newline-terminated row each.
pub fn write_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_csv_line());
        out.push('\n');
    }
    out
}

/// Parses CSV produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(BenchError::Csv {
                line: 1,
                msg: format!("bad header {header:?}"),
            })
        }
        None => {
            return Err(BenchError::Csv {
                line: 1,
                msg: "empty input".into(),
            })
        }
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        records.push(BenchRecord::parse_csv_line(line, i + 1)?);
    }
    Ok(records)
}

/// Times every (algorithm, limit) pair, keeping the minimum elapsed time
/// over `reps` repetitions. Runs sequentially for timing fidelity.
pub fn run_benchmarks(
    algos: &[AlgorithmId],
    limits: &[u64],
    reps: u32,
) -> Result<Vec<BenchRecord>> {
    if algos.is_empty() {
        return Err(BenchError::InvalidInput("no algorithms given".into()));
    }
    if limits.is_empty() {
        return Err(BenchError::InvalidInput("no limits given".into()));
    }
    if reps < 1 {
        return Err(BenchError::InvalidInput("reps must be at least 1".into()));
    }
    let mut records = Vec::with_capacity(algos.len() * limits.len());
    for &algo in algos {
        for &limit in limits {
            let mut best = u64::MAX;
            let mut ops = None;
            let mut count = 0u64;
            for _ in 0..reps {
                let start = Instant::now();
                let (primes, modulo_ops) = run_instrumented(algo, limit)?;
                let elapsed = start.elapsed().as_nanos().max(1) as u64;
                best = best.min(elapsed);
                ops = modulo_ops;
                count = primes.len() as u64;
            }
            records.push(BenchRecord {
                algorithm: algo,
                n_max: limit,
                elapsed_ns: best,
                modulo_ops: ops,
                prime_count: count,
            });
        }
    }
    Ok(records)
}

// --- verification ---------------------------------------------------------

/// Outcome of checking one algorithm against the oracle.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub algorithm: AlgorithmId,
    pub ok: bool,
    pub detail: String,
}

/// Position and values of the first divergence between two prime lists.
pub fn first_divergence(expected: &[u64], got: &[u64]) -> Option<(usize, Option<u64>, Option<u64>)> {
    let n = expected.len().max(got.len());
    (0..n).find_map(|i| {
        let e = expected.get(i).copied();
        let g = got.get(i).copied();
        (e != g).then_some((i, e, g))
    })
}

fn describe_divergence(expected: &[u64], got: &[u64]) -> Option<String> {
    first_divergence(expected, got).map(|(i, e, g)| {
        let show = |v: Option<u64>| v.map_or("<end>".to_string(), |x| x.to_string());
        format!(
            "first divergence at position {i}: expected {}, got {}",
            show(e),
            show(g)
        )
    })
}

/// Runs every algorithm at `limit` and compares the full prime list to
/// the oracle. `limit` must be at least 11 so all domains are valid.
pub fn verify_all(limit: u64) -> Result<Vec<VerifyReport>> {
    if limit < 11 {
        return Err(BenchError::InvalidInput(format!(
            "verify requires limit >= 11, got {limit}"
        )));
    }
    let expected = oracle::eratosthenes(limit)?.primes;
    let mut reports = Vec::new();
    for algo in ALL_ALGORITHMS {
        let got = run_algorithm(algo, limit)?;
        let report = match describe_divergence(&expected, &got) {
            None => VerifyReport {
                algorithm: algo,
                ok: true,
                detail: format!("{} primes", got.len()),
            },
            Some(detail) => VerifyReport {
                algorithm: algo,
                ok: false,
                detail,
            },
        };
        reports.push(report);
    }
    Ok(reports)
}
