//! Ground-truth reference: a plain sieve of Eratosthenes and naive trial
//! division. Every other algorithm in this crate is tested against these,
//! so they are written for clarity, not speed.

use crate::{Error, Result};

/// Primes up to a limit, with the count carried alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub primes: Vec<u64>,
    pub count: usize,
}

/// Classical Eratosthenes sieve over `[2, n_max]`, bit-packed.
///
/// Rejects `n_max < 2`.
pub fn eratosthenes(n_max: u64) -> Result<OracleResult> {
    if n_max < 2 {
        return Err(Error::Domain(format!(
            "eratosthenes requires n_max >= 2, got {n_max}"
        )));
    }
    let n = usize::try_from(n_max).map_err(|_| Error::Overflow("eratosthenes limit"))?;

    // One bit per integer in [0, n]; set = composite.
    let mut composite = vec![0u64; n / 64 + 1];
    let is_set = |w: &[u64], i: usize| w[i / 64] & (1 << (i % 64)) != 0;

    let mut p = 2usize;
    while p * p <= n {
        if !is_set(&composite, p) {
            let mut m = p * p;
            while m <= n {
                composite[m / 64] |= 1 << (m % 64);
                m += p;
            }
        }
        p += 1;
    }

    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_set(&composite, i) {
            primes.push(i as u64);
        }
    }
    let count = primes.len();
    Ok(OracleResult { primes, count })
}

/// Trial division by every integer in `[2, floor(sqrt(n))]`.
///
/// Total over all `n`; values below 2 are not prime.
pub fn is_prime_naive(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
