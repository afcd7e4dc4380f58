//! Prime enumeration built on the odd-number index map `k = (n - 3) / 2`.
//!
//! Every odd integer `n >= 3` has an index `k` in the sequence 3, 5, 7, ...
//! and `n = 2k + 3`. Working over indices instead of numbers halves the
//! magnitude of most intermediate values and removes even numbers from
//! sieve arrays entirely. This crate implements three classical prime
//! enumeration methods in both forms so they can be compared:
//!
//! - [`trial`]: incremental trial division driven by composite-index
//!   arithmetic sequences, with Δ-tables that avoid recomputing `n mod p`
//!   inputs from scratch ([`trial::prime_enumeration`],
//!   [`trial::index_prime_enumeration`]);
//! - [`atkin`]: the sieve of Atkin over numbers and over indices, plus a
//!   variant that replaces all per-candidate modulo operations with a
//!   precomputed 12x12 residue-case table;
//! - [`wheel`]: Pritchard's wheel sieve over numbers, and an index wheel
//!   whose multiples are deleted through a linear Diophantine solution
//!   table instead of per-member divisions;
//! - [`oracle`]: a plain Eratosthenes sieve used as ground truth by tests
//!   and the verification CLI.
//!
//! All arithmetic is unsigned 64-bit with overflow detected and reported
//! as [`Error::Overflow`], never wrapped.

pub mod atkin;
pub mod index;
pub mod oracle;
pub mod trial;
pub mod wheel;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument was outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation exceeded the 64-bit integer width.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// Internal state failed a consistency check.
    #[error("internal state corrupt: {0}")]
    Corrupt(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use index::{OddIndex, OddNumber, ResidueClass};
