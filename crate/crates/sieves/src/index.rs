//! The odd-number index map and the arithmetic sequences of composite
//! indices it induces.
//!
//! Odd numbers `n >= 3` are enumerated as `n = 2k + 3` for `k = 0, 1,
//! 2, ...`; `k` is the *index* of `n`. Indices of composite odd numbers
//! form the set `W`, which splits by residue class of `n` modulo 4 into
//! two families of arithmetic sequences. Writing `k_i(x) = (2i + 3) x + i`
//! (the index of `(2i + 3)(2x + 1)`), the generator of index `i` — the
//! odd number `p = 2i + 3` — contributes
//!
//! - `S1`: first term `k_i(i + 1)`, the index of `p^2`, covering
//!   multiples `p (p + 4x)`, and
//! - `S2`: first term `k_i(i + 2)`, the index of `p (p + 2)`, covering
//!   multiples `p (p + 4x + 2)`,
//!
//! both with common difference `2p`. Every composite index is reached
//! even when generators range over prime indices only, since a composite
//! has a prime smallest factor.

use crate::{Error, Result};

/// Largest index whose odd number `2k + 3` still fits in a `u64`.
pub const MAX_INDEX: u64 = (u64::MAX - 3) / 2;

/// An odd integer `>= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddNumber(u64);

impl OddNumber {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::Domain(format!("{n} is not an odd number >= 3")));
        }
        Ok(OddNumber(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// The index `k = (n - 3) / 2`.
    #[inline]
    pub fn index(self) -> OddIndex {
        OddIndex((self.0 - 3) / 2)
    }
}

impl std::fmt::Display for OddNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// The position of an odd number in the sequence 3, 5, 7, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddIndex(u64);

impl OddIndex {
    pub fn new(k: u64) -> Result<Self> {
        if k > MAX_INDEX {
            return Err(Error::Overflow("OddIndex::new: 2k + 3 exceeds u64"));
        }
        Ok(OddIndex(k))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// The odd number `2k + 3`.
    #[inline]
    pub fn number(self) -> OddNumber {
        OddNumber(2 * self.0 + 3)
    }

    /// Residue class of `2k + 3` modulo 4, decided by the parity of `k`.
    #[inline]
    pub fn residue_class(self) -> ResidueClass {
        if self.0 % 2 == 1 {
            ResidueClass::Mod4Eq1
        } else {
            ResidueClass::Mod4Eq3
        }
    }

    /// Index of `(2k + 3)^2`, i.e. `2k^2 + 6k + 3`.
    pub fn square_index(self) -> Result<OddIndex> {
        let k = self.0;
        let sq = k
            .checked_mul(k)
            .and_then(|k2| k2.checked_mul(2))
            .and_then(|t| t.checked_add(6 * k))
            .and_then(|t| t.checked_add(3))
            .ok_or(Error::Overflow("square_index"))?;
        OddIndex::new(sq)
    }
}

impl std::fmt::Display for OddIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Class of an odd number by its remainder modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidueClass {
    /// `n mod 4 = 1` (equivalently: odd index).
    Mod4Eq1,
    /// `n mod 4 = 3` (even index).
    Mod4Eq3,
}

/// Which of the two composite-index families a sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Indices of composites `n mod 4 = 1`.
    S1,
    /// Indices of composites `n mod 4 = 3`.
    S2,
}

/// One arithmetic sequence of composite indices.
///
/// All terms `t` satisfy: `2t + 3` is a multiple of the generator number
/// `p = 2i + 3`, and the whole of `W` is covered by the union over all
/// generators (prime-index generators suffice).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceSpec {
    /// Index of the generator; the generator number is `2i + 3`.
    pub generator: OddIndex,
    pub family: Family,
    pub first_term: OddIndex,
    /// Common difference `2 * (2i + 3)`.
    pub step: u64,
}

impl SequenceSpec {
    /// Terms of the sequence not exceeding `k_max`.
    pub fn terms_up_to(&self, k_max: u64) -> impl Iterator<Item = u64> + '_ {
        let step = self.step;
        let first = self.first_term.get();
        std::iter::successors(
            if first <= k_max { Some(first) } else { None },
            move |&t| t.checked_add(step).filter(|&n| n <= k_max),
        )
    }
}

/// Index of an odd number; rejects even inputs and values below 3.
pub fn index_of(n: u64) -> Result<OddIndex> {
    Ok(OddNumber::new(n)?.index())
}

/// The odd number at index `k`.
pub fn number_of(k: u64) -> Result<OddNumber> {
    Ok(OddIndex::new(k)?.number())
}

/// Residue class of the odd number at index `k`.
pub fn residue_class(k: u64) -> Result<ResidueClass> {
    Ok(OddIndex::new(k)?.residue_class())
}

/// `k_i(x) = (2i + 3) x + i`: index of the `x`-th member of generator `i`'s
/// reference grid.
fn k_gen(i: u64, x: u64) -> Result<u64> {
    (2 * i + 3)
        .checked_mul(x)
        .and_then(|t| t.checked_add(i))
        .ok_or(Error::Overflow("k_i(x)"))
}

/// The arithmetic sequence contributed by generator `i` in the given family.
///
/// `S1` starts at `k_i(i + 1)` (index of `p^2`), `S2` at `k_i(i + 2)`
/// (index of `p (p + 2)`); both step by `2p`.
pub fn sequence_spec(i: OddIndex, family: Family) -> Result<SequenceSpec> {
    let iv = i.get();
    let x = match family {
        Family::S1 => iv + 1,
        Family::S2 => iv + 2,
    };
    let first = OddIndex::new(k_gen(iv, x)?)?;
    let step = 2 * (2 * iv + 3);
    Ok(SequenceSpec {
        generator: i,
        family,
        first_term: first,
        step,
    })
}

/// All composite indices in `[0, k_max]`, sorted ascending.
///
/// With `restrict_to_prime_generators`, a generator index is skipped once
/// it is itself known composite; both settings return the same set because
/// every composite has a prime smallest factor. Generators stop as soon as
/// the `S1` first term (the index of `p^2`) passes `k_max`.
pub fn composite_indices_up_to(k_max: u64, restrict_to_prime_generators: bool) -> Vec<u64> {
    let size = match usize::try_from(k_max).ok().and_then(|k| k.checked_add(1)) {
        Some(s) => s,
        None => panic!("composite_indices_up_to: k_max {k_max} does not fit in memory"),
    };
    let mut composite = vec![false; size];
    let mut i = 0u64;
    loop {
        // i stays near sqrt(k_max / 2), far below k_max, so indexing is safe.
        let first_s1 = match k_gen(i, i + 1) {
            Ok(f) => f,
            Err(_) => break,
        };
        if first_s1 > k_max {
            break;
        }
        let skip = restrict_to_prime_generators && composite[i as usize];
        if !skip {
            let p2 = 2 * (2 * i + 3);
            let mut t = first_s1;
            while t <= k_max {
                composite[t as usize] = true;
                match t.checked_add(p2) {
                    Some(n) => t = n,
                    None => break,
                }
            }
            if let Ok(first_s2) = k_gen(i, i + 2) {
                let mut t = first_s2;
                while t <= k_max {
                    composite[t as usize] = true;
                    match t.checked_add(p2) {
                        Some(n) => t = n,
                        None => break,
                    }
                }
            }
        }
        i += 1;
    }
    composite
        .iter()
        .enumerate()
        .filter_map(|(k, &c)| c.then_some(k as u64))
        .collect()
}

/// Index of `(2k + 3)^2` as a free function over raw indices.
pub fn square_index(k: u64) -> Result<u64> {
    Ok(OddIndex::new(k)?.square_index()?.get())
}

/// Difference between the indices of `n2^2` and `n1^2` where
/// `n2 = n1 + 2 alpha`: `beta = 2 alpha^2 + 2 alpha n1`.
pub fn square_index_delta(alpha: u64, n1: OddNumber) -> Result<u64> {
    let a2 = alpha
        .checked_mul(alpha)
        .and_then(|t| t.checked_mul(2))
        .ok_or(Error::Overflow("square_index_delta"))?;
    let an = alpha
        .checked_mul(n1.get())
        .and_then(|t| t.checked_mul(2))
        .ok_or(Error::Overflow("square_index_delta"))?;
    a2.checked_add(an)
        .ok_or(Error::Overflow("square_index_delta"))
}

/// Difference between the indices of `n2 m` and `n1 m` for odd `m`:
/// `gamma = alpha m`.
pub fn multiple_index_delta(alpha: u64, m: u64) -> Result<u64> {
    if m % 2 == 0 || m == 0 {
        return Err(Error::Domain(format!(
            "multiple_index_delta requires odd m >= 1, got {m}"
        )));
    }
    alpha
        .checked_mul(m)
        .ok_or(Error::Overflow("multiple_index_delta"))
}
