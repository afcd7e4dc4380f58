//! Pritchard's wheel sieve over odd-number indices, with a number-space
//! reference implementation.
//!
//! The wheel of order `q` collects the reduced residues modulo
//! `P_q = p_0 p_1 ... p_q` (the *pseudo-primes*: integers coprime to the
//! first `q + 1` primes). In index space, with `P'_q` the product of the
//! odd primes through `p_q`, the wheel is
//!
//! `W'_q = { (n - 3)/2 : n in W_q \ {1} } U { P'_q - 1 }`,
//!
//! a sorted set spanning `[(p_{q+1} - 3)/2, P'_q - 1]`. One *turn* builds
//! `W'_{q+1}` from `p_{q+1} = 2i + 3` copies of `W'_q` shifted by
//! multiples of `P'_q`, deleting exactly one copy per member: the copy
//! number `m_c` solving `c + m_c P'_q = 0 (mod p_{q+1})` for
//! `c = a' - i mod p_{q+1}`, read from a table built once per turn
//! ([`diophantine_solutions`]). No member is ever divided.
//!
//! Enumeration proceeds in two phases: (A) *inflation* — turn the wheel
//! while `P'_q` is below the target index `k_max`, harvesting the members
//! below the next prime's squared index as primes after each turn; then
//! (B) *deflation* — the wheel stops growing and multiples of each
//! successive prime are struck out by a merge scan against the arithmetic
//! progression of its odd multiples, which in index space starts at the
//! index of `p^2` and steps by `p`.

use crate::index::{OddIndex, OddNumber};
use crate::{Error, Result};
use std::io::{self, BufRead, Write};

/// Saturating index of `(2k + 3)^2`. Squared indices above `u64::MAX`
/// only ever serve as upper bounds that exceed any reachable `k_max`, so
/// saturation is safe.
fn square_index_saturating(k: u64) -> u64 {
    k.checked_mul(k)
        .and_then(|k2| k2.checked_mul(2))
        .and_then(|t| t.checked_add(6u64.saturating_mul(k)))
        .and_then(|t| t.checked_add(3))
        .unwrap_or(u64::MAX)
}

/// Sorted pseudo-prime indices of one wheel generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wheel {
    members: Vec<u64>,
    /// `P'_q`, the product of the odd primes through `p_q`.
    modulus: u64,
    /// Generation counter `q`.
    q: u32,
}

impl Wheel {
    /// `W'_1 = {1, 2}` with modulus `P'_1 = 3`.
    pub fn initial() -> Self {
        Wheel {
            members: vec![1, 2],
            modulus: 3,
            q: 1,
        }
    }

    /// Wraps an explicit member list; members must be strictly increasing.
    pub fn new(members: Vec<u64>, modulus: u64, q: u32) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "wheel members must be strictly increasing".into(),
            ));
        }
        Ok(Wheel {
            members,
            modulus,
            q,
        })
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generation(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// One wheel turn: `p` copies shifted by multiples of the modulus,
    /// minus the indices of multiples of `p`, truncated at `k_max`.
    ///
    /// `prime` must be the number of the wheel's first member (the next
    /// prime `p_{q+1}`), `prime_index` its index.
    pub fn turn(&self, prime: u64, prime_index: u64, k_max: u64) -> Result<Wheel> {
        let first = *self
            .members
            .first()
            .ok_or(Error::Corrupt("turning an empty wheel"))?;
        if first != prime_index || 2 * prime_index + 3 != prime {
            return Err(Error::Domain(format!(
                "wheel turn: prime {prime} (index {prime_index}) does not head the wheel (first member {first})"
            )));
        }
        let solutions = diophantine_solutions(prime, self.modulus)?;
        let new_modulus = self
            .modulus
            .checked_mul(prime)
            .ok_or(Error::Overflow("wheel modulus growth"))?;

        // Copy number to delete, per member: m_c for c = a' - i mod p.
        let deleted: Vec<u64> = self
            .members
            .iter()
            .map(|&a| solutions.multiplier((a - prime_index) % prime))
            .collect();

        let mut out = Vec::with_capacity(self.members.len() * prime as usize);
        'copies: for y in 0..prime {
            let base = match y.checked_mul(self.modulus) {
                Some(b) if b <= k_max => b,
                _ => break,
            };
            for (j, &a) in self.members.iter().enumerate() {
                let n = match a.checked_add(base) {
                    Some(n) if n <= k_max => n,
                    _ => {
                        if j == 0 {
                            break 'copies;
                        }
                        break;
                    }
                };
                if deleted[j] != y {
                    out.push(n);
                }
            }
        }
        Ok(Wheel {
            members: out,
            modulus: new_modulus,
            q: self.q + 1,
        })
    }

    /// Strikes out the arithmetic progression `square_prime_index + j * prime`
    /// by a single merge scan; members below the progression start are kept
    /// untouched.
    pub fn remove_multiples(&self, prime: u64, square_prime_index: u64) -> Wheel {
        Wheel {
            members: remove_progression(&self.members, prime, square_prime_index),
            modulus: self.modulus,
            q: self.q,
        }
    }

    /// Writes the debug dump: `q=<q> pi=<modulus> size=<n>` then one
    /// member per line.
    pub fn write_dump(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "q={} pi={} size={}", self.q, self.modulus, self.members.len())?;
        for m in &self.members {
            writeln!(w, "{m}")?;
        }
        Ok(())
    }

    /// Parses the dump format produced by [`Self::write_dump`].
    pub fn parse_dump(r: impl BufRead) -> Result<Wheel> {
        let bad = |msg: &str| Error::Domain(format!("wheel dump: {msg}"));
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .map_err(|e| bad(&format!("read error: {e}")))?;
        let mut fields = header.split_whitespace();
        let mut field = |prefix: &str| -> Result<u64> {
            let tok = fields
                .next()
                .ok_or_else(|| bad(&format!("missing {prefix} field")))?;
            tok.strip_prefix(prefix)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(&format!("malformed {prefix} field: {tok:?}")))
        };
        let q = field("q=")?;
        let pi = field("pi=")?;
        let size = field("size=")?;
        if fields.next().is_some() {
            return Err(bad("trailing tokens in header"));
        }
        let q = u32::try_from(q).map_err(|_| bad("q out of range"))?;
        let size = usize::try_from(size).map_err(|_| bad("size out of range"))?;
        if size > (1 << 33) {
            return Err(bad("size implausibly large"));
        }

        let mut members = Vec::with_capacity(size.min(1 << 20));
        for line in lines {
            let line = line.map_err(|e| bad(&format!("read error: {e}")))?;
            if line.is_empty() {
                continue;
            }
            let m: u64 = line
                .parse()
                .map_err(|_| bad(&format!("malformed member line: {line:?}")))?;
            if let Some(&prev) = members.last() {
                if m <= prev {
                    return Err(bad("members not strictly increasing"));
                }
            }
            members.push(m);
        }
        if members.len() != size {
            return Err(bad(&format!(
                "size mismatch: header says {size}, found {}",
                members.len()
            )));
        }
        Wheel::new(members, pi, q)
    }
}

fn remove_progression(members: &[u64], prime: u64, start: u64) -> Vec<u64> {
    let cut = members.partition_point(|&m| m < start);
    let mut out = Vec::with_capacity(members.len());
    out.extend_from_slice(&members[..cut]);
    let mut next_multiple = start;
    for &m in &members[cut..] {
        while m > next_multiple {
            next_multiple = match next_multiple.checked_add(prime) {
                Some(v) => v,
                None => {
                    out.push(m);
                    next_multiple = u64::MAX;
                    break;
                }
            };
        }
        if m == next_multiple {
            next_multiple = next_multiple.saturating_add(prime);
        } else if m < next_multiple {
            out.push(m);
        }
    }
    out
}

/// Merge of one progression against a frozen member array: dead entries
/// are flagged instead of rebuilding the array, so a strike costs the
/// progression length, not the wheel length. The member side advances by
/// binary search over the remaining slice.
fn strike_progression(members: &[u64], alive: &mut [bool], prime: u64, start: u64) {
    let mut pos = members.partition_point(|&m| m < start);
    let mut target = start;
    while pos < members.len() {
        let m = members[pos];
        while target < m {
            target = match target.checked_add(prime) {
                Some(t) => t,
                None => return,
            };
        }
        if m == target {
            alive[pos] = false;
            pos += 1;
            target = match target.checked_add(prime) {
                Some(t) => t,
                None => return,
            };
        } else {
            // m < target: jump the member side to the first member that
            // can match.
            pos += members[pos..].partition_point(|&v| v < target);
        }
    }
}

/// Map `c -> m_c` with `c + m_c P' = 0 (mod p)`: a bijection on
/// `[0, p - 1]` with `m_0 = 0`, built additively from the seed solution
/// `c_1 = p - (P' mod p)` which has `m = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineTable {
    prime: u64,
    solutions: Vec<u64>,
}

impl DiophantineTable {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn solutions(&self) -> &[u64] {
        &self.solutions
    }

    /// The copy number whose member lands on a multiple of `p`, for a
    /// residue `c` in `[0, p - 1]`.
    pub fn multiplier(&self, c: u64) -> u64 {
        self.solutions[c as usize]
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Builds the Diophantine solution table for `p` and `P'_q`; requires the
/// two to be coprime.
pub fn diophantine_solutions(prime: u64, pi_q: u64) -> Result<DiophantineTable> {
    if prime < 3 || prime % 2 == 0 {
        return Err(Error::Domain(format!(
            "diophantine_solutions requires an odd prime >= 3, got {prime}"
        )));
    }
    if gcd(prime, pi_q) != 1 {
        return Err(Error::Domain(format!(
            "diophantine_solutions requires gcd({prime}, {pi_q}) = 1"
        )));
    }
    let c1 = prime - (pi_q % prime);
    let mut solutions = vec![0u64; prime as usize];
    let mut c = 0u64;
    for m in 1..prime {
        c = (c + c1) % prime;
        solutions[c as usize] = m;
    }
    Ok(DiophantineTable { prime, solutions })
}

/// Mutable sieve state: recorded primes with their indices and squared
/// indices, the current wheel, and the index limit.
///
/// `primes[j + 1]` is the number of `prime_indices[j]`, and
/// `square_indices[j]` is the index of its square (saturating near the
/// integer-width limit; saturated entries always exceed any valid
/// `k_max`, so every comparison against them stays correct).
#[derive(Debug, Clone)]
pub struct WheelState {
    primes: Vec<u64>,
    prime_indices: Vec<u64>,
    square_indices: Vec<u64>,
    wheel: Wheel,
    k_max: u64,
}

impl WheelState {
    /// Initial state: primes `{2, 3, 5, 7}` recorded, wheel `W'_1`.
    pub fn new(k_max: u64) -> Self {
        WheelState {
            primes: vec![2, 3, 5, 7],
            prime_indices: vec![0, 1, 2],
            square_indices: vec![3, 11, 23],
            wheel: Wheel::initial(),
            k_max,
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn prime_indices(&self) -> &[u64] {
        &self.prime_indices
    }

    pub fn square_indices(&self) -> &[u64] {
        &self.square_indices
    }

    pub fn wheel(&self) -> &Wheel {
        &self.wheel
    }

    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    /// Number of recorded primes (`i_l`).
    pub fn count(&self) -> usize {
        self.primes.len()
    }

    fn push_prime_index(&mut self, w: u64) {
        let last_index = *self.prime_indices.last().expect("index list never empty");
        debug_assert!(w > last_index);
        let alpha = w - last_index;
        let n1 = *self.primes.last().expect("prime list never empty");
        // Squared-index gap: beta = 2 alpha^2 + 2 alpha n1.
        let beta = 2u64
            .saturating_mul(alpha)
            .saturating_mul(alpha)
            .saturating_add(2u64.saturating_mul(alpha).saturating_mul(n1));
        let sq = self
            .square_indices
            .last()
            .expect("square list never empty")
            .saturating_add(beta);
        self.primes.push(n1 + 2 * alpha);
        self.prime_indices.push(w);
        self.square_indices.push(sq);
    }

    /// Appends wheel members strictly between the last recorded prime
    /// index and `boundary` as primes.
    fn harvest_up_to(&mut self, boundary: u64) {
        let last = *self.prime_indices.last().expect("index list never empty");
        let start = self.wheel.members.partition_point(|&m| m <= last);
        let mut pos = start;
        while pos < self.wheel.members.len() && self.wheel.members[pos] < boundary {
            let w = self.wheel.members[pos];
            self.push_prime_index(w);
            pos += 1;
        }
    }
}

/// One wheel turn driven from the sieve state.
pub fn wheel_turn(state: &WheelState, prime: OddNumber, prime_index: OddIndex) -> Result<Wheel> {
    state
        .wheel
        .turn(prime.get(), prime_index.get(), state.k_max)
}

/// Progression removal driven from the sieve state.
pub fn remove_multiples(
    state: &WheelState,
    prime: OddNumber,
    square_prime_index: OddIndex,
) -> Wheel {
    state
        .wheel
        .remove_multiples(prime.get(), square_prime_index.get())
}

/// Records every wheel member below the square of the wheel's first
/// member (the next prime) as a new prime, extending the index and
/// squared-index lists in lockstep.
pub fn get_new_primes(state: &mut WheelState) -> Result<()> {
    let first = *state
        .wheel
        .members
        .first()
        .ok_or(Error::Corrupt("harvest from an empty wheel"))?;
    let boundary = square_index_saturating(first);
    state.harvest_up_to(boundary);
    Ok(())
}

/// Index wheel sieve: all primes up to `n_max` (inclusive), `n_max > 9`.
pub fn index_wheel_sieve(n_max: u64) -> Result<(Vec<u64>, usize)> {
    if n_max <= 9 {
        return Err(Error::Domain(format!(
            "index_wheel_sieve requires n_max > 9, got {n_max}"
        )));
    }
    let k_max = (n_max - 3) / 2;
    let mut st = WheelState::new(k_max);

    // Phase A: inflation. Do at least one turn; stop once the modulus
    // covers k_max.
    loop {
        let q = st.wheel.q as usize;
        let prime = *st
            .primes
            .get(q + 1)
            .ok_or(Error::Corrupt("prime list behind wheel generation"))?;
        let prime_index = *st
            .prime_indices
            .get(q)
            .ok_or(Error::Corrupt("index list behind wheel generation"))?;
        st.wheel = st.wheel.turn(prime, prime_index, k_max)?;
        get_new_primes(&mut st)?;
        if k_max <= st.wheel.modulus {
            break;
        }
    }

    // Phase B: deflation. The wheel stops changing size classes; freeze
    // the member array and flag deletions so striking one prime costs its
    // progression length, not the wheel length. Multiples of each next
    // prime are struck while the square of the previously consumed prime
    // is below k_max.
    let members = std::mem::take(&mut st.wheel.members);
    let mut alive = vec![true; members.len()];
    let mut harvest_pos = 0usize;
    let mut q = st.wheel.q as usize;
    loop {
        let prev_square = *st
            .square_indices
            .get(q - 1)
            .ok_or(Error::Corrupt("square list behind wheel generation"))?;
        if prev_square >= k_max {
            break;
        }
        let prime = *st
            .primes
            .get(q + 1)
            .ok_or(Error::Corrupt("prime list behind wheel generation"))?;
        let square_prime_index = *st
            .square_indices
            .get(q)
            .ok_or(Error::Corrupt("square list behind wheel generation"))?;
        // The consumed prime's own index is not part of its progression:
        // drop it explicitly, like the merge scan starting past the head.
        if let Ok(at) = members.binary_search(&st.prime_indices[q]) {
            alive[at] = false;
        }
        strike_progression(&members, &mut alive, prime, square_prime_index);

        // Harvest survivors below the square of the next prime to be
        // consumed; same boundary get_new_primes derives from the wheel
        // head in phase A.
        let boundary = *st
            .square_indices
            .get(q + 1)
            .ok_or(Error::Corrupt("square list behind wheel generation"))?;
        let last = *st.prime_indices.last().expect("index list never empty");
        while harvest_pos < members.len() && members[harvest_pos] <= last {
            harvest_pos += 1;
        }
        while harvest_pos < members.len() && members[harvest_pos] < boundary {
            if alive[harvest_pos] {
                st.push_prime_index(members[harvest_pos]);
            }
            harvest_pos += 1;
        }
        q += 1;
    }

    // Surviving members beyond the recorded primes are prime: the last
    // harvest only reached the last square boundary.
    let last = *st.prime_indices.last().expect("index list never empty");
    while harvest_pos < members.len() && members[harvest_pos] <= last {
        harvest_pos += 1;
    }
    while harvest_pos < members.len() && members[harvest_pos] <= k_max {
        if alive[harvest_pos] {
            st.push_prime_index(members[harvest_pos]);
        }
        harvest_pos += 1;
    }

    let primes = st.primes;
    let count = primes.len();
    Ok((primes, count))
}

/// Number-space wheel sieve used as a cross-check: same phase structure,
/// with multiples removed by direct enumeration.
pub fn wheel_sieve_reference(n_max: u64) -> Result<(Vec<u64>, usize)> {
    if n_max <= 9 {
        return Err(Error::Domain(format!(
            "wheel_sieve_reference requires n_max > 9, got {n_max}"
        )));
    }
    let mut primes: Vec<u64> = vec![2, 3];
    let mut wheel: Vec<u64> = vec![1, 5]; // W_1
    let mut modulus: u64 = 6; // P_1
    let mut last_eliminated;

    // Phase A: inflation.
    loop {
        let p = wheel[1]; // second-smallest member is the next prime
        if *primes.last().expect("primes nonempty") < p {
            primes.push(p);
        }
        wheel = reference_turn(&wheel, modulus, p, n_max);
        modulus = modulus.saturating_mul(p);
        last_eliminated = p;
        harvest_number(&mut primes, &wheel, n_max);
        if n_max <= modulus {
            break;
        }
    }

    // Phase B: deflation over a frozen member array with an aliveness
    // flag per position, mirroring the index sieve.
    let members = wheel;
    let mut alive = vec![true; members.len()];
    let mut harvest_pos = 0usize;
    while last_eliminated.saturating_mul(last_eliminated) < n_max {
        let pos = primes.partition_point(|&v| v <= last_eliminated);
        let p = *primes.get(pos).ok_or(Error::Corrupt(
            "reference wheel ran out of recorded primes",
        ))?;
        // Drop p itself from the wheel, then its odd multiples from p^2.
        if let Ok(at) = members.binary_search(&p) {
            alive[at] = false;
        }
        strike_progression(&members, &mut alive, 2 * p, p.saturating_mul(p));

        // Survivors below the square of the next prime are prime.
        let next = *primes.get(pos + 1).ok_or(Error::Corrupt(
            "reference wheel harvest fell behind the eliminations",
        ))?;
        let boundary = next.saturating_mul(next).min(n_max.saturating_add(1));
        let last = *primes.last().expect("primes nonempty");
        while harvest_pos < members.len() && members[harvest_pos] <= last {
            harvest_pos += 1;
        }
        while harvest_pos < members.len() && members[harvest_pos] < boundary {
            if alive[harvest_pos] {
                primes.push(members[harvest_pos]);
            }
            harvest_pos += 1;
        }
        last_eliminated = p;
    }

    // Flush the surviving tail (everything left is prime; the leading 1
    // sits below every recorded prime and is skipped with the rest).
    let last = *primes.last().expect("primes nonempty");
    while harvest_pos < members.len() && members[harvest_pos] <= last {
        harvest_pos += 1;
    }
    while harvest_pos < members.len() && members[harvest_pos] <= n_max {
        if alive[harvest_pos] {
            primes.push(members[harvest_pos]);
        }
        harvest_pos += 1;
    }
    let count = primes.len();
    Ok((primes, count))
}

/// One number-space turn: `min(p - 1, n_max / modulus) + 1` shifted
/// copies, minus the multiples of `p`, truncated at `n_max`.
fn reference_turn(wheel: &[u64], modulus: u64, p: u64, n_max: u64) -> Vec<u64> {
    let copies = (p - 1).min(n_max / modulus);
    let mut grown = Vec::with_capacity(wheel.len() * (copies as usize + 1));
    for x in 0..=copies {
        let base = x * modulus;
        for &m in wheel {
            match m.checked_add(base) {
                Some(v) if v <= n_max => grown.push(v),
                _ => break,
            }
        }
    }
    // Direct enumeration of multiples of p, removed by merge scan.
    remove_progression(&grown, p, p)
}

fn harvest_number(primes: &mut Vec<u64>, wheel: &[u64], n_max: u64) {
    // Members below the square of the next prime are prime.
    let boundary = if wheel.len() > 1 {
        wheel[1].saturating_mul(wheel[1])
    } else {
        u64::MAX
    };
    let last = *primes.last().expect("primes nonempty");
    let start = wheel.partition_point(|&m| m <= last);
    for &m in &wheel[start..] {
        if m >= boundary || m > n_max {
            break;
        }
        primes.push(m);
    }
}


#[cfg(test)]
mod phase_timing {
    use super::*;
    use std::time::Instant;

    #[test]
    #[ignore]
    fn profile_phases() {
        for &n_max in &[1_000_000u64, 10_000_000] {
            let k_max = (n_max - 3) / 2;
            let t0 = Instant::now();
            let mut st = WheelState::new(k_max);
            loop {
                let q = st.wheel.q as usize;
                let prime = st.primes[q + 1];
                let prime_index = st.prime_indices[q];
                let tt = Instant::now();
                st.wheel = st.wheel.turn(prime, prime_index, k_max).unwrap();
                eprintln!(
                    "  turn p={prime}: members={} modulus={} took {:?}",
                    st.wheel.len(),
                    st.wheel.modulus,
                    tt.elapsed()
                );
                let th = Instant::now();
                get_new_primes(&mut st).unwrap();
                eprintln!("    harvest -> {} primes, took {:?}", st.count(), th.elapsed());
                if k_max <= st.wheel.modulus {
                    break;
                }
            }
            eprintln!("phase A total for {n_max}: {:?}", t0.elapsed());

            let t1 = Instant::now();
            let members = std::mem::take(&mut st.wheel.members);
            let mut alive = vec![true; members.len()];
            let mut harvest_pos = 0usize;
            let mut q = st.wheel.q as usize;
            let mut strikes = 0u32;
            loop {
                let prev_square = st.square_indices[q - 1];
                if prev_square >= k_max {
                    break;
                }
                let prime = st.primes[q + 1];
                let square_prime_index = st.square_indices[q];
                if let Ok(at) = members.binary_search(&st.prime_indices[q]) {
                    alive[at] = false;
                }
                strike_progression(&members, &mut alive, prime, square_prime_index);
                strikes += 1;
                let boundary = st.square_indices[q + 1];
                let last = *st.prime_indices.last().unwrap();
                while harvest_pos < members.len() && members[harvest_pos] <= last {
                    harvest_pos += 1;
                }
                while harvest_pos < members.len() && members[harvest_pos] < boundary {
                    if alive[harvest_pos] {
                        st.push_prime_index(members[harvest_pos]);
                    }
                    harvest_pos += 1;
                }
                q += 1;
            }
            eprintln!("phase B for {n_max}: {strikes} strikes, {:?}", t1.elapsed());
        }
    }
}
