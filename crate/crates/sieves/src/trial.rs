//! Incremental trial division in number form and index form.
//!
//! A candidate `n` coprime to 6 is prime iff for every prime `p` in
//! `[5, sqrt(n)]` the value `A(n, p) = n - p^2` (when `n mod 4 = 1`) or
//! `B(n, p) = n - p(p + 2)` (when `n mod 4 = 3`) is, after exact division
//! by 4, nonzero modulo `p`. Consecutive primes differ by small gaps, so
//! `A`/`B` for the next prime is obtained by subtracting a precomputed
//! delta instead of recomputing a square: `dA(p, p') = a (a + 2p)` and
//! `dB = dA + 2a` with `a = p' - p`.
//!
//! The index form replaces `n` by `k = (n - 3) / 2` and `p` by `i`:
//! `A'(k, i) = (k - 3)/2 - i (i + 3)`, `B'(k, i) = (k - 6)/2 - i (i + 4)`,
//! with `dA'(i, i') = a' (a' + 2i + 3)` and `dB' = dA' + a'`. The
//! identities `4 A' = A` and `4 B' = B` make the two forms perform the
//! same divisibility tests on inputs a quarter the size.
//!
//! Both forms keep, per residue class, a *cap*: the smallest composite
//! (`p^2` for class 1, `p (p + 2)` for class 3) whose prime is not yet
//! covered by the delta lists. A candidate equal to the cap is composite
//! outright; a candidate beyond it extends the lists.

use crate::index::{OddIndex, OddNumber, ResidueClass};
use crate::{Error, Result};

/// `f_A(p) = p^2`.
pub fn f_a(p: OddNumber) -> Result<u64> {
    p.get().checked_mul(p.get()).ok_or(Error::Overflow("f_a"))
}

/// `f_B(p) = p (p + 2)`.
pub fn f_b(p: OddNumber) -> Result<u64> {
    p.get()
        .checked_mul(p.get() + 2)
        .ok_or(Error::Overflow("f_b"))
}

/// `dA(p, p') = a (a + 2p)` with `a = p' - p`; independent of the tested
/// number. Requires `p < p2`.
pub fn delta_a(p: OddNumber, p2: OddNumber) -> Result<u64> {
    if p >= p2 {
        return Err(Error::Domain(format!(
            "delta_a requires p < p2, got {p} >= {p2}"
        )));
    }
    let a = p2.get() - p.get();
    Ok(a * (a + 2 * p.get()))
}

/// `dB(p, p') = dA(p, p') + 2a`.
pub fn delta_b(p: OddNumber, p2: OddNumber) -> Result<u64> {
    let a = p2.get().saturating_sub(p.get());
    Ok(delta_a(p, p2)? + 2 * a)
}

/// `dA'(i, i') = a' (a' + 2i + 3)` with `a' = i' - i`. Requires `i < i2`.
pub fn delta_a_index(i: OddIndex, i2: OddIndex) -> Result<u64> {
    if i >= i2 {
        return Err(Error::Domain(format!(
            "delta_a_index requires i < i2, got {i} >= {i2}"
        )));
    }
    let a = i2.get() - i.get();
    Ok(a * (a + 2 * i.get() + 3))
}

/// `dB'(i, i') = dA'(i, i') + a'`.
pub fn delta_b_index(i: OddIndex, i2: OddIndex) -> Result<u64> {
    let a = i2.get().saturating_sub(i.get());
    Ok(delta_a_index(i, i2)? + a)
}

/// Result of a single local primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestOutcome {
    pub is_prime: bool,
    /// Modulo operations performed on candidate-derived values.
    pub modulo_ops: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Form {
    Number,
    Index,
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    /// Highest valid position in the delta lists for this class.
    cursor: usize,
    /// Smallest untested composite of this class: `p^2` (class 1) or
    /// `p (p + 2)` (class 3) for the prime the cursor points at, expressed
    /// as a number or an index depending on the table form.
    cap: u64,
}

/// Growable prime list plus incremental delta tables and per-class caps.
///
/// The list starts at `{5}`; 2 and 3 are handled by the candidate stride
/// (only numbers coprime to 6 are ever tested). Entry `j >= 1` of a delta
/// list is the delta between `primes[j - 1]` and `primes[j]`; entry 0 is
/// the delta from the implicit prime 3 to 5.
#[derive(Debug, Clone)]
pub struct DeltaTables {
    form: Form,
    primes: Vec<u64>,
    prime_indices: Vec<u64>,
    delta_a: Vec<u64>,
    delta_b: Vec<u64>,
    slots: [Slot; 2], // [Mod4Eq1, Mod4Eq3]
}

fn slot_pos(class: ResidueClass) -> usize {
    match class {
        ResidueClass::Mod4Eq1 => 0,
        ResidueClass::Mod4Eq3 => 1,
    }
}

impl DeltaTables {
    /// Tables for the number-form test: caps start at `25 = 5^2` and
    /// `35 = 5 * 7`.
    pub fn number_form() -> Self {
        DeltaTables {
            form: Form::Number,
            primes: vec![5],
            prime_indices: vec![1],
            delta_a: vec![16],
            delta_b: vec![20],
            slots: [
                Slot { cursor: 0, cap: 25 },
                Slot { cursor: 0, cap: 35 },
            ],
        }
    }

    /// Tables for the index-form test: caps start at the indices of 25
    /// and 35.
    pub fn index_form() -> Self {
        DeltaTables {
            form: Form::Index,
            primes: vec![5],
            prime_indices: vec![1],
            delta_a: vec![4],
            delta_b: vec![5],
            slots: [
                Slot { cursor: 0, cap: 11 },
                Slot { cursor: 0, cap: 16 },
            ],
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn prime_indices(&self) -> &[u64] {
        &self.prime_indices
    }

    /// Current cap for a residue class.
    pub fn cap(&self, class: ResidueClass) -> u64 {
        self.slots[slot_pos(class)].cap
    }

    /// Current delta-list cursor for a residue class.
    pub fn cursor(&self, class: ResidueClass) -> usize {
        self.slots[slot_pos(class)].cursor
    }

    fn push_prime(&mut self, p: u64) {
        self.primes.push(p);
        self.prime_indices.push((p - 3) / 2);
    }

    /// Extends the delta lists through position `j`, discovering new
    /// primes by self-testing if the list runs short. Candidates scanned
    /// here stay below the square of the largest known prime, so the
    /// recursion never needs a further extension.
    fn ensure_deltas_through(&mut self, j: usize, ops: &mut u64) -> Result<()> {
        while self.delta_a.len() <= j {
            let pos = self.delta_a.len();
            while self.primes.len() <= pos {
                let next = self.next_prime_after_last(ops)?;
                self.push_prime(next);
            }
            let (da, db) = match self.form {
                Form::Number => {
                    let (p, p2) = (self.primes[pos - 1], self.primes[pos]);
                    let a = p2 - p;
                    let da = a
                        .checked_mul(a + 2 * p)
                        .ok_or(Error::Overflow("delta extension"))?;
                    (da, da + 2 * a)
                }
                Form::Index => {
                    let (i, i2) = (self.prime_indices[pos - 1], self.prime_indices[pos]);
                    let a = i2 - i;
                    let da = a
                        .checked_mul(a + 2 * i + 3)
                        .ok_or(Error::Overflow("delta extension"))?;
                    (da, da + a)
                }
            };
            self.delta_a.push(da);
            self.delta_b.push(db);
        }
        Ok(())
    }

    /// Scans candidates coprime to 6 beyond the last known prime and
    /// returns the first prime found.
    fn next_prime_after_last(&mut self, ops: &mut u64) -> Result<u64> {
        let mut c = *self.primes.last().expect("prime list never empty");
        loop {
            c = c.checked_add(2).ok_or(Error::Overflow("prime scan"))?;
            if c % 3 == 0 {
                continue;
            }
            let class = if c % 4 == 1 {
                ResidueClass::Mod4Eq1
            } else {
                ResidueClass::Mod4Eq3
            };
            let found = match self.form {
                Form::Number => self.test_number(c, class, ops)?,
                Form::Index => {
                    let k = (c - 3) / 2;
                    let g = if k % 2 == 1 {
                        (k as i64 - 3) / 2
                    } else {
                        (k as i64 - 6) / 2
                    };
                    self.test_index(g, k, class, ops)?
                }
            };
            if found {
                return Ok(c);
            }
        }
    }

    /// Advances the cap of `class` until it is at least `value`. The cap
    /// moves by one delta per step in number form and two per step in
    /// index form (index deltas are quarters of number deltas, while cap
    /// gaps are halves).
    fn advance_caps(&mut self, value: u64, class: ResidueClass, ops: &mut u64) -> Result<()> {
        while value > self.slots[slot_pos(class)].cap {
            let j = self.slots[slot_pos(class)].cursor + 1;
            self.ensure_deltas_through(j, ops)?;
            let delta = match class {
                ResidueClass::Mod4Eq1 => self.delta_a[j],
                ResidueClass::Mod4Eq3 => self.delta_b[j],
            };
            let step = match self.form {
                Form::Number => delta,
                Form::Index => 2 * delta,
            };
            let slot = &mut self.slots[slot_pos(class)];
            slot.cursor = j;
            slot.cap = slot
                .cap
                .checked_add(step)
                .ok_or(Error::Overflow("cap advance"))?;
        }
        Ok(())
    }

    /// Core number-form test. Assumes `n >= 7`, coprime to 6, of the
    /// given residue class.
    fn test_number(&mut self, n: u64, class: ResidueClass, ops: &mut u64) -> Result<bool> {
        if n == self.slots[slot_pos(class)].cap {
            return Ok(false);
        }
        self.advance_caps(n, class, ops)?;
        if n == self.slots[slot_pos(class)].cap {
            return Ok(false);
        }
        if n > self.slots[slot_pos(class)].cap {
            return Err(Error::Corrupt("cap below candidate after extension"));
        }

        let cursor = self.slots[slot_pos(class)].cursor;
        let (seed, deltas) = match class {
            ResidueClass::Mod4Eq1 => (9i64, &self.delta_a), // f_A(3)
            ResidueClass::Mod4Eq3 => (15i64, &self.delta_b), // f_B(3)
        };
        let mut running = n as i64 - seed;
        for j in 0..=cursor {
            running -= deltas[j] as i64;
            *ops += 1;
            debug_assert_eq!(running % 4, 0, "A/B of a class-matched n is a multiple of 4");
            if (running / 4) % self.primes[j] as i64 == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Core index-form test. Assumes `k >= 2`, `2k + 3` coprime to 3, `g`
    /// equal to `g'_A(k)` or `g'_B(k)` per the class.
    fn test_index(&mut self, g: i64, k: u64, class: ResidueClass, ops: &mut u64) -> Result<bool> {
        if k == self.slots[slot_pos(class)].cap {
            return Ok(false);
        }
        self.advance_caps(k, class, ops)?;
        if k == self.slots[slot_pos(class)].cap {
            return Ok(false);
        }
        if k > self.slots[slot_pos(class)].cap {
            return Err(Error::Corrupt("cap below candidate after extension"));
        }

        let cursor = self.slots[slot_pos(class)].cursor;
        let deltas = match class {
            ResidueClass::Mod4Eq1 => &self.delta_a,
            ResidueClass::Mod4Eq3 => &self.delta_b,
        };
        let mut running = g;
        for j in 0..=cursor {
            running -= deltas[j] as i64;
            *ops += 1;
            if running % self.primes[j] as i64 == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Tests one number against the tables, extending them as needed.
    ///
    /// `n` must be at least 7 and coprime to 6. Out-of-order calls are
    /// fine: the cap update loops until the tables cover `n`.
    pub fn local_test_number(&mut self, n: u64) -> Result<TestOutcome> {
        if self.form != Form::Number {
            return Err(Error::Domain(
                "local_test_number called on index-form tables".into(),
            ));
        }
        if n < 7 || n % 2 == 0 || n % 3 == 0 {
            return Err(Error::Domain(format!(
                "local_test_number requires n >= 7 coprime to 6, got {n}"
            )));
        }
        if n > i64::MAX as u64 {
            return Err(Error::Overflow("local_test_number candidate"));
        }
        let class = if n % 4 == 1 {
            ResidueClass::Mod4Eq1
        } else {
            ResidueClass::Mod4Eq3
        };
        let mut ops = 0;
        let is_prime = self.test_number(n, class, &mut ops)?;
        Ok(TestOutcome {
            is_prime,
            modulo_ops: ops,
        })
    }

    /// Index-form counterpart of [`Self::local_test_number`]. `g` must be
    /// `(k - 3) / 2` for odd `k` and `(k - 6) / 2` for even `k`.
    pub fn local_test_index(&mut self, g: i64, k: u64) -> Result<TestOutcome> {
        if self.form != Form::Index {
            return Err(Error::Domain(
                "local_test_index called on number-form tables".into(),
            ));
        }
        if k < 2 || k % 3 == 0 {
            return Err(Error::Domain(format!(
                "local_test_index requires k >= 2 with k mod 3 != 0, got {k}"
            )));
        }
        if k > i64::MAX as u64 {
            return Err(Error::Overflow("local_test_index candidate"));
        }
        let class = if k % 2 == 1 {
            ResidueClass::Mod4Eq1
        } else {
            ResidueClass::Mod4Eq3
        };
        let expected_g = match class {
            ResidueClass::Mod4Eq1 => (k as i64 - 3) / 2,
            ResidueClass::Mod4Eq3 => (k as i64 - 6) / 2,
        };
        if g != expected_g {
            return Err(Error::Domain(format!(
                "local_test_index: g = {g} does not match k = {k} (expected {expected_g})"
            )));
        }
        let mut ops = 0;
        let is_prime = self.test_index(g, k, class, &mut ops)?;
        Ok(TestOutcome {
            is_prime,
            modulo_ops: ops,
        })
    }
}

/// Output of a full enumeration run, with its modulo-operation count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationRun {
    pub primes: Vec<u64>,
    pub count: usize,
    pub modulo_ops: u64,
}

fn check_limit(n_max: u64) -> Result<()> {
    if n_max < 7 {
        return Err(Error::Domain(format!(
            "enumeration requires n_max >= 7, got {n_max}"
        )));
    }
    if n_max > i64::MAX as u64 {
        return Err(Error::Overflow("enumeration limit"));
    }
    Ok(())
}

/// Number-form enumeration of all primes up to `n_max` (inclusive).
///
/// Candidates follow the `6m + 1` / `6m + 5` stride; the residue class
/// toggles with the parity of `m`.
pub fn prime_enumeration_instrumented(n_max: u64) -> Result<EnumerationRun> {
    check_limit(n_max)?;
    let mut tables = DeltaTables::number_form();
    let mut ops = 0u64;
    let mut m = 1u64;
    let mut n = 7u64;
    let mut class = ResidueClass::Mod4Eq3; // m = 1: (6m + 1) mod 4 = 3
    while n <= n_max {
        if tables.test_number(n, class, &mut ops)? {
            tables.push_prime(n);
        }
        n = 6 * m + 5;
        if n <= n_max && tables.test_number(n, class, &mut ops)? {
            tables.push_prime(n);
        }
        m += 1;
        n = 6 * m + 1;
        class = match class {
            ResidueClass::Mod4Eq1 => ResidueClass::Mod4Eq3,
            ResidueClass::Mod4Eq3 => ResidueClass::Mod4Eq1,
        };
    }
    let mut primes = vec![2, 3];
    primes.extend_from_slice(&tables.primes);
    let count = primes.len();
    Ok(EnumerationRun {
        primes,
        count,
        modulo_ops: ops,
    })
}

/// Index-form enumeration of all primes up to `n_max` (inclusive).
///
/// Walks indices `k = 3m - 1, 3m + 1` and maintains the running value
/// `g'` incrementally with the `+1, +2, +1, -1` schedule over each pair
/// of `m` phases.
pub fn index_prime_enumeration_instrumented(n_max: u64) -> Result<EnumerationRun> {
    check_limit(n_max)?;
    let k_max = (n_max - 3) / 2;
    let mut tables = DeltaTables::index_form();
    let mut ops = 0u64;
    let mut k = 2u64;
    let mut g = -2i64;
    while k <= k_max {
        // k = 3(2t + 1) - 1, even
        if tables.test_index(g, k, ResidueClass::Mod4Eq3, &mut ops)? {
            tables.push_prime(2 * k + 3);
        }
        k += 2; // 3(2t + 1) + 1, even
        g += 1;
        if k <= k_max && tables.test_index(g, k, ResidueClass::Mod4Eq3, &mut ops)? {
            tables.push_prime(2 * k + 3);
        }
        k += 1; // 3(2t + 2) - 1, odd
        g += 2;
        if k <= k_max && tables.test_index(g, k, ResidueClass::Mod4Eq1, &mut ops)? {
            tables.push_prime(2 * k + 3);
        }
        k += 2; // 3(2t + 2) + 1, odd
        g += 1;
        if k <= k_max && tables.test_index(g, k, ResidueClass::Mod4Eq1, &mut ops)? {
            tables.push_prime(2 * k + 3);
        }
        k += 1; // next phase: 3(2t + 3) - 1
        g -= 1;
    }
    let mut primes = vec![2, 3];
    primes.extend_from_slice(&tables.primes);
    let count = primes.len();
    Ok(EnumerationRun {
        primes,
        count,
        modulo_ops: ops,
    })
}

/// All primes up to `n_max` by number-form trial division.
pub fn prime_enumeration(n_max: u64) -> Result<(Vec<u64>, usize)> {
    let run = prime_enumeration_instrumented(n_max)?;
    Ok((run.primes, run.count))
}

/// All primes up to `n_max` by index-form trial division.
pub fn index_prime_enumeration(n_max: u64) -> Result<(Vec<u64>, usize)> {
    let run = index_prime_enumeration_instrumented(n_max)?;
    Ok((run.primes, run.count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn odd(n: u64) -> OddNumber {
        OddNumber::new(n).unwrap()
    }

    fn idx(k: u64) -> OddIndex {
        OddIndex::new(k).unwrap()
    }

    #[test]
    fn f_values() {
        assert_eq!(f_a(odd(3)).unwrap(), 9);
        assert_eq!(f_b(odd(3)).unwrap(), 15);
        assert_eq!(f_a(odd(5)).unwrap(), 25);
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_a(odd(3), odd(5)).unwrap(), 16);
        assert_eq!(delta_b(odd(3), odd(5)).unwrap(), 20);
        assert_eq!(delta_a(odd(5), odd(7)).unwrap(), 24);
        assert!(delta_a(odd(5), odd(5)).is_err());
        assert!(delta_b(odd(7), odd(5)).is_err());
    }

    #[test]
    fn delta_index_values() {
        assert_eq!(delta_a_index(idx(0), idx(1)).unwrap(), 4);
        assert_eq!(delta_b_index(idx(0), idx(1)).unwrap(), 5);
        assert_eq!(delta_a_index(idx(1), idx(2)).unwrap(), 6);
        assert!(delta_a_index(idx(1), idx(1)).is_err());
    }

    #[test]
    fn index_deltas_are_quarters() {
        // dA' = dA / 4 and dB' = dB / 2 - a/... checked directly: the
        // prime pair (3, 5) has indices (0, 1).
        assert_eq!(
            4 * delta_a_index(idx(0), idx(1)).unwrap(),
            delta_a(odd(3), odd(5)).unwrap()
        );
        // General pairs.
        let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31];
        for w in primes.windows(2) {
            let (p, p2) = (w[0], w[1]);
            let (i, i2) = ((p - 3) / 2, (p2 - 3) / 2);
            assert_eq!(
                4 * delta_a_index(idx(i), idx(i2)).unwrap(),
                delta_a(odd(p), odd(p2)).unwrap(),
                "pair {p},{p2}"
            );
        }
    }

    #[test]
    fn delta_matches_a_difference_for_random_n() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..100 {
            let n = rng.gen_range(100u64..1_000_000) | 1;
            let a_5 = n as i64 - 25;
            let a_7 = n as i64 - 49;
            assert_eq!(
                (a_5 - a_7) as u64,
                delta_a(odd(5), odd(7)).unwrap(),
                "n={n}"
            );
            let b_5 = n as i64 - 35;
            let b_7 = n as i64 - 63;
            assert_eq!((b_5 - b_7) as u64, delta_b(odd(5), odd(7)).unwrap());
        }
    }

    #[test]
    fn local_test_number_examples() {
        let mut t = DeltaTables::number_form();
        assert!(!t.local_test_number(25).unwrap().is_prime); // cap1 itself
        let mut t = DeltaTables::number_form();
        assert!(t.local_test_number(23).unwrap().is_prime);
        let mut t = DeltaTables::number_form();
        assert!(!t.local_test_number(49).unwrap().is_prime); // catch-up lands on cap
    }

    #[test]
    fn local_test_number_out_of_order() {
        // Arbitrary call order must still be sound thanks to the cap
        // catch-up loop and prime self-extension.
        let mut t = DeltaTables::number_form();
        for &n in &[997u64, 7, 121, 9409, 25, 1009, 49, 991] {
            let expected = oracle::is_prime_naive(n);
            assert_eq!(
                t.local_test_number(n).unwrap().is_prime,
                expected,
                "n={n}"
            );
        }
    }

    #[test]
    fn local_test_number_rejects_bad_input() {
        let mut t = DeltaTables::number_form();
        assert!(t.local_test_number(6).is_err());
        assert!(t.local_test_number(9).is_err());
        assert!(t.local_test_number(10).is_err());
        assert!(t.local_test_number(5).is_err());
        let mut t = DeltaTables::index_form();
        assert!(t.local_test_number(25).is_err());
    }

    #[test]
    fn local_test_index_examples() {
        let mut t = DeltaTables::index_form();
        assert!(!t.local_test_index(4, 11).unwrap().is_prime); // 25
        let mut t = DeltaTables::index_form();
        assert!(t.local_test_index(2, 10).unwrap().is_prime); // 23
        let mut t = DeltaTables::index_form();
        assert!(!t.local_test_index(5, 16).unwrap().is_prime); // 35
    }

    #[test]
    fn local_test_index_validates_g() {
        let mut t = DeltaTables::index_form();
        assert!(t.local_test_index(3, 11).is_err()); // wrong g for k = 11
        assert!(t.local_test_index(0, 3).is_err()); // k mod 3 = 0
        assert!(t.local_test_index(0, 1).is_err()); // below domain
    }

    #[test]
    fn local_test_index_agrees_with_oracle() {
        let mut t = DeltaTables::index_form();
        for k in 2..2_000u64 {
            if k % 3 == 0 {
                continue;
            }
            let g = if k % 2 == 1 {
                (k as i64 - 3) / 2
            } else {
                (k as i64 - 6) / 2
            };
            let expected = oracle::is_prime_naive(2 * k + 3);
            assert_eq!(
                t.local_test_index(g, k).unwrap().is_prime,
                expected,
                "k={k} n={}",
                2 * k + 3
            );
        }
    }

    #[test]
    fn enumeration_smallest() {
        let (primes, count) = prime_enumeration(7).unwrap();
        assert_eq!(primes, vec![2, 3, 5, 7]);
        assert_eq!(count, 4);
        let (primes, count) = index_prime_enumeration(7).unwrap();
        assert_eq!(primes, vec![2, 3, 5, 7]);
        assert_eq!(count, 4);
    }

    #[test]
    fn enumeration_rejects_below_seven() {
        assert!(prime_enumeration(6).is_err());
        assert!(index_prime_enumeration(5).is_err());
    }

    #[test]
    fn enumeration_hundred() {
        let expected = oracle::eratosthenes(100).unwrap().primes;
        assert_eq!(expected.len(), 25);
        assert_eq!(prime_enumeration(100).unwrap().0, expected);
        assert_eq!(index_prime_enumeration(100).unwrap().0, expected);
    }

    #[test]
    fn enumeration_agreement_exhaustive_small() {
        for n_max in (7..=3_001u64).step_by(2) {
            let expected = oracle::eratosthenes(n_max).unwrap().primes;
            assert_eq!(prime_enumeration(n_max).unwrap().0, expected, "n={n_max}");
            assert_eq!(
                index_prime_enumeration(n_max).unwrap().0,
                expected,
                "n={n_max}"
            );
        }
    }

    #[test]
    fn enumeration_agreement_sampled_to_1e5() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        let mut limits: Vec<u64> = (0..200).map(|_| rng.gen_range(3_001..=49_999) * 2 + 1).collect();
        limits.push(99_999);
        limits.push(100_000 - 1);
        for n_max in limits {
            let expected = oracle::eratosthenes(n_max).unwrap().primes;
            assert_eq!(prime_enumeration(n_max).unwrap().0, expected, "n={n_max}");
            assert_eq!(
                index_prime_enumeration(n_max).unwrap().0,
                expected,
                "n={n_max}"
            );
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(prime_enumeration(100_000).unwrap().1, 9_592);
        assert_eq!(index_prime_enumeration(100_000).unwrap().1, 9_592);
    }

    #[test]
    fn equal_modulo_ops() {
        for n_max in [1_000u64, 10_000, 100_000] {
            let a = prime_enumeration_instrumented(n_max).unwrap();
            let b = index_prime_enumeration_instrumented(n_max).unwrap();
            assert_eq!(a.primes, b.primes);
            assert_eq!(
                a.modulo_ops, b.modulo_ops,
                "modulo counts diverge at n_max={n_max}"
            );
            assert!(a.modulo_ops > 0);
        }
    }

    #[test]
    fn quarter_identity_over_grid() {
        // 4 A'(k, i) = A(2k + 3, 2i + 3) and 4 B'(k, i) = B(2k + 3, 2i + 3)
        // over class-matched k and prime indices i with (2i + 3)^2 <= 2k + 3.
        let primes: Vec<u64> = oracle::eratosthenes(200)
            .unwrap()
            .primes
            .into_iter()
            .filter(|&p| p >= 3)
            .collect();
        for k in 3..=10_000u64 {
            let n = 2 * k + 3;
            for &p in &primes {
                if p * p > n {
                    break;
                }
                let i = (p - 3) / 2;
                if k % 2 == 1 {
                    let a_idx = (k as i64 - 3) / 2 - (i * (i + 3)) as i64;
                    let a_num = n as i64 - (p * p) as i64;
                    assert_eq!(4 * a_idx, a_num, "A: k={k} i={i}");
                } else {
                    let b_idx = (k as i64 - 6) / 2 - (i * (i + 4)) as i64;
                    let b_num = n as i64 - (p * (p + 2)) as i64;
                    assert_eq!(4 * b_idx, b_num, "B: k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn cap_soundness_after_tests() {
        let mut t = DeltaTables::number_form();
        for n in [7u64, 49, 1021, 25_117, 99_991] {
            let _ = t.local_test_number(n).unwrap();
            let c1 = t.cursor(ResidueClass::Mod4Eq1);
            let c2 = t.cursor(ResidueClass::Mod4Eq3);
            assert_eq!(t.cap(ResidueClass::Mod4Eq1), t.primes()[c1] * t.primes()[c1]);
            assert_eq!(
                t.cap(ResidueClass::Mod4Eq3),
                t.primes()[c2] * (t.primes()[c2] + 2)
            );
        }

        let mut t = DeltaTables::index_form();
        for k in [2u64, 23, 511, 12_556, 49_999] {
            let g = if k % 2 == 1 {
                (k as i64 - 3) / 2
            } else {
                (k as i64 - 6) / 2
            };
            let _ = t.local_test_index(g, k).unwrap();
            let c1 = t.cursor(ResidueClass::Mod4Eq1);
            let c2 = t.cursor(ResidueClass::Mod4Eq3);
            let p1 = t.primes()[c1];
            let p2 = t.primes()[c2];
            assert_eq!(t.cap(ResidueClass::Mod4Eq1), (p1 * p1 - 3) / 2);
            assert_eq!(t.cap(ResidueClass::Mod4Eq3), (p2 * (p2 + 2) - 3) / 2);
        }
    }
}
