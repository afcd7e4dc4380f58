//! Sieve of Atkin over numbers and over odd-number indices.
//!
//! A square-free `n > 3` is prime iff it has an odd number of
//! representations by one of three binary quadratic forms, filtered by
//! `n mod 12`:
//!
//! - `n = 4x^2 + y^2` with `n mod 12` in `{1, 5}` (equivalently
//!   `n mod 4 = 1`), which forces `y` odd;
//! - `n = 3x^2 + y^2` with `n mod 12 = 7`, `x` and `y` of opposite parity;
//! - `n = 3x^2 - y^2` with `n mod 12 = 11`, `y < x`, opposite parity.
//!
//! The sieve toggles a flag per representation, then clears multiples of
//! prime squares. The index variant works on `k = (n - 3) / 2`: the three
//! forms become `k = 2x^2 + (y^2 - 3)/2`, `(3x^2 + y^2 - 3)/2` and
//! `(3x^2 - y^2 - 3)/2`, the filters become `k mod 6` in `{1, 5}`, `= 2`,
//! `= 4`, and the flag array is half the size because even numbers never
//! appear.
//!
//! Since the form residue mod 12 depends only on `x mod 12` and
//! `y mod 12`, a precomputed 12x12 table of applicable cases removes
//! every per-candidate modulo; [`sieve_of_atkin_tabled`] uses it.
//!
//! All entry points return primes strictly below `n_max`, beginning
//! `{2, 3}`.

use crate::{Error, Result};

/// The three quadratic forms of the sieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadForm {
    /// `4x^2 + y^2`, toggled for `n mod 12` in `{1, 5}`.
    FourXSqPlusYSq,
    /// `3x^2 + y^2`, toggled for `n mod 12 = 7`.
    ThreeXSqPlusYSq,
    /// `3x^2 - y^2` (`y < x`), toggled for `n mod 12 = 11`.
    ThreeXSqMinusYSq,
}

const ALL_FORMS: [QuadForm; 3] = [
    QuadForm::FourXSqPlusYSq,
    QuadForm::ThreeXSqPlusYSq,
    QuadForm::ThreeXSqMinusYSq,
];

fn form_bit(form: QuadForm) -> u8 {
    match form {
        QuadForm::FourXSqPlusYSq => 1,
        QuadForm::ThreeXSqPlusYSq => 2,
        QuadForm::ThreeXSqMinusYSq => 4,
    }
}

/// Subset of [`QuadForm`]s applicable to one `(x mod 12, y mod 12)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FormSet(u8);

impl FormSet {
    pub fn contains(self, form: QuadForm) -> bool {
        self.0 & form_bit(form) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = QuadForm> {
        ALL_FORMS.into_iter().filter(move |&f| self.contains(f))
    }

    fn insert(&mut self, form: QuadForm) {
        self.0 |= form_bit(form);
    }
}

/// Which forms apply for each `(x mod 12, y mod 12)` pair.
///
/// Rows and columns with `y mod 12` in `{0, 6}` are empty: no odd number
/// filtered by the sieve arises there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCaseTable {
    cases: [[FormSet; 12]; 12],
}

impl ResidueCaseTable {
    /// The form set for `x mod 12 = a`, `y mod 12 = b`.
    pub fn get(&self, a: usize, b: usize) -> FormSet {
        self.cases[a][b]
    }
}

/// Builds the 12x12 dispatch grid from the congruence and parity
/// conditions of each form.
pub fn residue_case_table() -> ResidueCaseTable {
    let mut cases = [[FormSet::default(); 12]; 12];
    for a in 0..12u64 {
        for b in 0..12u64 {
            let cell = &mut cases[a as usize][b as usize];
            let r1 = (4 * a * a + b * b) % 12;
            if (r1 == 1 || r1 == 5) && b % 2 == 1 {
                cell.insert(QuadForm::FourXSqPlusYSq);
            }
            let opposite = (a + b) % 2 == 1;
            if (3 * a * a + b * b) % 12 == 7 && opposite {
                cell.insert(QuadForm::ThreeXSqPlusYSq);
            }
            // 3a^2 + 144 > b^2 for b <= 11, so the subtraction stays in u64.
            if (3 * a * a + 144 - b * b) % 12 == 11 && opposite {
                cell.insert(QuadForm::ThreeXSqMinusYSq);
            }
        }
    }
    ResidueCaseTable { cases }
}

fn check_atkin_limit(n_max: u64) -> Result<()> {
    if n_max <= 3 {
        return Err(Error::Domain(format!(
            "sieve of Atkin requires n_max > 3, got {n_max}"
        )));
    }
    Ok(())
}

/// Flag-array length for the index sieve: the number of indices `k` with
/// `2k + 3 < n_max`.
pub(crate) fn index_sieve_len(n_max: u64) -> u64 {
    (n_max - 2) / 2
}

/// Generous iteration bounds; every candidate is range-guarded, so these
/// only need to cover all solutions.
fn xy_bounds(n_max: u64) -> (u64, u64) {
    ((n_max / 2).isqrt() + 1, n_max.isqrt() + 1)
}

/// Runs the three toggle phases in number space, reporting each toggled
/// `n` to the sink.
fn toggle_number_phases(n_max: u64, toggle: &mut impl FnMut(u64)) {
    let (x_max, y_max) = xy_bounds(n_max);
    // Case 4x^2 + y^2: all x, odd y.
    for x in 1..=x_max {
        let mut y = 1;
        while y <= y_max {
            let n = 4 * x * x + y * y;
            if n < n_max && (n % 12 == 1 || n % 12 == 5) {
                toggle(n);
            }
            y += 2;
        }
    }
    // Cases 3x^2 + y^2 and 3x^2 - y^2: opposite parity.
    let mut pass = |x0: u64, y0: u64| {
        let mut x = x0;
        while x <= x_max {
            let mut y = y0;
            while y <= y_max {
                let n = 3 * x * x + y * y;
                if n < n_max && n % 12 == 7 {
                    toggle(n);
                }
                if x > y {
                    let n = 3 * x * x - y * y;
                    if n < n_max && n % 12 == 11 {
                        toggle(n);
                    }
                }
                y += 2;
            }
            x += 2;
        }
    };
    pass(1, 2); // x odd, y even
    pass(2, 1); // x even, y odd
}

/// Toggle phases in index space; reports toggled indices `k`.
fn toggle_index_phases(n_max: u64, toggle: &mut impl FnMut(u64)) {
    let k_len = index_sieve_len(n_max);
    let (x_max, y_max) = xy_bounds(n_max);
    for x in 1..=x_max {
        let mut y = 1;
        while y <= y_max {
            // 2x^2 + (y^2 - 3)/2, computed without going negative at y = 1.
            let t = 4 * x * x + y * y;
            debug_assert_eq!(t % 2, 1);
            let k = (t - 3) / 2;
            if k < k_len && (k % 6 == 1 || k % 6 == 5) {
                toggle(k);
            }
            y += 2;
        }
    }
    let mut pass = |x0: u64, y0: u64| {
        let mut x = x0;
        while x <= x_max {
            let mut y = y0;
            while y <= y_max {
                let t = 3 * x * x + y * y;
                debug_assert_eq!(t % 2, 1);
                let k = (t - 3) / 2;
                if k < k_len && k % 6 == 2 {
                    toggle(k);
                }
                if x > y {
                    let t = 3 * x * x - y * y;
                    debug_assert_eq!(t % 2, 1);
                    let k = (t - 3) / 2;
                    if k < k_len && k % 6 == 4 {
                        toggle(k);
                    }
                }
                y += 2;
            }
            x += 2;
        }
    };
    pass(1, 2);
    pass(2, 1);
}

/// Table-driven toggle phases: one pass over all `(x, y)` with the form
/// set looked up per 12x12 cell, no modulo per candidate. Residue
/// trackers replace `mod 12`.
fn toggle_tabled_phases(
    n_max: u64,
    table: &ResidueCaseTable,
    index_domain: bool,
    toggle: &mut impl FnMut(u64),
) {
    let k_len = index_sieve_len(n_max);
    let (x_max, y_max) = xy_bounds(n_max);
    let mut xr = 1usize;
    for x in 1..=x_max {
        let mut yr = 1usize;
        let mut y = 1u64;
        while y <= y_max {
            let set = table.get(xr, yr);
            if !set.is_empty() {
                if set.contains(QuadForm::FourXSqPlusYSq) {
                    let n = 4 * x * x + y * y;
                    if index_domain {
                        let k = (n - 3) / 2;
                        if k < k_len {
                            toggle(k);
                        }
                    } else if n < n_max {
                        toggle(n);
                    }
                }
                if set.contains(QuadForm::ThreeXSqPlusYSq) {
                    let n = 3 * x * x + y * y;
                    if index_domain {
                        let k = (n - 3) / 2;
                        if k < k_len {
                            toggle(k);
                        }
                    } else if n < n_max {
                        toggle(n);
                    }
                }
                if set.contains(QuadForm::ThreeXSqMinusYSq) && x > y {
                    let n = 3 * x * x - y * y;
                    if index_domain {
                        let k = (n - 3) / 2;
                        if k < k_len {
                            toggle(k);
                        }
                    } else if n < n_max {
                        toggle(n);
                    }
                }
            }
            y += 1;
            yr += 1;
            if yr == 12 {
                yr = 0;
            }
        }
        xr += 1;
        if xr == 12 {
            xr = 0;
        }
    }
}

fn collect_number_sieve(n_max: u64, mut sieve: Vec<bool>) -> (Vec<u64>, usize) {
    // Clear multiples of prime squares (odd multiples only: step 2n^2).
    let mut n = 5u64;
    while n * n < n_max {
        if sieve[n as usize] {
            let mut i = n * n;
            while i < n_max {
                sieve[i as usize] = false;
                i += 2 * n * n;
            }
        }
        n += 2;
    }
    let mut primes = vec![2u64, 3];
    let mut n = 5u64;
    while n < n_max {
        if sieve[n as usize] {
            primes.push(n);
        }
        n += 2;
    }
    let count = primes.len();
    (primes, count)
}

fn collect_index_sieve(n_max: u64, mut sieve: Vec<bool>) -> (Vec<u64>, usize) {
    let k_len = index_sieve_len(n_max);
    // Square removal: the index of (2k + 3)^2 is 2k^2 + 6k + 3, and the
    // number-space step of 2 n^2 is n^2 = (2k + 3)^2 in index space.
    let mut k = 1u64;
    loop {
        let sq = 2 * k * k + 6 * k + 3;
        if sq >= k_len {
            break;
        }
        if sieve[k as usize] {
            let step = (2 * k + 3) * (2 * k + 3);
            let mut i = sq;
            while i < k_len {
                sieve[i as usize] = false;
                i += step;
            }
        }
        k += 1;
    }
    let mut primes = vec![2u64, 3];
    for k in 1..k_len {
        if sieve[k as usize] {
            primes.push(2 * k + 3);
        }
    }
    let count = primes.len();
    (primes, count)
}

/// Sieve of Atkin in number space: all primes `< n_max`.
pub fn sieve_of_atkin(n_max: u64) -> Result<(Vec<u64>, usize)> {
    check_atkin_limit(n_max)?;
    let len = usize::try_from(n_max).map_err(|_| Error::Overflow("atkin sieve size"))?;
    let mut sieve = vec![false; len];
    toggle_number_phases(n_max, &mut |n| sieve[n as usize] = !sieve[n as usize]);
    Ok(collect_number_sieve(n_max, sieve))
}

/// Sieve of Atkin in index space: all primes `< n_max`, with a flag array
/// of half the length.
pub fn index_sieve_of_atkin(n_max: u64) -> Result<(Vec<u64>, usize)> {
    check_atkin_limit(n_max)?;
    let len = usize::try_from(index_sieve_len(n_max))
        .map_err(|_| Error::Overflow("atkin index sieve size"))?;
    let mut sieve = vec![false; len];
    toggle_index_phases(n_max, &mut |k| sieve[k as usize] = !sieve[k as usize]);
    Ok(collect_index_sieve(n_max, sieve))
}

/// Table-driven sieve of Atkin in either domain. Output is identical to
/// the corresponding base sieve; the per-candidate congruence checks are
/// replaced by [`ResidueCaseTable`] lookups.
pub fn sieve_of_atkin_tabled(n_max: u64, use_index_domain: bool) -> Result<(Vec<u64>, usize)> {
    check_atkin_limit(n_max)?;
    let table = residue_case_table();
    if use_index_domain {
        let len = usize::try_from(index_sieve_len(n_max))
            .map_err(|_| Error::Overflow("atkin index sieve size"))?;
        let mut sieve = vec![false; len];
        toggle_tabled_phases(n_max, &table, true, &mut |k| {
            sieve[k as usize] = !sieve[k as usize]
        });
        Ok(collect_index_sieve(n_max, sieve))
    } else {
        let len = usize::try_from(n_max).map_err(|_| Error::Overflow("atkin sieve size"))?;
        let mut sieve = vec![false; len];
        toggle_tabled_phases(n_max, &table, false, &mut |n| {
            sieve[n as usize] = !sieve[n as usize]
        });
        Ok(collect_number_sieve(n_max, sieve))
    }
}
