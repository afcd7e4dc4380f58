//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The criteria are serialized through a mutex so the timing-sensitive
//! trend measurement never shares the machine with the heavy
//! equivalence sweeps.

use sieve_bench::fit::{fit_records, fit_series, FitModel};
use sieve_bench::{parse_csv, run_algorithm, run_benchmarks, write_csv, AlgorithmId};
use sieves::index::{OddIndex, OddNumber};
use sieves::wheel::Wheel;
use sieves::{atkin, oracle, trial, wheel};
use std::sync::Mutex;

static SERIAL: Mutex<()> = Mutex::new(());

const SIX_MAIN: [AlgorithmId; 6] = [
    AlgorithmId::Trial,
    AlgorithmId::IndexTrial,
    AlgorithmId::Atkin,
    AlgorithmId::IndexAtkin,
    AlgorithmId::Wheel,
    AlgorithmId::IndexWheel,
];

fn criterion(name: &str, body: impl FnOnce() -> Result<(), String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    match body() {
        Ok(()) => println!("[PASS] {name}"),
        Err(msg) => {
            println!("[FAIL] {name}: {msg}");
            panic!("acceptance criterion failed: {name}: {msg}");
        }
    }
}

#[test]
fn criterion_1_oracle_equivalence_small_range() {
    criterion(
        "1: all six algorithms equal the oracle for every odd n_max in [11, 10^4]",
        || {
            let full = oracle::eratosthenes(10_000).map_err(|e| e.to_string())?.primes;
            let mut n_max = 11u64;
            while n_max <= 10_000 {
                let cut = full.partition_point(|&p| p <= n_max);
                let expected = &full[..cut];
                for algo in SIX_MAIN {
                    let got = run_algorithm(algo, n_max).map_err(|e| e.to_string())?;
                    if got != expected {
                        return Err(format!("{algo} diverges at n_max={n_max}"));
                    }
                }
                n_max += 2;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_2_oracle_equivalence_at_1e7() {
    criterion(
        "2: all six algorithms return the 664579 primes up to 10^7, list-identical",
        || {
            let expected = oracle::eratosthenes(10_000_000)
                .map_err(|e| e.to_string())?
                .primes;
            if expected.len() != 664_579 {
                return Err(format!("oracle count {} != 664579", expected.len()));
            }
            for algo in SIX_MAIN {
                let got = run_algorithm(algo, 10_000_000).map_err(|e| e.to_string())?;
                if got.len() != 664_579 {
                    return Err(format!("{algo} count {} != 664579", got.len()));
                }
                if got != expected {
                    return Err(format!("{algo} list differs from oracle"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_3_wheel_exactness() {
    criterion(
        "3: W'_1 turn gives {2,4,5,7,8,10,13,14}; |W'_q| = 2,8,48,480,5760,92160 for q=1..6",
        || {
            let w2 = Wheel::initial()
                .turn(5, 1, u64::MAX / 4)
                .map_err(|e| e.to_string())?;
            if w2.members() != [2, 4, 5, 7, 8, 10, 13, 14] {
                return Err(format!("W'_2 = {:?}", w2.members()));
            }

            let expected_sizes = [2usize, 8, 48, 480, 5760, 92160];
            let turn_primes = [5u64, 7, 11, 13, 17];
            let mut w = Wheel::initial();
            for (q, &size) in expected_sizes.iter().enumerate() {
                if w.len() != size {
                    return Err(format!("|W'_{}| = {}, expected {size}", q + 1, w.len()));
                }
                if q + 1 < expected_sizes.len() {
                    let head = w.members()[0];
                    w = w
                        .turn(turn_primes[q], head, u64::MAX / 4)
                        .map_err(|e| e.to_string())?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_4_diophantine_tables() {
    criterion(
        "4: Diophantine tables of the first 10 turns are bijections with the root property",
        || {
            let t = wheel::diophantine_solutions(5, 3).map_err(|e| e.to_string())?;
            if t.solutions() != [0, 3, 1, 4, 2] {
                return Err(format!("(p=5, pi=3) table = {:?}", t.solutions()));
            }

            let primes = [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37];
            let mut pi = 3u64;
            for &p in &primes {
                let t = wheel::diophantine_solutions(p, pi).map_err(|e| e.to_string())?;
                if t.multiplier(0) != 0 {
                    return Err(format!("m_0 != 0 for p={p}"));
                }
                let mut seen = vec![false; p as usize];
                for c in 0..p {
                    let m = t.multiplier(c);
                    if m >= p || seen[m as usize] {
                        return Err(format!("not a bijection at p={p}, c={c}"));
                    }
                    seen[m as usize] = true;
                    if (c as u128 + m as u128 * pi as u128) % p as u128 != 0 {
                        return Err(format!("root property fails at p={p}, c={c}"));
                    }
                }
                pi = pi.checked_mul(p).ok_or("modulus overflow")?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_5_residue_case_table() {
    criterion(
        "5: 12x12 residue-case grid matches brute force on all 144 cells plus spot cells",
        || {
            let t = atkin::residue_case_table();
            for a in 0..12u64 {
                for b in 0..12u64 {
                    let r1 = (4 * a * a + b * b) % 12;
                    let f1 = (r1 == 1 || r1 == 5) && b % 2 == 1;
                    let opposite = (a + b) % 2 == 1;
                    let f2 = (3 * a * a + b * b) % 12 == 7 && opposite;
                    let f3 = ((3 * a * a) as i64 - (b * b) as i64).rem_euclid(12) == 11 && opposite;
                    let cell = t.get(a as usize, b as usize);
                    if cell.contains(atkin::QuadForm::FourXSqPlusYSq) != f1
                        || cell.contains(atkin::QuadForm::ThreeXSqPlusYSq) != f2
                        || cell.contains(atkin::QuadForm::ThreeXSqMinusYSq) != f3
                    {
                        return Err(format!("cell ({a}, {b}) disagrees with brute force"));
                    }
                }
            }

            // Spot cells.
            let c = t.get(0, 1);
            if !(c.contains(atkin::QuadForm::FourXSqPlusYSq)
                && c.contains(atkin::QuadForm::ThreeXSqMinusYSq)
                && !c.contains(atkin::QuadForm::ThreeXSqPlusYSq))
            {
                return Err("cell (0,1) wrong".into());
            }
            let c = t.get(1, 3);
            if !(c.contains(atkin::QuadForm::FourXSqPlusYSq)
                && !c.contains(atkin::QuadForm::ThreeXSqPlusYSq)
                && !c.contains(atkin::QuadForm::ThreeXSqMinusYSq))
            {
                return Err("cell (1,3) wrong".into());
            }
            if !t.get(0, 6).is_empty() {
                return Err("cell (0,6) should be empty".into());
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_6_quarter_identity_and_deltas() {
    criterion(
        "6: 4A' = A over the grid; dA(3,5)=16, dB(3,5)=20, dA'(0,1)=4, dB'(0,1)=5",
        || {
            let odd = |n| OddNumber::new(n).unwrap();
            let idx = |k| OddIndex::new(k).unwrap();
            if trial::delta_a(odd(3), odd(5)).unwrap() != 16 {
                return Err("dA(3,5) != 16".into());
            }
            if trial::delta_b(odd(3), odd(5)).unwrap() != 20 {
                return Err("dB(3,5) != 20".into());
            }
            if trial::delta_a_index(idx(0), idx(1)).unwrap() != 4 {
                return Err("dA'(0,1) != 4".into());
            }
            if trial::delta_b_index(idx(0), idx(1)).unwrap() != 5 {
                return Err("dB'(0,1) != 5".into());
            }

            let primes: Vec<u64> = oracle::eratosthenes(200)
                .map_err(|e| e.to_string())?
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
                        let quarter = (k as i64 - 3) / 2 - (i * (i + 3)) as i64;
                        let full = n as i64 - (p * p) as i64;
                        if 4 * quarter != full {
                            return Err(format!("4A'(k={k}, i={i}) != A"));
                        }
                    } else {
                        let quarter = (k as i64 - 6) / 2 - (i * (i + 4)) as i64;
                        let full = n as i64 - (p * (p + 2)) as i64;
                        if 4 * quarter != full {
                            return Err(format!("4B'(k={k}, i={i}) != B"));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_7_equal_modulo_counts() {
    criterion(
        "7: trial and index-trial perform the same number of modulo operations",
        || {
            for n_max in [1_000u64, 10_000, 100_000] {
                let a = trial::prime_enumeration_instrumented(n_max).map_err(|e| e.to_string())?;
                let b = trial::index_prime_enumeration_instrumented(n_max)
                    .map_err(|e| e.to_string())?;
                if a.modulo_ops != b.modulo_ops {
                    return Err(format!(
                        "n_max={n_max}: {} (number) vs {} (index)",
                        a.modulo_ops, b.modulo_ops
                    ));
                }
                if a.modulo_ops == 0 {
                    return Err(format!("n_max={n_max}: zero modulo operations counted"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_8_trend_reproduction() {
    criterion(
        "8: trial fits A*n^b/ln n with b in [1.2, 1.7]; sieve times grow 5x-20x per decade",
        || {
            let limits = [100_000u64, 1_000_000, 10_000_000];
            let algos = [
                AlgorithmId::Trial,
                AlgorithmId::IndexTrial,
                AlgorithmId::Atkin,
                AlgorithmId::IndexAtkin,
                AlgorithmId::AtkinTabled,
                AlgorithmId::Wheel,
                AlgorithmId::IndexWheel,
            ];
            let records = run_benchmarks(&algos, &limits, 3).map_err(|e| e.to_string())?;

            // Round-trip through the CSV layer, as the CLI would.
            let csv = write_csv(&records);
            let records = parse_csv(&csv).map_err(|e| e.to_string())?;

            for algo in [AlgorithmId::Trial, AlgorithmId::IndexTrial] {
                let rows: Vec<_> = records.iter().filter(|r| r.algorithm == algo).collect();
                let xs: Vec<f64> = rows.iter().map(|r| r.n_max as f64).collect();
                let ys: Vec<f64> = rows.iter().map(|r| r.elapsed_ns as f64 * 1e-9).collect();
                let fit = fit_series(&xs, &ys, FitModel::PowbLn).map_err(|e| e.to_string())?;
                let b = fit.coefficients[1];
                if !(1.2..=1.7).contains(&b) {
                    return Err(format!("{algo}: fitted b = {b:.4} outside [1.2, 1.7]"));
                }
            }

            for algo in [
                AlgorithmId::Atkin,
                AlgorithmId::IndexAtkin,
                AlgorithmId::AtkinTabled,
                AlgorithmId::Wheel,
                AlgorithmId::IndexWheel,
            ] {
                let mut rows: Vec<_> = records.iter().filter(|r| r.algorithm == algo).collect();
                rows.sort_by_key(|r| r.n_max);
                for pair in rows.windows(2) {
                    let factor = pair[1].elapsed_ns as f64 / pair[0].elapsed_ns as f64;
                    if !(5.0..=20.0).contains(&factor) {
                        return Err(format!(
                            "{algo}: {}x growth from n={} to n={} outside [5, 20]",
                            factor, pair[0].n_max, pair[1].n_max
                        ));
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_9_fit_self_test() {
    criterion(
        "9: fit recovers a noiseless synthetic exponent to within 1e-6",
        || {
            let xs: Vec<f64> = vec![100.0, 1_000.0, 10_000.0, 100_000.0, 1_000_000.0];
            let ys: Vec<f64> = xs.iter().map(|&x| 2.0 * x.powf(1.5)).collect();
            let fit = fit_series(&xs, &ys, FitModel::Powb).map_err(|e| e.to_string())?;
            let b = fit.coefficients[1];
            if (b - 1.5).abs() >= 1e-6 {
                return Err(format!("recovered b = {b}, error {:.2e}", (b - 1.5).abs()));
            }
            if (fit.correlation - 1.0).abs() >= 1e-9 {
                return Err(format!("correlation {} not ~1", fit.correlation));
            }

            // Degenerate input must report near-zero correlation, not fail.
            let flat = fit_series(&xs, &[4.0, 4.0, 4.0, 4.0, 4.0], FitModel::Powb)
                .map_err(|e| e.to_string())?;
            if flat.correlation.abs() >= 1e-9 {
                return Err(format!("flat-data correlation {}", flat.correlation));
            }

            // End-to-end through the record layer.
            let records: Vec<_> = xs
                .iter()
                .zip(&ys)
                .map(|(&x, &y)| sieve_bench::BenchRecord {
                    algorithm: AlgorithmId::Oracle,
                    n_max: x as u64,
                    elapsed_ns: (y * 1e9) as u64,
                    modulo_ops: None,
                    prime_count: 1,
                })
                .collect();
            let fits = fit_records(&records, FitModel::Powb).map_err(|e| e.to_string())?;
            let (_, f) = &fits[0];
            if (f.coefficients[1] - 1.5).abs() >= 1e-6 {
                return Err(format!("record-layer b = {}", f.coefficients[1]));
            }
            Ok(())
        },
    );
}
