//! Shared grids and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mstd::constructions::{theorem2, theorem3, theorem4, theorem5, theorem6, ConstructionResult};
use mstd::IntSet;

/// `(|A+A|, |A-A|)` by enumerating all ordered pairs.
pub fn naive_sizes(a: &[u64]) -> (usize, usize) {
    let mut sums = BTreeSet::new();
    let mut diffs = BTreeSet::new();
    for &x in a {
        for &y in a {
            sums.insert(x + y);
            diffs.insert(x as i64 - y as i64);
        }
    }
    (sums.len(), diffs.len())
}

pub fn naive_sums(a: &[u64]) -> BTreeSet<u64> {
    a.iter()
        .flat_map(|&x| a.iter().map(move |&y| x + y))
        .collect()
}

pub fn naive_delta(a: &[u64]) -> i64 {
    let (s, d) = naive_sizes(a);
    s as i64 - d as i64
}

/// `(|S+S|, |S-S|)` in `Z/nZ` by brute force.
pub fn naive_cyclic_sizes(s: &[u64], n: u64) -> (usize, usize) {
    let mut sums = BTreeSet::new();
    let mut diffs = BTreeSet::new();
    for &x in s {
        for &y in s {
            sums.insert((x + y) % n);
            diffs.insert((x + n - y) % n);
        }
    }
    (sums.len(), diffs.len())
}

pub fn set(v: &[u64]) -> IntSet {
    IntSet::new(v.to_vec()).unwrap()
}

/// Valid T2 tuples `(n, k, d)` with `n <= 8`.
pub fn t2_grid() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for n in 3..=8u64 {
        for k in 0..=n - 2 {
            let q = (1u64 << (n - k)) - 1;
            for d in 2..=q {
                if q.is_multiple_of(d) {
                    out.push((n, k, d));
                }
            }
        }
    }
    out
}

pub fn t3_grid() -> Vec<(u64, u64)> {
    (3..=8u64)
        .flat_map(|n| (1..=n - 2).map(move |l| (n, l)))
        .collect()
}

pub fn t4_grid() -> Vec<(u64, u64)> {
    (2..=6u64)
        .flat_map(|n| (2..=6u64).map(move |d| (n, d)))
        .collect()
}

pub fn t5_grid() -> Vec<(u64, u64)> {
    (2..=6u64)
        .flat_map(|n| (3..=8u64).map(move |k| (n, k)))
        .collect()
}

pub fn t6_grid() -> Vec<(u64, u64)> {
    (2..=6u64)
        .flat_map(|n| (2..=6u64).map(move |k| (n, k)))
        .collect()
}

/// Every construction on the sweep grids with the modulus at which its
/// primary set has a good reduction and the expected cyclic surplus.
pub fn family_reductions() -> Vec<(String, ConstructionResult, u64, i64)> {
    let mut out = Vec::new();
    for (n, k, d) in t2_grid() {
        let r = (1 << (n + 1)) + d + (1 << (n - 1)) - (1 << k);
        out.push((format!("T2({n},{k},{d})"), theorem2(n, k, d).unwrap(), r, 1));
    }
    for (n, l) in t3_grid() {
        let r = (1 << (n + 1)) - 1 + (1 << (n - 1)) - (1 << l);
        out.push((format!("T3({n},{l})"), theorem3(n, l).unwrap(), r, 1));
    }
    for (n, d) in t4_grid() {
        out.push((
            format!("T4({n},{d})"),
            theorem4(n, d).unwrap(),
            4 * n * d + 1,
            1,
        ));
    }
    for (n, k) in t5_grid() {
        let f = if k == 3 { 2 } else { 1 };
        out.push((
            format!("T5({n},{k})"),
            theorem5(n, k).unwrap(),
            2 * (k + 2) * n + 1,
            f,
        ));
    }
    for (n, k) in t6_grid() {
        out.push((
            format!("T6({n},{k})"),
            theorem6(n, k).unwrap(),
            (2 * k + 2) * n,
            1,
        ));
    }
    out
}

/// The good reductions tabulated for the catalog sets.
pub const TABLE: [(&str, u64, i64); 10] = [
    ("A_2", 18, 1),
    ("A_4", 12, 1),
    ("A_5", 16, 1),
    ("A_6", 21, 2),
    ("A_7", 16, 1),
    ("A_8", 17, 1),
    ("A_9", 17, 1),
    ("A_10", 17, 1),
    ("A_11", 21, 1),
    ("S4_X", 20, 2),
];
