mod common;

use common::naive_sizes;
use mstd::constructions::{catalog, CATALOG_NAMES};
use mstd::search::{enumerate_mstd, mstd_density, DensityMode, SearchConfig};
use mstd::{canonical_form, profile, representation_counts};

fn mobius(mut n: u64) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn binom(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Normalized sets of size `s` with maximum exactly `d`.
fn normalized_count(s: u64, d: u64) -> i64 {
    (1..=d)
        .filter(|&g| d.is_multiple_of(g))
        .map(|g| mobius(g) * binom(d / g - 1, s - 2))
        .sum()
}

#[test]
fn enumeration_is_complete() {
    for s in 2..=5u64 {
        for d in (s - 1)..=15 {
            let out = enumerate_mstd(&SearchConfig::new(s as usize, d)).unwrap();
            let expected: i64 = (s - 1..=d).map(|e| normalized_count(s, e)).sum();
            assert_eq!(out.enumerated_count as i64, expected, "s={s} D={d}");
        }
    }
}

#[test]
fn results_are_distinct_mstd_canonical_forms() {
    for (size, d) in [(8, 22), (9, 19), (10, 18)] {
        let out = enumerate_mstd(&SearchConfig::new(size, d)).unwrap();
        assert!(out
            .canonical_reps
            .windows(2)
            .all(|w| w[0].elements() < w[1].elements()));
        for rep in &out.canonical_reps {
            assert_eq!(&canonical_form(rep), rep);
            let (s, t) = naive_sizes(rep.elements());
            assert!(s > t, "{rep}");
            assert_eq!(rep.len(), size);
            assert!(rep.max() <= d);
        }
    }
}

#[test]
fn catalog_sets_are_recalled() {
    for name in CATALOG_NAMES {
        let a = catalog(name).unwrap();
        if a.len() > 10 || a.max() > 20 || !profile(&a).is_mstd {
            continue;
        }
        let out = enumerate_mstd(&SearchConfig::new(a.len(), a.max())).unwrap();
        assert!(out.canonical_reps.contains(&canonical_form(&a)), "{name}");
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let base = SearchConfig::new(9, 18).rep_threshold(4);
    let one = enumerate_mstd(&base.workers(1)).unwrap();
    let many = enumerate_mstd(&base.workers(4)).unwrap();
    assert_eq!(one.canonical_reps, many.canonical_reps);
    assert_eq!(one.enumerated_count, many.enumerated_count);
    for rep in &one.canonical_reps {
        assert!(representation_counts(rep).into_iter().max().unwrap() >= 4);
    }
}

#[test]
fn exhaustive_density_matches_brute_force() {
    for n in 0..=15u64 {
        let mut hits = 0;
        for mask in 1u64..1 << (n + 1) {
            let elems: Vec<u64> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
            let (s, d) = naive_sizes(&elems);
            hits += (s > d) as u64;
        }
        let est = mstd_density(n, DensityMode::Exhaustive, 0, 0).unwrap();
        assert_eq!(est.mstd.hits, hits, "n={n}");
        assert_eq!(est.mstd.trials, 1 << (n + 1));
    }
}

#[test]
fn minimal_mstd_diameter_is_fourteen() {
    assert_eq!(
        mstd_density(13, DensityMode::Exhaustive, 0, 0)
            .unwrap()
            .mstd
            .hits,
        0
    );
    let at14 = mstd_density(14, DensityMode::Exhaustive, 0, 0)
        .unwrap()
        .mstd
        .hits;
    // A_1, A_4 and their mirror images.
    assert_eq!(at14, 4);
    let eight = enumerate_mstd(&SearchConfig::new(8, 14)).unwrap();
    let nine = enumerate_mstd(&SearchConfig::new(9, 14)).unwrap();
    assert_eq!(
        eight.canonical_reps,
        vec![canonical_form(&catalog("A_1").unwrap())]
    );
    assert_eq!(
        nine.canonical_reps,
        vec![canonical_form(&catalog("A_4").unwrap())]
    );
}
