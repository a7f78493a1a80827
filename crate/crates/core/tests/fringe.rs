mod common;

use std::collections::BTreeSet;

use common::naive_sums;
use mstd::fringe::{
    assemble_ajk, assemble_with, case1_xjk, case1_xk, case2_lj, case2_x, estimate_cjk, high_max,
    low_max, verify_target, CaseTag, DeficiencyTarget, Fill, FringePair,
};
use mstd::{diffset, sumset};

#[test]
fn high_fringe_closed_forms() {
    for j in 0..=5u32 {
        let (l, m) = case2_lj(j).unwrap();
        assert_eq!(m, 7 * 3i64.pow(j) - 8);
        assert_eq!(m, high_max(j));
        assert_eq!(
            2 * l.len() as i64,
            7 * (3i64.pow(j) - 1) + 4 * j as i64,
            "j={j}"
        );
        if j == 0 {
            assert!(l.is_empty());
            continue;
        }
        assert_eq!(*l.last().unwrap() as i64, m);
        let sums = naive_sums(&l);
        let holes: Vec<u64> = (0..=2 * m as u64).filter(|x| !sums.contains(x)).collect();
        let expected: Vec<u64> = (0..j).map(|t| 2 * (high_max(t) + 5) as u64).collect();
        assert_eq!(holes, expected, "j={j}");
    }
    assert_eq!(case2_lj(2).unwrap().0.len(), 32);
}

#[test]
fn high_fringe_side_conditions() {
    for j in 1..=5u32 {
        let (l, m) = case2_lj(j).unwrap();
        let x = case2_x(j);
        assert!(x.windows(2).all(|w| w[0] < w[1]));
        assert!(x[0] > 0 && 2 * *x.last().unwrap() < m as u64, "j={j}");
        let set: BTreeSet<u64> = l.iter().copied().collect();
        for &u in &x {
            for &v in &x {
                assert!(
                    2 * u < v || !set.contains(&(2 * u - v)),
                    "j={j} u={u} v={v}"
                );
            }
        }
    }
}

#[test]
fn low_fringe_identities() {
    for k in 1..=5u32 {
        let xk = case1_xk(k).unwrap();
        assert_eq!(xk.max(), low_max(k));
        let m = low_max(k);
        assert_eq!(sumset(&xk).len() as u64, 2 * m + 1);
        let d = diffset(&xk);
        let missing: Vec<u64> = (1..=m).filter(|&x| !d.nonneg().contains(x)).collect();
        let expected: Vec<u64> = (0..k as u64).map(|t| 12 * t + 6).collect();
        assert_eq!(missing, expected, "k={k}");
        for j in 0..=k {
            let xjk = case1_xjk(j, k).unwrap();
            assert_eq!(diffset(&xjk), d, "j={j} k={k}");
            let s = sumset(&xjk);
            let holes: Vec<u64> = (0..=2 * m).filter(|&x| !s.contains(x)).collect();
            let mut expected: Vec<u64> =
                (0..j as u64).map(|t| 12 * (2 * k as u64 - t) + 3).collect();
            expected.sort_unstable();
            assert_eq!(holes, expected, "j={j} k={k}");
        }
    }
}

#[test]
fn high_fringe_sum_stability() {
    for j in 1..=5u32 {
        let (l, _) = case2_lj(j).unwrap();
        let base = naive_sums(&l);
        for k in 1..=j {
            let pair = FringePair::with_case(j, k, CaseTag::CaseII).unwrap();
            assert_eq!(naive_sums(&pair.lower), base, "j={j} k={k}");
        }
    }
}

#[test]
fn full_fill_hits_every_small_target() {
    for j in 0..=4u32 {
        for k in 0..=4u32 {
            let pair = FringePair::new(j, k).unwrap();
            let target = DeficiencyTarget::new(j, k, pair.min_n);
            let a = assemble_ajk(target, Fill::Full).unwrap();
            let cert = verify_target(&a, target).unwrap();
            assert!(cert.verified, "({j},{k}) at n={}: {cert:?}", pair.min_n);
            assert_eq!(cert.sum_size as u64, 2 * pair.min_n + 1 - j as u64);
            assert_eq!(cert.diff_size as u64, 2 * pair.min_n + 1 - 2 * k as u64);
            // A larger ambient interval changes nothing.
            let wider = DeficiencyTarget::new(j, k, pair.min_n + 37);
            assert!(
                verify_target(&assemble_ajk(wider, Fill::Full).unwrap(), wider)
                    .unwrap()
                    .verified
            );
        }
    }
}

#[test]
fn both_cases_work_on_the_diagonal() {
    for j in 1..=3u32 {
        for case in [CaseTag::CaseI, CaseTag::CaseII] {
            let pair = FringePair::with_case(j, j, case).unwrap();
            let a = assemble_with(&pair, pair.min_n, Fill::Full).unwrap();
            let target = DeficiencyTarget::new(j, j, pair.min_n);
            assert!(
                verify_target(&a, target).unwrap().verified,
                "{case:?} j={j}"
            );
        }
    }
}

#[test]
fn low_fringe_holes_stay_near_the_ends() {
    for k in 1..=4u32 {
        for j in 0..=k {
            let pair = FringePair::new(j, k).unwrap();
            assert_eq!(pair.case_tag, CaseTag::CaseI);
            let r = 4 * low_max(k);
            assert_eq!(pair.fringe_radius, r);
            let n = pair.min_n + 11;
            let target = DeficiencyTarget::new(j, k, n);
            let cert = verify_target(&assemble_ajk(target, Fill::Full).unwrap(), target).unwrap();
            assert!(cert.missing_sums.iter().all(|&s| s <= r || s >= 2 * n - r));
            assert!(cert.missing_diffs.iter().all(|&d| d >= n - r));
        }
    }
}

#[test]
fn below_minimum_is_rejected() {
    let pair = FringePair::new(1, 1).unwrap();
    assert_eq!(pair.min_n, 69);
    assert!(assemble_ajk(DeficiencyTarget::new(1, 1, 68), Fill::Full).is_err());
    assert!(estimate_cjk(DeficiencyTarget::new(1, 1, 68), 10, 0).is_err());
}

#[test]
fn random_fill_estimates() {
    let p = estimate_cjk(DeficiencyTarget::new(0, 0, 30), 20_000, 7).unwrap();
    assert!(p.hits > 0);
    let p = estimate_cjk(DeficiencyTarget::new(1, 1, 69), 10_000, 7).unwrap();
    assert!(p.lower > 0.0, "{p:?}");
    assert_eq!(
        p,
        estimate_cjk(DeficiencyTarget::new(1, 1, 69), 10_000, 7).unwrap()
    );
}
