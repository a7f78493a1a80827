mod common;

use common::{naive_sizes, set};
use mstd::constructions::{base_expand, catalog, product_embed, CATALOG_NAMES};
use mstd::{canonical_form, diffset, normalize, profile, sumset, symmetry_report, IntSet};
use proptest::prelude::*;

fn small_set() -> impl Strategy<Value = IntSet> {
    prop::collection::btree_set(0u64..200, 1..25)
        .prop_map(|s| IntSet::new(s.into_iter().collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn kernels_match_pairwise_oracle(a in small_set()) {
        let p = profile(&a);
        prop_assert_eq!((p.sum_size, p.diff_size), naive_sizes(a.elements()));
        prop_assert_eq!(p.delta, p.sum_size as i64 - p.diff_size as i64);
        let sums: Vec<u64> = common::naive_sums(a.elements()).into_iter().collect();
        prop_assert_eq!(sumset(&a).elements().to_vec(), sums);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn affine_maps_preserve_sizes(a in small_set(), shift in 0i64..1000, scale in 1u64..50) {
        let p = profile(&a);
        let b = a.dilate(scale).unwrap().translate(shift).unwrap();
        let q = profile(&b);
        prop_assert_eq!((p.sum_size, p.diff_size), (q.sum_size, q.diff_size));
        prop_assert_eq!(canonical_form(&a), canonical_form(&b));
        prop_assert_eq!(canonical_form(&a), canonical_form(&a.reflect()));
        let r = profile(&a.reflect());
        prop_assert_eq!((p.sum_size, p.diff_size), (r.sum_size, r.diff_size));
    }

    #[test]
    fn size_bounds_and_parity(a in small_set()) {
        let p = profile(&a);
        let k = a.len();
        prop_assert_eq!(p.diff_size % 2, 1);
        prop_assert!(p.sum_size >= 2 * k - 1 && p.sum_size <= k * (k + 1) / 2);
        prop_assert!(p.diff_size >= 2 * k - 1 && p.diff_size <= k * (k - 1) + 1);
        prop_assert_eq!(diffset(&a).size(), p.diff_size);
        if let Some(f) = p.f_ratio {
            prop_assert!((0.75..=4.0 / 3.0).contains(&f), "f = {}", f);
        } else {
            prop_assert_eq!(k, 1);
        }
    }

    #[test]
    fn normal_forms_are_idempotent(a in small_set()) {
        let n = normalize(&a);
        prop_assert!(n.is_normalized());
        prop_assert_eq!(normalize(&n), n.clone());
        let c = canonical_form(&a);
        prop_assert_eq!(canonical_form(&c), c.clone());
        prop_assert!(c.elements() <= n.elements());
    }

    #[test]
    fn symmetric_sets_are_balanced(a in small_set(), c in 0u64..400) {
        // Symmetrize about c/2 by adding the mirror image.
        let hi = c.max(a.max());
        let mirrored = a.reflect_about(hi).unwrap();
        let s = a.union(&mirrored).unwrap();
        let rep = symmetry_report(&s);
        prop_assert!(rep.is_symmetric);
        prop_assert_eq!(rep.s_value, s.len());
        prop_assert_eq!(profile(&s).delta, 0);
    }

    #[test]
    fn symmetric_subset_witness_is_valid(a in small_set()) {
        let rep = symmetry_report(&a);
        let w = &rep.witness_subset;
        prop_assert_eq!(w.len(), rep.s_value);
        prop_assert!(w.is_subset(&a));
        prop_assert!(symmetry_report(w).is_symmetric);
    }
}

#[test]
fn base_expansion_is_multiplicative() {
    for name in CATALOG_NAMES {
        let a = catalog(name).unwrap();
        let p = profile(&a);
        for t in 1..=3u32 {
            if a.len().pow(t) > 4_000 {
                continue;
            }
            let e = base_expand(&a, t, None).unwrap();
            let q = profile(&e);
            assert_eq!(q.sum_size, p.sum_size.pow(t), "{name} t={t}");
            assert_eq!(q.diff_size, p.diff_size.pow(t), "{name} t={t}");
            assert_eq!(e.len(), a.len().pow(t));
        }
    }
}

#[test]
fn product_embedding_is_multiplicative() {
    let names = ["A_1", "A_2", "A_12", "S4_X"];
    for x in names {
        for y in names {
            let a = catalog(x).unwrap();
            let b = catalog(y).unwrap();
            let c = product_embed(&a, &b, Some(1), Some(2 * a.max() + 1)).unwrap();
            let (pa, pb, pc) = (profile(&a), profile(&b), profile(&c));
            assert_eq!(pc.sum_size, pa.sum_size * pb.sum_size, "{x} x {y}");
            assert_eq!(pc.diff_size, pa.diff_size * pb.diff_size, "{x} x {y}");
        }
    }
    let small = set(&[0, 1, 3]);
    let c = product_embed(&small, &small, Some(1), Some(7)).unwrap();
    assert_eq!(naive_sizes(c.elements()), (36, 49));
}
