use quadcycles::edi::{count_admissible, enumerate_admissible, propagate, WittContext, DEFAULT_MAX_N};

/// Admissible table counts: generic, anisotropic, then first Witt index
/// `1..=d+1`.
const SNAPSHOTS: &[(u32, u64, u64, &[u64])] = &[
    (1, 2, 2, &[2]),
    (2, 8, 8, &[8, 2]),
    (3, 8, 3, &[3, 1]),
    (4, 37, 24, &[24, 8, 2]),
    (5, 36, 16, &[16, 6, 3]),
    (6, 192, 122, &[122, 54, 16, 4]),
    (7, 163, 55, &[55, 25, 10, 1]),
    (8, 833, 452, &[452, 180, 74, 20, 2]),
    (9, 834, 324, &[324, 146, 79, 14, 3]),
    (10, 4698, 2765, &[2765, 1261, 519, 210, 32, 4]),
];

#[test]
fn counts_match_snapshots() {
    for &(n, generic, aniso, by_i1) in SNAPSHOTS {
        let count = |w: &WittContext| count_admissible(n, w, None, DEFAULT_MAX_N).unwrap();
        assert_eq!(count(&WittContext::generic()), generic, "n={n}");
        assert_eq!(count(&WittContext::anisotropic()), aniso, "n={n}");
        let got: Vec<u64> =
            (1..=n / 2 + 1).map(|i1| count(&WittContext::with_first_witt_index(n, i1).unwrap())).collect();
        assert_eq!(got, by_i1, "n={n}");
    }
}

#[test]
fn emitted_tables_are_sorted_fixed_points() {
    for n in [5, 8] {
        let w = WittContext::anisotropic();
        let mut previous: Option<Vec<(u32, u32)>> = None;
        enumerate_admissible(n, &w, None, DEFAULT_MAX_N, |t| {
            assert_eq!(&propagate(t, &w).unwrap().table, t);
            let key: Vec<(u32, u32)> = t.memberships().map(|m| (m.level, m.m)).collect();
            if let Some(p) = &previous {
                assert_ne!(p, &key);
            }
            previous = Some(key);
        })
        .unwrap();
    }
}

#[test]
fn n_above_bound_is_refused() {
    assert!(count_admissible(15, &WittContext::generic(), None, DEFAULT_MAX_N).is_err());
    assert!(count_admissible(15, &WittContext::generic(), None, 15).is_ok());
}
