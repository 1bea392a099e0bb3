use proptest::prelude::*;
use proptest::sample::subsequence;

use heffter::cycles::{develop_columns, develop_rows};
use heffter::io::ArrayFile;
use heffter::modmath::is_half_set;
use heffter::search::{all_simple_column_permutations, Strategy as SearchStrategy};
use heffter::{
    brute_force_oracle, build_face_set, compatible_orderings, compose, derive_rotations,
    find_simple_column_permutation, generate_heffter, simple_h3, ColumnPermutation, HeffterArray,
    Modulus, SearchConfig,
};

/// A zero-sum sequence of nonzero residues with distinct partial sums.
fn simple_sequence() -> impl Strategy<Value = (Modulus, Vec<i64>)> {
    (3u64..150, 3usize..10)
        .prop_flat_map(|(k, len)| {
            let v = Modulus::new(2 * k + 1).unwrap();
            let half = v.half() as i64;
            let nonzero = (1..=half, any::<bool>()).prop_map(|(a, s)| if s { a } else { -a });
            (Just(v), prop::collection::vec(nonzero, len - 1))
        })
        .prop_filter_map(
            "needs a nonzero closing term and distinct sums",
            |(v, mut xs)| {
                let last = v.symmetric(-xs.iter().sum::<i64>());
                xs.push(last);
                (last != 0 && v.is_simple(&xs)).then_some((v, xs))
            },
        )
}

fn permutation(n: usize) -> impl Strategy<Value = ColumnPermutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|p| ColumnPermutation::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reversal_and_rotation_keep_simplicity((v, xs) in simple_sequence(), j in 0usize..10) {
        let mut rev = xs.clone();
        rev.reverse();
        prop_assert!(v.is_simple(&rev));
        let j = j % xs.len();
        let rot: Vec<i64> = xs[j..].iter().chain(&xs[..j]).copied().collect();
        prop_assert!(v.is_simple(&rot));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reorder_preserves_heffter((h, p) in (3usize..50).prop_flat_map(|n| (Just(simple_h3(n).unwrap()), permutation(n)))) {
        let r = h.reorder_columns(&p).unwrap();
        prop_assert!(r.verify().is_heffter());
        // columns move as units
        for (k, &a) in p.as_slice().iter().enumerate() {
            prop_assert_eq!(r.column(k), h.column(a - 1));
        }
    }

    #[test]
    fn transpose_swaps_flags(n in 3usize..40) {
        let h = simple_h3(n).unwrap();
        let t = h.transpose();
        let (a, b) = (h.verify(), t.verify());
        prop_assert_eq!(&a.row_sum_ok, &b.col_sum_ok);
        prop_assert_eq!(&a.row_simple, &b.col_simple);
        prop_assert_eq!(a.half_set_ok, b.half_set_ok);
        prop_assert_eq!(t.transpose(), h);
    }

    #[test]
    fn composite_is_one_orbit_of_length_3n(n in 3usize..300) {
        let h = simple_h3(n).unwrap();
        let pair = compatible_orderings(&h).unwrap();
        let p = compose(&pair.omega_r, &pair.omega_c).unwrap();
        let mut image = p.as_indices().to_vec();
        image.sort_unstable();
        prop_assert_eq!(image, (0..3 * n).collect::<Vec<_>>());
        prop_assert_eq!(pair.composition_cycle.len(), 3 * n);
    }

    #[test]
    fn developed_systems_cover_pairs_once(n in 3usize..16) {
        let h = simple_h3(n).unwrap();
        for cs in [develop_rows(&h).unwrap(), develop_columns(&h).unwrap()] {
            prop_assert!(cs.pair_coverage().is_exact());
            prop_assert!(cs.all_simple());
            prop_assert!(cs.is_cyclic());
            prop_assert_eq!(cs.cycles.len() as u64 * cs.k as u64, cs.v * (cs.v - 1) / 2);
        }
    }

    #[test]
    fn array_files_round_trip(n in 3usize..60, comments in subsequence(vec!["a", "b c", "#x"], 0..3)) {
        let mut f = ArrayFile::new(simple_h3(n).unwrap());
        for c in comments {
            f = f.with_comment(c);
        }
        let text = f.serialize();
        prop_assert!(text.is_ascii() && !text.contains("  ") && !text.contains('\r'));
        prop_assert_eq!(ArrayFile::parse(&text).unwrap(), f);
    }

    #[test]
    fn half_set_rejects_repeated_magnitudes(n in 3usize..30, i in 0usize..1000, j in 0usize..1000) {
        let h = simple_h3(n).unwrap();
        let mut cells = h.entries().to_vec();
        let (i, j) = (i % cells.len(), j % cells.len());
        prop_assume!(i != j);
        cells[i] = -cells[j];
        prop_assert!(!is_half_set(&cells, h.modulus()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_is_sound_complete_and_deterministic(m in 3usize..6, n in 3usize..8, seed in any::<u64>()) {
        let cfg = SearchConfig { seed: Some(seed), ..SearchConfig::default() };
        let h: HeffterArray = generate_heffter(m, n, &cfg).unwrap();
        prop_assert!(h.verify().is_heffter());
        let oracle = brute_force_oracle(&h).unwrap();
        prop_assert_eq!(all_simple_column_permutations(&h, u64::MAX).unwrap(), oracle.clone());
        let a = find_simple_column_permutation(&h, &SearchConfig::default());
        let b = find_simple_column_permutation(&h, &SearchConfig::default());
        prop_assert_eq!(&a, &b);
        let ex = find_simple_column_permutation(&h, &SearchConfig { strategy: SearchStrategy::Exhaustive, ..SearchConfig::default() });
        match a {
            Ok(out) => {
                prop_assert!(h.reorder_columns(&out.permutation).unwrap().is_simple());
                prop_assert_eq!(oracle.first(), Some(&out.permutation));
                prop_assert_eq!(ex.unwrap().permutation, out.permutation);
            }
            Err(e) => {
                prop_assert_eq!(e, heffter::Error::NoneExists);
                prop_assert!(oracle.is_empty());
            }
        }
        prop_assert_eq!(generate_heffter(m, n, &cfg).unwrap(), h);
    }

    #[test]
    fn rotations_commute_with_translation(n in 3usize..12) {
        let h = simple_h3(n).unwrap();
        let pair = compatible_orderings(&h).unwrap();
        let faces = build_face_set(&h, &pair).unwrap();
        let rs = derive_rotations(&faces).unwrap();
        let v = rs.vertex_count();
        for u in 0..v {
            for a in (0..v).filter(|&a| a != u) {
                prop_assert_eq!(rs.successor((u + 1) % v, (a + 1) % v), (rs.successor(u, a) + 1) % v);
            }
        }
        prop_assert!(rs.square_at_zero_is_single_cycle(h.entries()));
    }
}
