use proptest::prelude::*;

use puzzle_core::board::{richardson_nonempty, PuzzlePath};
use puzzle_core::filling::{
    enumerate_puzzles, structure_constants, structure_constants_with, Enumerator, Theory,
};
use puzzle_core::interval::{covers, essential_conditions, DotSet, RankMatrix};
use puzzle_core::pink::{path_codim, path_to_rank};
use puzzle_core::Word;

fn word(n: usize, k: usize) -> impl Strategy<Value = Word> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |perm| {
            let mut bits = vec![false; n];
            for &p in &perm[..k] {
                bits[p] = true;
            }
            Word::from_bits(bits)
        })
}

fn pair(max_n: usize) -> impl Strategy<Value = (Word, Word)> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| (word(n, k), word(n, k)))
}

fn dotset(max_n: usize) -> impl Strategy<Value = DotSet> {
    (1..=max_n).prop_flat_map(|n| {
        (0..=n).prop_flat_map(move |m| {
            let all = DotSet::all_of_size(n, m);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parallel_matches_sequential((mu, nu) in pair(6)) {
        for t in Theory::ALL {
            let par = structure_constants_with(t, &mu, &nu, Enumerator::new(Some(t))).unwrap();
            let seq = structure_constants_with(t, &mu, &nu, Enumerator::new(Some(t)).sequential()).unwrap();
            prop_assert_eq!(par, seq);
        }
    }

    #[test]
    fn h_coefficients_are_positive_counts((mu, nu) in pair(6)) {
        let h = structure_constants(Theory::H, &mu, &nu).unwrap();
        let puzzles = enumerate_puzzles(&mu, &nu, None, Some(Theory::H)).unwrap();
        let total: i64 = h.values().map(|c| c.render().parse::<i64>().unwrap()).sum();
        prop_assert!(h.values().all(|c| c.render().parse::<i64>().unwrap() > 0));
        prop_assert_eq!(total as usize, puzzles.len());
        for lambda in h.keys() {
            prop_assert_eq!(lambda.inversions() + mu.inversions(), nu.inversions());
        }
    }

    #[test]
    fn puzzles_read_back_their_boundary((mu, nu) in pair(5)) {
        for p in enumerate_puzzles(&mu, &nu, None, None).unwrap() {
            let (lambda, m, n) = p.read_boundary().unwrap();
            prop_assert_eq!(&lambda, &p.lambda);
            prop_assert_eq!(&m, &mu);
            prop_assert_eq!(&n, &nu);
        }
    }

    #[test]
    fn empty_richardson_has_no_puzzles((mu, nu) in pair(6)) {
        prop_assume!(!richardson_nonempty(&mu, &nu));
        prop_assert!(enumerate_puzzles(&mu, &nu, None, None).unwrap().is_empty());
        for t in Theory::ALL {
            prop_assert!(structure_constants(t, &mu, &nu).unwrap().is_empty());
        }
    }

    #[test]
    fn initial_path_is_codim_zero((mu, nu) in pair(7)) {
        prop_assume!(richardson_nonempty(&mu, &nu));
        let p = PuzzlePath::initial(&mu, &nu).unwrap();
        let (d, _) = path_to_rank(&p).unwrap();
        prop_assert_eq!(d.envelope(), (mu.clone(), nu.clone()));
        prop_assert_eq!(path_codim(&p), 0);
        prop_assert_eq!(d.envelope_codim(), 0);
    }

    #[test]
    fn rank_matrix_round_trips(d in dotset(7)) {
        let r = RankMatrix::from_dots(&d);
        prop_assert!(r.validate().is_ok());
        prop_assert_eq!(r.to_dots().unwrap(), d);
    }

    #[test]
    fn essential_conditions_cut_out_the_variety(d in dotset(5), e in dotset(5)) {
        prop_assume!(d.n() == e.n());
        let bound = RankMatrix::from_dots(&d);
        let r = RankMatrix::from_dots(&e);
        let cells: Vec<_> = essential_conditions(&d).iter().map(|c| c.cell).collect();
        prop_assert_eq!(bound.admits(&r), bound.admits_at(&r, &cells));
    }

    #[test]
    fn covers_are_strictly_smaller(d in dotset(6)) {
        let r = RankMatrix::from_dots(&d);
        for c in covers(&d) {
            let rc = RankMatrix::from_dots(&c);
            prop_assert!(rc.le(&r));
            prop_assert!(rc != r);
        }
    }

    #[test]
    fn min_is_the_meet(d in dotset(5), e in dotset(5)) {
        prop_assume!(d.n() == e.n());
        let (a, b) = (RankMatrix::from_dots(&d), RankMatrix::from_dots(&e));
        if let Ok(m) = a.min(&b) {
            prop_assert!(m.le(&a) && m.le(&b));
        }
    }

    #[test]
    fn hall_equivalence(d in dotset(6)) {
        for w in Word::all(d.n(), d.n() - d.len()) {
            prop_assert_eq!(d.fixed_point_in(&w).unwrap(), d.matching_exists(&w).unwrap());
        }
    }
}
