//! Property tests for the exact geometric primitives.

use mahavier_core::{piece_intersects, rat, Interval, IntervalSet, Piece, Rat};
use proptest::prelude::*;

fn unit_rat() -> impl Strategy<Value = Rat> {
    (0i64..=64).prop_map(|n| rat(n, 64))
}

fn interval() -> impl Strategy<Value = Interval> {
    (unit_rat(), unit_rat()).prop_map(|(a, b)| {
        if a <= b {
            Interval::new(a, b).unwrap()
        } else {
            Interval::new(b, a).unwrap()
        }
    })
}

fn piece() -> impl Strategy<Value = Piece> {
    prop_oneof![
        (interval(), interval()).prop_map(|(x, y)| Piece::rect(x, y)),
        (unit_rat(), unit_rat(), unit_rat(), unit_rat())
            .prop_map(|(x0, y0, x1, y1)| Piece::segment((x0, y0), (x1, y1)).unwrap()),
    ]
}

proptest! {
    #[test]
    fn intersection_is_commutative_and_contained(a in interval(), b in interval()) {
        let ab = a.intersection(&b);
        let ba = b.intersection(&a);
        prop_assert_eq!(&ab, &ba);
        if let Some(c) = ab {
            prop_assert!(a.contains_interval(&c));
            prop_assert!(b.contains_interval(&c));
            prop_assert!(a.intersects(&b));
        } else {
            prop_assert!(!a.intersects(&b));
        }
    }

    #[test]
    fn normalized_sets_are_sorted_and_disjoint(ivs in proptest::collection::vec(interval(), 0..6)) {
        let set = IntervalSet::normalize(ivs.clone());
        for pair in set.intervals().windows(2) {
            // Touching intervals must have been merged.
            prop_assert!(pair[0].hi() < pair[1].lo());
        }
        for iv in &ivs {
            prop_assert!(set.covers(iv));
            prop_assert!(set.contains(iv.lo()));
            prop_assert!(set.contains(&iv.midpoint()));
        }
    }

    #[test]
    fn union_covers_both_sides(xs in proptest::collection::vec(interval(), 0..4),
                               ys in proptest::collection::vec(interval(), 0..4)) {
        let a = IntervalSet::normalize(xs);
        let b = IntervalSet::normalize(ys);
        let u = a.union(&b);
        for iv in a.intervals().iter().chain(b.intervals()) {
            prop_assert!(u.covers(iv));
        }
    }

    #[test]
    fn transpose_is_an_involution(p in piece()) {
        prop_assert_eq!(p.transpose().transpose(), p);
    }

    #[test]
    fn slices_stay_inside_the_extents(p in piece(), x in unit_rat()) {
        if let Some(iv) = p.slice_at(&x) {
            prop_assert!(p.x_extent().contains(&x));
            prop_assert!(p.y_extent().contains_interval(&iv));
        } else {
            prop_assert!(!p.x_extent().contains(&x));
        }
    }

    #[test]
    fn segment_points_are_contained(x0 in unit_rat(), y0 in unit_rat(),
                                    x1 in unit_rat(), y1 in unit_rat(),
                                    t in 0i64..=8) {
        let p = Piece::segment((x0.clone(), y0.clone()), (x1.clone(), y1.clone())).unwrap();
        let s = rat(t, 8);
        let point = (
            &x0 + (&x1 - &x0) * &s,
            &y0 + (&y1 - &y0) * &s,
        );
        prop_assert!(p.contains_point(&point));
    }

    #[test]
    fn intersection_test_is_symmetric(a in piece(), b in piece()) {
        prop_assert_eq!(piece_intersects(&a, &b), piece_intersects(&b, &a));
        prop_assert!(piece_intersects(&a, &a));
    }
}
