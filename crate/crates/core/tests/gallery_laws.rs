//! Pointwise laws tying together slices, images, composition and
//! inversion across the whole catalog.

use mahavier_core::{
    catalog_names, expected_flags, make_example, rat, IntervalSet, Rat, Relation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn catalog() -> Vec<Relation> {
    catalog_names()
        .iter()
        .map(|name| make_example(name).unwrap())
        .collect()
}

fn sample_points(seed: u64, count: usize) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(1, 4), rat(3, 4)];
    while xs.len() < count {
        xs.push(rat(rng.gen_range(0..=64), 64));
    }
    xs
}

#[test]
fn composition_satisfies_the_slice_law() {
    let entries = catalog();
    let xs = sample_points(0x51ce, 50);
    for outer in &entries {
        for inner in &entries {
            let composite = outer.compose(inner);
            for x in &xs {
                let through = outer.image(&inner.slice(x));
                assert_eq!(
                    composite.slice(x),
                    through,
                    "({} after {}) at x = {}",
                    outer.name(),
                    inner.name(),
                    x
                );
            }
        }
    }
}

#[test]
fn continuum_valued_entries_have_single_interval_slices() {
    let xs = sample_points(0xc011, 100);
    for name in catalog_names() {
        let flags = expected_flags(name).unwrap();
        if !flags.continuum_valued {
            continue;
        }
        let f = make_example(name).unwrap();
        for x in &xs {
            assert_eq!(f.slice(x).len(), 1, "{name} at x = {x}");
        }
    }
}

#[test]
fn mirror_and_patched_diagonal_have_disconnected_slices_somewhere() {
    for name in ["mirror", "patched-diagonal"] {
        let f = make_example(name).unwrap();
        let x = f.continuum_valued_witness().expect(name);
        assert!(f.slice(&x).len() > 1, "{name} witness x = {x}");
    }
}

#[test]
fn inversion_is_an_involution_on_surjective_entries() {
    for name in catalog_names() {
        if !expected_flags(name).unwrap().surjective {
            continue;
        }
        let f = make_example(name).unwrap();
        let back = f.inverse().unwrap().inverse().unwrap();
        assert!(f.equal(&back), "{name} round trip");
    }
}

#[test]
fn inversion_preserves_idempotence() {
    for name in catalog_names() {
        let flags = expected_flags(name).unwrap();
        if !flags.surjective {
            continue;
        }
        let f = make_example(name).unwrap();
        let g = f.inverse().unwrap();
        assert_eq!(
            f.is_idempotent(),
            g.is_idempotent(),
            "{name} versus its inverse"
        );
        assert_eq!(flags.idempotent, g.is_idempotent(), "{name} inverse flag");
    }
}

#[test]
fn idempotent_entries_fix_their_images() {
    let probes = [
        IntervalSet::unit(),
        IntervalSet::singleton(mahavier_core::Interval::new(rat(0, 1), rat(1, 2)).unwrap()),
        IntervalSet::singleton(mahavier_core::Interval::point(rat(0, 1)).unwrap()),
        IntervalSet::singleton(mahavier_core::Interval::new(rat(1, 4), rat(1, 3)).unwrap()),
    ];
    for name in catalog_names() {
        if !expected_flags(name).unwrap().idempotent {
            continue;
        }
        let f = make_example(name).unwrap();
        for s in &probes {
            let once = f.image(s);
            let twice = f.image(&once);
            assert_eq!(once, twice, "{name} image of {s:?}");
        }
    }
}

#[test]
fn power_one_is_the_identity_of_composition() {
    for name in catalog_names() {
        let f = make_example(name).unwrap();
        assert!(f.power(1).equal(&f), "{name}");
    }
}
