//! Catalog of named relations used throughout the tests and the CLI,
//! plus the patched-diagonal family: the diagonal together with a closed
//! patch confined to the upper-left region `[0,a) x (a,1]` (the corner
//! `(a,a)` itself is also allowed). Every relation of that shape is
//! idempotent and surjective, which makes the family a convenient source
//! of randomized test subjects.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::interval::Interval;
use crate::piece::{Piece, Point};
use crate::rat::{half, one, rat, zero, Rat};
use crate::relation::Relation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GalleryError {
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("the patch parameter must satisfy 0 < a < 1, got {0}")]
    BadParameter(Rat),
    #[error("patch piece {index} leaves the allowed region at ({x}, {y})")]
    RegionViolation { index: usize, x: Rat, y: Rat },
}

/// Properties each catalog entry is expected to have; the test suites
/// check these against the computed diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedFlags {
    pub idempotent: bool,
    pub surjective: bool,
    pub continuum_valued: bool,
}

const fn flags(idempotent: bool, surjective: bool, continuum_valued: bool) -> ExpectedFlags {
    ExpectedFlags {
        idempotent,
        surjective,
        continuum_valued,
    }
}

/// Every catalog entry with its expected property triple.
pub const CATALOG: [(&str, ExpectedFlags); 12] = [
    ("constant-zero", flags(true, false, true)),
    ("id-or-B", flags(true, true, true)),
    ("full-on-A-else-B", flags(true, true, true)),
    ("down-cone", flags(true, true, true)),
    ("up-cone", flags(true, true, true)),
    ("mirror", flags(true, true, false)),
    ("wall-and-diagonal", flags(true, true, true)),
    ("wall-and-ceiling", flags(true, true, true)),
    ("shelf-with-posts", flags(true, true, true)),
    ("patched-diagonal", flags(true, true, false)),
    ("tent", flags(false, true, true)),
    ("identity", flags(true, true, true)),
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|(name, _)| *name).collect()
}

pub fn expected_flags(name: &str) -> Option<ExpectedFlags> {
    CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| *f)
}

fn seg(x0: Rat, y0: Rat, x1: Rat, y1: Rat) -> Piece {
    Piece::segment((x0, y0), (x1, y1)).expect("catalog segments live in the unit square")
}

fn band(x_lo: Rat, x_hi: Rat, y_lo: Rat, y_hi: Rat) -> Piece {
    Piece::rect(
        Interval::new(x_lo, x_hi).expect("catalog intervals are ordered"),
        Interval::new(y_lo, y_hi).expect("catalog intervals are ordered"),
    )
}

/// Builds a catalog relation by name (the patched-diagonal entry uses its
/// default parameters: a = 1/2 with a single horizontal patch).
pub fn make_example(name: &str) -> Result<Relation, GalleryError> {
    let pieces = match name {
        "constant-zero" => vec![band(zero(), one(), zero(), zero())],
        // Identity outside the band B = [1/4, 3/4], the full band on it.
        "id-or-B" => vec![
            seg(zero(), zero(), rat(1, 4), rat(1, 4)),
            band(rat(1, 4), rat(3, 4), rat(1, 4), rat(3, 4)),
            seg(rat(3, 4), rat(3, 4), one(), one()),
        ],
        // Full value set on A = {0}, the band B = [1/2, 1] elsewhere.
        "full-on-A-else-B" => vec![
            band(zero(), zero(), zero(), one()),
            band(zero(), one(), half(), one()),
        ],
        // Identity plus the full downward value set at the right end.
        "down-cone" => vec![
            seg(zero(), zero(), one(), one()),
            band(one(), one(), zero(), one()),
        ],
        // Identity plus an upward value set at the midpoint.
        "up-cone" => vec![
            seg(zero(), zero(), one(), one()),
            band(half(), half(), half(), one()),
        ],
        "mirror" => vec![
            seg(zero(), zero(), one(), one()),
            seg(zero(), one(), one(), zero()),
        ],
        "wall-and-diagonal" => vec![
            band(zero(), zero(), zero(), one()),
            seg(zero(), zero(), one(), one()),
        ],
        "wall-and-ceiling" => vec![
            band(zero(), zero(), zero(), one()),
            band(zero(), one(), one(), one()),
        ],
        "shelf-with-posts" => vec![
            band(zero(), zero(), zero(), half()),
            band(one(), one(), half(), one()),
            band(zero(), one(), half(), half()),
        ],
        "patched-diagonal" => {
            return make_patched_diagonal(
                &half(),
                &[band(zero(), rat(1, 4), rat(3, 4), rat(3, 4))],
            )
        }
        "tent" => vec![
            seg(zero(), zero(), half(), one()),
            seg(half(), one(), one(), zero()),
        ],
        "identity" => vec![seg(zero(), zero(), one(), one())],
        other => return Err(GalleryError::UnknownName(other.to_string())),
    };
    Ok(Relation::new(name, pieces).expect("catalog entries are total"))
}

/// Extreme points of a piece: rectangle corners or segment endpoints.
fn piece_corners(p: &Piece) -> Vec<Point> {
    match p {
        Piece::Rect { x, y } => {
            let mut corners = vec![
                (x.lo().clone(), y.lo().clone()),
                (x.lo().clone(), y.hi().clone()),
                (x.hi().clone(), y.lo().clone()),
                (x.hi().clone(), y.hi().clone()),
            ];
            corners.sort();
            corners.dedup();
            corners
        }
        Piece::Segment { from, to } => vec![from.clone(), to.clone()],
    }
}

/// The diagonal together with the given patch pieces.
///
/// Each patch piece must stay inside `[0,a) x (a,1]`, except that the
/// corner `(a,a)` itself may be used. Pieces are convex, so it suffices
/// that every extreme point either equals `(a,a)` or satisfies
/// `x < a` and `y > a`; every relation passing this check is idempotent
/// and surjective.
pub fn make_patched_diagonal(a: &Rat, patch: &[Piece]) -> Result<Relation, GalleryError> {
    if *a <= zero() || *a >= one() {
        return Err(GalleryError::BadParameter(a.clone()));
    }
    for (index, piece) in patch.iter().enumerate() {
        for (x, y) in piece_corners(piece) {
            let at_corner = x == *a && y == *a;
            if !at_corner && !(x < *a && y > *a) {
                return Err(GalleryError::RegionViolation { index, x, y });
            }
        }
    }
    let mut pieces = vec![seg(zero(), zero(), one(), one())];
    pieces.extend(patch.iter().cloned());
    let relation =
        Relation::new("patched-diagonal", pieces).expect("the diagonal makes the union total");
    debug_assert!(relation.is_idempotent());
    debug_assert!(relation.is_surjective());
    Ok(relation)
}

/// A deterministic pseudo-random patched diagonal: `count` pieces with
/// coordinates on the 1/64 grid, strictly inside `[0,a) x (a,1]`.
pub fn random_patched_diagonal(seed: u64, a: &Rat, count: usize) -> Relation {
    assert!(count >= 1, "at least one patch piece is required");
    assert!(
        *a > zero() && *a < one(),
        "the patch parameter must satisfy 0 < a < 1"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Grid values strictly below a and strictly above a.
    let xs: Vec<Rat> = (0..=64).map(|i| rat(i, 64)).filter(|v| v < a).collect();
    let ys: Vec<Rat> = (0..=64).map(|i| rat(i, 64)).filter(|v| v > a).collect();
    assert!(!xs.is_empty() && !ys.is_empty());
    let mut patch = Vec::with_capacity(count);
    for _ in 0..count {
        let x0 = xs[rng.gen_range(0..xs.len())].clone();
        let x1 = xs[rng.gen_range(0..xs.len())].clone();
        let y0 = ys[rng.gen_range(0..ys.len())].clone();
        let y1 = ys[rng.gen_range(0..ys.len())].clone();
        if rng.gen_bool(0.5) {
            patch.push(band(
                x0.clone().min(x1.clone()),
                x0.max(x1),
                y0.clone().min(y1.clone()),
                y0.max(y1),
            ));
        } else {
            // The constructor canonicalizes axis-parallel and degenerate
            // segments into rectangles, so any endpoint pair is fine.
            patch.push(
                Piece::segment((x0, y0), (x1, y1)).expect("grid points lie in the unit square"),
            );
        }
    }
    make_patched_diagonal(a, &patch)
        .expect("pieces were sampled strictly inside the region")
        .renamed(format!("patched-diagonal-seed{seed}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_flags_match_computed_diagnostics() {
        for (name, expected) in CATALOG {
            let r = make_example(name).unwrap();
            let d = r.validate();
            assert_eq!(d.idempotent, expected.idempotent, "{name}: idempotent");
            assert_eq!(d.surjective, expected.surjective, "{name}: surjective");
            assert_eq!(
                d.continuum_valued, expected.continuum_valued,
                "{name}: continuum-valued"
            );
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert_eq!(
            make_example("no-such-entry").unwrap_err(),
            GalleryError::UnknownName("no-such-entry".to_string())
        );
    }

    #[test]
    fn patch_region_accepts_documented_shapes() {
        // A horizontal patch below a, above a in value.
        let horizontal = make_patched_diagonal(
            &half(),
            &[seg_piece((zero(), rat(3, 4)), (rat(1, 4), rat(3, 4)))],
        )
        .unwrap();
        assert!(horizontal.is_idempotent());
        // A patch reaching the corner (a, a).
        let hooked = make_patched_diagonal(
            &half(),
            &[
                Piece::point(half(), half()).unwrap(),
                seg_piece((half(), half()), (rat(1, 4), rat(3, 4))),
            ],
        )
        .unwrap();
        assert!(hooked.is_idempotent());
        // A single point off the diagonal.
        let spiked = make_patched_diagonal(&half(), &[Piece::point(zero(), one()).unwrap()]).unwrap();
        assert_eq!(spiked.graph_components().0, 2);
    }

    fn seg_piece(a: (Rat, Rat), b: (Rat, Rat)) -> Piece {
        Piece::segment(a, b).unwrap()
    }

    #[test]
    fn patch_region_rejects_overreach() {
        // x reaches a with y above a: the corner (1/2, 3/4) is out.
        let err = make_patched_diagonal(
            &half(),
            &[band(rat(1, 4), half(), rat(3, 4), one())],
        )
        .unwrap_err();
        assert_eq!(
            err,
            GalleryError::RegionViolation {
                index: 0,
                x: half(),
                y: rat(3, 4)
            }
        );
        // y dipping to a with x below a is equally out.
        assert!(make_patched_diagonal(
            &half(),
            &[band(zero(), rat(1, 4), half(), rat(3, 4))]
        )
        .is_err());
        assert_eq!(
            make_patched_diagonal(&zero(), &[]).unwrap_err(),
            GalleryError::BadParameter(zero())
        );
    }

    #[test]
    fn random_patches_are_deterministic_and_idempotent() {
        for seed in [0, 1, 2, 17] {
            let a = random_patched_diagonal(seed, &half(), 3);
            let b = random_patched_diagonal(seed, &half(), 3);
            assert_eq!(a.pieces(), b.pieces(), "seed {seed}");
            assert!(a.is_idempotent(), "seed {seed}");
            assert!(a.is_surjective(), "seed {seed}");
        }
        let thirds = random_patched_diagonal(5, &rat(1, 3), 5);
        assert!(thirds.is_idempotent());
    }
}
