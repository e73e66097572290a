//! Exact decision of "is this cell contained in a finite union of cells".
//!
//! The procedure recursively splits the candidate along constraint
//! hyperplanes of the covering cells. Termination: a hyperplane that
//! strictly splits a cell can never strictly split either closed half
//! again, so the recursion depth is bounded by the number of constraint
//! sides in the cover. When no strict split exists, every intersecting
//! cover cell touches the candidate only in a proper face slice, and a
//! convex cell is never covered by finitely many proper slices; a witness
//! point off all of them is assembled as an exact centroid.

use crate::cell::{Cell, ConstraintKind, LinearConstraint};
use crate::rat::{rat_int, zero, Rat};

/// The two closed half-space sides of a row.
fn le_sides(row: &LinearConstraint) -> Vec<(Vec<Rat>, Rat)> {
    match row.kind {
        ConstraintKind::Le => vec![(row.coeffs.clone(), row.bound.clone())],
        ConstraintKind::Eq => vec![
            (row.coeffs.clone(), row.bound.clone()),
            (
                row.coeffs.iter().map(|c| -c.clone()).collect(),
                -row.bound.clone(),
            ),
        ],
    }
}

/// True iff every point of `p` (assumed feasible) lies in `q`.
fn contains(q: &Cell, p: &Cell) -> bool {
    for row in q.rows() {
        match row.kind {
            ConstraintKind::Le => {
                let (max, _) = p.maximize(&row.coeffs).expect("p is feasible");
                if max > row.bound {
                    return false;
                }
            }
            ConstraintKind::Eq => {
                let (max, _) = p.maximize(&row.coeffs).expect("p is feasible");
                if max > row.bound {
                    return false;
                }
                let (min, _) = p.minimize(&row.coeffs).expect("p is feasible");
                if min < row.bound {
                    return false;
                }
            }
        }
    }
    true
}

fn search(p: &Cell, cover: &[&Cell], depth: usize) -> Option<Vec<Rat>> {
    assert!(depth < 10_000, "cover recursion failed to terminate");
    if !p.is_feasible() {
        return None;
    }
    let live: Vec<&Cell> = cover
        .iter()
        .copied()
        .filter(|q| p.merged(q).is_feasible())
        .collect();
    if live.is_empty() {
        return Some(p.feasible_point().unwrap());
    }
    if live.iter().any(|q| contains(q, p)) {
        return None;
    }

    // Hunt for a violated side that genuinely cuts p in two.
    for q in &live {
        for row in q.rows() {
            for (coeffs, bound) in le_sides(row) {
                let (max, _) = p.maximize(&coeffs).expect("p is feasible");
                if max <= bound {
                    continue;
                }
                let (min, _) = p.minimize(&coeffs).expect("p is feasible");
                if min < bound {
                    let below = p
                        .clone()
                        .with_row(LinearConstraint::le(coeffs.clone(), bound.clone()));
                    if let Some(w) = search(&below, cover, depth + 1) {
                        return Some(w);
                    }
                    let above = p.clone().with_row(LinearConstraint::le(
                        coeffs.iter().map(|c| -c.clone()).collect(),
                        -bound,
                    ));
                    return search(&above, cover, depth + 1);
                }
            }
        }
    }

    // No strict split: each live cell meets p only inside one of its own
    // boundary hyperplanes. Averaging one strict violator per live cell
    // yields a point of p outside all of them.
    let mut sum = vec![zero(); p.dim()];
    let mut count = 0i64;
    for q in &live {
        let mut picked = false;
        'rows: for row in q.rows() {
            for (coeffs, bound) in le_sides(row) {
                let (max, point) = p.maximize(&coeffs).expect("p is feasible");
                if max > bound {
                    for (s, v) in sum.iter_mut().zip(&point) {
                        *s += v.clone();
                    }
                    count += 1;
                    picked = true;
                    break 'rows;
                }
            }
        }
        debug_assert!(picked, "live non-containing cell must violate some side");
    }
    let k = rat_int(count.max(1));
    let witness: Vec<Rat> = sum.into_iter().map(|s| s / k.clone()).collect();
    debug_assert!(p.satisfies(&witness));
    debug_assert!(live.iter().all(|q| !q.satisfies(&witness)));
    Some(witness)
}

/// A point of `p` outside every cover cell, or `None` when `p` is covered.
/// An infeasible `p` counts as covered.
pub fn cell_in_union_witness(p: &Cell, cover: &[Cell]) -> Option<Vec<Rat>> {
    let refs: Vec<&Cell> = cover.iter().collect();
    search(p, &refs, 0)
}

/// Exact containment of `p` in the union of `cover`.
pub fn cell_in_union(p: &Cell, cover: &[Cell]) -> bool {
    cell_in_union_witness(p, cover).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{one, rat};

    fn diag() -> Cell {
        Cell::unit_box(2).with_row(LinearConstraint::eq(vec![one(), -one()], zero()))
    }

    fn anti() -> Cell {
        Cell::unit_box(2).with_row(LinearConstraint::eq(vec![one(), one()], one()))
    }

    #[test]
    fn box_covered_by_two_triangles() {
        let below = Cell::unit_box(2).with_row(LinearConstraint::le(vec![-one(), one()], zero()));
        let above = Cell::unit_box(2).with_row(LinearConstraint::le(vec![one(), -one()], zero()));
        assert!(cell_in_union(&Cell::unit_box(2), &[below, above]));
    }

    #[test]
    fn diagonal_not_covered_by_antidiagonal() {
        let w = cell_in_union_witness(&diag(), &[anti()]).unwrap();
        assert!(diag().satisfies(&w));
        assert!(!anti().satisfies(&w));
    }

    #[test]
    fn point_inside_box() {
        let mut pt = Cell::unit_box(2);
        pt.pin(0, zero());
        pt.pin(1, zero());
        assert!(cell_in_union(&pt, &[Cell::unit_box(2)]));
    }

    #[test]
    fn infeasible_candidate_is_covered() {
        let mut c = Cell::unit_box(1);
        c.pin(0, zero());
        c.pin(0, one());
        assert!(cell_in_union(&c, &[]));
    }

    #[test]
    fn feasible_candidate_with_empty_cover_fails() {
        let w = cell_in_union_witness(&Cell::unit_box(2), &[]).unwrap();
        assert!(Cell::unit_box(2).satisfies(&w));
    }

    #[test]
    fn segment_covered_by_two_halves() {
        let left = Cell::unit_box(2)
            .with_row(LinearConstraint::eq(vec![one(), -one()], zero()))
            .with_row(LinearConstraint::le(vec![one(), zero()], rat(1, 2)));
        let right = Cell::unit_box(2)
            .with_row(LinearConstraint::eq(vec![one(), -one()], zero()))
            .with_row(LinearConstraint::le(vec![-one(), zero()], rat(-1, 2)));
        assert!(cell_in_union(&diag(), &[left, right]));
    }

    #[test]
    fn half_segment_does_not_cover() {
        let left = Cell::unit_box(2)
            .with_row(LinearConstraint::eq(vec![one(), -one()], zero()))
            .with_row(LinearConstraint::le(vec![one(), zero()], rat(1, 2)));
        let w = cell_in_union_witness(&diag(), std::slice::from_ref(&left)).unwrap();
        assert!(diag().satisfies(&w));
        assert!(!left.satisfies(&w));
    }

    #[test]
    fn boundary_slice_cover_is_seen_through() {
        // The left edge of the box touches it without covering it.
        let mut edge = Cell::unit_box(2);
        edge.pin(0, zero());
        let w = cell_in_union_witness(&Cell::unit_box(2), &[edge.clone()]).unwrap();
        assert!(Cell::unit_box(2).satisfies(&w));
        assert!(!edge.satisfies(&w));
    }

    #[test]
    fn union_coverage_with_overlap() {
        // [0,1]^1 covered by [0, 2/3] and [1/3, 1].
        let a = Cell::unit_box(1).with_row(LinearConstraint::le(vec![one()], rat(2, 3)));
        let b = Cell::unit_box(1).with_row(LinearConstraint::le(vec![-one()], rat(-1, 3)));
        assert!(cell_in_union(&Cell::unit_box(1), &[a, b]));
    }

    #[test]
    fn touching_partition_covers() {
        let a = Cell::unit_box(1).with_row(LinearConstraint::le(vec![one()], rat(1, 2)));
        let b = Cell::unit_box(1).with_row(LinearConstraint::le(vec![-one()], rat(-1, 2)));
        assert!(cell_in_union(&Cell::unit_box(1), &[a, b]));
    }

    #[test]
    fn gap_in_partition_detected() {
        let a = Cell::unit_box(1).with_row(LinearConstraint::le(vec![one()], rat(1, 3)));
        let b = Cell::unit_box(1).with_row(LinearConstraint::le(vec![-one()], rat(-2, 3)));
        let w = cell_in_union_witness(&Cell::unit_box(1), &[a, b]).unwrap();
        assert!(w[0] > rat(1, 3) && w[0] < rat(2, 3));
    }
}
