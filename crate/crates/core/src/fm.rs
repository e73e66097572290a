//! Fourier-Motzkin projection of cells onto a subset of coordinates.
//!
//! Equality rows are eliminated by exact substitution before the classic
//! positive/negative pairing, which keeps the blowup negligible at the
//! scales that arise here. Light pruning (exact duplicates and rows weaker
//! than the unit box) runs after every elimination round; full LP-based
//! redundancy elimination is available separately via `Cell::pruned`.

use crate::cell::{Cell, ConstraintKind, LinearConstraint};
use crate::rat::{one, zero, Rat};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProjectionError {
    #[error("projection index list must be nonempty, strictly increasing, and within dimension {dim}")]
    BadIndexList { dim: usize },
}

/// Row soup used during elimination; rows may be trivial (all-zero) for a
/// moment before being filtered.
struct Soup {
    rows: Vec<LinearConstraint>,
    infeasible: bool,
}

impl Soup {
    fn add(&mut self, coeffs: Vec<Rat>, kind: ConstraintKind, bound: Rat) {
        if coeffs.iter().all(|c| c.is_zero()) {
            let bad = match kind {
                ConstraintKind::Le => bound.is_negative(),
                ConstraintKind::Eq => !bound.is_zero(),
            };
            if bad {
                self.infeasible = true;
            }
            return;
        }
        let row = LinearConstraint::new(coeffs, kind, bound);
        if box_dominates(&row) {
            return;
        }
        if !self.rows.contains(&row) {
            self.rows.push(row);
        }
    }
}

/// True when the row is implied by `0 <= x_i <= 1` alone (the box rows
/// themselves are not dominated; they are exactly the boundary case and we
/// keep them via the fresh unit box of the result).
fn box_dominates(row: &LinearConstraint) -> bool {
    if row.kind != ConstraintKind::Le {
        return false;
    }
    match row.single_variable() {
        Some((_, c)) if c.is_positive() => row.bound.clone() / c.clone() >= one(),
        Some((_, c)) => row.bound.clone() / c.clone() <= zero(),
        None => false,
    }
}

fn subtract_scaled(target: &LinearConstraint, pivot: &LinearConstraint, var: usize) -> (Vec<Rat>, Rat) {
    // target - (target[var]/pivot[var]) * pivot, eliminating `var`.
    let factor = target.coeffs[var].clone() / pivot.coeffs[var].clone();
    let coeffs: Vec<Rat> = target
        .coeffs
        .iter()
        .zip(&pivot.coeffs)
        .map(|(t, p)| t.clone() - factor.clone() * p.clone())
        .collect();
    let bound = target.bound.clone() - factor * pivot.bound.clone();
    (coeffs, bound)
}

/// Projects the cell onto the coordinates in `keep` (0-based, strictly
/// increasing). The result is an honest cell in dimension `keep.len()`:
/// its point set is exactly the image of the input under the coordinate
/// projection. An infeasible input projects to an infeasible cell.
pub fn fm_project(cell: &Cell, keep: &[usize]) -> Result<Cell, ProjectionError> {
    let dim = cell.dim();
    let valid = !keep.is_empty()
        && keep.windows(2).all(|w| w[0] < w[1])
        && keep.iter().all(|&k| k < dim);
    if !valid {
        return Err(ProjectionError::BadIndexList { dim });
    }

    let mut soup = Soup {
        rows: Vec::new(),
        infeasible: false,
    };
    for row in cell.rows() {
        soup.add(row.coeffs.clone(), row.kind, row.bound.clone());
    }

    let eliminate: Vec<usize> = (0..dim).rev().filter(|v| !keep.contains(v)).collect();
    for v in eliminate {
        if soup.infeasible {
            break;
        }
        let mut rows = std::mem::take(&mut soup.rows);
        // The eliminated variable still ranges over [0,1]; its box rows were
        // pruned from the soup as redundant, but they carry information once
        // other rows mention v, so they re-enter the round here.
        let mut lo = vec![zero(); dim];
        lo[v] = -one();
        rows.push(LinearConstraint::le(lo, zero()));
        let mut hi = vec![zero(); dim];
        hi[v] = one();
        rows.push(LinearConstraint::le(hi, one()));
        // Prefer an equality pivot: exact substitution, no row pairing.
        let pivot_pos = rows
            .iter()
            .position(|r| r.kind == ConstraintKind::Eq && !r.coeffs[v].is_zero());
        if let Some(pi) = pivot_pos {
            let pivot = rows[pi].clone();
            for (i, row) in rows.into_iter().enumerate() {
                if i == pi {
                    continue;
                }
                if row.coeffs[v].is_zero() {
                    soup.add(row.coeffs, row.kind, row.bound);
                } else {
                    let (coeffs, bound) = subtract_scaled(&row, &pivot, v);
                    soup.add(coeffs, row.kind, bound);
                }
            }
            continue;
        }
        let mut pos: Vec<LinearConstraint> = Vec::new();
        let mut neg: Vec<LinearConstraint> = Vec::new();
        for row in rows {
            if row.coeffs[v].is_zero() {
                soup.add(row.coeffs, row.kind, row.bound);
            } else if row.coeffs[v].is_positive() {
                pos.push(row);
            } else {
                neg.push(row);
            }
        }
        for p in &pos {
            for q in &neg {
                // (-q_v) * p + p_v * q cancels the v coefficient; both
                // multipliers are positive so the direction is preserved.
                let mp = -q.coeffs[v].clone();
                let mq = p.coeffs[v].clone();
                let coeffs: Vec<Rat> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(a, b)| mp.clone() * a.clone() + mq.clone() * b.clone())
                    .collect();
                let bound = mp.clone() * p.bound.clone() + mq.clone() * q.bound.clone();
                soup.add(coeffs, ConstraintKind::Le, bound);
            }
        }
    }

    let k = keep.len();
    let mut out = Cell::unit_box(k);
    if soup.infeasible {
        let mut coeffs = vec![zero(); k];
        coeffs[0] = one();
        out.push(LinearConstraint::le(coeffs, -one()));
        return Ok(out);
    }
    for row in soup.rows {
        let coeffs: Vec<Rat> = keep.iter().map(|&i| row.coeffs[i].clone()).collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        out.push(LinearConstraint::new(coeffs, row.kind, row.bound));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn project_diagonal_to_full_axis() {
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::eq(vec![one(), -one()], zero()));
        let p = fm_project(&c, &[0]).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.max_coord(0).unwrap().0, one());
        assert_eq!(p.min_coord(0).unwrap().0, zero());
    }

    #[test]
    fn project_pinned_pair_to_point() {
        let mut c = Cell::unit_box(3);
        c.pin(0, zero());
        c.push(LinearConstraint::eq(vec![zero(), one(), -one()], zero()));
        c.pin(2, rat(1, 3));
        let p = fm_project(&c, &[0, 1]).unwrap();
        let w = p.feasible_point().unwrap();
        assert_eq!(w, vec![zero(), rat(1, 3)]);
        assert_eq!(p.max_coord(1).unwrap().0, rat(1, 3));
        assert_eq!(p.min_coord(1).unwrap().0, rat(1, 3));
    }

    #[test]
    fn project_sum_bound() {
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::le(vec![one(), one()], rat(1, 2)));
        let p = fm_project(&c, &[0]).unwrap();
        // x1 <= 1/2 - x2 can reach 1/2 only with x2 = 0.
        assert_eq!(p.max_coord(0).unwrap().0, rat(1, 2));
    }

    #[test]
    fn eliminated_box_constrains_through_equality() {
        // x1 = x0 - 1/2 with x1 in [0,1] forces x0 >= 1/2.
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::eq(vec![one(), -one()], rat(1, 2)));
        let p = fm_project(&c, &[0]).unwrap();
        assert_eq!(p.min_coord(0).unwrap().0, rat(1, 2));
        assert_eq!(p.max_coord(0).unwrap().0, one());
    }

    #[test]
    fn projection_of_infeasible_cell_is_infeasible() {
        let mut c = Cell::unit_box(2);
        c.pin(0, zero());
        c.pin(0, one());
        let p = fm_project(&c, &[1]).unwrap();
        assert!(!p.is_feasible());
    }

    #[test]
    fn identity_projection_preserves_point_set() {
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::le(vec![one(), one()], rat(3, 4)));
        let p = fm_project(&c, &[0, 1]).unwrap();
        assert_eq!(p.maximize(&[one(), one()]).unwrap().0, rat(3, 4));
    }

    #[test]
    fn rejects_bad_index_lists() {
        let c = Cell::unit_box(3);
        assert!(fm_project(&c, &[]).is_err());
        assert!(fm_project(&c, &[1, 0]).is_err());
        assert!(fm_project(&c, &[0, 0]).is_err());
        assert!(fm_project(&c, &[3]).is_err());
    }

    #[test]
    fn eliminated_box_rows_do_not_pollute() {
        let c = Cell::unit_box(4);
        let p = fm_project(&c, &[1, 2]).unwrap();
        assert_eq!(p, Cell::unit_box(2));
    }
}
