//! Exact rational linear programming over cells.
//!
//! Two-phase primal simplex with Bland's rule. Bland's rule is slow but
//! cycle-free, and the systems here are tiny (unit-box cells in dimension
//! at most seven with a few dozen rows), so robustness wins over speed.
//! Structural variables are treated as nonnegative, which is sound because
//! every cell carries its unit-box rows.

use crate::cell::{Cell, ConstraintKind};
use crate::rat::{one, zero, Rat};
use num_traits::{Signed, Zero};

struct Tableau {
    ncols: usize,
    n_struct: usize,
    art_start: usize,
    rows: Vec<Vec<Rat>>, // each ncols + 1 wide; last column is the rhs
    basis: Vec<usize>,
    obj: Vec<Rat>, // reduced costs; last entry is -(objective value)
}

impl Tableau {
    fn build(cell: &Cell) -> Tableau {
        let n = cell.dim();
        let m = cell.rows().len();
        let n_slack = cell
            .rows()
            .iter()
            .filter(|r| r.kind == ConstraintKind::Le)
            .count();

        // First pass: lay out structural + slack columns, note which rows
        // need an artificial (negative rhs after slack insertion, or any
        // equality row).
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
        let mut basis_hint: Vec<Option<usize>> = Vec::with_capacity(m);
        let mut slack_idx = 0usize;
        for c in cell.rows() {
            let mut row = vec![zero(); n + n_slack + 1];
            for (j, v) in c.coeffs.iter().enumerate() {
                row[j] = v.clone();
            }
            let mut rhs = c.bound.clone();
            let mut slack_col = None;
            if c.kind == ConstraintKind::Le {
                let col = n + slack_idx;
                slack_idx += 1;
                row[col] = one();
                slack_col = Some(col);
            }
            if rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                rhs = -rhs;
                slack_col = None; // slack coefficient is now -1
            }
            let last = row.len() - 1;
            row[last] = rhs;
            rows.push(row);
            basis_hint.push(slack_col);
        }

        // Second pass: append artificial columns where needed.
        let n_art = basis_hint.iter().filter(|b| b.is_none()).count();
        let ncols = n + n_slack + n_art;
        let mut basis = Vec::with_capacity(m);
        let mut art = 0usize;
        for (i, row) in rows.iter_mut().enumerate() {
            let rhs = row.pop().unwrap();
            row.resize(ncols, zero());
            row.push(rhs);
            match basis_hint[i] {
                Some(col) => basis.push(col),
                None => {
                    let col = n + n_slack + art;
                    art += 1;
                    row[col] = one();
                    basis.push(col);
                }
            }
        }

        Tableau {
            ncols,
            n_struct: n,
            art_start: n + n_slack,
            rows,
            basis,
            obj: vec![zero(); ncols + 1],
        }
    }

    /// Recomputes the reduced-cost row for a cost vector (minimization).
    fn price_out(&mut self, costs: &[Rat]) {
        debug_assert_eq!(costs.len(), self.ncols);
        let mut obj: Vec<Rat> = costs.to_vec();
        obj.push(zero());
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    obj[j] -= cb.clone() * v.clone();
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        debug_assert!(!piv.is_zero());
        if piv != one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= piv.clone();
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = row[c].clone();
            if factor.is_zero() {
                continue;
            }
            for (j, v) in row.iter_mut().enumerate() {
                if !pivot_row[j].is_zero() {
                    *v -= factor.clone() * pivot_row[j].clone();
                }
            }
        }
        let factor = self.obj[c].clone();
        if !factor.is_zero() {
            for (j, v) in self.obj.iter_mut().enumerate() {
                if !pivot_row[j].is_zero() {
                    *v -= factor.clone() * pivot_row[j].clone();
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland-rule iterations until optimal. `allow` filters entering
    /// columns (used to ban artificials in phase 2). Returns false on
    /// unboundedness, which cannot happen for cells but is kept as a guard.
    fn run(&mut self, allow: impl Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.ncols)
                .find(|&j| allow(j) && self.obj[j].is_negative());
            let Some(c) = entering else {
                return true;
            };
            let rhs = self.ncols;
            let mut leave: Option<(usize, Rat)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = row[rhs].clone() / row[c].clone();
                    let better = match &leave {
                        None => true,
                        Some((best_r, best)) => {
                            ratio < *best
                                || (ratio == *best && self.basis[r] < self.basis[*best_r])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Current value of the minimized objective.
    fn objective_value(&self) -> Rat {
        -self.obj[self.ncols].clone()
    }

    fn structural_point(&self) -> Vec<Rat> {
        let mut point = vec![zero(); self.n_struct];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                point[b] = self.rows[r][self.ncols].clone();
            }
        }
        point
    }

    /// Phase 1: true iff feasible, leaving a feasible basis with every
    /// artificial column out of the basis (redundant rows dropped).
    fn phase1(&mut self) -> bool {
        if self.art_start == self.ncols {
            return true; // every row came with its own slack basis
        }
        let mut costs = vec![zero(); self.ncols];
        for c in costs.iter_mut().skip(self.art_start) {
            *c = one();
        }
        self.price_out(&costs);
        let ok = self.run(|_| true);
        debug_assert!(ok, "phase 1 objective is bounded below by zero");
        if !self.objective_value().is_zero() {
            return false;
        }
        // Drive leftover artificials out of the basis.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.art_start {
                let col = (0..self.art_start).find(|&j| !self.rows[r][j].is_zero());
                match col {
                    Some(c) => self.pivot(r, c),
                    None => {
                        // Row is all zeros over real columns: redundant.
                        self.rows.swap_remove(r);
                        self.basis.swap_remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        true
    }
}

/// A point of the cell, if any. Exact.
pub fn feasible_point(cell: &Cell) -> Option<Vec<Rat>> {
    let mut t = Tableau::build(cell);
    if !t.phase1() {
        return None;
    }
    let point = t.structural_point();
    debug_assert!(cell.satisfies(&point), "simplex returned an outside point");
    Some(point)
}

/// Exact maximum of `objective . x` over the cell plus a maximizer;
/// `None` iff the cell is empty. Unboundedness is impossible inside the
/// unit box.
pub fn maximize(cell: &Cell, objective: &[Rat]) -> Option<(Rat, Vec<Rat>)> {
    assert_eq!(objective.len(), cell.dim(), "objective dimension mismatch");
    let mut t = Tableau::build(cell);
    if !t.phase1() {
        return None;
    }
    let mut costs = vec![zero(); t.ncols];
    for (j, c) in objective.iter().enumerate() {
        costs[j] = -c.clone(); // maximize = minimize the negation
    }
    let art_start = t.art_start;
    t.price_out(&costs);
    let bounded = t.run(|j| j < art_start);
    assert!(bounded, "LP over a unit-box cell cannot be unbounded");
    let point = t.structural_point();
    let value = -t.objective_value();
    debug_assert!(cell.satisfies(&point));
    debug_assert_eq!(
        value,
        objective
            .iter()
            .zip(&point)
            .map(|(c, x)| c.clone() * x.clone())
            .fold(zero(), |a, v| a + v)
    );
    Some((value, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::LinearConstraint;
    use crate::rat::rat;

    fn diag_cell() -> Cell {
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::eq(vec![rat(1, 1), rat(-1, 1)], zero()));
        c
    }

    #[test]
    fn diagonal_is_feasible_with_exact_witness() {
        let w = feasible_point(&diag_cell()).unwrap();
        assert_eq!(w[0], w[1]);
        assert!(diag_cell().satisfies(&w));
    }

    #[test]
    fn contradictory_pins_are_infeasible() {
        let mut c = Cell::unit_box(1);
        c.pin(0, zero());
        c.pin(0, one());
        assert!(feasible_point(&c).is_none());
    }

    #[test]
    fn chained_equalities_force_unique_point() {
        let mut c = Cell::unit_box(3);
        c.push(LinearConstraint::eq(vec![rat(1, 1), rat(-1, 1), zero()], zero()));
        c.push(LinearConstraint::eq(vec![zero(), rat(1, 1), rat(-1, 1)], zero()));
        c.pin(0, one());
        let w = feasible_point(&c).unwrap();
        assert_eq!(w, vec![one(), one(), one()]);
    }

    #[test]
    fn maximize_over_diagonal() {
        let (v, p) = diag_cell().max_coord(0).unwrap();
        assert_eq!(v, one());
        assert_eq!(p, vec![one(), one()]);
    }

    #[test]
    fn maximize_sum_on_antidiagonal() {
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::eq(vec![rat(1, 1), rat(1, 1)], one()));
        let (v, p) = c.maximize(&[one(), one()]).unwrap();
        assert_eq!(v, one());
        assert!(c.satisfies(&p));
    }

    #[test]
    fn maximize_pinned_coordinate() {
        let mut c = Cell::unit_box(2);
        c.pin(0, zero());
        let (v, _) = c.max_coord(0).unwrap();
        assert_eq!(v, zero());
        let (v1, _) = c.max_coord(1).unwrap();
        assert_eq!(v1, one());
    }

    #[test]
    fn minimum_via_negation() {
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::le(vec![rat(-1, 1), rat(-1, 1)], rat(-1, 2)));
        let (v, p) = c.minimize(&[one(), one()]).unwrap();
        assert_eq!(v, rat(1, 2));
        assert!(c.satisfies(&p));
    }

    #[test]
    fn fractional_data_stays_exact() {
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::eq(vec![rat(2, 3), rat(1, 7)], rat(1, 2)));
        let (v, p) = c.maximize(&[rat(1, 1), zero()]).unwrap();
        // 2/3 x = 1/2 - 1/7 y; x maximal at y = 0: x = 3/4.
        assert_eq!(v, rat(3, 4));
        assert_eq!(p[0], rat(3, 4));
        assert_eq!(p[1], zero());
    }

    #[test]
    fn degenerate_point_cell() {
        let mut c = Cell::unit_box(2);
        c.pin(0, rat(1, 3));
        c.pin(1, rat(2, 3));
        let w = feasible_point(&c).unwrap();
        assert_eq!(w, vec![rat(1, 3), rat(2, 3)]);
        let (v, _) = c.maximize(&[one(), one()]).unwrap();
        assert_eq!(v, one());
    }

    #[test]
    fn redundant_rows_handled() {
        let mut c = Cell::unit_box(2);
        c.push(LinearConstraint::eq(vec![rat(1, 1), rat(-1, 1)], zero()));
        c.push(LinearConstraint::eq(vec![rat(2, 1), rat(-2, 1)], zero()));
        c.push(LinearConstraint::eq(vec![rat(3, 1), rat(-3, 1)], zero()));
        assert!(feasible_point(&c).is_some());
    }
}
