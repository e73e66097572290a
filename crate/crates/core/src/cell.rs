//! Convex cells: finite systems of exact linear constraints inside the unit
//! box. Mahavier-product pieces, projections, and coverage queries all
//! reduce to feasibility and optimization over these.

use crate::interval::Interval;
use crate::piece::Piece;
use crate::rat::{format_rat, one, zero, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    Le,
    Eq,
}

/// `coeffs . x <= bound` or `coeffs . x = bound`, stored in a canonical
/// primitive-integer scaling so duplicate rows compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rat>,
    pub kind: ConstraintKind,
    pub bound: Rat,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rat>, kind: ConstraintKind, bound: Rat) -> Self {
        debug_assert!(
            coeffs.iter().any(|c| !c.is_zero()),
            "constraint must mention a variable"
        );
        let mut row = LinearConstraint {
            coeffs,
            kind,
            bound,
        };
        row.canonicalize();
        row
    }

    pub fn le(coeffs: Vec<Rat>, bound: Rat) -> Self {
        LinearConstraint::new(coeffs, ConstraintKind::Le, bound)
    }

    pub fn eq(coeffs: Vec<Rat>, bound: Rat) -> Self {
        LinearConstraint::new(coeffs, ConstraintKind::Eq, bound)
    }

    /// Scale so all entries are integers with gcd 1; equalities additionally
    /// get a positive leading coefficient (scaling by -1 is allowed for
    /// them but not for inequalities).
    fn canonicalize(&mut self) {
        let mut lcm = num_bigint::BigInt::from(1);
        for c in self.coeffs.iter().chain(std::iter::once(&self.bound)) {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = num_bigint::BigInt::zero();
        let scale = Rat::from_integer(lcm);
        for c in self.coeffs.iter_mut() {
            *c *= scale.clone();
            gcd = gcd.gcd(c.numer());
        }
        self.bound *= scale;
        gcd = gcd.gcd(self.bound.numer());
        if !gcd.is_zero() && !gcd.is_one() {
            let down = Rat::from_integer(gcd);
            for c in self.coeffs.iter_mut() {
                *c /= down.clone();
            }
            self.bound /= down;
        }
        if self.kind == ConstraintKind::Eq {
            if let Some(first) = self.coeffs.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    for c in self.coeffs.iter_mut() {
                        *c = -c.clone();
                    }
                    self.bound = -self.bound.clone();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(point)
            .map(|(c, x)| c.clone() * x.clone())
            .fold(zero(), |acc, t| acc + t)
    }

    pub fn satisfied_by(&self, point: &[Rat]) -> bool {
        let v = self.eval(point);
        match self.kind {
            ConstraintKind::Le => v <= self.bound,
            ConstraintKind::Eq => v == self.bound,
        }
    }

    /// Same point set with the variable order reversed.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LinearConstraint::new(coeffs, self.kind, self.bound.clone())
    }

    /// Reads the row as a one-variable bound, if it mentions exactly one
    /// variable: `(index, coefficient)`.
    pub fn single_variable(&self) -> Option<(usize, &Rat)> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((i, c));
            }
        }
        found
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a != one() {
                write!(f, "{}*", format_rat(&a))?;
            }
            write!(f, "x{}", i + 1)?;
        }
        let op = match self.kind {
            ConstraintKind::Le => "<=",
            ConstraintKind::Eq => "=",
        };
        write!(f, " {} {}", op, format_rat(&self.bound))
    }
}

/// Intersection of the unit box `[0,1]^dim` with a list of constraint rows.
/// The box rows are always present, so every cell is compact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    dim: usize,
    rows: Vec<LinearConstraint>,
}

impl Cell {
    /// The full unit box in the given dimension.
    pub fn unit_box(dim: usize) -> Self {
        assert!(dim >= 1, "cells need at least one coordinate");
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut lo = vec![zero(); dim];
            lo[i] = -one();
            rows.push(LinearConstraint::le(lo, zero()));
            let mut hi = vec![zero(); dim];
            hi[i] = one();
            rows.push(LinearConstraint::le(hi, one()));
        }
        Cell { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[LinearConstraint] {
        &self.rows
    }

    /// Rows beyond the unit box.
    pub fn extra_rows(&self) -> impl Iterator<Item = &LinearConstraint> {
        self.rows.iter().filter(|r| !Cell::is_box_row(r))
    }

    pub fn is_box_row(row: &LinearConstraint) -> bool {
        if row.kind != ConstraintKind::Le {
            return false;
        }
        match row.single_variable() {
            Some((_, c)) if *c == -one() => row.bound == zero(),
            Some((_, c)) if *c == one() => row.bound == one(),
            _ => false,
        }
    }

    /// Adds a row, skipping exact duplicates.
    pub fn push(&mut self, row: LinearConstraint) {
        assert_eq!(row.dim(), self.dim, "constraint dimension mismatch");
        if !self.rows.contains(&row) {
            self.rows.push(row);
        }
    }

    pub fn with_row(mut self, row: LinearConstraint) -> Self {
        self.push(row);
        self
    }

    /// Constrains the pair `(x_input, x_output)` to lie on the piece.
    pub fn constrain_pair(&mut self, piece: &Piece, input: usize, output: usize) {
        assert!(input < self.dim && output < self.dim && input != output);
        match piece {
            Piece::Rect { x, y } => {
                self.push_interval(input, x);
                self.push_interval(output, y);
            }
            Piece::Segment { from, to } => {
                let dx = to.0.clone() - from.0.clone();
                let dy = to.1.clone() - from.1.clone();
                // dy*(u - from.x) = dx*(v - from.y)
                let mut coeffs = vec![zero(); self.dim];
                coeffs[input] = dy.clone();
                coeffs[output] = -dx.clone();
                let bound = dy * from.0.clone() - dx * from.1.clone();
                self.push(LinearConstraint::eq(coeffs, bound));
                self.push_interval(input, &piece.x_extent());
                self.push_interval(output, &piece.y_extent());
            }
        }
    }

    fn push_interval(&mut self, var: usize, iv: &Interval) {
        if *iv.lo() > zero() {
            let mut coeffs = vec![zero(); self.dim];
            coeffs[var] = -one();
            self.push(LinearConstraint::le(coeffs, -iv.lo().clone()));
        }
        if *iv.hi() < one() {
            let mut coeffs = vec![zero(); self.dim];
            coeffs[var] = one();
            self.push(LinearConstraint::le(coeffs, iv.hi().clone()));
        }
    }

    /// Adds `x_var = value`.
    pub fn pin(&mut self, var: usize, value: Rat) {
        let mut coeffs = vec![zero(); self.dim];
        coeffs[var] = one();
        self.push(LinearConstraint::eq(coeffs, value));
    }

    pub fn satisfies(&self, point: &[Rat]) -> bool {
        point.len() == self.dim && self.rows.iter().all(|r| r.satisfied_by(point))
    }

    /// Intersection with another cell of the same dimension.
    pub fn merged(&self, other: &Cell) -> Cell {
        assert_eq!(self.dim, other.dim, "cell dimension mismatch");
        let mut out = self.clone();
        for row in &other.rows {
            out.push(row.clone());
        }
        out
    }

    /// Same point set with coordinates listed in reverse order.
    pub fn reversed(&self) -> Cell {
        Cell {
            dim: self.dim,
            rows: self.rows.iter().map(|r| r.reversed()).collect(),
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<Rat>> {
        crate::simplex::feasible_point(self)
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }

    /// Exact maximum of a linear objective, with a point attaining it.
    /// `None` when the cell is empty.
    pub fn maximize(&self, objective: &[Rat]) -> Option<(Rat, Vec<Rat>)> {
        crate::simplex::maximize(self, objective)
    }

    pub fn minimize(&self, objective: &[Rat]) -> Option<(Rat, Vec<Rat>)> {
        let neg: Vec<Rat> = objective.iter().map(|c| -c.clone()).collect();
        self.maximize(&neg).map(|(v, p)| (-v, p))
    }

    /// Maximum of a single coordinate.
    pub fn max_coord(&self, var: usize) -> Option<(Rat, Vec<Rat>)> {
        let mut obj = vec![zero(); self.dim];
        obj[var] = one();
        self.maximize(&obj)
    }

    pub fn min_coord(&self, var: usize) -> Option<(Rat, Vec<Rat>)> {
        let mut obj = vec![zero(); self.dim];
        obj[var] = one();
        self.minimize(&obj)
    }

    /// Drops rows whose removal provably does not enlarge the cell, using
    /// one exact optimization per candidate row. Box rows stay.
    pub fn pruned(&self) -> Cell {
        let mut keep = Cell::unit_box(self.dim);
        let extras: Vec<&LinearConstraint> = self.extra_rows().collect();
        for (i, row) in extras.iter().enumerate() {
            let mut without = Cell::unit_box(self.dim);
            for (j, other) in extras.iter().enumerate() {
                if i != j {
                    without.push((*other).clone());
                }
            }
            let redundant = match row.kind {
                ConstraintKind::Le => match without.maximize(&row.coeffs) {
                    None => true,
                    Some((max, _)) => max <= row.bound,
                },
                ConstraintKind::Eq => match (
                    without.maximize(&row.coeffs),
                    without.minimize(&row.coeffs),
                ) {
                    (None, _) | (_, None) => true,
                    (Some((max, _)), Some((min, _))) => max == row.bound && min == row.bound,
                },
            };
            if !redundant {
                keep.push((*row).clone());
            }
        }
        keep
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let extras: Vec<String> = self.extra_rows().map(|r| r.to_string()).collect();
        if extras.is_empty() {
            write!(f, "[0,1]^{}", self.dim)
        } else {
            write!(f, "[0,1]^{} with {}", self.dim, extras.join(", "))
        }
    }
}
