//! Graph pieces: the closed subsets of the unit square out of which every
//! relation graph is assembled. Canonical form keeps all axis-parallel
//! content (rectangles, horizontal/vertical segments, single points) as
//! `Rect` and reserves `Segment` for strictly sloped segments, so equality
//! of pieces is structural.

use crate::interval::{Interval, IntervalError};
use crate::rat::{zero, Rat};
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PieceError {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("segment endpoint out of the unit square: ({x}, {y})")]
    EndpointOutOfRange { x: Rat, y: Rat },
}

/// Exact point of the unit square.
pub type Point = (Rat, Rat);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Piece {
    /// Axis-parallel closed box `x * y`; either side may be a point.
    Rect { x: Interval, y: Interval },
    /// Closed segment with distinct endpoints and nonzero slope, stored with
    /// `from.0 < to.0`.
    Segment { from: Point, to: Point },
}

impl Piece {
    pub fn rect(x: Interval, y: Interval) -> Piece {
        Piece::Rect { x, y }
    }

    pub fn point(x: Rat, y: Rat) -> Result<Piece, PieceError> {
        Ok(Piece::Rect {
            x: Interval::point(x)?,
            y: Interval::point(y)?,
        })
    }

    /// Segment constructor; promotes axis-parallel and degenerate input to
    /// the equivalent `Rect` so the canonical-form invariant holds.
    pub fn segment(a: Point, b: Point) -> Result<Piece, PieceError> {
        for p in [&a, &b] {
            if !crate::rat::in_unit(&p.0) || !crate::rat::in_unit(&p.1) {
                return Err(PieceError::EndpointOutOfRange {
                    x: p.0.clone(),
                    y: p.1.clone(),
                });
            }
        }
        if a.0 == b.0 || a.1 == b.1 {
            // Vertical, horizontal, or a single point: all rectangles.
            return Ok(Piece::Rect {
                x: Interval::spanning(a.0, b.0)?,
                y: Interval::spanning(a.1, b.1)?,
            });
        }
        if a.0 < b.0 {
            Ok(Piece::Segment { from: a, to: b })
        } else {
            Ok(Piece::Segment { from: b, to: a })
        }
    }

    /// Projection onto the input (x) axis.
    pub fn x_extent(&self) -> Interval {
        match self {
            Piece::Rect { x, .. } => x.clone(),
            Piece::Segment { from, to } => {
                Interval::spanning(from.0.clone(), to.0.clone()).unwrap()
            }
        }
    }

    /// Projection onto the output (y) axis.
    pub fn y_extent(&self) -> Interval {
        match self {
            Piece::Rect { y, .. } => y.clone(),
            Piece::Segment { from, to } => {
                Interval::spanning(from.1.clone(), to.1.clone()).unwrap()
            }
        }
    }

    /// Swaps the two coordinates (graph transpose).
    pub fn transpose(&self) -> Piece {
        match self {
            Piece::Rect { x, y } => Piece::Rect {
                x: y.clone(),
                y: x.clone(),
            },
            Piece::Segment { from, to } => Piece::segment(
                (from.1.clone(), from.0.clone()),
                (to.1.clone(), to.0.clone()),
            )
            .expect("transpose of a valid segment is valid"),
        }
    }

    /// Slope of a `Segment`; `None` for rectangles.
    pub fn slope(&self) -> Option<Rat> {
        match self {
            Piece::Rect { .. } => None,
            Piece::Segment { from, to } => {
                Some((to.1.clone() - from.1.clone()) / (to.0.clone() - from.0.clone()))
            }
        }
    }

    /// For a `Segment`, the y value at a given x inside its extent.
    pub fn segment_y_at(&self, x: &Rat) -> Option<Rat> {
        match self {
            Piece::Rect { .. } => None,
            Piece::Segment { from, to } => {
                let m = (to.1.clone() - from.1.clone()) / (to.0.clone() - from.0.clone());
                Some(from.1.clone() + m * (x.clone() - from.0.clone()))
            }
        }
    }

    /// For a `Segment`, the x value hitting a given y inside its extent.
    pub fn segment_x_at(&self, y: &Rat) -> Option<Rat> {
        match self {
            Piece::Rect { .. } => None,
            Piece::Segment { from, to } => {
                let m_inv = (to.0.clone() - from.0.clone()) / (to.1.clone() - from.1.clone());
                Some(from.0.clone() + m_inv * (y.clone() - from.1.clone()))
            }
        }
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        match self {
            Piece::Rect { x, y } => x.contains(&p.0) && y.contains(&p.1),
            Piece::Segment { from, to } => {
                if !self.x_extent().contains(&p.0) {
                    return false;
                }
                let lhs = (to.1.clone() - from.1.clone()) * (p.0.clone() - from.0.clone());
                let rhs = (to.0.clone() - from.0.clone()) * (p.1.clone() - from.1.clone());
                lhs == rhs
            }
        }
    }

    /// True iff the piece's point set is a subset of `other`'s. Both pieces
    /// are convex, so segment containment reduces to endpoint checks.
    pub fn subset_of(&self, other: &Piece) -> bool {
        match self {
            Piece::Rect { x, y } => match other {
                Piece::Rect { x: ox, y: oy } => {
                    ox.contains_interval(x) && oy.contains_interval(y)
                }
                Piece::Segment { .. } => {
                    // A rectangle fits inside a sloped segment only if it is a
                    // point or degenerate; corners must all lie on the line.
                    let corners = [
                        (x.lo().clone(), y.lo().clone()),
                        (x.lo().clone(), y.hi().clone()),
                        (x.hi().clone(), y.lo().clone()),
                        (x.hi().clone(), y.hi().clone()),
                    ];
                    corners.iter().all(|c| other.contains_point(c))
                }
            },
            // Both targets are convex, so endpoint membership is enough.
            Piece::Segment { from, to } => {
                other.contains_point(from) && other.contains_point(to)
            }
        }
    }

    /// Clips to a window of input values: the set of y with
    /// `(x, y) in piece` for some `x in window`, as a single interval.
    pub fn y_over_window(&self, window: &Interval) -> Option<Interval> {
        match self {
            Piece::Rect { x, y } => x.intersection(window).map(|_| y.clone()),
            Piece::Segment { .. } => {
                let xr = self.x_extent().intersection(window)?;
                let y0 = self.segment_y_at(xr.lo()).unwrap();
                let y1 = self.segment_y_at(xr.hi()).unwrap();
                Some(Interval::spanning(y0, y1).unwrap())
            }
        }
    }

    /// The slice at one input value, if the piece meets it.
    pub fn slice_at(&self, x: &Rat) -> Option<Interval> {
        match self {
            Piece::Rect { x: xi, y } => xi.contains(x).then(|| y.clone()),
            Piece::Segment { .. } => self
                .x_extent()
                .contains(x)
                .then(|| Interval::point(self.segment_y_at(x).unwrap()).unwrap()),
        }
    }
}

fn cross(a: &Point, b: &Point) -> Rat {
    a.0.clone() * b.1.clone() - a.1.clone() * b.0.clone()
}

fn sub(a: &Point, b: &Point) -> Point {
    (a.0.clone() - b.0.clone(), a.1.clone() - b.1.clone())
}

fn segment_hits_rect(from: &Point, to: &Point, x: &Interval, y: &Interval) -> bool {
    // Exact parametric clip: p(t) = from + t*(to-from) over t in [0,1].
    // Both direction components are nonzero by the canonical-form invariant.
    let dx = to.0.clone() - from.0.clone();
    let dy = to.1.clone() - from.1.clone();
    let mut t_lo = zero();
    let mut t_hi = crate::rat::one();
    for (start, d, win) in [(&from.0, dx, x), (&from.1, dy, y)] {
        let a = (win.lo().clone() - start.clone()) / d.clone();
        let b = (win.hi().clone() - start.clone()) / d.clone();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo > t_lo {
            t_lo = lo;
        }
        if hi < t_hi {
            t_hi = hi;
        }
        if t_lo > t_hi {
            return false;
        }
    }
    true
}

/// Exact intersection test between two pieces.
pub fn piece_intersects(a: &Piece, b: &Piece) -> bool {
    match (a, b) {
        (Piece::Rect { x: ax, y: ay }, Piece::Rect { x: bx, y: by }) => {
            ax.intersects(bx) && ay.intersects(by)
        }
        (Piece::Rect { x, y }, Piece::Segment { from, to })
        | (Piece::Segment { from, to }, Piece::Rect { x, y }) => {
            segment_hits_rect(from, to, x, y)
        }
        (
            Piece::Segment { from: p1, to: q1 },
            Piece::Segment { from: p2, to: q2 },
        ) => {
            let d1 = sub(q1, p1);
            let d2 = sub(q2, p2);
            let denom = cross(&d1, &d2);
            let w = sub(p2, p1);
            if denom.is_zero() {
                // Parallel: intersect only when collinear with overlapping
                // x extents (slopes are nonzero, so x parameterizes).
                cross(&w, &d1).is_zero() && a.x_extent().intersects(&b.x_extent())
            } else {
                let t = cross(&w, &d2) / denom.clone();
                let s = cross(&w, &d1) / denom;
                let unit = Interval::unit();
                unit.contains(&t) && unit.contains(&s)
            }
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Rect { x, y } => write!(f, "rect {x} x {y}"),
            Piece::Segment { from, to } => write!(
                f,
                "segment ({}, {}) -> ({}, {})",
                crate::rat::format_rat(&from.0),
                crate::rat::format_rat(&from.1),
                crate::rat::format_rat(&to.0),
                crate::rat::format_rat(&to.1)
            ),
        }
    }
}
