//! Closed subintervals of [0,1] and normalized finite unions of them.

use crate::rat::{in_unit, one, zero, Rat};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval endpoints out of [0,1]: [{lo}, {hi}]")]
    OutOfRange { lo: Rat, hi: Rat },
    #[error("interval with lo > hi: [{lo}, {hi}]")]
    Reversed { lo: Rat, hi: Rat },
}

/// Closed interval `[lo, hi]` with `0 <= lo <= hi <= 1`.
/// Degenerate intervals (`lo == hi`) are points and are allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Reversed { lo, hi });
        }
        if !in_unit(&lo) || !in_unit(&hi) {
            return Err(IntervalError::OutOfRange { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Builds from unordered endpoints.
    pub fn spanning(a: Rat, b: Rat) -> Result<Self, IntervalError> {
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn point(x: Rat) -> Result<Self, IntervalError> {
        Interval::new(x.clone(), x)
    }

    pub fn unit() -> Self {
        Interval {
            lo: zero(),
            hi: one(),
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Closed intervals intersect iff neither lies strictly beyond the other.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> Rat {
        (self.lo.clone() + self.hi.clone()) / crate::rat::rat_int(2)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            crate::rat::format_rat(&self.lo),
            crate::rat::format_rat(&self.hi)
        )
    }
}

/// Finite union of closed intervals, kept sorted, pairwise disjoint, and
/// maximal: adjacent members are separated by a strictly positive gap, so
/// the member list of a point set is unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn unit() -> Self {
        IntervalSet {
            intervals: vec![Interval::unit()],
        }
    }

    /// Normalizes an arbitrary finite list: sort by left endpoint, then merge
    /// every pair that overlaps or touches.
    pub fn normalize(mut raw: Vec<Interval>) -> Self {
        raw.sort();
        let mut merged: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        IntervalSet { intervals: merged }
    }

    pub fn singleton(iv: Interval) -> Self {
        IntervalSet {
            intervals: vec![iv],
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// True iff `b` is a subset of this union. Because members are maximal
    /// and separated by positive gaps, a connected `b` fits iff it fits in a
    /// single member.
    pub fn covers(&self, b: &Interval) -> bool {
        self.intervals.iter().any(|iv| iv.contains_interval(b))
    }

    pub fn covers_unit(&self) -> bool {
        self.covers(&Interval::unit())
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut raw = self.intervals.clone();
        raw.extend(other.intervals.iter().cloned());
        IntervalSet::normalize(raw)
    }

    /// Some point of [0,1] outside this union, if one exists. Used to report
    /// witnesses for failed totality and surjectivity checks.
    pub fn gap_in_unit(&self) -> Option<Rat> {
        let two = crate::rat::rat_int(2);
        match self.intervals.first() {
            None => Some(crate::rat::half()),
            Some(first) => {
                if *first.lo() > zero() {
                    return Some(first.lo().clone() / two);
                }
                if let Some(pair) = self.intervals.windows(2).next() {
                    // Positive gap between consecutive members by invariant.
                    return Some((pair[0].hi.clone() + pair[1].lo.clone()) / two);
                }
                let last = self.intervals.last().unwrap();
                if *last.hi() < one() {
                    Some((last.hi().clone() + one()) / two)
                } else {
                    None
                }
            }
        }
    }

    /// Some point of `window` outside this union, if one exists.
    pub fn gap_within(&self, window: &Interval) -> Option<Rat> {
        let two = crate::rat::rat_int(2);
        // Walk the covered prefix of the window; members are sorted.
        let mut pos = window.lo().clone();
        for iv in &self.intervals {
            if *iv.hi() < pos {
                continue;
            }
            if *iv.lo() > pos {
                // Uncovered stretch starts at pos; it has positive length
                // unless the window itself ends there.
                let end = iv.lo().clone().min(window.hi().clone());
                return Some(if pos == *window.hi() {
                    pos
                } else {
                    (pos + end) / two
                });
            }
            pos = iv.hi().clone();
            if pos >= *window.hi() {
                return None;
            }
        }
        Some(if pos == *window.hi() {
            // A point window not covered by any member.
            pos
        } else {
            (pos + window.hi().clone()) / two
        })
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{iv}")?;
        }
        write!(f, "}}")
    }
}
