//! Closed set-valued relations on the unit interval.
//!
//! A relation is a finite union of pieces inside the unit square, read as
//! the graph of a set-valued function: `y ∈ f(x)` iff `(x, y)` lies on some
//! piece. Totality (every `x` has at least one value) is enforced at
//! construction; every other property is decided on demand, exactly, and
//! every negative answer carries a rational witness.

use crate::cell::Cell;
use crate::cover::cell_in_union_witness;
use crate::interval::{Interval, IntervalSet};
use crate::piece::{piece_intersects, Piece, Point};
use crate::rat::{in_unit, one, zero, Rat};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error("relation must contain at least one piece")]
    Empty,
    #[error("relation is not total: it has no value at x = {witness}")]
    NotTotal { witness: Rat },
    #[error("relation is not surjective: nothing maps to y = {witness}")]
    NotSurjective { witness: Rat },
    #[error("group {group} references piece index {index}, but there are only {pieces} pieces")]
    GroupIndexOutOfRange {
        group: usize,
        index: usize,
        pieces: usize,
    },
    #[error("group {group} is empty")]
    GroupEmpty { group: usize },
    #[error("piece {index} is not covered by any group")]
    GroupsDoNotCover { index: usize },
}

/// Summary of the standard checks, with witnesses for everything false.
#[derive(Debug, Clone)]
pub struct Diagnostics {
    pub total: bool,
    pub surjective: bool,
    pub idempotent: bool,
    pub graph_components: usize,
    pub continuum_valued: bool,
    /// Labelled rational witness points for each false field above.
    pub witnesses: Vec<(String, Vec<Rat>)>,
}

/// Outcome of checking a union decomposition into continuum-valued parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionOutcome {
    Certified,
    GroupNotTotal { group: usize, witness: Rat },
    GroupNotContinuumValued { group: usize, witness: Rat },
    GraphDisconnected { components: usize },
}

#[derive(Debug, Clone)]
pub struct Relation {
    name: String,
    pieces: Vec<Piece>,
}

impl Relation {
    /// Builds a relation, canonicalizing the piece list (sorted, exact
    /// duplicates dropped) and enforcing totality.
    pub fn new(name: impl Into<String>, pieces: Vec<Piece>) -> Result<Relation, RelationError> {
        if pieces.is_empty() {
            return Err(RelationError::Empty);
        }
        let mut pieces = pieces;
        pieces.sort();
        pieces.dedup();
        let domain = IntervalSet::normalize(pieces.iter().map(|p| p.x_extent()).collect());
        if let Some(witness) = domain.gap_in_unit() {
            return Err(RelationError::NotTotal { witness });
        }
        Ok(Relation {
            name: name.into(),
            pieces,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Relation {
        self.name = name.into();
        self
    }

    /// True iff `(x, y)` lies on the graph.
    pub fn contains_point(&self, p: &Point) -> bool {
        self.pieces.iter().any(|piece| piece.contains_point(p))
    }

    /// The value set `f(x)` as a normalized union of closed intervals.
    pub fn slice(&self, x: &Rat) -> IntervalSet {
        assert!(in_unit(x), "slice argument must lie in [0,1]");
        IntervalSet::normalize(self.pieces.iter().filter_map(|p| p.slice_at(x)).collect())
    }

    /// Image of a union of intervals: `f(A) = ∪ f(a)`.
    pub fn image(&self, a: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::new();
        for window in a.intervals() {
            for p in &self.pieces {
                if let Some(iv) = p.y_over_window(window) {
                    parts.push(iv);
                }
            }
        }
        IntervalSet::normalize(parts)
    }

    /// Projection of the graph onto the y-axis.
    pub fn range(&self) -> IntervalSet {
        IntervalSet::normalize(self.pieces.iter().map(|p| p.y_extent()).collect())
    }

    /// A `y` value no `x` maps to, when one exists.
    pub fn surjectivity_witness(&self) -> Option<Rat> {
        self.range().gap_in_unit()
    }

    pub fn is_surjective(&self) -> bool {
        self.surjectivity_witness().is_none()
    }

    /// The inverse relation (graph with coordinates swapped). Requires
    /// surjectivity so that the result is total.
    pub fn inverse(&self) -> Result<Relation, RelationError> {
        if let Some(witness) = self.surjectivity_witness() {
            return Err(RelationError::NotSurjective { witness });
        }
        let pieces = self.pieces.iter().map(|p| p.transpose()).collect();
        Ok(Relation::new(format!("inverse({})", self.name), pieces)
            .expect("transpose of a surjective relation is total"))
    }

    /// The composition `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Relation) -> Relation {
        let mut pieces = Vec::new();
        for p in &inner.pieces {
            for q in &self.pieces {
                if let Some(piece) = compose_pieces(q, p) {
                    pieces.push(piece);
                }
            }
        }
        pieces.sort();
        pieces.dedup();
        // Drop pieces that sit inside another piece; equal pieces are
        // already gone, so subset here means proper subset.
        let kept: Vec<Piece> = pieces
            .iter()
            .filter(|p| !pieces.iter().any(|q| q != *p && p.subset_of(q)))
            .cloned()
            .collect();
        Relation::new(format!("compose({},{})", self.name, inner.name), kept)
            .expect("composition of total relations is total")
    }

    /// The k-fold composition of the relation with itself (k >= 1).
    pub fn power(&self, k: usize) -> Relation {
        assert!(k >= 1, "composition power requires k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.compose(&acc);
        }
        acc.renamed(format!("power({},{})", self.name, k))
    }

    /// Point-set equality of graphs.
    pub fn equal(&self, other: &Relation) -> bool {
        self.equal_witness(other).is_none()
    }

    /// A point on exactly one of the two graphs, or `None` when the graphs
    /// are equal as point sets.
    pub fn equal_witness(&self, other: &Relation) -> Option<Point> {
        if self.pieces == other.pieces {
            return None;
        }
        for p in &self.pieces {
            if let Some(w) = piece_coverage_witness(p, &other.pieces) {
                return Some(w);
            }
        }
        for q in &other.pieces {
            if let Some(w) = piece_coverage_witness(q, &self.pieces) {
                return Some(w);
            }
        }
        None
    }

    /// A point on exactly one of the graphs of `f∘f` and `f`, if any.
    pub fn idempotence_witness(&self) -> Option<Point> {
        self.compose(self).equal_witness(self)
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotence_witness().is_none()
    }

    /// Number of connected components of the graph, with a component id
    /// per piece (ids numbered by first appearance). Pieces are closed and
    /// convex, so the union is connected exactly when the intersection
    /// graph of the pieces is.
    pub fn graph_components(&self) -> (usize, Vec<usize>) {
        let n = self.pieces.len();
        let mut dsu = Dsu::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if piece_intersects(&self.pieces[i], &self.pieces[j]) {
                    dsu.union(i, j);
                }
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut ids = vec![0; n];
        let mut next = 0;
        for (i, id) in ids.iter_mut().enumerate() {
            let root = dsu.find(i);
            if label[root] == usize::MAX {
                label[root] = next;
                next += 1;
            }
            *id = label[root];
        }
        (next, ids)
    }

    /// An `x` whose value set is disconnected, when one exists.
    ///
    /// The slice structure can only change at an x-extent endpoint of some
    /// piece or where two piece boundary lines cross; between consecutive
    /// such breakpoints the set of active pieces and the vertical order of
    /// their boundaries are constant, so connectedness is constant there.
    /// Checking every breakpoint and one midpoint per gap is therefore a
    /// complete decision procedure.
    pub fn continuum_valued_witness(&self) -> Option<Rat> {
        use std::collections::BTreeSet;
        let mut breaks: BTreeSet<Rat> = BTreeSet::new();
        for p in &self.pieces {
            let e = p.x_extent();
            breaks.insert(e.lo().clone());
            breaks.insert(e.hi().clone());
        }
        let lines: Vec<Vec<(Rat, Rat, Rat)>> =
            self.pieces.iter().map(boundary_lines).collect();
        for i in 0..self.pieces.len() {
            for j in (i + 1)..self.pieces.len() {
                for a in &lines[i] {
                    for b in &lines[j] {
                        if let Some(x) = crossing_x(a, b) {
                            if in_unit(&x) {
                                breaks.insert(x);
                            }
                        }
                    }
                }
            }
        }
        let breaks: Vec<Rat> = breaks.into_iter().collect();
        let two = crate::rat::rat_int(2);
        let mut candidates = Vec::with_capacity(2 * breaks.len());
        for (k, b) in breaks.iter().enumerate() {
            candidates.push(b.clone());
            if let Some(nxt) = breaks.get(k + 1) {
                candidates.push((b.clone() + nxt.clone()) / two.clone());
            }
        }
        for x in candidates {
            let s = self.slice(&x);
            debug_assert!(!s.is_empty(), "total relation has nonempty slices");
            if s.len() != 1 {
                return Some(x);
            }
        }
        None
    }

    pub fn is_continuum_valued(&self) -> bool {
        self.continuum_valued_witness().is_none()
    }

    /// Checks that the graph is connected and that each group of pieces is
    /// by itself a total, continuum-valued relation — together these make
    /// the relation a finite union of continuum-valued set-valued functions
    /// with a connected graph. Group contents are checked before global
    /// connectivity so the report points at the innermost failure.
    pub fn verify_decomposition(
        &self,
        groups: &[Vec<usize>],
    ) -> Result<DecompositionOutcome, RelationError> {
        let n = self.pieces.len();
        let mut covered = vec![false; n];
        for (g, group) in groups.iter().enumerate() {
            if group.is_empty() {
                return Err(RelationError::GroupEmpty { group: g });
            }
            for &i in group {
                if i >= n {
                    return Err(RelationError::GroupIndexOutOfRange {
                        group: g,
                        index: i,
                        pieces: n,
                    });
                }
                covered[i] = true;
            }
        }
        if let Some(index) = covered.iter().position(|c| !c) {
            return Err(RelationError::GroupsDoNotCover { index });
        }
        for (g, group) in groups.iter().enumerate() {
            let pieces: Vec<Piece> = group.iter().map(|&i| self.pieces[i].clone()).collect();
            let sub = match Relation::new(format!("{}[group {}]", self.name, g), pieces) {
                Ok(sub) => sub,
                Err(RelationError::NotTotal { witness }) => {
                    return Ok(DecompositionOutcome::GroupNotTotal { group: g, witness })
                }
                Err(e) => return Err(e),
            };
            if let Some(witness) = sub.continuum_valued_witness() {
                return Ok(DecompositionOutcome::GroupNotContinuumValued { group: g, witness });
            }
        }
        let (components, _) = self.graph_components();
        if components > 1 {
            return Ok(DecompositionOutcome::GraphDisconnected { components });
        }
        Ok(DecompositionOutcome::Certified)
    }

    /// Runs every standard check and collects witnesses for the failures.
    pub fn validate(&self) -> Diagnostics {
        let mut witnesses = Vec::new();
        let surjective = match self.surjectivity_witness() {
            Some(y) => {
                witnesses.push(("not-surjective".to_string(), vec![y]));
                false
            }
            None => true,
        };
        let idempotent = match self.idempotence_witness() {
            Some((x, y)) => {
                witnesses.push(("not-idempotent".to_string(), vec![x, y]));
                false
            }
            None => true,
        };
        let (graph_components, _) = self.graph_components();
        let continuum_valued = match self.continuum_valued_witness() {
            Some(x) => {
                witnesses.push(("not-continuum-valued".to_string(), vec![x]));
                false
            }
            None => true,
        };
        Diagnostics {
            total: true,
            surjective,
            idempotent,
            graph_components,
            continuum_valued,
            witnesses,
        }
    }
}

/// Disjoint-set forest with path halving.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Composition of two graph pieces: the set of `(x, z)` such that some `y`
/// has `(x, y)` on `inner` and `(y, z)` on `outer`. At most one canonical
/// piece per ordered pair; `None` when the intermediate interval is empty.
/// Segments are strictly sloped by canonical form, so a segment-segment
/// product is again a segment (or a point, absorbed by the constructor);
/// every case with a rectangle factor yields a rectangle.
fn compose_pieces(outer: &Piece, inner: &Piece) -> Option<Piece> {
    match (inner, outer) {
        (Piece::Rect { x: xi, y: yi }, Piece::Rect { x: xo, y: yo }) => {
            yi.intersection(xo)?;
            Some(Piece::rect(xi.clone(), yo.clone()))
        }
        (Piece::Rect { x: xi, y: yi }, seg @ Piece::Segment { .. }) => {
            let mid = yi.intersection(&seg.x_extent())?;
            let z = seg
                .y_over_window(&mid)
                .expect("window clipped to the segment's extent");
            Some(Piece::rect(xi.clone(), z))
        }
        (seg @ Piece::Segment { .. }, Piece::Rect { x: xo, y: yo }) => {
            let mid = seg.y_extent().intersection(xo)?;
            let xs = seg
                .transpose()
                .y_over_window(&mid)
                .expect("window clipped to the transposed segment's extent");
            Some(Piece::rect(xs, yo.clone()))
        }
        (pi @ Piece::Segment { .. }, po @ Piece::Segment { .. }) => {
            let mid = pi.y_extent().intersection(&po.x_extent())?;
            let x_lo = pi.segment_x_at(mid.lo()).expect("mid within y-extent");
            let x_hi = pi.segment_x_at(mid.hi()).expect("mid within y-extent");
            let z_lo = po.segment_y_at(mid.lo()).expect("mid within x-extent");
            let z_hi = po.segment_y_at(mid.hi()).expect("mid within x-extent");
            Some(Piece::segment((x_lo, z_lo), (x_hi, z_hi)).expect("products stay in the unit square"))
        }
    }
}

/// The 2-D cell carved out by a single piece.
fn piece_cell(p: &Piece) -> Cell {
    let mut cell = Cell::unit_box(2);
    cell.constrain_pair(p, 0, 1);
    cell
}

/// True when the point sits on the full line through the segment,
/// regardless of the segment's extent.
fn on_segment_line(seg: &Piece, p: &Point) -> bool {
    match seg {
        Piece::Segment { from, to } => {
            let dx = to.0.clone() - from.0.clone();
            let dy = to.1.clone() - from.1.clone();
            (p.0.clone() - from.0.clone()) * dy == (p.1.clone() - from.1.clone()) * dx
        }
        Piece::Rect { .. } => false,
    }
}

/// Boundary lines of a piece in the form `a·x + b·y = c`. For rectangles
/// these are the two horizontal value boundaries; a segment contributes the
/// line it spans.
fn boundary_lines(p: &Piece) -> Vec<(Rat, Rat, Rat)> {
    match p {
        Piece::Rect { x: _, y } => {
            let mut lines = vec![(zero(), one(), y.lo().clone())];
            if !y.is_point() {
                lines.push((zero(), one(), y.hi().clone()));
            }
            lines
        }
        Piece::Segment { from, to } => {
            let dx = to.0.clone() - from.0.clone();
            let dy = to.1.clone() - from.1.clone();
            let c = dy.clone() * from.0.clone() - dx.clone() * from.1.clone();
            vec![(dy, -dx, c)]
        }
    }
}

/// x-coordinate where two lines cross, if they are not parallel.
fn crossing_x(l1: &(Rat, Rat, Rat), l2: &(Rat, Rat, Rat)) -> Option<Rat> {
    let det = l1.0.clone() * l2.1.clone() - l2.0.clone() * l1.1.clone();
    if det.is_zero() {
        return None;
    }
    Some((l1.2.clone() * l2.1.clone() - l2.2.clone() * l1.1.clone()) / det)
}

/// A point of `p` not on any piece of `cover`, or `None` when `p` is
/// covered. Rectangles (including degenerate ones) are decided as 2-D
/// cells; strictly sloped segments reduce to 1-D coverage of their
/// x-parameter range.
fn piece_coverage_witness(p: &Piece, cover: &[Piece]) -> Option<Point> {
    match p {
        Piece::Rect { .. } => {
            let cells: Vec<Cell> = cover.iter().map(piece_cell).collect();
            cell_in_union_witness(&piece_cell(p), &cells)
                .map(|w| (w[0].clone(), w[1].clone()))
        }
        Piece::Segment { from, to } => {
            let mut parts: Vec<Interval> = Vec::new();
            for q in cover {
                match q {
                    Piece::Rect { x, y } => {
                        // x-parameters where p's value falls inside the
                        // rectangle's value interval, clipped to its span.
                        let Some(window_y) = p.y_extent().intersection(y) else {
                            continue;
                        };
                        let Some(xw) = p.transpose().y_over_window(&window_y) else {
                            continue;
                        };
                        if let Some(joint) = xw.intersection(x) {
                            parts.push(joint);
                        }
                    }
                    Piece::Segment { .. } => {
                        if on_segment_line(q, from) && on_segment_line(q, to) {
                            if let Some(overlap) = p.x_extent().intersection(&q.x_extent()) {
                                parts.push(overlap);
                            }
                        } else {
                            let la = boundary_lines(p).pop().unwrap();
                            let lb = boundary_lines(q).pop().unwrap();
                            if let Some(x) = crossing_x(&la, &lb) {
                                let hit = p.segment_y_at(&x).map(|y| (x.clone(), y));
                                if let Some(pt) = hit {
                                    if q.contains_point(&pt) {
                                        parts.push(
                                            Interval::point(pt.0).expect("crossing inside the unit square"),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let covered = IntervalSet::normalize(parts);
            covered.gap_within(&p.x_extent()).map(|x| {
                let y = p.segment_y_at(&x).expect("gap witness lies on the segment");
                (x, y)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{half, rat};

    fn seg(x0: (i64, i64), y0: (i64, i64), x1: (i64, i64), y1: (i64, i64)) -> Piece {
        Piece::segment(
            (rat(x0.0, x0.1), rat(y0.0, y0.1)),
            (rat(x1.0, x1.1), rat(y1.0, y1.1)),
        )
        .unwrap()
    }

    fn rect(x: ((i64, i64), (i64, i64)), y: ((i64, i64), (i64, i64))) -> Piece {
        Piece::rect(
            Interval::new(rat(x.0 .0, x.0 .1), rat(x.1 .0, x.1 .1)).unwrap(),
            Interval::new(rat(y.0 .0, y.0 .1), rat(y.1 .0, y.1 .1)).unwrap(),
        )
    }

    fn diagonal() -> Piece {
        seg((0, 1), (0, 1), (1, 1), (1, 1))
    }

    fn antidiagonal() -> Piece {
        seg((0, 1), (1, 1), (1, 1), (0, 1))
    }

    fn identity() -> Relation {
        Relation::new("identity", vec![diagonal()]).unwrap()
    }

    fn mirror() -> Relation {
        Relation::new("mirror", vec![diagonal(), antidiagonal()]).unwrap()
    }

    fn hold_at_zero() -> Relation {
        // Full value set at 0, identity elsewhere.
        Relation::new(
            "hold-at-zero",
            vec![rect(((0, 1), (0, 1)), ((0, 1), (1, 1))), diagonal()],
        )
        .unwrap()
    }

    fn top_or_zero() -> Relation {
        // Everything at 0, top value elsewhere.
        Relation::new(
            "top-or-zero",
            vec![
                rect(((0, 1), (0, 1)), ((0, 1), (1, 1))),
                rect(((0, 1), (1, 1)), ((1, 1), (1, 1))),
            ],
        )
        .unwrap()
    }

    fn constant_zero() -> Relation {
        Relation::new("constant-zero", vec![rect(((0, 1), (1, 1)), ((0, 1), (0, 1)))]).unwrap()
    }

    fn tent() -> Relation {
        Relation::new(
            "tent",
            vec![
                seg((0, 1), (0, 1), (1, 2), (1, 1)),
                seg((1, 2), (1, 1), (1, 1), (0, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn totality_enforced_with_witness() {
        let err = Relation::new("stub", vec![rect(((0, 1), (0, 1)), ((0, 1), (1, 1)))]);
        assert_eq!(
            err.unwrap_err(),
            RelationError::NotTotal { witness: half() }
        );
        assert_eq!(
            Relation::new("none", vec![]).unwrap_err(),
            RelationError::Empty
        );
    }

    #[test]
    fn slices_match_hand_values() {
        let f = hold_at_zero();
        assert_eq!(f.slice(&zero()), IntervalSet::unit());
        let s = f.slice(&rat(1, 3));
        assert_eq!(s.intervals().len(), 1);
        assert!(s.intervals()[0].is_point());
        assert_eq!(s.intervals()[0].lo(), &rat(1, 3));

        let m = mirror().slice(&rat(1, 4));
        assert_eq!(m.len(), 2);
        assert!(m.contains(&rat(1, 4)) && m.contains(&rat(3, 4)));
        assert!(!m.contains(&half()));
    }

    #[test]
    fn images_match_hand_values() {
        let a = IntervalSet::singleton(Interval::new(rat(1, 4), rat(1, 2)).unwrap());
        assert_eq!(identity().image(&a), a);
        let anti = Relation::new("anti", vec![antidiagonal()]).unwrap();
        let b = IntervalSet::singleton(Interval::new(zero(), rat(1, 4)).unwrap());
        let img = anti.image(&b);
        assert_eq!(
            img,
            IntervalSet::singleton(Interval::new(rat(3, 4), one()).unwrap())
        );
        let full = top_or_zero().image(&IntervalSet::unit());
        assert!(full.covers_unit());
    }

    #[test]
    fn surjectivity_and_witness() {
        assert!(identity().is_surjective());
        assert!(top_or_zero().is_surjective());
        assert_eq!(constant_zero().surjectivity_witness(), Some(half()));
    }

    #[test]
    fn inverse_swaps_pieces_and_involutes() {
        assert!(identity().inverse().unwrap().equal(&identity()));
        let f = top_or_zero();
        let inv = f.inverse().unwrap();
        let expected = Relation::new(
            "expected",
            vec![
                rect(((0, 1), (1, 1)), ((0, 1), (0, 1))),
                rect(((1, 1), (1, 1)), ((0, 1), (1, 1))),
            ],
        )
        .unwrap();
        assert_eq!(inv.pieces(), expected.pieces());
        assert_eq!(inv.inverse().unwrap().pieces(), f.pieces());
        assert_eq!(
            constant_zero().inverse().unwrap_err(),
            RelationError::NotSurjective { witness: half() }
        );
    }

    #[test]
    fn composition_identity_laws() {
        for f in [mirror(), top_or_zero(), tent(), hold_at_zero()] {
            assert!(identity().compose(&f).equal(&f));
            assert!(f.compose(&identity()).equal(&f));
        }
    }

    #[test]
    fn antidiagonal_squares_to_identity() {
        let anti = Relation::new("anti", vec![antidiagonal()]).unwrap();
        assert!(anti.compose(&anti).equal(&identity()));
        assert!(!anti.is_idempotent());
    }

    #[test]
    fn top_or_zero_is_idempotent() {
        let f = top_or_zero();
        assert!(f.compose(&f).equal(&f));
        assert!(f.is_idempotent());
    }

    #[test]
    fn tent_square_has_four_laps() {
        let t = tent();
        let square = t.compose(&t);
        let expected = Relation::new(
            "four-laps",
            vec![
                seg((0, 1), (0, 1), (1, 4), (1, 1)),
                seg((1, 4), (1, 1), (1, 2), (0, 1)),
                seg((1, 2), (0, 1), (3, 4), (1, 1)),
                seg((3, 4), (1, 1), (1, 1), (0, 1)),
            ],
        )
        .unwrap();
        assert_eq!(square.pieces(), expected.pieces());
        let w = t.idempotence_witness().unwrap();
        let on_square = square.contains_point(&w);
        let on_tent = t.contains_point(&w);
        assert!(on_square != on_tent);
    }

    #[test]
    fn composition_of_rect_pairs_prunes_empty_products() {
        // Lower band then upper band: no intermediate value exists.
        let lower = Relation::new(
            "lower",
            vec![rect(((0, 1), (1, 1)), ((0, 1), (1, 4)))],
        )
        .unwrap();
        let upper = Relation::new(
            "upper",
            vec![rect(((3, 4), (1, 1)), ((0, 1), (1, 1))), diagonal()],
        )
        .unwrap();
        let c = upper.compose(&lower);
        // Only the diagonal clip survives: z = y for y in [0,1/4].
        assert!(c.contains_point(&(half(), rat(1, 8))));
        assert!(!c.contains_point(&(half(), half())));
    }

    #[test]
    fn equality_is_representation_independent() {
        let halves = Relation::new(
            "two-halves",
            vec![
                seg((0, 1), (0, 1), (1, 2), (1, 2)),
                seg((1, 2), (1, 2), (1, 1), (1, 1)),
            ],
        )
        .unwrap();
        assert!(identity().equal(&halves));
        assert!(halves.equal(&identity()));

        let with_spike = Relation::new("spiked", vec![diagonal(), point_piece(0, 1)]).unwrap();
        assert!(!identity().equal(&with_spike));
        let w = identity().equal_witness(&with_spike).unwrap();
        assert_eq!(w, (zero(), one()));
    }

    fn point_piece(x: i64, y: i64) -> Piece {
        Piece::point(rat_int_local(x), rat_int_local(y)).unwrap()
    }

    fn rat_int_local(v: i64) -> Rat {
        rat(v, 1)
    }

    #[test]
    fn graph_components_counts_and_partitions() {
        let spiked = Relation::new("spiked", vec![diagonal(), point_piece(0, 1)]).unwrap();
        let (count, ids) = spiked.graph_components();
        assert_eq!(count, 2);
        assert_ne!(ids[0], ids[1]);
        assert_eq!(mirror().graph_components().0, 1);
        assert_eq!(top_or_zero().graph_components().0, 1);
    }

    #[test]
    fn continuum_valuedness_decisions() {
        assert!(hold_at_zero().is_continuum_valued());
        assert!(identity().is_continuum_valued());
        assert!(constant_zero().is_continuum_valued());
        let w = mirror().continuum_valued_witness().unwrap();
        assert!(mirror().slice(&w).len() > 1);
        let spiked = Relation::new("spiked", vec![diagonal(), point_piece(0, 1)]).unwrap();
        let w2 = spiked.continuum_valued_witness().unwrap();
        assert_eq!(w2, zero());
    }

    #[test]
    fn middle_plateau_is_continuum_valued() {
        // Left wall at 0, right wall at 1, plateau at 1/2 between them.
        let f = Relation::new(
            "plateau",
            vec![
                rect(((0, 1), (0, 1)), ((0, 1), (1, 2))),
                rect(((1, 1), (1, 1)), ((1, 2), (1, 1))),
                rect(((0, 1), (1, 1)), ((1, 2), (1, 2))),
            ],
        )
        .unwrap();
        assert!(f.is_continuum_valued());
        assert_eq!(f.slice(&zero()).intervals()[0].hi(), &half());
    }

    #[test]
    fn decomposition_verdicts() {
        let m = mirror();
        assert_eq!(
            m.verify_decomposition(&[vec![0], vec![1]]).unwrap(),
            DecompositionOutcome::Certified
        );
        let h = hold_at_zero();
        assert_eq!(
            h.verify_decomposition(&[vec![0, 1]]).unwrap(),
            DecompositionOutcome::Certified
        );
        let spiked = Relation::new("spiked", vec![diagonal(), point_piece(0, 1)]).unwrap();
        assert_eq!(
            spiked.verify_decomposition(&[vec![0, 1]]).unwrap(),
            DecompositionOutcome::GroupNotContinuumValued {
                group: 0,
                witness: zero()
            }
        );
        // A group that misses part of the x-axis is not total.
        let t = top_or_zero();
        assert_eq!(
            t.verify_decomposition(&[vec![0], vec![0, 1]]).unwrap(),
            DecompositionOutcome::GroupNotTotal {
                group: 0,
                witness: half()
            }
        );
        assert_eq!(
            t.verify_decomposition(&[vec![0, 5]]).unwrap_err(),
            RelationError::GroupIndexOutOfRange {
                group: 0,
                index: 5,
                pieces: 2
            }
        );
        assert_eq!(
            t.verify_decomposition(&[vec![0]]).unwrap_err(),
            RelationError::GroupsDoNotCover { index: 1 }
        );
        assert_eq!(
            t.verify_decomposition(&[vec![], vec![0, 1]]).unwrap_err(),
            RelationError::GroupEmpty { group: 0 }
        );
    }

    #[test]
    fn validate_fills_witnesses_for_failures() {
        let d = constant_zero().validate();
        assert!(d.total && d.idempotent && d.continuum_valued);
        assert!(!d.surjective);
        assert_eq!(d.graph_components, 1);
        assert_eq!(d.witnesses.len(), 1);
        assert_eq!(d.witnesses[0].0, "not-surjective");

        let t = tent().validate();
        assert!(t.surjective && !t.idempotent);
        assert!(t.witnesses.iter().any(|(l, _)| l == "not-idempotent"));

        let m = mirror().validate();
        assert!(m.idempotent && m.surjective && !m.continuum_valued);
    }

    #[test]
    fn power_composes_repeatedly() {
        let anti = Relation::new("anti", vec![antidiagonal()]).unwrap();
        assert!(anti.power(2).equal(&identity()));
        assert!(anti.power(3).equal(&anti));
        assert!(tent().power(1).equal(&tent()));
    }

    #[test]
    fn slice_law_on_samples() {
        // slice(g∘f, x) = image(g, slice(f, x))
        let pairs = [
            (mirror(), tent()),
            (tent(), mirror()),
            (top_or_zero(), hold_at_zero()),
            (tent(), tent()),
        ];
        let xs = [zero(), rat(1, 7), rat(1, 3), half(), rat(9, 11), one()];
        for (g, f) in &pairs {
            let gf = g.compose(f);
            for x in &xs {
                assert_eq!(gf.slice(x), g.image(&f.slice(x)), "x = {x}");
            }
        }
    }

    #[test]
    fn segment_coverage_spots_partial_overlap() {
        // Half of the diagonal does not cover it.
        let half_diag = Relation::new(
            "half",
            vec![seg((0, 1), (0, 1), (1, 2), (1, 2)), antidiagonal()],
        )
        .unwrap();
        let w = identity().equal_witness(&half_diag).unwrap();
        assert!(identity().contains_point(&w) != half_diag.contains_point(&w));
    }
}
