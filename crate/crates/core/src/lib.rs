//! Exact toolkit for upper semicontinuous set-valued functions on the unit
//! interval and their finite Mahavier products.
//!
//! All computation is over arbitrary-precision rationals; floating point
//! appears nowhere in the decision procedures. A set-valued function is
//! represented by its graph, a finite union of closed rectangles and
//! strictly sloped segments inside the unit square. Mahavier products are
//! represented as finite unions of convex polyhedral cells in the unit
//! cube, one cell per combination of graph pieces.

// Errors carry exact rational witnesses (big integers under the hood), so
// they exceed clippy's size threshold; they are built on cold paths only.
#![allow(clippy::result_large_err)]

pub mod cell;
pub mod cover;
pub mod fm;
pub mod gallery;
pub mod interval;
pub mod mahavier;
pub mod piece;
pub mod raster;
pub mod rat;
pub mod relation;
pub mod simplex;

pub use cell::{Cell, ConstraintKind, LinearConstraint};
pub use cover::{cell_in_union, cell_in_union_witness};
pub use fm::{fm_project, ProjectionError};
pub use gallery::{
    catalog_names, expected_flags, make_example, make_patched_diagonal, random_patched_diagonal,
    ExpectedFlags, GalleryError, CATALOG,
};
pub use interval::{Interval, IntervalError, IntervalSet};
pub use mahavier::{
    build_gset, certify_continuum, cordiality_report, gset_connected, gset_equal,
    gset_equal_witness, project_gset, reverse_gset, Bonding, ChainSystem, CordialityReport, GSet,
    MahavierError, Semantics, SubsetOutcome, Verdict, VerdictKind,
};
pub use piece::{piece_intersects, Piece, PieceError, Point};
pub use raster::{
    membership_grid, raster_chain, raster_subchain, PointGrid, Raster2, RasterError, TupleRaster,
    MAX_RASTER_DIM, TUPLE_SLACK,
};
pub use rat::{format_rat, parse_rat, rat, rat_int, Rat, RatParseError};
pub use relation::{DecompositionOutcome, Diagnostics, Relation, RelationError};
