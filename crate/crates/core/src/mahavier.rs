//! Finite Mahavier products of set-valued relations.
//!
//! Given a finite chain of coordinates and bonding relations between them,
//! the product is the set of tuples whose coordinate pairs lie on the
//! bonding graphs. It is represented exactly as a finite union of convex
//! cells — one candidate cell per combination of graph pieces — and all
//! questions (connectedness, projection, equality, reversal) are decided
//! on that representation with rational arithmetic.

use std::collections::BTreeMap;

use crate::cell::Cell;
use crate::cover::{cell_in_union, cell_in_union_witness};
use crate::fm::{fm_project, ProjectionError};
use crate::rat::Rat;
use crate::relation::{DecompositionOutcome, Relation, RelationError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MahavierError {
    #[error("a chain needs at least two coordinates")]
    ChainTooShort,
    #[error("duplicate chain label {0}")]
    DuplicateLabel(String),
    #[error("bonding table is missing the pair ({i},{j})")]
    MissingPair { i: usize, j: usize },
    #[error("bonding table key ({i},{j}) is not an increasing in-range pair")]
    InvalidPair { i: usize, j: usize },
    #[error("G-set dimensions differ: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },
    #[error("coordinate subset must be nonempty, strictly increasing, and within 0..{n}")]
    BadSubset { n: usize },
}

/// How pairs of coordinates are constrained when building the product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// Only consecutive coordinates are bonded.
    Consecutive,
    /// Every increasing pair is bonded.
    AllPairs,
}

/// Bonding data for a finite chain.
#[derive(Debug, Clone)]
pub enum Bonding {
    /// One relation; the pair (i, j) is bonded by its (j-i)-th power.
    Single(Relation),
    /// An explicit relation per increasing pair (0-based indices).
    Table(BTreeMap<(usize, usize), Relation>),
}

#[derive(Debug, Clone)]
pub struct ChainSystem {
    labels: Vec<String>,
    bonding: Bonding,
}

impl ChainSystem {
    /// A chain of `n` coordinates labelled b1..bn, all bonded by powers of
    /// one relation.
    pub fn uniform(f: Relation, n: usize) -> Result<ChainSystem, MahavierError> {
        let labels = (1..=n).map(|i| format!("b{i}")).collect();
        ChainSystem::with_labels(labels, f)
    }

    pub fn with_labels(labels: Vec<String>, f: Relation) -> Result<ChainSystem, MahavierError> {
        Self::check_labels(&labels)?;
        Ok(ChainSystem {
            labels,
            bonding: Bonding::Single(f),
        })
    }

    /// A chain with an explicit bonding relation per increasing pair.
    pub fn from_table(
        labels: Vec<String>,
        table: BTreeMap<(usize, usize), Relation>,
    ) -> Result<ChainSystem, MahavierError> {
        Self::check_labels(&labels)?;
        let n = labels.len();
        for &(i, j) in table.keys() {
            if i >= j || j >= n {
                return Err(MahavierError::InvalidPair { i, j });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if !table.contains_key(&(i, j)) {
                    return Err(MahavierError::MissingPair { i, j });
                }
            }
        }
        Ok(ChainSystem {
            labels,
            bonding: Bonding::Table(table),
        })
    }

    fn check_labels(labels: &[String]) -> Result<(), MahavierError> {
        if labels.len() < 2 {
            return Err(MahavierError::ChainTooShort);
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in labels {
            if !seen.insert(l) {
                return Err(MahavierError::DuplicateLabel(l.clone()));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bonding(&self) -> &Bonding {
        &self.bonding
    }

    /// The relation bonding coordinates `i < j`.
    pub fn bonding_relation(&self, i: usize, j: usize) -> Relation {
        assert!(i < j && j < self.len(), "bonding pair must be increasing");
        match &self.bonding {
            Bonding::Single(f) => {
                if j - i == 1 {
                    f.clone()
                } else {
                    f.power(j - i)
                }
            }
            Bonding::Table(table) => table[&(i, j)].clone(),
        }
    }

    /// First triple violating the composition law of an explicit table:
    /// bonding(i,j) applied after bonding(j,k) must equal bonding(i,k).
    /// Power-based chains satisfy the law by construction.
    pub fn exactness_witness(&self) -> Option<(usize, usize, usize)> {
        let table = match &self.bonding {
            Bonding::Single(_) => return None,
            Bonding::Table(table) => table,
        };
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let composed = table[&(i, j)].compose(&table[&(j, k)]);
                    if !composed.equal(&table[&(i, k)]) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_exact(&self) -> bool {
        self.exactness_witness().is_none()
    }
}

/// A finite Mahavier product: a union of feasible convex cells in the unit
/// cube, each paired with one feasible point for fast membership checks.
#[derive(Debug, Clone)]
pub struct GSet {
    dim: usize,
    cells: Vec<Cell>,
    witnesses: Vec<Vec<Rat>>,
    semantics: Semantics,
    labels: Vec<String>,
}

impl GSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn witnesses(&self) -> &[Vec<Rat>] {
        &self.witnesses
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains_point(&self, p: &[Rat]) -> bool {
        self.cells.iter().any(|c| c.satisfies(p))
    }
}

/// Adds a cell unless a stored cell has the same point set. Witness
/// membership both ways is a cheap necessary condition checked before the
/// exact mutual-containment test.
fn insert_deduped(cells: &mut Vec<Cell>, witnesses: &mut Vec<Vec<Rat>>, cell: Cell) {
    let w = cell
        .feasible_point()
        .expect("only feasible cells are stored");
    for (c, cw) in cells.iter().zip(witnesses.iter()) {
        if c.satisfies(&w)
            && cell.satisfies(cw)
            && cell_in_union(&cell, std::slice::from_ref(c))
            && cell_in_union(c, std::slice::from_ref(&cell))
        {
            return;
        }
    }
    cells.push(cell);
    witnesses.push(w);
}

fn enumerate_cells(
    bondings: &[(usize, usize, Relation)],
    k: usize,
    cell: &Cell,
    cells: &mut Vec<Cell>,
    witnesses: &mut Vec<Vec<Rat>>,
) {
    let Some((i, j, f)) = bondings.get(k) else {
        insert_deduped(cells, witnesses, cell.clone());
        return;
    };
    for piece in f.pieces() {
        let mut next = cell.clone();
        // x_i ranges over f(x_j): the input coordinate is x_j.
        next.constrain_pair(piece, *j, *i);
        if next.is_feasible() {
            enumerate_cells(bondings, k + 1, &next, cells, witnesses);
        }
    }
}

/// Builds the product of a chain system: one candidate cell per choice of
/// graph piece for each bonded pair, pruned depth-first by feasibility of
/// the partial constraint systems, with exact duplicates removed.
pub fn build_gset(system: &ChainSystem, semantics: Semantics) -> GSet {
    let n = system.len();
    let pairs: Vec<(usize, usize)> = match semantics {
        Semantics::Consecutive => (0..n - 1).map(|i| (i, i + 1)).collect(),
        Semantics::AllPairs => (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect(),
    };
    let bondings: Vec<(usize, usize, Relation)> = pairs
        .into_iter()
        .map(|(i, j)| (i, j, system.bonding_relation(i, j)))
        .collect();
    let mut cells = Vec::new();
    let mut witnesses = Vec::new();
    enumerate_cells(&bondings, 0, &Cell::unit_box(n), &mut cells, &mut witnesses);
    GSet {
        dim: n,
        cells,
        witnesses,
        semantics,
        labels: system.labels().to_vec(),
    }
}

/// Whether two compact convex cells share a point.
fn cells_touch(a: &Cell, wa: &[Rat], b: &Cell, wb: &[Rat]) -> bool {
    b.satisfies(wa) || a.satisfies(wb) || a.merged(b).is_feasible()
}

/// Exact connectedness of the union of cells, with the component count.
/// Cells are compact, convex, hence connected, so the union is connected
/// iff the cell-intersection graph is.
pub fn gset_connected(g: &GSet) -> (bool, usize) {
    let n = g.cells.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if cells_touch(&g.cells[i], &g.witnesses[i], &g.cells[j], &g.witnesses[j]) {
                let ri = find(&mut parent, i);
                let rj = find(&mut parent, j);
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut count = 0;
    for i in 0..n {
        if find(&mut parent, i) == i {
            count += 1;
        }
    }
    (count <= 1, count)
}

/// Coordinate projection of a product onto the positions in `keep`
/// (0-based, strictly increasing). The result is again a finite union of
/// cells; its pair structure is that of a general (all-pairs) product.
pub fn project_gset(g: &GSet, keep: &[usize]) -> Result<GSet, ProjectionError> {
    let mut cells = Vec::new();
    let mut witnesses = Vec::new();
    for cell in &g.cells {
        let p = fm_project(cell, keep)?;
        debug_assert!(p.is_feasible(), "projection of a feasible cell is feasible");
        insert_deduped(&mut cells, &mut witnesses, p);
    }
    Ok(GSet {
        dim: keep.len(),
        cells,
        witnesses,
        semantics: Semantics::AllPairs,
        labels: keep.iter().map(|&i| g.labels[i].clone()).collect(),
    })
}

/// A point in the symmetric difference of two products, or `None` when
/// they are equal as point sets.
pub fn gset_equal_witness(a: &GSet, b: &GSet) -> Result<Option<Vec<Rat>>, MahavierError> {
    if a.dim != b.dim {
        return Err(MahavierError::DimensionMismatch { a: a.dim, b: b.dim });
    }
    for cell in &a.cells {
        if let Some(w) = cell_in_union_witness(cell, &b.cells) {
            return Ok(Some(w));
        }
    }
    for cell in &b.cells {
        if let Some(w) = cell_in_union_witness(cell, &a.cells) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn gset_equal(a: &GSet, b: &GSet) -> Result<bool, MahavierError> {
    gset_equal_witness(a, b).map(|w| w.is_none())
}

/// The same point set with the coordinate order reversed.
pub fn reverse_gset(g: &GSet) -> GSet {
    GSet {
        dim: g.dim,
        cells: g.cells.iter().map(|c| c.reversed()).collect(),
        witnesses: g
            .witnesses
            .iter()
            .map(|w| w.iter().rev().cloned().collect())
            .collect(),
        semantics: g.semantics,
        labels: g.labels.iter().rev().cloned().collect(),
    }
}

/// Outcome of comparing a projection of the full product with the product
/// built directly on a sub-chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetOutcome {
    Equal,
    /// The directly built product has a point the projection misses.
    StrictSubset { witness: Vec<Rat> },
}

#[derive(Debug, Clone)]
pub struct CordialityReport {
    pub n: usize,
    pub entries: Vec<(Vec<usize>, SubsetOutcome)>,
}

/// The product built directly on the sub-chain `s` of a chain bonded by
/// powers of `f`: positions a < b are bonded by the power matching their
/// original index gap `s[b] - s[a]`.
fn direct_subchain_gset(f: &Relation, s: &[usize], labels: &[String]) -> GSet {
    if s.len() == 1 {
        let cell = Cell::unit_box(1);
        let w = cell.feasible_point().expect("unit box is feasible");
        return GSet {
            dim: 1,
            cells: vec![cell],
            witnesses: vec![w],
            semantics: Semantics::AllPairs,
            labels: vec![labels[s[0]].clone()],
        };
    }
    let bondings: Vec<(usize, usize, Relation)> = (0..s.len())
        .flat_map(|a| ((a + 1)..s.len()).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, f.power(s[b] - s[a])))
        .collect();
    let mut cells = Vec::new();
    let mut witnesses = Vec::new();
    enumerate_cells(
        &bondings,
        0,
        &Cell::unit_box(s.len()),
        &mut cells,
        &mut witnesses,
    );
    GSet {
        dim: s.len(),
        cells,
        witnesses,
        semantics: Semantics::AllPairs,
        labels: s.iter().map(|&i| labels[i].clone()).collect(),
    }
}

/// For each coordinate subset, compares the projection of the full n-chain
/// product with the product built directly on the sub-chain. The
/// projection is always contained in the direct product (consecutive
/// constraints chain into the power constraints), so the verdict hinges on
/// the reverse inclusion: EQUAL when it holds, otherwise STRICT_SUBSET
/// with a point of the direct product outside the projection.
pub fn cordiality_report(
    f: &Relation,
    n: usize,
    subsets: &[Vec<usize>],
) -> Result<CordialityReport, MahavierError> {
    for s in subsets {
        let ok = !s.is_empty() && s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&i| i < n);
        if !ok {
            return Err(MahavierError::BadSubset { n });
        }
    }
    let system = ChainSystem::uniform(f.clone(), n)?;
    let full = build_gset(&system, Semantics::Consecutive);
    let mut entries = Vec::new();
    for s in subsets {
        let proj = project_gset(&full, s).expect("subset validated above");
        let direct = direct_subchain_gset(f, s, system.labels());
        let mut outcome = SubsetOutcome::Equal;
        for cell in direct.cells() {
            if let Some(w) = cell_in_union_witness(cell, proj.cells()) {
                outcome = SubsetOutcome::StrictSubset { witness: w };
                break;
            }
        }
        entries.push((s.clone(), outcome));
    }
    Ok(CordialityReport { n, entries })
}

/// Conclusion of the continuum certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictKind {
    /// Every finite product is connected, with proof.
    CertifiedAllN,
    /// All products up to the sweep bound are connected — explicitly not
    /// a certificate for larger chains.
    ConnectedUpToN(usize),
    /// The product over `n` coordinates splits into `components` parts.
    Disconnected { n: usize, components: usize },
    /// No route applied and the sweep was inconclusive.
    Unknown,
    /// A precondition failed (reason string).
    Rejected(String),
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// Which argument produced the verdict.
    pub route: String,
    pub witnesses: Vec<(String, Vec<Rat>)>,
}

/// Decides, where possible, whether every finite product of the relation
/// is connected.
///
/// Routes, in order: a non-surjective relation is rejected outright; a
/// disconnected graph forces a disconnected two-coordinate product; a
/// connected graph of a continuum-valued relation certifies every n; a
/// verified decomposition into continuum-valued parts combined with
/// idempotence certifies every n; otherwise products are built for
/// n = 2..=max_n and checked directly.
pub fn certify_continuum(
    f: &Relation,
    max_n: usize,
    decomposition: Option<&[Vec<usize>]>,
) -> Result<Verdict, RelationError> {
    assert!(max_n >= 2, "the sweep bound must be at least 2");
    if let Some(y) = f.surjectivity_witness() {
        return Ok(Verdict {
            kind: VerdictKind::Rejected("NOT_SURJECTIVE".to_string()),
            route: "surjectivity precondition".to_string(),
            witnesses: vec![("not-surjective".to_string(), vec![y])],
        });
    }
    let (components, _) = f.graph_components();
    if components > 1 {
        return Ok(Verdict {
            kind: VerdictKind::Disconnected { n: 2, components },
            route: "disconnected-graph obstruction".to_string(),
            witnesses: Vec::new(),
        });
    }
    if f.is_continuum_valued() {
        return Ok(Verdict {
            kind: VerdictKind::CertifiedAllN,
            route: "continuum-valued route".to_string(),
            witnesses: Vec::new(),
        });
    }
    let mut witnesses: Vec<(String, Vec<Rat>)> = Vec::new();
    if let Some(groups) = decomposition {
        match f.verify_decomposition(groups)? {
            DecompositionOutcome::Certified => match f.idempotence_witness() {
                None => {
                    return Ok(Verdict {
                        kind: VerdictKind::CertifiedAllN,
                        route: "decomposition route".to_string(),
                        witnesses: Vec::new(),
                    });
                }
                Some((x, y)) => {
                    witnesses.push((
                        "decomposition-verified-but-not-idempotent".to_string(),
                        vec![x, y],
                    ));
                }
            },
            DecompositionOutcome::GroupNotTotal { group, witness } => {
                witnesses.push((format!("decomposition-group-{group}-not-total"), vec![witness]));
            }
            DecompositionOutcome::GroupNotContinuumValued { group, witness } => {
                witnesses.push((
                    format!("decomposition-group-{group}-not-continuum-valued"),
                    vec![witness],
                ));
            }
            DecompositionOutcome::GraphDisconnected { .. } => {
                unreachable!("graph connectivity was established before the decomposition check")
            }
        }
    }
    for n in 2..=max_n {
        let system = ChainSystem::uniform(f.clone(), n).expect("n >= 2");
        let product = build_gset(&system, Semantics::Consecutive);
        let (connected, components) = gset_connected(&product);
        if !connected {
            return Ok(Verdict {
                kind: VerdictKind::Disconnected { n, components },
                route: "finite connectivity sweep".to_string(),
                witnesses,
            });
        }
    }
    Ok(Verdict {
        kind: VerdictKind::ConnectedUpToN(max_n),
        route: "finite connectivity sweep".to_string(),
        witnesses,
    })
}
