//! Hierarchical meshes: nested grids with nested domains, Kraft selection of
//! tensor B-splines, refinement by lines, and exact certificates for the basis
//! and positive partition-of-unity properties.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::admissible::{Classifier, Route};
use crate::domain2d::{face_counts, Cell, Domain2D};
use crate::error::{check_degree, Axis, Error, Result, DEFAULT_MAX_UNKNOWNS};
use crate::linalg::{all_positive, ExactMatrix, Rational, Solution};
use crate::splinebasis::{
    effective_bsplines_2d, restrict_to_rect, support_windows, BSplineKey, CellPoly, Grid2, Rect,
};
use crate::splinespace::{dim_formula, dim_oracle_with_limit, TMeshComplex};

/// Line indices beyond the stored windows that must still nest.
const NESTING_MARGIN: i64 = 8;

/// One level: its grid and the domain on it (cell indices of that grid).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub grid: Grid2,
    pub domain: Domain2D,
}

/// Nested levels `Ω⁰ ⊇ Ω¹ ⊇ …` over nested grids `G⁰ ⊆ G¹ ⊆ …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchicalMesh {
    levels: Vec<Level>,
}

impl HierarchicalMesh {
    /// Store levels as given; use [`validate_hierarchy`] to check structure.
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidHierarchy("at least one level is required".into()));
        }
        Ok(HierarchicalMesh { levels })
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn grid(&self, level: usize) -> &Grid2 {
        &self.levels[level].grid
    }

    pub fn domain(&self, level: usize) -> &Domain2D {
        &self.levels[level].domain
    }
}

/// Cells of `to` covering the cells of `dom` on `from`; `to` must contain
/// every line of `from` that bounds a cell of `dom`.
pub fn refine_domain(dom: &Domain2D, from: &Grid2, to: &Grid2) -> Result<Domain2D> {
    let mut out = BTreeSet::new();
    for &cell in dom.cells() {
        let r = from.cell_rect(cell)?;
        let span = |lo: &Rational, hi: &Rational, axis: Axis| -> Result<(i64, i64)> {
            let g = to.axis(axis);
            match (g.index_of(lo), g.index_of(hi)) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(Error::NotNested(format!(
                    "{axis} line {lo} or {hi} missing from the finer grid"
                ))),
            }
        };
        let (i0, i1) = span(&r.x0, &r.x1, Axis::X)?;
        let (j0, j1) = span(&r.y0, &r.y1, Axis::Y)?;
        for i in i0..i1 {
            out.extend((j0..j1).map(|j| (i, j)));
        }
    }
    Ok(Domain2D::new((0, 0), out))
}

/// Cells of the coarser grid `to` whose union equals the cells of `dom` on
/// the finer grid `from`; fails if a coarse cell is only partly covered.
pub fn coarsen_domain(dom: &Domain2D, from: &Grid2, to: &Grid2) -> Result<Domain2D> {
    let mut hits: BTreeMap<Cell, usize> = BTreeMap::new();
    for &cell in dom.cells() {
        let r = from.cell_rect(cell)?;
        let coarse = (to.x.cell_of(&r.x0)?, to.y.cell_of(&r.y0)?);
        *hits.entry(coarse).or_default() += 1;
    }
    for (&coarse, &count) in &hits {
        let r = to.cell_rect(coarse)?;
        let full = refine_domain(&Domain2D::new((0, 0), [coarse]), to, from)?;
        if full.len() != count {
            return Err(Error::NotAligned(format!(
                "coarse cell {coarse:?} = [{}, {}]x[{}, {}] is only partly covered",
                r.x0, r.x1, r.y0, r.y1
            )));
        }
    }
    Ok(Domain2D::new((0, 0), hits.into_keys()))
}

/// First structural defect of a hierarchy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A domain cell lies outside its grid's stored window, or uses a
    /// half-shifted lattice.
    CellOutsideWindow { level: usize, cell: Cell },
    /// A line of `G^{level-1}` is missing from `G^level`.
    LinesNotNested { level: usize, axis: Axis, coord: Rational },
    /// A cell of `Ω^level` is not inside `Ω^{level-1}`.
    DomainsNotNested { level: usize, cell: Cell },
    /// `Ω^level` is not a union of cells of `G^{level-1}`.
    BoundaryNotAligned { level: usize, coarse_cell: Cell },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CellOutsideWindow { level, cell } => {
                write!(f, "level {level}: cell {cell:?} outside the grid window")
            }
            Violation::LinesNotNested { level, axis, coord } => write!(
                f,
                "level {level}: {axis} line at {coord} of level {} is missing",
                level - 1
            ),
            Violation::DomainsNotNested { level, cell } => write!(
                f,
                "level {level}: cell {cell:?} is outside the domain of level {}",
                level - 1
            ),
            Violation::BoundaryNotAligned { level, coarse_cell } => write!(
                f,
                "level {level}: boundary not aligned with grid of level {} (cell {coarse_cell:?} partly covered)",
                level - 1
            ),
        }
    }
}

/// Check window containment, nested line sets, nested domains and boundary
/// alignment, reporting the first violation.
pub fn validate_hierarchy(h: &HierarchicalMesh) -> std::result::Result<(), Violation> {
    for (level, lv) in h.levels.iter().enumerate() {
        if let Some(&cell) = lv
            .domain
            .cells()
            .iter()
            .find(|&&c| lv.domain.parity() != (0, 0) || !lv.grid.window_contains_cell(c))
        {
            return Err(Violation::CellOutsideWindow { level, cell });
        }
    }
    for level in 1..h.depth() {
        let (coarse, fine) = (h.grid(level - 1), h.grid(level));
        for axis in [Axis::X, Axis::Y] {
            let (c, f) = (coarse.axis(axis), fine.axis(axis));
            for i in -NESTING_MARGIN..=c.cell_count() + NESTING_MARGIN {
                let Ok(coord) = c.line(i) else { continue };
                let addressable = f.in_window(&coord) || f.step().is_some();
                if addressable && f.index_of(&coord).is_none() {
                    return Err(Violation::LinesNotNested { level, axis, coord });
                }
            }
        }
        let refined_parent = refine_domain(h.domain(level - 1), coarse, fine)
            .expect("nested lines were just checked");
        if let Some(&cell) = h
            .domain(level)
            .cells()
            .iter()
            .find(|&&c| !refined_parent.contains(c))
        {
            return Err(Violation::DomainsNotNested { level, cell });
        }
        if let Err(e) = coarsen_domain(h.domain(level), fine, coarse) {
            let coarse_cell = match e {
                Error::NotAligned(_) => first_partial_cell(h.domain(level), fine, coarse),
                _ => None,
            };
            return Err(Violation::BoundaryNotAligned {
                level,
                coarse_cell: coarse_cell.unwrap_or((0, 0)),
            });
        }
    }
    Ok(())
}

fn first_partial_cell(dom: &Domain2D, fine: &Grid2, coarse: &Grid2) -> Option<Cell> {
    dom.cells().iter().find_map(|&cell| {
        let r = fine.cell_rect(cell).ok()?;
        let c = (coarse.x.cell_of(&r.x0).ok()?, coarse.y.cell_of(&r.y0).ok()?);
        let full = refine_domain(&Domain2D::new((0, 0), [c]), coarse, fine).ok()?;
        (!full.is_subset(dom)).then_some(c)
    })
}

fn ensure_valid(h: &HierarchicalMesh) -> Result<()> {
    validate_hierarchy(h).map_err(|v| Error::InvalidHierarchy(v.to_string()))
}

/// `Ω^level` expressed on the grid of level `on` (`on < level` requires
/// alignment, `on > level` requires nesting).
pub fn domain_on(h: &HierarchicalMesh, level: usize, on: usize) -> Result<Domain2D> {
    let mut dom = h.domain(level).clone();
    if on > level {
        for l in level..on {
            dom = refine_domain(&dom, h.grid(l), h.grid(l + 1))?;
        }
    } else {
        for l in (on..level).rev() {
            dom = coarsen_domain(&dom, h.grid(l + 1), h.grid(l))?;
        }
    }
    Ok(dom)
}

/// Rings `R^ℓ = Ω⁰ \ Ω^{ℓ+1}` on `G^ℓ`, with `R^{N-1} = Ω⁰`.
pub fn ring_domains(h: &HierarchicalMesh) -> Result<Vec<Domain2D>> {
    ensure_valid(h)?;
    (0..h.depth())
        .map(|l| {
            let outer = domain_on(h, 0, l)?;
            if l + 1 < h.depth() {
                Ok(outer.difference(&domain_on(h, l + 1, l)?))
            } else {
                Ok(outer)
            }
        })
        .collect()
}

/// Per level: whether `R^ℓ` lies in the class `(m-1, n-1)` on `G^ℓ`.
pub fn check_basis_conditions(h: &HierarchicalMesh, m: u32, n: u32) -> Result<Vec<bool>> {
    check_basis_conditions_with(h, m, n, &mut Classifier::new())
}

pub fn check_basis_conditions_with(
    h: &HierarchicalMesh,
    m: u32,
    n: u32,
    classifier: &mut Classifier,
) -> Result<Vec<bool>> {
    check_degree(m)?;
    check_degree(n)?;
    ring_domains(h)?
        .iter()
        .map(|r| classifier.in_class_a2(r, m - 1, n - 1, Route::A))
        .collect()
}

/// The individual clauses of the positive partition-of-unity conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PouConditions {
    /// `Ω⁰` in the class `(m-1, n-1)` on `G⁰`.
    pub base: bool,
    /// For `ℓ ≥ 1`: `Ω^ℓ` in the complement class `(m, n)` on `G^{ℓ-1}`.
    pub inner: Vec<bool>,
    /// `∂Ω⁰ ∩ ∂Ω¹ = ∅` (vacuous for a single level).
    pub boundaries_disjoint: bool,
}

impl PouConditions {
    pub fn hold(&self) -> bool {
        self.base && self.boundaries_disjoint && self.inner.iter().all(|&b| b)
    }
}

pub fn check_pou_conditions(h: &HierarchicalMesh, m: u32, n: u32) -> Result<PouConditions> {
    check_pou_conditions_with(h, m, n, &mut Classifier::new())
}

pub fn check_pou_conditions_with(
    h: &HierarchicalMesh,
    m: u32,
    n: u32,
    classifier: &mut Classifier,
) -> Result<PouConditions> {
    check_degree(m)?;
    check_degree(n)?;
    ensure_valid(h)?;
    let base = classifier.in_class_a2(h.domain(0), m - 1, n - 1, Route::A)?;
    let inner = (1..h.depth())
        .map(|l| classifier.in_class_a2_tilde(&domain_on(h, l, l - 1)?, m, n))
        .collect::<Result<Vec<_>>>()?;
    let boundaries_disjoint = if h.depth() > 1 {
        let outer = h.domain(0);
        domain_on(h, 1, 0)?.cells().iter().all(|&(i, j)| {
            (-1..=1).all(|di| (-1..=1).all(|dj| outer.contains((i + di, j + dj))))
        })
    } else {
        true
    };
    Ok(PouConditions {
        base,
        inner,
        boundaries_disjoint,
    })
}

/// Kraft selection: per-level sets of B-spline keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HBasisSelection {
    pub degrees: (u32, u32),
    pub levels: Vec<BTreeSet<BSplineKey>>,
}

impl HBasisSelection {
    pub fn len(&self) -> usize {
        self.levels.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn keys(&self) -> impl Iterator<Item = &BSplineKey> {
        self.levels.iter().flatten()
    }
}

/// `K^ℓ`: B-splines on `G^ℓ` sharing a cell with `R^ℓ` and none with
/// `R^{ℓ-1}` (taken on `G^ℓ`).
pub fn kraft_select(h: &HierarchicalMesh, m: u32, n: u32) -> Result<HBasisSelection> {
    let rings = ring_domains(h)?;
    let mut levels = Vec::with_capacity(h.depth());
    for (l, ring) in rings.iter().enumerate() {
        let previous = if l == 0 {
            Domain2D::empty()
        } else {
            refine_domain(&rings[l - 1], h.grid(l - 1), h.grid(l))?
        };
        let fresh = ring.difference(&previous);
        // validates the knot margin for every candidate
        effective_bsplines_2d(m, n, &fresh, h.grid(l), l)?;
        let keys = support_windows(&fresh, m, n)
            .into_iter()
            .map(|o| BSplineKey::new(l, o, (m, n)))
            .filter(|k| k.support_cells().all(|c| !previous.contains(c)))
            .collect();
        levels.push(keys);
    }
    Ok(HBasisSelection {
        degrees: (m, n),
        levels,
    })
}

/// A leaf cell: level and cell index on that level's grid.
pub type LeafCell = (usize, Cell);

/// Cells of `G^ℓ` in `Ω^ℓ \ Ω^{ℓ+1}` for every level.
pub fn leaf_cells(h: &HierarchicalMesh) -> Result<Vec<LeafCell>> {
    ensure_valid(h)?;
    let mut out = Vec::new();
    for l in 0..h.depth() {
        let mut dom = h.domain(l).clone();
        if l + 1 < h.depth() {
            dom = dom.difference(&domain_on(h, l + 1, l)?);
        }
        out.extend(dom.cells().iter().map(|&c| (l, c)));
    }
    Ok(out)
}

/// Geometric cells of the leaf T-mesh.
pub fn leaf_rects(h: &HierarchicalMesh) -> Result<Vec<Rect>> {
    leaf_cells(h)?
        .into_iter()
        .map(|(l, c)| h.grid(l).cell_rect(c))
        .collect()
}

pub fn leaf_mesh(h: &HierarchicalMesh) -> Result<TMeshComplex> {
    TMeshComplex::from_rects(leaf_rects(h)?)
}

/// Restrictions of every selected B-spline to the leaf cells its support
/// overlaps: for each key, `(leaf index, polynomial)` pairs.
fn restrictions(
    h: &HierarchicalMesh,
    sel: &HBasisSelection,
    leaves: &[LeafCell],
) -> Result<Vec<Vec<(usize, CellPoly)>>> {
    let rects = leaves
        .iter()
        .map(|&(l, c)| h.grid(l).cell_rect(c))
        .collect::<Result<Vec<_>>>()?;
    // leaves grouped by the cell of each coarser-or-equal level containing them
    let mut by_ancestor: HashMap<(usize, Cell), Vec<usize>> = HashMap::new();
    for (idx, (&(l, _), r)) in leaves.iter().zip(&rects).enumerate() {
        for a in 0..=l {
            let g = h.grid(a);
            let cell = (g.x.cell_of(&r.x0)?, g.y.cell_of(&r.y0)?);
            by_ancestor.entry((a, cell)).or_default().push(idx);
        }
    }
    sel.keys()
        .map(|key| {
            let grid = h.grid(key.level);
            let mut out = Vec::new();
            for cell in key.support_cells() {
                for &leaf in by_ancestor.get(&(key.level, cell)).into_iter().flatten() {
                    let poly = restrict_to_rect(key, grid, &rects[leaf])?;
                    if poly.iter().flatten().any(|c| !c.is_zero()) {
                        out.push((leaf, poly));
                    }
                }
            }
            Ok(out)
        })
        .collect()
}

fn coefficient_column(leaf: usize, a: usize, b: usize, m: u32, n: u32) -> usize {
    crate::splinespace::unknown_index(leaf, a, b, m, n)
}

/// Outcome of basis verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub selected: usize,
    pub per_level: Vec<usize>,
    pub rank: usize,
    pub dim: i64,
    pub conditions: Vec<bool>,
}

impl BasisReport {
    /// `|K| = rank = dim`.
    pub fn certified(&self) -> bool {
        self.selected == self.rank && self.rank as i64 == self.dim
    }

    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|&b| b)
    }
}

pub fn verify_basis(h: &HierarchicalMesh, m: u32, n: u32) -> Result<BasisReport> {
    verify_basis_with_limit(h, m, n, DEFAULT_MAX_UNKNOWNS)
}

/// Selection size, rank of the selected functions restricted to `Ω⁰`, and
/// the oracle dimension of the leaf T-mesh.
pub fn verify_basis_with_limit(h: &HierarchicalMesh, m: u32, n: u32, limit: usize) -> Result<BasisReport> {
    let sel = kraft_select(h, m, n)?;
    let leaves = leaf_cells(h)?;
    let mesh = TMeshComplex::from_rects(
        leaves
            .iter()
            .map(|&(l, c)| h.grid(l).cell_rect(c))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let dim = dim_oracle_with_limit(&mesh, m, n, limit)?;
    let mut mat = ExactMatrix::new(leaves.len() * (m as usize + 1) * (n as usize + 1));
    for pieces in restrictions(h, &sel, &leaves)? {
        let mut row = Vec::new();
        for (leaf, poly) in pieces {
            for (a, coeffs) in poly.into_iter().enumerate() {
                for (b, c) in coeffs.into_iter().enumerate() {
                    row.push((coefficient_column(leaf, a, b, m, n), c));
                }
            }
        }
        mat.push_row(row);
    }
    Ok(BasisReport {
        selected: sel.len(),
        per_level: sel.levels.iter().map(BTreeSet::len).collect(),
        rank: mat.rank(),
        dim,
        conditions: check_basis_conditions(h, m, n)?,
    })
}

/// Result of the partition-of-unity solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PouOutcome {
    /// Unique weights; `residual_zero` re-checks `Σ w τ = 1` on every leaf.
    Weights {
        weights: Vec<(BSplineKey, Rational)>,
        positive: bool,
        residual_zero: bool,
    },
    /// No combination of the selection reproduces the constant one.
    Inconsistent,
    /// The selection is linearly dependent on `Ω⁰`.
    Underdetermined { rank: usize },
}

impl PouOutcome {
    /// Strictly positive weights with an exactly vanishing residual.
    pub fn certified(&self) -> bool {
        matches!(
            self,
            PouOutcome::Weights {
                positive: true,
                residual_zero: true,
                ..
            }
        )
    }
}

/// Weights `w` with `Σ w_τ τ ≡ 1` on `Ω⁰`, one equation per leaf-cell monomial.
pub fn pou_weights(h: &HierarchicalMesh, m: u32, n: u32, sel: &HBasisSelection) -> Result<PouOutcome> {
    if sel.degrees != (m, n) {
        return Err(Error::InvalidHierarchy(format!(
            "selection has degrees {:?}, expected ({m}, {n})",
            sel.degrees
        )));
    }
    let leaves = leaf_cells(h)?;
    let pieces = restrictions(h, sel, &leaves)?;
    let keys: Vec<BSplineKey> = sel.keys().copied().collect();
    let per_cell = (m as usize + 1) * (n as usize + 1);
    // transpose: one row per (leaf, monomial), one column per key
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); leaves.len() * per_cell];
    for (k, list) in pieces.iter().enumerate() {
        for (leaf, poly) in list {
            for (a, coeffs) in poly.iter().enumerate() {
                for (b, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        rows[coefficient_column(*leaf, a, b, m, n)].push((k, c.clone()));
                    }
                }
            }
        }
    }
    let mut mat = ExactMatrix::new(keys.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        mat.push_row(row.iter().cloned());
        rhs.push(if r % per_cell == 0 {
            Rational::one()
        } else {
            Rational::zero()
        });
    }
    let w = match mat.solve(&rhs) {
        Solution::Unique(w) => w,
        Solution::Inconsistent => return Ok(PouOutcome::Inconsistent),
        Solution::Underdetermined { rank } => return Ok(PouOutcome::Underdetermined { rank }),
    };
    // independent residual check on the assembled polynomials
    let residual_zero = rows.iter().enumerate().all(|(r, row)| {
        let sum: Rational = row.iter().map(|(k, c)| c * &w[*k]).sum();
        sum == rhs[r]
    });
    Ok(PouOutcome::Weights {
        positive: all_positive(&w),
        residual_zero,
        weights: keys.into_iter().zip(w).collect(),
    })
}

/// Insert the line `axis = coord` into `G^j, …, G^{N-1}`. A no-op when
/// `G^j` already has it.
pub fn refine(h: &HierarchicalMesh, axis: Axis, coord: &Rational, j: usize) -> Result<HierarchicalMesh> {
    if j >= h.depth() {
        return Err(Error::InvalidHierarchy(format!(
            "level {j} does not exist (depth {})",
            h.depth()
        )));
    }
    let mut out = h.clone();
    if !h.grid(j).axis(axis).in_window(coord) {
        return Err(Error::OutsideWindow(format!("{axis} = {coord}")));
    }
    if h.grid(j).axis(axis).index_of(coord).is_some() {
        return Ok(out);
    }
    for lv in &mut out.levels[j..] {
        let g = lv.grid.axis(axis);
        if !g.in_window(coord) || coord == g.first() || coord == g.last() {
            return Err(Error::OutsideWindow(format!("{axis} = {coord}")));
        }
        if g.index_of(coord).is_some() {
            continue;
        }
        let col = g.cell_of(coord)?;
        lv.grid.axis_mut(axis).insert(coord.clone())?;
        lv.domain = lv.domain.split_line(axis, col);
    }
    Ok(out)
}

/// Same leaf T-mesh (the grids may still differ).
pub fn same_leaf_mesh(a: &HierarchicalMesh, b: &HierarchicalMesh) -> Result<bool> {
    let ra: BTreeSet<Rect> = leaf_rects(a)?.into_iter().collect();
    let rb: BTreeSet<Rect> = leaf_rects(b)?.into_iter().collect();
    Ok(ra == rb)
}

/// Nesting check outcome; `counterexample` is a refined-mesh key without a
/// containing support at its level in the original selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestingReport {
    pub holds: bool,
    pub counterexample: Option<BSplineKey>,
}

/// Every `τ ∈ K^ℓ(refined)` with `ℓ ≥ j1` has a `τ' ∈ K^ℓ(original)` whose
/// support contains that of `τ`.
pub fn check_support_nesting(
    original: &HierarchicalMesh,
    refined: &HierarchicalMesh,
    m: u32,
    n: u32,
    j1: usize,
) -> Result<NestingReport> {
    let before = kraft_select(original, m, n)?;
    let after = kraft_select(refined, m, n)?;
    for l in j1..after.levels.len() {
        let parents = before
            .levels
            .get(l)
            .into_iter()
            .flatten()
            .map(|k| k.support_rect(original.grid(l)))
            .collect::<Result<Vec<_>>>()?;
        for key in &after.levels[l] {
            let s = key.support_rect(refined.grid(l))?;
            if !parents.iter().any(|p| p.contains_rect(&s)) {
                return Ok(NestingReport {
                    holds: false,
                    counterexample: Some(*key),
                });
            }
        }
    }
    Ok(NestingReport {
        holds: true,
        counterexample: None,
    })
}

/// Level-wise closed-form count `Σ_ℓ F(R^ℓ) − F(R^{ℓ-1})`, both on `G^ℓ`,
/// where `F` is the single-grid dimension formula.
pub fn hierarchical_dim_formula(h: &HierarchicalMesh, m: u32, n: u32) -> Result<i64> {
    let rings = ring_domains(h)?;
    let mut total = 0;
    for (l, ring) in rings.iter().enumerate() {
        total += dim_formula(m, n, &face_counts(ring));
        if l > 0 {
            let prev = refine_domain(&rings[l - 1], h.grid(l - 1), h.grid(l))?;
            total -= dim_formula(m, n, &face_counts(&prev));
        }
    }
    Ok(total)
}
