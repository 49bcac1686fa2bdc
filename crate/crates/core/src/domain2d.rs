//! Two-dimensional cell domains, face counting and row/column projections.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Axis, Error, Result};
use crate::lattice1d::Domain1D;

/// Integer index `(i, j)` of a cell: column `i`, row `j`.
pub type Cell = (i64, i64);

/// A finite set of cells on a possibly half-shifted 2D lattice.
///
/// Cell `(i, j)` with parity `(px, py)` occupies
/// `[i + px/2, i + px/2 + 1] x [j + py/2, j + py/2 + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Domain2D {
    parity: (u8, u8),
    cells: BTreeSet<Cell>,
}

impl Domain2D {
    pub fn new(parity: (u8, u8), cells: impl IntoIterator<Item = Cell>) -> Self {
        Domain2D {
            parity: (parity.0 & 1, parity.1 & 1),
            cells: cells.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Domain2D::default()
    }

    /// `width x height` block of cells with lower-left cell `(i0, j0)`.
    pub fn rectangle(i0: i64, j0: i64, width: i64, height: i64) -> Self {
        Domain2D::new(
            (0, 0),
            (i0..i0 + width).flat_map(|i| (j0..j0 + height).map(move |j| (i, j))),
        )
    }

    pub fn parity(&self) -> (u8, u8) {
        self.parity
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn into_cells(self) -> BTreeSet<Cell> {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    /// Inclusive bounds `((imin, jmin), (imax, jmax))` of the occupied cells.
    pub fn bounding_box(&self) -> Option<(Cell, Cell)> {
        let mut it = self.cells.iter();
        let &(i, j) = it.next()?;
        let init = ((i, j), (i, j));
        Some(self.cells.iter().fold(init, |((a, b), (c, d)), &(i, j)| {
            ((a.min(i), b.min(j)), (c.max(i), d.max(j)))
        }))
    }

    pub fn union(&self, other: &Domain2D) -> Domain2D {
        debug_assert_eq!(self.parity, other.parity);
        Domain2D {
            parity: self.parity,
            cells: self.cells.union(&other.cells).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Domain2D) -> Domain2D {
        debug_assert_eq!(self.parity, other.parity);
        Domain2D {
            parity: self.parity,
            cells: self.cells.intersection(&other.cells).copied().collect(),
        }
    }

    pub fn difference(&self, other: &Domain2D) -> Domain2D {
        debug_assert_eq!(self.parity, other.parity);
        Domain2D {
            parity: self.parity,
            cells: self.cells.difference(&other.cells).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &Domain2D) -> bool {
        self.cells.is_subset(&other.cells)
    }

    pub fn translate(&self, di: i64, dj: i64) -> Domain2D {
        Domain2D::new(self.parity, self.cells.iter().map(|&(i, j)| (i + di, j + dj)))
    }

    /// Remap after inserting a grid line through the middle of column `col`
    /// (`Axis::X`) or row `col` (`Axis::Y`). The point set is unchanged; the
    /// split column becomes two.
    pub fn split_line(&self, axis: Axis, col: i64) -> Domain2D {
        let shift = |v: i64| -> Vec<i64> {
            match v.cmp(&col) {
                std::cmp::Ordering::Less => vec![v],
                std::cmp::Ordering::Equal => vec![v, v + 1],
                std::cmp::Ordering::Greater => vec![v + 1],
            }
        };
        let mut out = BTreeSet::new();
        for &(i, j) in &self.cells {
            match axis {
                Axis::X => out.extend(shift(i).into_iter().map(|i| (i, j))),
                Axis::Y => out.extend(shift(j).into_iter().map(|j| (i, j))),
            }
        }
        Domain2D {
            parity: self.parity,
            cells: out,
        }
    }

    /// Vertices of the domain, keyed by the lower-left corner index
    /// convention: vertex `(a, b)` is the lower-left corner of cell `(a, b)`.
    fn vertices(&self) -> BTreeSet<Cell> {
        self.cells
            .iter()
            .flat_map(|&(i, j)| [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)])
            .collect()
    }

    /// Occupancy of the 2x2 block around vertex `(a, b)`, in the order
    /// lower-left, lower-right, upper-left, upper-right.
    fn vertex_neighbourhood(&self, (a, b): Cell) -> [bool; 4] {
        [
            self.contains((a - 1, b - 1)),
            self.contains((a, b - 1)),
            self.contains((a - 1, b)),
            self.contains((a, b)),
        ]
    }

    /// First vertex with the checkerboard configuration, if any.
    pub fn non_manifold_vertex(&self) -> Option<Cell> {
        self.vertices().into_iter().find(|&v| {
            let [ll, lr, ul, ur] = self.vertex_neighbourhood(v);
            (ll && ur && !lr && !ul) || (lr && ul && !ll && !ur)
        })
    }
}

/// True iff no vertex sees exactly two diagonally opposite cells.
pub fn validate_manifold(dom: &Domain2D) -> bool {
    dom.non_manifold_vertex().is_none()
}

/// Face counts of a cell domain. `f1h0`, `f1v0`, `f00` count inner
/// horizontal edges, inner vertical edges and inner vertices; `f1h`, `f1v`,
/// `f0` count all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FaceCounts {
    pub f2: i64,
    pub f1h0: i64,
    pub f1v0: i64,
    pub f00: i64,
    pub f1h: i64,
    pub f1v: i64,
    pub f0: i64,
}

impl FaceCounts {
    /// Build from cells and inner counts, deriving the totals by the
    /// manifold identities.
    pub fn from_inner(f2: i64, f1h0: i64, f1v0: i64, f00: i64) -> Self {
        FaceCounts {
            f2,
            f1h0,
            f1v0,
            f00,
            f1h: 2 * f2 - f1h0,
            f1v: 2 * f2 - f1v0,
            f0: 4 * f2 - 2 * (f1h0 + f1v0) + f00,
        }
    }

    /// Whether the totals agree with the manifold identities.
    pub fn identities_hold(&self) -> bool {
        *self == FaceCounts::from_inner(self.f2, self.f1h0, self.f1v0, self.f00)
    }
}

/// Count cells, edges and vertices directly from cell neighbourhoods.
pub fn face_counts(dom: &Domain2D) -> FaceCounts {
    let mut h_edges = BTreeSet::new();
    let mut v_edges = BTreeSet::new();
    let (mut f1h0, mut f1v0) = (0, 0);
    for &(i, j) in dom.cells() {
        h_edges.insert((i, j));
        h_edges.insert((i, j + 1));
        v_edges.insert((i, j));
        v_edges.insert((i + 1, j));
        if dom.contains((i, j + 1)) {
            f1h0 += 1;
        }
        if dom.contains((i + 1, j)) {
            f1v0 += 1;
        }
    }
    let vertices = dom.vertices();
    let f00 = vertices
        .iter()
        .filter(|&&v| dom.vertex_neighbourhood(v).iter().all(|&x| x))
        .count() as i64;
    FaceCounts {
        f2: dom.len() as i64,
        f1h0,
        f1v0,
        f00,
        f1h: h_edges.len() as i64,
        f1v: v_edges.len() as i64,
        f0: vertices.len() as i64,
    }
}

/// Per-row projections onto the horizontal axis, bottom to top over the
/// occupied row range. Rows inside the range without cells give empty
/// entries.
pub fn h_projections(dom: &Domain2D) -> Vec<Domain1D> {
    projections(dom, Axis::Y)
}

/// Per-column projections onto the vertical axis, left to right.
pub fn v_projections(dom: &Domain2D) -> Vec<Domain1D> {
    projections(dom, Axis::X)
}

/// Group cells by their coordinate along `by` and project onto the other axis.
fn projections(dom: &Domain2D, by: Axis) -> Vec<Domain1D> {
    let Some(((imin, jmin), (imax, jmax))) = dom.bounding_box() else {
        return Vec::new();
    };
    let (lo, hi, parity) = match by {
        Axis::Y => (jmin, jmax, dom.parity().0),
        Axis::X => (imin, imax, dom.parity().1),
    };
    let mut groups: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for &(i, j) in dom.cells() {
        match by {
            Axis::Y => groups.entry(j).or_default().push(i),
            Axis::X => groups.entry(i).or_default().push(j),
        }
    }
    (lo..=hi)
        .map(|k| Domain1D::new(parity, groups.remove(&k).unwrap_or_default()))
        .collect()
}

/// `<D1, ..., Dn>` to `<D1, D1 u D2, ..., D(n-1) u Dn, Dn>`.
pub fn sigma(seq: &[Domain1D]) -> Vec<Domain1D> {
    let Some(first) = seq.first() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(seq.len() + 1);
    out.push(first.clone());
    for w in seq.windows(2) {
        out.push(w[0].union(&w[1]));
    }
    out.push(seq[seq.len() - 1].clone());
    out
}

/// Split along grid line `index` of the given orientation. `Axis::X` means
/// the vertical line at the left edge of column `index`; `Axis::Y` the
/// horizontal line at the bottom of row `index`.
///
/// Returns the two halves and the shared segment as a 1D domain on the line.
pub fn split_by_line(dom: &Domain2D, axis: Axis, index: i64) -> Result<(Domain2D, Domain2D, Domain1D)> {
    let coord = |c: &Cell| match axis {
        Axis::X => c.0,
        Axis::Y => c.1,
    };
    let (low, high): (BTreeSet<Cell>, BTreeSet<Cell>) =
        dom.cells().iter().partition(|c| coord(c) < index);
    if low.is_empty() || high.is_empty() {
        return Err(Error::NoSplit { axis, coord: index });
    }
    let (shared, parity) = match axis {
        Axis::X => (
            low.iter()
                .filter(|&&(i, j)| i == index - 1 && high.contains(&(index, j)))
                .map(|&(_, j)| j)
                .collect::<Vec<_>>(),
            dom.parity().1,
        ),
        Axis::Y => (
            low.iter()
                .filter(|&&(i, j)| j == index - 1 && high.contains(&(i, index)))
                .map(|&(i, _)| i)
                .collect::<Vec<_>>(),
            dom.parity().0,
        ),
    };
    Ok((
        Domain2D::new(dom.parity(), low),
        Domain2D::new(dom.parity(), high),
        Domain1D::new(parity, shared),
    ))
}
