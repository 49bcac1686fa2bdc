//! Small named meshes and domains used by tests, benchmarks and the CLI.

use crate::domain2d::Domain2D;
use crate::hierarchy::{HierarchicalMesh, Level};
use crate::lattice1d::Domain1D;
use crate::splinebasis::{rat, ratio, Grid2};

/// Two levels: `Ω⁰ = [0,8]²` on the unit grid, `Ω¹ = [2,6]²` on the
/// half-unit grid.
pub fn demo2() -> HierarchicalMesh {
    demo2_with_inner(2, 6)
}

/// As [`demo2`] with `Ω¹ = [lo, hi]²` (coarse units).
pub fn demo2_with_inner(lo: i64, hi: i64) -> HierarchicalMesh {
    demo2_with_rect(lo, hi, lo, hi)
}

/// As [`demo2`] with `Ω¹ = [x0, x1] x [y0, y1]` (coarse units).
pub fn demo2_with_rect(x0: i64, x1: i64, y0: i64, y1: i64) -> HierarchicalMesh {
    HierarchicalMesh::new(vec![
        Level {
            grid: Grid2::uniform(8, 8, rat(1)),
            domain: Domain2D::rectangle(0, 0, 8, 8),
        },
        Level {
            grid: Grid2::uniform(16, 16, ratio(1, 2)),
            domain: Domain2D::rectangle(2 * x0, 2 * y0, 2 * (x1 - x0), 2 * (y1 - y0)),
        },
    ])
    .expect("two levels")
}

/// [`demo2`] refined only on the one-cell-wide strip `[3,4] x [1,7]`: the
/// ring around it has single-cell gaps, and the selection is too small for
/// bi-quadratics (100 selected functions, dimension 104).
pub fn demo2_strip() -> HierarchicalMesh {
    demo2_with_rect(3, 4, 1, 7)
}

/// One level holding an `a x b` rectangle on the unit grid.
pub fn single_rectangle(a: i64, b: i64) -> HierarchicalMesh {
    HierarchicalMesh::new(vec![Level {
        grid: Grid2::uniform(a as usize, b as usize, rat(1)),
        domain: Domain2D::rectangle(0, 0, a, b),
    }])
    .expect("one level")
}

/// Three levels over an L-shaped base domain, refined twice towards its
/// re-entrant corner.
pub fn three_level() -> HierarchicalMesh {
    let base = Domain2D::rectangle(0, 0, 12, 10).difference(&Domain2D::rectangle(8, 6, 4, 4));
    // [2,7]x[2,7] on the half grid, then [3,6]x[3,6] on the quarter grid
    let middle = Domain2D::rectangle(4, 4, 10, 10);
    let inner = Domain2D::rectangle(12, 12, 12, 12);
    HierarchicalMesh::new(vec![
        Level {
            grid: Grid2::uniform(12, 10, rat(1)),
            domain: base,
        },
        Level {
            grid: Grid2::uniform(24, 20, ratio(1, 2)),
            domain: middle,
        },
        Level {
            grid: Grid2::uniform(48, 40, ratio(1, 4)),
            domain: inner,
        },
    ])
    .expect("three levels")
}

/// Two unit-width columns of height two separated by a single empty column.
pub fn gap1_domain() -> Domain2D {
    Domain2D::new((0, 0), [(0, 0), (0, 1), (2, 0), (2, 1)])
}

/// Two cells separated by one empty cell.
pub fn gap1_domain_1d() -> Domain1D {
    Domain1D::new(0, [0, 2])
}

/// [`gap1_domain`] as a one-level mesh on a unit grid.
pub fn gap1_mesh() -> HierarchicalMesh {
    HierarchicalMesh::new(vec![Level {
        grid: Grid2::uniform(3, 2, rat(1)),
        domain: gap1_domain(),
    }])
    .expect("one level")
}
