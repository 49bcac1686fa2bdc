//! Seeded random inputs for property tests and the acceptance suite.

use rand::Rng;

use crate::domain2d::{validate_manifold, Domain2D};
use crate::error::Axis;
use crate::hierarchy::{HierarchicalMesh, Level};
use crate::lattice1d::Domain1D;
use crate::linalg::Rational;
use crate::splinebasis::{rat, ratio, Grid2};

/// Random subset of `0..window` as a 1D domain of the given parity.
pub fn random_domain_1d<R: Rng>(rng: &mut R, window: i64, parity: u8) -> Domain1D {
    let density = rng.random_range(0.1..0.9);
    Domain1D::new(parity, (0..window).filter(|_| rng.random_bool(density)))
}

fn random_rect<R: Rng>(rng: &mut R, x0: i64, y0: i64, w: i64, h: i64) -> Domain2D {
    let a = rng.random_range(1..=w);
    let b = rng.random_range(1..=h);
    let i = rng.random_range(x0..=x0 + w - a);
    let j = rng.random_range(y0..=y0 + h - b);
    Domain2D::rectangle(i, j, a, b)
}

/// Union of one to four rectangles in a `window x window` box, possibly
/// minus a rectangular hole; not necessarily a manifold.
pub fn random_domain<R: Rng>(rng: &mut R, window: i64) -> Domain2D {
    let count = rng.random_range(1..=4);
    let mut dom = Domain2D::empty();
    for _ in 0..count {
        dom = dom.union(&random_rect(rng, 0, 0, window, window));
    }
    if rng.random_bool(0.3) {
        let hole = random_rect(rng, 1, 1, (window - 2).max(1), (window - 2).max(1));
        let carved = dom.difference(&hole);
        if !carved.is_empty() {
            dom = carved;
        }
    }
    dom
}

/// A non-empty manifold domain from [`random_domain`] (rejection sampled).
pub fn random_manifold_domain<R: Rng>(rng: &mut R, window: i64) -> Domain2D {
    loop {
        let dom = random_domain(rng, window);
        if !dom.is_empty() && validate_manifold(&dom) {
            return dom;
        }
    }
}

/// Random dyadic hierarchy with `depth` levels. `Ω⁰` is a manifold domain in
/// a `base x base` window; each finer domain is one or two rectangles of
/// the previous level's cells inside the previous domain, so boundaries are
/// aligned by construction. Returns `None` when a level cannot be placed.
pub fn random_hierarchy<R: Rng>(rng: &mut R, depth: usize, base: i64) -> Option<HierarchicalMesh> {
    let mut levels = vec![Level {
        grid: Grid2::uniform(base as usize, base as usize, rat(1)),
        domain: random_manifold_domain(rng, base),
    }];
    for l in 1..depth {
        let parent = &levels[l - 1].domain;
        let size = base << (l - 1);
        let mut child = Domain2D::empty();
        for _ in 0..rng.random_range(1..=2) {
            for _attempt in 0..20 {
                let r = random_rect(rng, 0, 0, size, size);
                if r.is_subset(parent) {
                    child = child.union(&r);
                    break;
                }
            }
        }
        if child.is_empty() || !validate_manifold(&child) {
            return None;
        }
        let cells = child
            .cells()
            .iter()
            .flat_map(|&(i, j)| [(2 * i, 2 * j), (2 * i + 1, 2 * j), (2 * i, 2 * j + 1), (2 * i + 1, 2 * j + 1)]);
        levels.push(Level {
            grid: Grid2::uniform((2 * size) as usize, (2 * size) as usize, ratio(1, 1 << l)),
            domain: Domain2D::new((0, 0), cells),
        });
    }
    HierarchicalMesh::new(levels).ok()
}

/// A random line strictly inside a cell of level `level`'s window: either
/// the cell midpoint or a third of the way across.
pub fn random_line<R: Rng>(rng: &mut R, h: &HierarchicalMesh, level: usize) -> (Axis, Rational) {
    let axis = if rng.random_bool(0.5) { Axis::X } else { Axis::Y };
    let g = h.grid(level).axis(axis);
    let cell = rng.random_range(0..g.cell_count());
    let lo = g.line(cell).expect("cell inside window");
    let hi = g.line(cell + 1).expect("cell inside window");
    let t = if rng.random_bool(0.5) { ratio(1, 2) } else { ratio(1, 3) };
    (axis, &lo + (hi - &lo) * t)
}
