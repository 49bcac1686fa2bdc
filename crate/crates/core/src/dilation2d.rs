//! Horizontal/vertical dilatation of cell domains and the closed-form face
//! counts of dilated admissible domains.
//!
//! Dilating by `(1, 0)` replaces every vertical edge of the domain by the cell
//! of the x-shifted lattice that the edge cuts in half, i.e. the Minkowski sum
//! with `[-1/2, 1/2] x {0}`. Working on the doubled lattice makes every shifted
//! grid an integer lattice; only the parity changes.

use std::collections::BTreeSet;

use crate::domain2d::{Cell, Domain2D, FaceCounts};
use crate::error::{check_dilation, Axis, Result};

fn step(dom: &Domain2D, axis: Axis) -> Domain2D {
    let (px, py) = dom.parity();
    let mut out: BTreeSet<Cell> = BTreeSet::new();
    match axis {
        Axis::X => {
            let off = i64::from(px);
            for &(i, j) in dom.cells() {
                out.insert((i - 1 + off, j));
                out.insert((i + off, j));
            }
            Domain2D::new((px ^ 1, py), out)
        }
        Axis::Y => {
            let off = i64::from(py);
            for &(i, j) in dom.cells() {
                out.insert((i, j - 1 + off));
                out.insert((i, j + off));
            }
            Domain2D::new((px, py ^ 1), out)
        }
    }
}

/// Dilate `k1` half-steps horizontally and `k2` half-steps vertically.
pub fn dilate_2d(dom: &Domain2D, k1: u32, k2: u32) -> Result<Domain2D> {
    check_dilation(k1)?;
    check_dilation(k2)?;
    let mut cur = dom.clone();
    for _ in 0..k1 {
        cur = step(&cur, Axis::X);
    }
    for _ in 0..k2 {
        cur = step(&cur, Axis::Y);
    }
    Ok(cur)
}

/// Apply single half-steps in the given order.
pub fn dilate_in_order(dom: &Domain2D, order: &[Axis]) -> Domain2D {
    order.iter().fold(dom.clone(), |d, &a| step(&d, a))
}

/// Closed-form face counts of the `(k1, k2)` dilatation of a domain from the
/// class of the same order. The caller owns the admissibility precondition.
pub fn dilated_face_counts(c: &FaceCounts, k1: u32, k2: u32) -> FaceCounts {
    let (k1, k2) = (i64::from(k1), i64::from(k2));
    let eval = |a: i64, b: i64| {
        // (a+1)(b+1) f2 - ((a+1) b f1h0 + (b+1) a f1v0) + a b f00
        (a + 1) * (b + 1) * c.f2 - ((a + 1) * b * c.f1h0 + (b + 1) * a * c.f1v0) + a * b * c.f00
    };
    let f2 = eval(k1, k2);
    let f1h = eval(k1, k2 + 1);
    let f1v = eval(k1 + 1, k2);
    let f0 = eval(k1 + 1, k2 + 1);
    FaceCounts {
        f2,
        f1h0: 2 * f2 - f1h,
        f1v0: 2 * f2 - f1v,
        f00: f0 - 4 * f2 + 2 * ((2 * f2 - f1h) + (2 * f2 - f1v)),
        f1h,
        f1v,
        f0,
    }
}
