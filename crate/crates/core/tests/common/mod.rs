//! Independent oracles shared by the property and acceptance suites. None of
//! these reuse the library's own algorithms for the quantity under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hsl_core::linalg::ExactMatrix;
use hsl_core::splinebasis::rat;
use hsl_core::{Domain1D, Domain2D, Rational, TMeshComplex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit segments `[t, t+1]` (doubled coordinates) covered by a 1D domain.
pub fn covered_1d(dom: &Domain1D) -> BTreeSet<i64> {
    let p = i64::from(dom.parity());
    dom.cells()
        .iter()
        .flat_map(|&c| [2 * c + p, 2 * c + p + 1])
        .collect()
}

/// Dilatation by brute force: grow every covered unit segment by `k` on each
/// side and read back the cells of the matching lattice.
pub fn minkowski_1d(dom: &Domain1D, k: u32) -> Domain1D {
    let k = i64::from(k);
    let grown: BTreeSet<i64> = covered_1d(dom)
        .into_iter()
        .flat_map(|t| t - k..=t + k)
        .collect();
    let parity = ((i64::from(dom.parity()) + k) % 2) as u8;
    let p = i64::from(parity);
    let cells = grown
        .iter()
        .filter(|&&t| (t - p).rem_euclid(2) == 0 && grown.contains(&(t + 1)))
        .map(|&t| (t - p).div_euclid(2));
    Domain1D::new(parity, cells)
}

/// Unit squares (doubled coordinates) covered by a 2D domain.
pub fn covered_2d(dom: &Domain2D) -> BTreeSet<(i64, i64)> {
    let (px, py) = dom.parity();
    let (px, py) = (i64::from(px), i64::from(py));
    dom.cells()
        .iter()
        .flat_map(|&(i, j)| {
            let (x, y) = (2 * i + px, 2 * j + py);
            [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]
        })
        .collect()
}

pub fn minkowski_2d(dom: &Domain2D, k1: u32, k2: u32) -> Domain2D {
    let (a, b) = (i64::from(k1), i64::from(k2));
    let grown: BTreeSet<(i64, i64)> = covered_2d(dom)
        .into_iter()
        .flat_map(|(x, y)| (x - a..=x + a).flat_map(move |u| (y - b..=y + b).map(move |v| (u, v))))
        .collect();
    let (px, py) = dom.parity();
    let parity = (((i64::from(px) + a) % 2) as u8, ((i64::from(py) + b) % 2) as u8);
    let (qx, qy) = (i64::from(parity.0), i64::from(parity.1));
    let cells = grown
        .iter()
        .filter(|&&(x, y)| {
            (x - qx).rem_euclid(2) == 0
                && (y - qy).rem_euclid(2) == 0
                && grown.contains(&(x + 1, y))
                && grown.contains(&(x, y + 1))
                && grown.contains(&(x + 1, y + 1))
        })
        .map(|&(x, y)| ((x - qx).div_euclid(2), (y - qy).div_euclid(2)));
    Domain2D::new(parity, cells)
}

/// Brute-force face counts by walking every edge and vertex of every cell.
pub fn brute_face_counts(dom: &Domain2D) -> (i64, i64, i64, i64) {
    let has = |i, j| dom.contains((i, j));
    let f2 = dom.len() as i64;
    let mut f1h0 = 0;
    let mut f1v0 = 0;
    let mut verts = BTreeSet::new();
    for &(i, j) in dom.cells() {
        if has(i, j + 1) {
            f1h0 += 1;
        }
        if has(i + 1, j) {
            f1v0 += 1;
        }
        verts.extend([(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)]);
    }
    let f00 = verts
        .iter()
        .filter(|&&(a, b)| has(a - 1, b - 1) && has(a, b - 1) && has(a - 1, b) && has(a, b))
        .count() as i64;
    (f2, f1h0, f1v0, f00)
}

/// Whether the point-set intersection of two 1D domains is a union of cells
/// (no isolated touching points).
pub fn intersection_is_cell_union(a: &Domain1D, b: &Domain1D) -> bool {
    let (ca, cb) = (covered_1d(a), covered_1d(b));
    // vertex v (doubled coordinate) lies in a closed domain iff one of the
    // adjacent unit segments is covered
    let closure = |c: &BTreeSet<i64>, v: i64| c.contains(&(v - 1)) || c.contains(&v);
    let both: BTreeSet<i64> = ca.intersection(&cb).copied().collect();
    let lo = ca.iter().chain(&cb).min().copied().unwrap_or(0) - 1;
    let hi = ca.iter().chain(&cb).max().copied().unwrap_or(0) + 2;
    (lo..=hi).all(|v| !(closure(&ca, v) && closure(&cb, v)) || closure(&both, v))
}

/// Dimension of C^{m-1} piecewise degree-m polynomials on a 1D domain with
/// unit cells, by exact rank of the continuity system in local coordinates.
pub fn spline_dim_1d_oracle(m: u32, dom: &Domain1D) -> i64 {
    let m = m as usize;
    let cells = dom.cells();
    let mut mat = ExactMatrix::new(cells.len() * (m + 1));
    for (k, w) in cells.windows(2).enumerate() {
        if w[1] != w[0] + 1 {
            continue;
        }
        for r in 0..m {
            // derivative r at u = 1 on the left, u = 0 on the right
            let mut row: Vec<(usize, Rational)> = (r..=m)
                .map(|a| {
                    let f: i64 = (a - r + 1..=a).map(|v| v as i64).product();
                    (k * (m + 1) + a, rat(f))
                })
                .collect();
            let f: i64 = (1..=r).map(|v| v as i64).product();
            row.push(((k + 1) * (m + 1) + r, rat(-f)));
            mat.push_row(row);
        }
    }
    (cells.len() * (m + 1)) as i64 - mat.rank() as i64
}

pub fn unit_mesh(dom: &Domain2D) -> TMeshComplex {
    TMeshComplex::from_unit_domain(dom)
}

/// Print one result line in the acceptance report format.
pub fn report(id: u32, title: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id} [{verdict}] {title}: {detail}");
}
