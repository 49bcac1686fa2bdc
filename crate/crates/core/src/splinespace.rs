//! Exact dimension of the maximal-smoothness spline space on a T-mesh.
//!
//! The space is the kernel of the linear map sending per-cell polynomial
//! coefficients to the jumps of all derivatives up to order `m - 1` across
//! vertical interfaces (and `n - 1` across horizontal ones), so its
//! dimension is `#unknowns - rank`.

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::domain2d::{Domain2D, FaceCounts};
use crate::error::{check_degree, Axis, Error, Result, DEFAULT_MAX_UNKNOWNS};
use crate::linalg::{ExactMatrix, Rational};
use crate::splinebasis::{rat, Grid2, Rect};

/// Two cells sharing a segment of positive length.
///
/// For `axis == Axis::X` the cells meet along the vertical line
/// `x = coord` with `first` on the left; for `Axis::Y` along the horizontal
/// line `y = coord` with `first` below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interface {
    pub first: usize,
    pub second: usize,
    pub axis: Axis,
    pub coord: Rational,
    pub lo: Rational,
    pub hi: Rational,
}

/// A set of interior-disjoint rectangles and their shared segments.
#[derive(Debug, Clone)]
pub struct TMeshComplex {
    cells: Vec<Rect>,
    interfaces: Vec<Interface>,
}

fn overlap(a0: &Rational, a1: &Rational, b0: &Rational, b1: &Rational) -> Option<(Rational, Rational)> {
    let lo = a0.max(b0).clone();
    let hi = a1.min(b1).clone();
    (lo < hi).then_some((lo, hi))
}

impl TMeshComplex {
    /// Build from rectangles, discovering every interface.
    pub fn from_rects(cells: Vec<Rect>) -> Result<Self> {
        for (k, c) in cells.iter().enumerate() {
            if c.x0 >= c.x1 || c.y0 >= c.y1 {
                return Err(Error::InvalidGrid(format!("cell {k} has empty interior")));
            }
        }
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| cells[a].x0.cmp(&cells[b].x0));
        let mut interfaces = Vec::new();
        for (pos, &a) in order.iter().enumerate() {
            for &b in &order[pos + 1..] {
                let (ca, cb) = (&cells[a], &cells[b]);
                if cb.x0 > ca.x1 {
                    break;
                }
                if ca.overlaps(cb) {
                    return Err(Error::OverlappingCells(a.min(b), a.max(b)));
                }
                for (p, q) in [(a, b), (b, a)] {
                    let (cp, cq) = (&cells[p], &cells[q]);
                    if cp.x1 == cq.x0 {
                        if let Some((lo, hi)) = overlap(&cp.y0, &cp.y1, &cq.y0, &cq.y1) {
                            interfaces.push(Interface {
                                first: p,
                                second: q,
                                axis: Axis::X,
                                coord: cp.x1.clone(),
                                lo,
                                hi,
                            });
                        }
                    }
                    if cp.y1 == cq.y0 {
                        if let Some((lo, hi)) = overlap(&cp.x0, &cp.x1, &cq.x0, &cq.x1) {
                            interfaces.push(Interface {
                                first: p,
                                second: q,
                                axis: Axis::Y,
                                coord: cp.y1.clone(),
                                lo,
                                hi,
                            });
                        }
                    }
                }
            }
        }
        interfaces.sort_by_key(|i| (i.first, i.second));
        Ok(TMeshComplex { cells, interfaces })
    }

    /// Build with an explicit interface list, checked for consistency.
    pub fn with_interfaces(cells: Vec<Rect>, interfaces: Vec<Interface>) -> Result<Self> {
        for i in &interfaces {
            let (Some(a), Some(b)) = (cells.get(i.first), cells.get(i.second)) else {
                return Err(Error::InvalidGrid("interface refers to a missing cell".into()));
            };
            let on_boundary = match i.axis {
                Axis::X => a.x1 == i.coord && b.x0 == i.coord,
                Axis::Y => a.y1 == i.coord && b.y0 == i.coord,
            };
            let (r0, r1, s0, s1) = match i.axis {
                Axis::X => (&a.y0, &a.y1, &b.y0, &b.y1),
                Axis::Y => (&a.x0, &a.x1, &b.x0, &b.x1),
            };
            let inside = r0 <= &i.lo && &i.hi <= r1 && s0 <= &i.lo && &i.hi <= s1;
            if i.lo >= i.hi || !on_boundary || !inside {
                return Err(Error::DegenerateInterface(i.first, i.second));
            }
        }
        Ok(TMeshComplex { cells, interfaces })
    }

    /// The cells of a single-level domain on a grid.
    pub fn from_domain(dom: &Domain2D, grid: &Grid2) -> Result<Self> {
        let rects = dom
            .cells()
            .iter()
            .map(|&c| grid.cell_rect(c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rects(rects)
    }

    /// The domain's cells on the unit integer grid.
    pub fn from_unit_domain(dom: &Domain2D) -> Self {
        let rects = dom
            .cells()
            .iter()
            .map(|&(i, j)| Rect {
                x0: rat(i),
                x1: rat(i + 1),
                y0: rat(j),
                y1: rat(j + 1),
            })
            .collect();
        Self::from_rects(rects).expect("distinct unit cells never overlap")
    }

    pub fn cells(&self) -> &[Rect] {
        &self.cells
    }

    pub fn interfaces(&self) -> &[Interface] {
        &self.interfaces
    }
}

/// Coefficients of `(alpha + beta t)^b` in powers of `t`.
fn affine_power(alpha: &Rational, beta: &Rational, b: usize) -> Vec<Rational> {
    (0..=b)
        .map(|q| {
            let c: i64 = binomial(b as i64, q as i64);
            rat(c) * pow(alpha, b - q) * pow(beta, q)
        })
        .collect()
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

fn falling(a: usize, r: usize) -> i64 {
    (a - r + 1..=a).map(|v| v as i64).product()
}

/// Unknown index of coefficient `(a, b)` of cell `cell`.
pub fn unknown_index(cell: usize, a: usize, b: usize, m: u32, n: u32) -> usize {
    let (m, n) = (m as usize, n as usize);
    cell * (m + 1) * (n + 1) + a * (n + 1) + b
}

/// Smoothness constraint matrix of the mesh for bi-degree `(m, n)`.
///
/// Traces along an interface are compared as polynomials in the global
/// coordinate along the interface line, so segments of different lengths on
/// each side still force equality on the whole line.
pub fn assemble_smoothness_system(mesh: &TMeshComplex, m: u32, n: u32) -> Result<ExactMatrix> {
    check_degree(m)?;
    check_degree(n)?;
    let per_cell = (m as usize + 1) * (n as usize + 1);
    let mut mat = ExactMatrix::new(per_cell * mesh.cells.len());
    for iface in &mesh.interfaces {
        if iface.lo >= iface.hi {
            return Err(Error::DegenerateInterface(iface.first, iface.second));
        }
        let (a, b) = (&mesh.cells[iface.first], &mesh.cells[iface.second]);
        // `across` is the degree in the direction crossing the interface,
        // `along` the degree along it.
        let (across, along) = match iface.axis {
            Axis::X => (m as usize, n as usize),
            Axis::Y => (n as usize, m as usize),
        };
        let (wa, wb, s_a, s_b) = match iface.axis {
            Axis::X => (a.width(), b.width(), (&a.y0, a.height()), (&b.y0, b.height())),
            Axis::Y => (a.height(), b.height(), (&a.x0, a.width()), (&b.x0, b.width())),
        };
        // local coordinate along the line as a function of the global one:
        // v = (s - s0) / h = -s0/h + s/h
        let along_a: Vec<Vec<Rational>> = (0..=along)
            .map(|p| affine_power(&(-(s_a.0 / &s_a.1)), &(Rational::one() / &s_a.1), p))
            .collect();
        let along_b: Vec<Vec<Rational>> = (0..=along)
            .map(|p| affine_power(&(-(s_b.0 / &s_b.1)), &(Rational::one() / &s_b.1), p))
            .collect();
        let idx = |cell: usize, across_pow: usize, along_pow: usize| match iface.axis {
            Axis::X => unknown_index(cell, across_pow, along_pow, m, n),
            Axis::Y => unknown_index(cell, along_pow, across_pow, m, n),
        };
        for r in 0..across {
            let scale_a = pow(&wa, r);
            let scale_b = pow(&wb, r);
            for q in 0..=along {
                let mut row = Vec::new();
                // first cell: derivative of order r at local coordinate 1
                for p in r..=across {
                    let f = rat(falling(p, r)) / &scale_a;
                    for (bp, poly) in along_a.iter().enumerate().skip(q) {
                        let c = &f * &poly[q];
                        if !c.is_zero() {
                            row.push((idx(iface.first, p, bp), c));
                        }
                    }
                }
                // second cell: derivative of order r at local coordinate 0
                let f = rat(falling(r, r)) / &scale_b;
                for (bp, poly) in along_b.iter().enumerate().skip(q) {
                    let c = -(&f * &poly[q]);
                    if !c.is_zero() {
                        row.push((idx(iface.second, r, bp), c));
                    }
                }
                mat.push_row(row);
            }
        }
    }
    Ok(mat)
}

/// Number of unknowns the oracle would create.
pub fn unknown_count(mesh: &TMeshComplex, m: u32, n: u32) -> usize {
    (m as usize + 1) * (n as usize + 1) * mesh.cells.len()
}

/// Dimension by exact rank, refusing meshes above the default size guard.
pub fn dim_oracle(mesh: &TMeshComplex, m: u32, n: u32) -> Result<i64> {
    dim_oracle_with_limit(mesh, m, n, DEFAULT_MAX_UNKNOWNS)
}

pub fn dim_oracle_with_limit(mesh: &TMeshComplex, m: u32, n: u32, limit: usize) -> Result<i64> {
    check_degree(m)?;
    check_degree(n)?;
    let unknowns = unknown_count(mesh, m, n);
    if unknowns > limit {
        return Err(Error::TooLarge { unknowns, limit });
    }
    let mat = assemble_smoothness_system(mesh, m, n)?;
    Ok(unknowns as i64 - mat.rank() as i64)
}

/// Closed-form dimension from face counts.
pub fn dim_formula(m: u32, n: u32, c: &FaceCounts) -> i64 {
    let (m, n) = (i64::from(m), i64::from(n));
    (m + 1) * (n + 1) * c.f2 - (m + 1) * n * c.f1h0 - (n + 1) * m * c.f1v0 + m * n * c.f00
}
