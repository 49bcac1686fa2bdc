//! Grids with exact rational knot lines, tensor-product B-splines with simple
//! knots, exact evaluation and per-cell polynomial extraction.
//!
//! Per-cell polynomials are expressed in local coordinates `u = (x - x0) / w`,
//! `v = (y - y0) / h` anchored at the lower-left corner of the cell. A
//! coefficient matrix `c[a][b]` stands for `sum c[a][b] u^a v^b`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::domain2d::{Cell, Domain2D};
use crate::error::{check_degree, Axis, Error, Result};
use crate::linalg::{ExactMatrix, Rational, Solution};

/// Univariate polynomial, coefficients in increasing degree.
pub type Poly = Vec<Rational>;

/// `(m+1) x (n+1)` coefficient matrix of a bivariate polynomial.
pub type CellPoly = Vec<Vec<Rational>>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Knot lines along one axis. Lines outside the stored window are defined
/// only when an extension step is present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridAxis {
    lines: Vec<Rational>,
    step: Option<Rational>,
}

impl GridAxis {
    pub fn new(lines: Vec<Rational>, step: Option<Rational>) -> Result<Self> {
        if lines.len() < 2 {
            return Err(Error::InvalidGrid("need at least two lines per axis".into()));
        }
        if let Some(w) = lines.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(format!(
                "lines not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        if let Some(s) = &step {
            if !s.is_positive() {
                return Err(Error::InvalidGrid(format!("extension step {s} must be positive")));
            }
        }
        Ok(GridAxis { lines, step })
    }

    /// `count` cells of width `width` starting at `start`, extended uniformly.
    pub fn uniform(start: Rational, width: Rational, count: usize) -> Self {
        let lines = (0..=count)
            .map(|k| &start + &width * rat(k as i64))
            .collect();
        GridAxis {
            lines,
            step: Some(width),
        }
    }

    pub fn lines(&self) -> &[Rational] {
        &self.lines
    }

    pub fn step(&self) -> Option<&Rational> {
        self.step.as_ref()
    }

    /// Number of cells inside the stored window.
    pub fn cell_count(&self) -> i64 {
        self.lines.len() as i64 - 1
    }

    pub fn first(&self) -> &Rational {
        &self.lines[0]
    }

    pub fn last(&self) -> &Rational {
        &self.lines[self.lines.len() - 1]
    }

    /// Coordinate of line `i`; line 0 is the first stored line.
    pub fn line(&self, i: i64) -> Result<Rational> {
        let len = self.lines.len() as i64;
        if (0..len).contains(&i) {
            return Ok(self.lines[i as usize].clone());
        }
        let step = self.step.as_ref().ok_or_else(|| {
            Error::WindowTooSmall(format!("line index {i} outside stored lines 0..{len}"))
        })?;
        Ok(if i < 0 {
            self.first() + step * rat(i)
        } else {
            self.last() + step * rat(i - len + 1)
        })
    }

    pub fn in_window(&self, coord: &Rational) -> bool {
        coord >= self.first() && coord <= self.last()
    }

    /// Index of the line at `coord`, if it is a grid line.
    pub fn index_of(&self, coord: &Rational) -> Option<i64> {
        if self.in_window(coord) {
            return self.lines.binary_search(coord).ok().map(|i| i as i64);
        }
        let step = self.step.as_ref()?;
        let (base, offset) = if coord < self.first() {
            (self.first(), 0)
        } else {
            (self.last(), self.lines.len() as i64 - 1)
        };
        let k = (coord - base) / step;
        k.is_integer()
            .then(|| offset + i64::try_from(k.to_integer()).ok().unwrap_or(i64::MAX))
    }

    /// Index of the cell `[line(c), line(c+1))` containing `coord`.
    pub fn cell_of(&self, coord: &Rational) -> Result<i64> {
        if self.in_window(coord) {
            let p = self.lines.partition_point(|l| l <= coord) as i64;
            return Ok((p - 1).min(self.cell_count() - 1));
        }
        let step = self
            .step
            .as_ref()
            .ok_or_else(|| Error::OutsideWindow(coord.to_string()))?;
        let (base, offset) = if coord < self.first() {
            (self.first(), 0)
        } else {
            (self.last(), self.lines.len() as i64 - 1)
        };
        let k = ((coord - base) / step).floor().to_integer();
        Ok(offset + i64::try_from(k).map_err(|_| Error::OutsideWindow(coord.to_string()))?)
    }

    /// Insert a line strictly inside the window. Returns false if present.
    pub fn insert(&mut self, coord: Rational) -> Result<bool> {
        if coord <= *self.first() || coord >= *self.last() {
            return Err(Error::OutsideWindow(coord.to_string()));
        }
        match self.lines.binary_search(&coord) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.lines.insert(pos, coord);
                Ok(true)
            }
        }
    }

    /// The `m + 2` knots of the B-spline whose support starts at cell `start`.
    pub fn knots(&self, start: i64, m: u32) -> Result<Vec<Rational>> {
        (start..=start + i64::from(m) + 1).map(|i| self.line(i)).collect()
    }
}

/// A pair of axis grids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid2 {
    pub x: GridAxis,
    pub y: GridAxis,
}

impl Grid2 {
    pub fn new(x: GridAxis, y: GridAxis) -> Self {
        Grid2 { x, y }
    }

    /// Uniform grid of `nx x ny` cells of size `h`, origin at 0.
    pub fn uniform(nx: usize, ny: usize, h: Rational) -> Self {
        Grid2 {
            x: GridAxis::uniform(Rational::zero(), h.clone(), nx),
            y: GridAxis::uniform(Rational::zero(), h, ny),
        }
    }

    pub fn axis(&self, axis: Axis) -> &GridAxis {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }

    pub fn axis_mut(&mut self, axis: Axis) -> &mut GridAxis {
        match axis {
            Axis::X => &mut self.x,
            Axis::Y => &mut self.y,
        }
    }

    pub fn cell_rect(&self, (i, j): Cell) -> Result<Rect> {
        Ok(Rect {
            x0: self.x.line(i)?,
            x1: self.x.line(i + 1)?,
            y0: self.y.line(j)?,
            y1: self.y.line(j + 1)?,
        })
    }

    pub fn window_contains_cell(&self, (i, j): Cell) -> bool {
        (0..self.x.cell_count()).contains(&i) && (0..self.y.cell_count()).contains(&j)
    }
}

/// Axis-aligned rectangle with exact corners.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Rect {
    pub fn width(&self) -> Rational {
        &self.x1 - &self.x0
    }

    pub fn height(&self) -> Rational {
        &self.y1 - &self.y0
    }

    /// Interiors intersect.
    pub fn overlaps(&self, other: &Rect) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x0 <= other.x0 && other.x1 <= self.x1 && self.y0 <= other.y0 && other.y1 <= self.y1
    }
}

/// One tensor-product B-spline: its level, the lower-left cell of its
/// `(m+1) x (n+1)` support on that level's grid, and its bi-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BSplineKey {
    pub level: usize,
    pub origin: Cell,
    pub degrees: (u32, u32),
}

impl BSplineKey {
    pub fn new(level: usize, origin: Cell, degrees: (u32, u32)) -> Self {
        BSplineKey {
            level,
            origin,
            degrees,
        }
    }

    pub fn support_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let (i0, j0) = self.origin;
        let (m, n) = (i64::from(self.degrees.0), i64::from(self.degrees.1));
        (i0..=i0 + m).flat_map(move |i| (j0..=j0 + n).map(move |j| (i, j)))
    }

    pub fn support_contains_cell(&self, (i, j): Cell) -> bool {
        let (i0, j0) = self.origin;
        (i0..=i0 + i64::from(self.degrees.0)).contains(&i)
            && (j0..=j0 + i64::from(self.degrees.1)).contains(&j)
    }

    pub fn support_rect(&self, grid: &Grid2) -> Result<Rect> {
        let (i0, j0) = self.origin;
        Ok(Rect {
            x0: grid.x.line(i0)?,
            x1: grid.x.line(i0 + i64::from(self.degrees.0) + 1)?,
            y0: grid.y.line(j0)?,
            y1: grid.y.line(j0 + i64::from(self.degrees.1) + 1)?,
        })
    }
}

pub fn poly_eval(p: &[Rational], t: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * t + c)
}

fn poly_mul_linear(p: &[Rational], c0: &Rational, c1: &Rational) -> Poly {
    // p(u) * (c0 + c1 u)
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (k, a) in p.iter().enumerate() {
        out[k] += a * c0;
        out[k + 1] += a * c1;
    }
    out
}

/// `q(s) = p(alpha + beta s)`.
pub fn poly_compose_affine(p: &[Rational], alpha: &Rational, beta: &Rational) -> Poly {
    let mut out = vec![Rational::zero(); p.len()];
    for a in p.iter().rev() {
        // Horner: out = out * (alpha + beta s) + a
        let mut next = poly_mul_linear(&out, alpha, beta);
        next.truncate(p.len());
        next[0] += a;
        out = next;
    }
    out
}

/// Degree-`m` B-spline over `knots` (length `m + 2`) restricted to the knot
/// interval `cell` (0-based, `0..=m`), by symbolic Cox-de Boor recursion in
/// the local coordinate of that interval.
pub fn bspline_piece(knots: &[Rational], cell: usize) -> Poly {
    let m = knots.len() - 2;
    let x0 = &knots[cell];
    let w = &knots[cell + 1] - x0;
    // x = x0 + w u
    let mut basis: Vec<Poly> = (0..=m)
        .map(|i| {
            let mut p = vec![Rational::zero(); m + 1];
            if i == cell {
                p[0] = Rational::one();
            }
            p
        })
        .collect();
    for p in 1..=m {
        let mut next = Vec::with_capacity(basis.len() - 1);
        for i in 0..basis.len() - 1 {
            let mut acc = vec![Rational::zero(); m + 2];
            let left_den = &knots[i + p] - &knots[i];
            // (x - t_i) / (t_{i+p} - t_i) = ((x0 - t_i) + w u) / den
            let l0 = (x0 - &knots[i]) / &left_den;
            let l1 = &w / &left_den;
            for (k, c) in poly_mul_linear(&basis[i], &l0, &l1).into_iter().enumerate() {
                acc[k] += c;
            }
            let right_den = &knots[i + p + 1] - &knots[i + 1];
            // (t_{i+p+1} - x) / den
            let r0 = (&knots[i + p + 1] - x0) / &right_den;
            let r1 = -(&w / &right_den);
            for (k, c) in poly_mul_linear(&basis[i + 1], &r0, &r1).into_iter().enumerate() {
                acc[k] += c;
            }
            acc.truncate(m + 1);
            next.push(acc);
        }
        basis = next;
    }
    basis.pop().expect("one basis function remains")
}

/// Pointwise Cox-de Boor evaluation. Uses half-open knot intervals; for
/// degree >= 1 with simple knots the function is continuous, so the
/// convention only matters at the support ends where the value is zero.
pub fn eval_bspline_1d(knots: &[Rational], x: &Rational) -> Rational {
    let m = knots.len() - 2;
    let mut vals: Vec<Rational> = (0..=m)
        .map(|i| {
            if &knots[i] <= x && x < &knots[i + 1] {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    for p in 1..=m {
        vals = (0..vals.len() - 1)
            .map(|i| {
                let left = (x - &knots[i]) / (&knots[i + p] - &knots[i]) * &vals[i];
                let right =
                    (&knots[i + p + 1] - x) / (&knots[i + p + 1] - &knots[i + 1]) * &vals[i + 1];
                left + right
            })
            .collect();
    }
    vals.pop().expect("one value remains")
}

/// Same piece as [`bspline_piece`], recovered by interpolating pointwise
/// values at `m + 1` interior nodes of the interval.
pub fn bspline_piece_vandermonde(knots: &[Rational], cell: usize) -> Poly {
    let m = knots.len() - 2;
    let x0 = &knots[cell];
    let w = &knots[cell + 1] - x0;
    let mut mat = ExactMatrix::new(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let u = ratio(k as i64 + 1, m as i64 + 2);
        let mut pow = Rational::one();
        let mut row = Vec::with_capacity(m + 1);
        for a in 0..=m {
            row.push((a, pow.clone()));
            pow *= &u;
        }
        mat.push_row(row);
        rhs.push(eval_bspline_1d(knots, &(x0 + &w * &u)));
    }
    match mat.solve(&rhs) {
        Solution::Unique(c) => c,
        other => unreachable!("Vandermonde system at distinct nodes is regular: {other:?}"),
    }
}

fn outer(px: &[Rational], py: &[Rational]) -> CellPoly {
    px.iter()
        .map(|a| py.iter().map(|b| a * b).collect())
        .collect()
}

fn zero_poly(m: u32, n: u32) -> CellPoly {
    vec![vec![Rational::zero(); n as usize + 1]; m as usize + 1]
}

/// Polynomial of the B-spline on one cell of its level grid, in the cell's
/// local coordinates. Zero outside the support.
pub fn cell_polynomial(key: &BSplineKey, cell: Cell, grid: &Grid2) -> Result<CellPoly> {
    let (m, n) = key.degrees;
    check_degree(m)?;
    check_degree(n)?;
    // the cell must exist on the grid
    grid.cell_rect(cell)?;
    if !key.support_contains_cell(cell) {
        return Ok(zero_poly(m, n));
    }
    let kx = grid.x.knots(key.origin.0, m)?;
    let ky = grid.y.knots(key.origin.1, n)?;
    let px = bspline_piece(&kx, (cell.0 - key.origin.0) as usize);
    let py = bspline_piece(&ky, (cell.1 - key.origin.1) as usize);
    Ok(outer(&px, &py))
}

/// Same as [`cell_polynomial`] through the interpolation route.
pub fn cell_polynomial_vandermonde(key: &BSplineKey, cell: Cell, grid: &Grid2) -> Result<CellPoly> {
    let (m, n) = key.degrees;
    check_degree(m)?;
    check_degree(n)?;
    grid.cell_rect(cell)?;
    if !key.support_contains_cell(cell) {
        return Ok(zero_poly(m, n));
    }
    let kx = grid.x.knots(key.origin.0, m)?;
    let ky = grid.y.knots(key.origin.1, n)?;
    let px = bspline_piece_vandermonde(&kx, (cell.0 - key.origin.0) as usize);
    let py = bspline_piece_vandermonde(&ky, (cell.1 - key.origin.1) as usize);
    Ok(outer(&px, &py))
}

/// Exact value of the B-spline at a point.
pub fn evaluate(key: &BSplineKey, point: (&Rational, &Rational), grid: &Grid2) -> Result<Rational> {
    let (m, n) = key.degrees;
    let kx = grid.x.knots(key.origin.0, m)?;
    let ky = grid.y.knots(key.origin.1, n)?;
    Ok(eval_bspline_1d(&kx, point.0) * eval_bspline_1d(&ky, point.1))
}

/// Evaluate a cell polynomial at local coordinates.
pub fn eval_cell_poly(p: &CellPoly, u: &Rational, v: &Rational) -> Rational {
    let rows: Vec<Rational> = p.iter().map(|row| poly_eval(row, v)).collect();
    poly_eval(&rows, u)
}

/// The B-spline restricted to `rect`, in the rectangle's local coordinates.
/// `rect` must either avoid the support interior or lie inside one cell of
/// the key's grid.
pub fn restrict_to_rect(key: &BSplineKey, grid: &Grid2, rect: &Rect) -> Result<CellPoly> {
    let (m, n) = key.degrees;
    let support = key.support_rect(grid)?;
    if !support.overlaps(rect) {
        return Ok(zero_poly(m, n));
    }
    let cell = (grid.x.cell_of(&rect.x0)?, grid.y.cell_of(&rect.y0)?);
    let outer_rect = grid.cell_rect(cell)?;
    if !outer_rect.contains_rect(rect) {
        return Err(Error::NotAligned(format!(
            "rectangle [{}, {}]x[{}, {}] crosses grid lines of the B-spline's level",
            rect.x0, rect.x1, rect.y0, rect.y1
        )));
    }
    let poly = cell_polynomial(key, cell, grid)?;
    let (w, h) = (outer_rect.width(), outer_rect.height());
    let ax = (&rect.x0 - &outer_rect.x0) / &w;
    let bx = rect.width() / &w;
    let ay = (&rect.y0 - &outer_rect.y0) / &h;
    let by = rect.height() / &h;
    // reparametrise in v for each row, then in u column-wise
    let in_v: Vec<Poly> = poly
        .iter()
        .map(|row| poly_compose_affine(row, &ay, &by))
        .collect();
    let mut out = zero_poly(m, n);
    for b in 0..=n as usize {
        let column: Poly = in_v.iter().map(|row| row[b].clone()).collect();
        for (a, c) in poly_compose_affine(&column, &ax, &bx).into_iter().enumerate() {
            out[a][b] = c;
        }
    }
    Ok(out)
}

/// Lower-left cells of all `(m+1) x (n+1)` windows sharing a cell with the
/// domain.
pub fn support_windows(dom: &Domain2D, m: u32, n: u32) -> BTreeSet<Cell> {
    let (m, n) = (i64::from(m), i64::from(n));
    dom.cells()
        .iter()
        .flat_map(|&(i, j)| (i - m..=i).flat_map(move |a| (j - n..=j).map(move |b| (a, b))))
        .collect()
}

/// B-splines of bi-degree `(m, n)` on `grid` acting on the domain.
pub fn effective_bsplines_2d(
    m: u32,
    n: u32,
    dom: &Domain2D,
    grid: &Grid2,
    level: usize,
) -> Result<BTreeSet<BSplineKey>> {
    check_degree(m)?;
    check_degree(n)?;
    let windows = support_windows(dom, m, n);
    if let (Some(&(imin, _)), Some(&(imax, _))) = (windows.first(), windows.last()) {
        let jmin = windows.iter().map(|c| c.1).min().unwrap_or(0);
        let jmax = windows.iter().map(|c| c.1).max().unwrap_or(0);
        grid.x.line(imin)?;
        grid.x.line(imax + i64::from(m) + 1)?;
        grid.y.line(jmin)?;
        grid.y.line(jmax + i64::from(n) + 1)?;
    }
    Ok(windows
        .into_iter()
        .map(|o| BSplineKey::new(level, o, (m, n)))
        .collect())
}
