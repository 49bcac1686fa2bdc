//! One-dimensional cell domains on an integer lattice.
//!
//! A cell with index `i` on a lattice of parity `p` covers
//! `[i + p/2, i + p/2 + 1]` in lattice units. Parity 1 is the lattice shifted
//! by half a cell, which is where odd dilatations live.

use std::collections::BTreeSet;

use crate::error::{check_dilation, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Domain1D {
    parity: u8,
    cells: Vec<i64>,
}

impl Domain1D {
    pub fn new(parity: u8, cells: impl IntoIterator<Item = i64>) -> Self {
        let mut cells: Vec<i64> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        Domain1D {
            parity: parity & 1,
            cells,
        }
    }

    pub fn empty(parity: u8) -> Self {
        Domain1D::new(parity, [])
    }

    /// Contiguous run of cells `start..=end`.
    pub fn segment(parity: u8, start: i64, end: i64) -> Self {
        Domain1D::new(parity, start..=end)
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn cells(&self) -> &[i64] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, cell: i64) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// Maximal runs of consecutive cells as inclusive `(start, end)` pairs.
    pub fn components(&self) -> Vec<(i64, i64)> {
        let mut runs: Vec<(i64, i64)> = Vec::new();
        for &c in &self.cells {
            match runs.last_mut() {
                Some(last) if last.1 + 1 == c => last.1 = c,
                _ => runs.push((c, c)),
            }
        }
        runs
    }

    /// Number of cells strictly between each pair of neighbouring components.
    pub fn gaps(&self) -> Vec<i64> {
        self.components()
            .windows(2)
            .map(|w| w[1].0 - w[0].1 - 1)
            .collect()
    }

    /// Vertices lying in the interior of the domain.
    pub fn inner_vertex_count(&self) -> usize {
        self.components()
            .iter()
            .map(|&(a, b)| (b - a) as usize)
            .sum()
    }

    pub fn union(&self, other: &Domain1D) -> Domain1D {
        debug_assert_eq!(self.parity, other.parity);
        Domain1D::new(
            self.parity,
            self.cells.iter().chain(other.cells.iter()).copied(),
        )
    }

    pub fn intersection(&self, other: &Domain1D) -> Domain1D {
        debug_assert_eq!(self.parity, other.parity);
        let theirs: BTreeSet<i64> = other.cells.iter().copied().collect();
        Domain1D::new(
            self.parity,
            self.cells.iter().copied().filter(|c| theirs.contains(c)),
        )
    }

    /// The same point set after a new node is inserted in the middle of cell
    /// `cell`: that cell becomes two, every later cell shifts by one.
    pub fn split_cell(&self, cell: i64) -> Domain1D {
        let mut out = Vec::with_capacity(self.cells.len() + 1);
        for &c in &self.cells {
            match c.cmp(&cell) {
                std::cmp::Ordering::Less => out.push(c),
                std::cmp::Ordering::Equal => {
                    out.push(c);
                    out.push(c + 1);
                }
                std::cmp::Ordering::Greater => out.push(c + 1),
            }
        }
        Domain1D::new(self.parity, out)
    }
}

/// One half-step dilatation of a run of cells on a lattice of parity `parity`.
fn dilate_run(parity: u8, (a, b): (i64, i64)) -> (i64, i64) {
    if parity == 0 {
        (a - 1, b)
    } else {
        (a, b + 1)
    }
}

/// Dilatation `k` times by half a cell on each side.
pub fn dilate_1d(dom: &Domain1D, k: u32) -> Result<Domain1D> {
    check_dilation(k)?;
    let mut parity = dom.parity;
    let mut runs = dom.components();
    for _ in 0..k {
        let mut next: Vec<(i64, i64)> = Vec::with_capacity(runs.len());
        for run in runs {
            let (a, b) = dilate_run(parity, run);
            match next.last_mut() {
                Some(last) if a <= last.1 + 1 => last.1 = last.1.max(b),
                _ => next.push((a, b)),
            }
        }
        runs = next;
        parity ^= 1;
    }
    Ok(Domain1D::new(
        parity,
        runs.into_iter().flat_map(|(a, b)| a..=b),
    ))
}

/// Membership in the class of domains admitting an offset at distance `k/2`:
/// every gap between neighbouring components is longer than `k` cells.
pub fn in_class_a1(dom: &Domain1D, k: u32) -> bool {
    dom.gaps().into_iter().all(|g| g > i64::from(k))
}

/// Dimension of the `C^{m-1}` degree-`m` spline space over the domain.
pub fn dim_spline_1d(m: u32, dom: &Domain1D) -> i64 {
    let m = i64::from(m);
    (m + 1) * dom.len() as i64 - m * dom.inner_vertex_count() as i64
}

/// Start indices of every degree-`m` B-spline support window (`m + 1`
/// consecutive cells) sharing at least one cell with the domain.
pub fn effective_bsplines_1d(m: u32, dom: &Domain1D) -> Vec<i64> {
    let m = i64::from(m);
    let starts: BTreeSet<i64> = dom.cells.iter().flat_map(|&c| (c - m)..=c).collect();
    starts.into_iter().collect()
}
