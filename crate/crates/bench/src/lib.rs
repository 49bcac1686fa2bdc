//! Shared inputs for the benchmarks.

use hsl_core::{Domain2D, Grid2, Rational};

/// An `n`×`n` square of unit cells with a centred square hole of side
/// `hole`, a typical admissible domain with inner boundary.
pub fn framed_square(n: i64, hole: i64) -> Domain2D {
    let lo = (n - hole) / 2;
    let cells = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(lo..lo + hole).contains(&i) || !(lo..lo + hole).contains(&j));
    Domain2D::new((0, 0), cells)
}

/// Unit grid matching [`framed_square`].
pub fn unit_grid(n: i64) -> Grid2 {
    Grid2::uniform(n as usize, n as usize, Rational::from_integer(1.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_has_expected_cell_count() {
        assert_eq!(framed_square(10, 4).cells().len(), 84);
    }
}
