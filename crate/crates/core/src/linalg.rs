//! Exact rank and linear solves over the rationals.
//!
//! Rows are scaled to primitive integer vectors (denominators cleared, content
//! divided out) and eliminated sparsely: each incoming row is reduced against
//! the stored pivot rows by integer cross-multiplication, so no fractions
//! appear until back substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

type Row = Vec<(usize, BigInt)>;

/// Scale a rational row to a primitive integer row, dropping zeros.
fn primitive_row(entries: impl IntoIterator<Item = (usize, Rational)>) -> Row {
    primitive_row_scaled(entries).0
}

/// Primitive integer row together with the factor `s` such that the original
/// row equals `s` times the returned one.
fn primitive_row_scaled(entries: impl IntoIterator<Item = (usize, Rational)>) -> (Row, Rational) {
    let mut entries: Vec<(usize, Rational)> =
        entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    entries.sort_by_key(|(c, _)| *c);
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut row: Row = entries
        .into_iter()
        .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    let g = make_primitive(&mut row);
    let g = if g.is_zero() { BigInt::one() } else { g };
    (row, Rational::new(g, lcm))
}

/// Divide out the content of the row, returning it.
fn make_primitive(row: &mut Row) -> BigInt {
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    g
}

/// `a * x - b * y` for sparse rows, dropping cancelled entries.
fn combine(a: &BigInt, x: &Row, b: &BigInt, y: &Row) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-echelon form built incrementally; pivot rows are indexed by their
/// leading column.
#[derive(Debug, Clone)]
struct Echelon {
    pivots: Vec<Option<Row>>,
    rank: usize,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon {
            pivots: vec![None; ncols],
            rank: 0,
        }
    }

    fn insert(&mut self, mut row: Row) {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return;
            };
            match self.pivots[lead].take() {
                None => {
                    self.pivots[lead] = Some(row);
                    self.rank += 1;
                    return;
                }
                Some(mut pivot) => {
                    // keep the sparser of the two as the pivot
                    if row.len() < pivot.len() {
                        std::mem::swap(&mut row, &mut pivot);
                    }
                    let g = pivot[0].1.gcd(&row[0].1);
                    let a = &pivot[0].1 / &g;
                    let b = &row[0].1 / &g;
                    let mut reduced = combine(&a, &row, &b, &pivot);
                    make_primitive(&mut reduced);
                    self.pivots[lead] = Some(pivot);
                    row = reduced;
                }
            }
        }
    }
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Inconsistent,
    Underdetermined { rank: usize },
}

/// Sparse matrix with exact rational entries, stored as primitive integer rows.
#[derive(Debug, Clone, Default)]
pub struct ExactMatrix {
    ncols: usize,
    rows: Vec<Row>,
    // original row = scale * stored primitive row
    scales: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(ncols: usize) -> Self {
        ExactMatrix {
            ncols,
            rows: Vec::new(),
            scales: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) {
        let (row, scale) = primitive_row_scaled(entries);
        debug_assert!(row.iter().all(|(c, _)| *c < self.ncols));
        self.rows.push(row);
        self.scales.push(scale);
    }

    /// Row `r` as `(column, value)` pairs, scaled to a primitive integer vector.
    pub fn row(&self, r: usize) -> &[(usize, BigInt)] {
        &self.rows[r]
    }

    /// Dense copy of the (scaled) entries.
    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![BigInt::zero(); self.ncols];
                for (c, v) in row {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.ncols);
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech.rank
    }

    /// Solve `A x = rhs`, with one right-hand side entry per row.
    pub fn solve(&self, rhs: &[Rational]) -> Solution {
        assert_eq!(rhs.len(), self.rows.len(), "one rhs entry per row");
        let n = self.ncols;
        let mut ech = Echelon::new(n + 1);
        for ((row, b), scale) in self.rows.iter().zip(rhs).zip(&self.scales) {
            let entries = row
                .iter()
                .map(|(c, v)| (*c, Rational::from_integer(v.clone())))
                .chain(std::iter::once((n, b / scale)));
            ech.insert(primitive_row(entries));
        }
        if ech.pivots[n].is_some() {
            return Solution::Inconsistent;
        }
        if ech.rank < n {
            return Solution::Underdetermined { rank: ech.rank };
        }
        let mut x = vec![Rational::zero(); n];
        for col in (0..n).rev() {
            let row = ech.pivots[col].as_ref().expect("full rank");
            let mut acc = Rational::zero();
            let mut b = Rational::zero();
            for (c, v) in row.iter().skip(1) {
                if *c == n {
                    b = Rational::from_integer(v.clone());
                } else {
                    acc += &x[*c] * Rational::from_integer(v.clone());
                }
            }
            x[col] = (b - acc) / Rational::from_integer(row[0].1.clone());
        }
        Solution::Unique(x)
    }
}

/// Convenience: rank of a dense rational matrix.
pub fn rank_dense(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = ExactMatrix::new(ncols);
    for r in rows {
        m.push_row(r.iter().cloned().enumerate());
    }
    m.rank()
}

/// Whether every entry is strictly positive.
pub fn all_positive(values: &[Rational]) -> bool {
    values.iter().all(Signed::is_positive)
}
