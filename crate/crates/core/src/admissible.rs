//! Membership in the admissible classes of 2D domains and their "from
//! inside" counterparts defined through the complement in a large rectangle.
//!
//! The base classes check the row (for horizontal offsets) or column (for
//! vertical offsets) projections and the unions of neighbouring ones for
//! gaps of a single cell. Higher classes recurse through dilatations; for
//! mixed orders there are two recursion routes which must agree.

use std::collections::HashMap;

use crate::dilation2d::dilate_in_order;
use crate::domain2d::{h_projections, v_projections, Cell, Domain2D};
use crate::error::{check_dilation, Axis, Error, Result};
use crate::lattice1d::{in_class_a1, Domain1D};

/// Recursion route for mixed orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Reduce `k1` first: horizontal offset of the `(k1-1, k2)` dilatation.
    A,
    /// Reduce `k2` first: vertical offset of the `(k1, k2-1)` dilatation.
    B,
    /// Evaluate both and fail loudly if they differ.
    Both,
}

impl std::str::FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "3a" | "a" => Ok(Route::A),
            "3b" | "b" => Ok(Route::B),
            "both" => Ok(Route::Both),
            other => Err(format!("unknown route '{other}', expected 3a, 3b or both")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureKind {
    NonManifold { vertex: Cell },
    /// A row projection (or the union of rows `row` and `row + 1` when
    /// `merged`) has a single-cell gap.
    RowGap { row: i64, merged: bool },
    ColumnGap { column: i64, merged: bool },
}

/// First failing base-case predicate, with the dilatation it was checked on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub dilation: (u32, u32),
    pub kind: FailureKind,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (a, b) = self.dilation;
        match &self.kind {
            FailureKind::NonManifold { vertex } => {
                write!(f, "dilatation ({a},{b}) is not a manifold at vertex {vertex:?}")
            }
            FailureKind::RowGap { row, merged: false } => {
                write!(f, "dilatation ({a},{b}): row {row} has a one-cell gap")
            }
            FailureKind::RowGap { row, merged: true } => {
                write!(f, "dilatation ({a},{b}): rows {row},{} have a one-cell gap", row + 1)
            }
            FailureKind::ColumnGap { column, merged: false } => {
                write!(f, "dilatation ({a},{b}): column {column} has a one-cell gap")
            }
            FailureKind::ColumnGap { column, merged: true } => write!(
                f,
                "dilatation ({a},{b}): columns {column},{} have a one-cell gap",
                column + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    pub failure: Option<Failure>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            member: true,
            failure: None,
        }
    }

    fn fail(dilation: (u32, u32), kind: FailureKind) -> Self {
        Verdict {
            member: false,
            failure: Some(Failure { dilation, kind }),
        }
    }
}

/// Check that a projection sequence and its sigma image are all in A^1_1.
fn first_gap(seq: &[Domain1D]) -> Option<(usize, bool)> {
    for (idx, d) in seq.iter().enumerate() {
        if !in_class_a1(d, 1) {
            return Some((idx, false));
        }
    }
    for (idx, w) in seq.windows(2).enumerate() {
        if !in_class_a1(&w[0].union(&w[1]), 1) {
            return Some((idx, true));
        }
    }
    None
}

/// Base predicate for an offset at distance 1/2 along `axis`: manifold and
/// no single-cell gaps in the relevant projections.
fn base_check(dom: &Domain2D, axis: Axis) -> Option<FailureKind> {
    if let Some(vertex) = dom.non_manifold_vertex() {
        return Some(FailureKind::NonManifold { vertex });
    }
    let ((imin, jmin), _) = dom.bounding_box()?;
    match axis {
        Axis::X => first_gap(&h_projections(dom)).map(|(k, merged)| FailureKind::RowGap {
            row: jmin + k as i64,
            merged,
        }),
        Axis::Y => first_gap(&v_projections(dom)).map(|(k, merged)| FailureKind::ColumnGap {
            column: imin + k as i64,
            merged,
        }),
    }
}

/// Evaluation state for one domain: dilatations and verdicts per order.
struct Evaluation<'a> {
    dom: &'a Domain2D,
    route: Route,
    dilations: HashMap<(u32, u32), Domain2D>,
    memo: HashMap<(u32, u32), Verdict>,
}

impl<'a> Evaluation<'a> {
    fn new(dom: &'a Domain2D, route: Route) -> Self {
        Evaluation {
            dom,
            route,
            dilations: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn dilation(&mut self, a: u32, b: u32) -> &Domain2D {
        if !self.dilations.contains_key(&(a, b)) {
            let d = if a == 0 && b == 0 {
                self.dom.clone()
            } else if a > 0 {
                dilate_in_order(self.dilation(a - 1, b), &[Axis::X])
            } else {
                dilate_in_order(self.dilation(a, b - 1), &[Axis::Y])
            };
            self.dilations.insert((a, b), d);
        }
        &self.dilations[&(a, b)]
    }

    /// `Omega in A(k1-1, k2)` and its `(k1-1, k2)` dilatation admits a
    /// horizontal offset (or the vertical analogue).
    fn step(&mut self, k1: u32, k2: u32, axis: Axis) -> Result<Verdict> {
        let (a, b) = match axis {
            Axis::X => (k1 - 1, k2),
            Axis::Y => (k1, k2 - 1),
        };
        let inner = self.class(a, b)?;
        if !inner.member {
            return Ok(inner);
        }
        Ok(match base_check(self.dilation(a, b), axis) {
            Some(kind) => Verdict::fail((a, b), kind),
            None => Verdict::pass(),
        })
    }

    fn class(&mut self, k1: u32, k2: u32) -> Result<Verdict> {
        if let Some(v) = self.memo.get(&(k1, k2)) {
            return Ok(v.clone());
        }
        let verdict = match (k1, k2) {
            (0, 0) => match self.dom.non_manifold_vertex() {
                Some(vertex) => Verdict::fail((0, 0), FailureKind::NonManifold { vertex }),
                None => Verdict::pass(),
            },
            (_, 0) => self.step(k1, 0, Axis::X)?,
            (0, _) => self.step(0, k2, Axis::Y)?,
            _ => match self.route {
                Route::A => self.step(k1, k2, Axis::X)?,
                Route::B => self.step(k1, k2, Axis::Y)?,
                Route::Both => {
                    let a = self.step(k1, k2, Axis::X)?;
                    let b = self.step(k1, k2, Axis::Y)?;
                    if a.member != b.member {
                        return Err(Error::RouteDisagreement {
                            k1,
                            k2,
                            a: a.member,
                            b: b.member,
                        });
                    }
                    a
                }
            },
        };
        self.memo.insert((k1, k2), verdict.clone());
        Ok(verdict)
    }
}

/// Verdict cache shared across queries. Not synchronised; use one per thread.
#[derive(Debug, Default)]
pub struct Classifier {
    cache: HashMap<(Domain2D, u32, u32, Route), Verdict>,
}

impl Classifier {
    pub fn new() -> Self {
        Classifier::default()
    }

    pub fn classify(&mut self, dom: &Domain2D, k1: u32, k2: u32, route: Route) -> Result<Verdict> {
        check_dilation(k1)?;
        check_dilation(k2)?;
        let key = (dom.clone(), k1, k2, route);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let verdict = Evaluation::new(dom, route).class(k1, k2)?;
        self.cache.insert(key, verdict.clone());
        Ok(verdict)
    }

    pub fn in_class_a2(&mut self, dom: &Domain2D, k1: u32, k2: u32, route: Route) -> Result<bool> {
        Ok(self.classify(dom, k1, k2, route)?.member)
    }

    pub fn classify_tilde(&mut self, dom: &Domain2D, k1: u32, k2: u32) -> Result<Verdict> {
        self.classify_tilde_padded(dom, k1, k2, 0)
    }

    /// Like [`Classifier::classify_tilde`] with `extra` cells of padding on top
    /// of the default margin.
    pub fn classify_tilde_padded(&mut self, dom: &Domain2D, k1: u32, k2: u32, extra: u32) -> Result<Verdict> {
        check_dilation(k1)?;
        check_dilation(k2)?;
        if let Some(vertex) = dom.non_manifold_vertex() {
            return Ok(Verdict::fail((0, 0), FailureKind::NonManifold { vertex }));
        }
        let complement = tilde_complement(dom, i64::from(k1.max(k2) + 2 + extra));
        self.classify(&complement, k1, k2, Route::A)
    }

    pub fn in_class_a2_tilde(&mut self, dom: &Domain2D, k1: u32, k2: u32) -> Result<bool> {
        Ok(self.classify_tilde(dom, k1, k2)?.member)
    }
}

/// Closure of the enclosing rectangle minus the domain, with `margin` cells
/// of padding around the bounding box.
pub fn tilde_complement(dom: &Domain2D, margin: i64) -> Domain2D {
    let Some(((imin, jmin), (imax, jmax))) = dom.bounding_box() else {
        return Domain2D::empty();
    };
    let cells = (imin - margin..=imax + margin)
        .flat_map(|i| (jmin - margin..=jmax + margin).map(move |j| (i, j)))
        .filter(|c| !dom.contains(*c));
    Domain2D::new(dom.parity(), cells)
}

pub fn in_class_a2(dom: &Domain2D, k1: u32, k2: u32, route: Route) -> Result<bool> {
    Classifier::new().in_class_a2(dom, k1, k2, route)
}

pub fn in_class_a2_tilde(dom: &Domain2D, k1: u32, k2: u32) -> Result<bool> {
    Classifier::new().in_class_a2_tilde(dom, k1, k2)
}
