use thiserror::Error;

/// Largest dilatation order accepted by the lattice operations.
pub const MAX_DILATION: u32 = 64;

/// Supported degree range for the spline routines.
pub const MIN_DEGREE: u32 = 1;
pub const MAX_DEGREE: u32 = 6;

/// Default cap on the number of unknowns in the exact smoothness system.
pub const DEFAULT_MAX_UNKNOWNS: usize = 20_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dilatation order {0} exceeds the supported maximum of {MAX_DILATION}")]
    DilationTooLarge(u32),

    #[error("degree {0} outside the supported range {MIN_DEGREE}..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),

    #[error("grid window too small: {0}")]
    WindowTooSmall(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("line {axis}={coord} does not split the domain")]
    NoSplit { axis: Axis, coord: i64 },

    #[error("coordinate {0} lies outside the grid window")]
    OutsideWindow(String),

    #[error("cells {0} and {1} overlap")]
    OverlappingCells(usize, usize),

    #[error("degenerate interface between cells {0} and {1}")]
    DegenerateInterface(usize, usize),

    #[error("smoothness system has {unknowns} unknowns, limit is {limit}")]
    TooLarge { unknowns: usize, limit: usize },

    #[error("routes 3(a) and 3(b) disagree for class ({k1},{k2}): 3(a)={a}, 3(b)={b}")]
    RouteDisagreement { k1: u32, k2: u32, a: bool, b: bool },

    #[error("domain is not aligned with the coarser grid: {0}")]
    NotAligned(String),

    #[error("grids are not nested: {0}")]
    NotNested(String),

    #[error("invalid hierarchy: {0}")]
    InvalidHierarchy(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Coordinate axis of a grid line or projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::X => f.write_str("x"),
            Axis::Y => f.write_str("y"),
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            other => Err(format!("unknown axis '{other}', expected x or y")),
        }
    }
}

pub(crate) fn check_dilation(k: u32) -> Result<()> {
    if k > MAX_DILATION {
        Err(Error::DilationTooLarge(k))
    } else {
        Ok(())
    }
}

pub(crate) fn check_degree(d: u32) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&d) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(d))
    }
}
