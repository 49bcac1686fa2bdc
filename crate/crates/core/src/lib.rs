//! Exact verification kernel for spline spaces of maximal smoothness over
//! T-meshes and hierarchical B-spline meshes.

pub mod admissible;
pub mod dilation2d;
pub mod domain2d;
pub mod error;
pub mod lattice1d;
pub mod linalg;
pub mod splinebasis;
pub mod splinespace;

pub use admissible::{in_class_a2, in_class_a2_tilde, Classifier, Route, Verdict};
pub use dilation2d::{dilate_2d, dilated_face_counts};
pub use domain2d::{face_counts, validate_manifold, Cell, Domain2D, FaceCounts};
pub use error::{Axis, Error, Result};
pub use lattice1d::{dilate_1d, dim_spline_1d, effective_bsplines_1d, in_class_a1, Domain1D};
pub use linalg::{ExactMatrix, Rational, Solution};
pub use splinebasis::{
    cell_polynomial, effective_bsplines_2d, evaluate, BSplineKey, CellPoly, Grid2, GridAxis, Rect,
};
pub use splinespace::{assemble_smoothness_system, dim_formula, dim_oracle, TMeshComplex};
pub mod fixtures;
pub mod generate;
pub mod hierarchy;

pub use hierarchy::{
    check_basis_conditions, check_pou_conditions, check_support_nesting, kraft_select, pou_weights,
    refine, ring_domains, validate_hierarchy, verify_basis, HBasisSelection, HierarchicalMesh, Level,
};
