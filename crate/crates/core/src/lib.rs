//! Volume of the convex hull of a regular simplex and its mirror image in a
//! supporting hyperplane.

pub mod cases;
pub mod error;
pub mod hull;
pub mod hyperplane;
pub mod linalg;
pub mod nelder_mead;
pub mod optimizer;
pub mod prism;
pub mod remark;
pub mod report;
pub mod search1d;
pub mod simplex;
pub mod tol;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use hyperplane::{project, reflect, support_from_direction, upper_facets, SupportHyperplane, UpperFacetSet};
pub use optimizer::{optimize, optimize_with, phi_family_ratio, sweep_r_family, Objective, OptResult, OptimizeConfig};
pub use prism::{f_value, ratio_formula, RatioReport};
pub use simplex::{build_simplex, RegularSimplex, SimplexConstants};
pub use vector::Vector;
