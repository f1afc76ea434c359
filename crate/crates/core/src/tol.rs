//! Numerical tolerances shared across the crate.

/// Predicate tolerance: vertex-on-hyperplane tests, upper-facet
/// classification, half-space membership and coplanar facet merging.
pub const GEOM: f64 = 1e-9;

/// Tolerance for closed-form identities evaluated in `f64`.
pub const IDENTITY: f64 = 1e-12;

/// Largest simplex dimension supported.
pub const MAX_DIM: usize = 8;

/// Largest point set accepted by the exhaustive hull enumeration.
pub const MAX_HULL_POINTS: usize = 24;

pub(crate) fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
