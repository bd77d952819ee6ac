//! Exact convex polytopes over ℚ.
//!
//! Bodies are closed hulls of finitely many rational points. Open versus
//! closed makes no difference to any volume or transform computed here, so
//! "open convex set" is only a naming convention at this level.

mod hull;
mod point;
mod polytope;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hull::{affine_rank, rank};
pub use point::{Halfspace, Point};
pub(crate) use polytope::{clip_polygon, shoelace};
pub use polytope::{determinant, Polytope};

use crate::number::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate body: affine hull has dimension {rank} < {dim}")]
    DegenerateBody { dim: usize, rank: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no points given")]
    EmptyInput,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("scale factor must be positive, got {0}")]
    NonpositiveScale(String),
}

/// Outcome of the central-symmetry test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub is_symmetric: bool,
    /// Center of symmetry, present iff `is_symmetric`.
    pub center: Option<Point>,
}

pub fn convex_hull(dim: usize, points: &[Point]) -> Result<Polytope, GeometryError> {
    Polytope::hull(dim, points)
}

pub fn volume(p: &Polytope) -> Rational {
    p.volume()
}

pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope, GeometryError> {
    p.minkowski_sum(q)
}

pub fn reflect(p: &Polytope, center: &Point) -> Polytope {
    p.reflect(center)
}

pub fn scale(p: &Polytope, rho: &Rational, center: &Point) -> Result<Polytope, GeometryError> {
    p.scale(rho, center)
}

pub fn intersection(p: &Polytope, q: &Polytope) -> Result<Option<Polytope>, GeometryError> {
    p.intersection(q)
}

/// Central symmetry test.
///
/// A centrally symmetric body is symmetric about exactly one point, and that
/// point is also the mean of its vertex set, so the vertex centroid is the only
/// candidate worth checking. Comparison is exact.
pub fn symmetry_report(p: &Polytope) -> SymmetryReport {
    let center = p.vertex_centroid();
    let is_symmetric = p.reflect(&center).vertex_set() == p.vertex_set();
    SymmetryReport {
        is_symmetric,
        center: is_symmetric.then_some(center),
    }
}
