use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::hull::{hull, monotone_chain, rank};
use super::point::{Halfspace, Point};
use super::GeometryError;
use crate::number::{factorial, int, Rational};

/// A full-dimensional convex polytope in ℚᵈ.
///
/// Stored as a closed hull. Vertices are reduced to extreme points and kept in
/// canonical order: counter-clockwise from the lexicographically smallest
/// vertex in the plane, lexicographic otherwise. Facets are primitive integer
/// normals with rational offsets, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Halfspace>,
}

impl Polytope {
    /// Convex hull of `points`.
    pub fn hull(dim: usize, points: &[Point]) -> Result<Self, GeometryError> {
        let mut h = hull(dim, points)?;
        h.facets.sort();
        Ok(Polytope {
            dim,
            vertices: h.vertices,
            facets: h.facets,
        })
    }

    /// Hull of integer points; panics on degenerate input. Meant for fixtures.
    pub fn from_int_vertices(dim: usize, coords: &[&[i64]]) -> Self {
        let pts: Vec<Point> = coords.iter().map(|c| Point::from_ints(c)).collect();
        Self::hull(dim, &pts).expect("full-dimensional fixture")
    }

    /// Axis-aligned box `[lo, hi]`; works in any dimension without a hull scan.
    pub fn axis_box(lo: &[Rational], hi: &[Rational]) -> Result<Self, GeometryError> {
        if lo.len() != hi.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        let dim = lo.len();
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        let rank = lo.iter().zip(hi).filter(|(a, b)| a < b).count();
        if rank < dim {
            return Err(GeometryError::DegenerateBody { dim, rank });
        }
        let mut vertices = Vec::with_capacity(1 << dim);
        for mask in 0u64..(1u64 << dim) {
            vertices.push(Point(
                (0..dim)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            hi[i].clone()
                        } else {
                            lo[i].clone()
                        }
                    })
                    .collect(),
            ));
        }
        let mut facets = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut n = vec![Rational::zero(); dim];
            n[i] = Rational::one();
            facets.push(Halfspace {
                normal: n.clone(),
                offset: hi[i].clone(),
            });
            n[i] = -Rational::one();
            facets.push(Halfspace {
                normal: n,
                offset: -lo[i].clone(),
            });
        }
        Ok(Self::from_parts(dim, vertices, facets))
    }

    /// The unit-volume cube `(-1/2, 1/2)^d`.
    pub fn centered_cube(dim: usize) -> Self {
        let half = crate::number::ratio(1, 2);
        Self::axis_box(&vec![-half.clone(); dim], &vec![half; dim]).expect("dim >= 1")
    }

    /// The cube `[0, 1]^d`.
    pub fn unit_cube(dim: usize) -> Self {
        Self::axis_box(&vec![Rational::zero(); dim], &vec![Rational::one(); dim]).expect("dim >= 1")
    }

    /// Simplex with the given `d + 1` vertices, any dimension.
    pub fn simplex(points: &[Point]) -> Result<Self, GeometryError> {
        let dim = points.first().ok_or(GeometryError::EmptyInput)?.dim();
        if points.len() != dim + 1 {
            return Err(GeometryError::DegenerateBody {
                dim,
                rank: points.len().saturating_sub(1),
            });
        }
        Self::hull(dim, points)
    }

    fn from_parts(dim: usize, mut vertices: Vec<Point>, mut facets: Vec<Halfspace>) -> Self {
        if dim == 2 {
            vertices.sort();
            vertices = monotone_chain(&vertices);
        } else {
            vertices.sort();
        }
        facets.sort();
        Polytope { dim, vertices, facets }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Vertices sorted lexicographically, for set comparisons.
    pub fn vertex_set(&self) -> Vec<Point> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn same_body(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.vertex_set() == other.vertex_set()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.facets.iter().all(|f| f.contains(p))
    }

    pub fn contains_interior(&self, p: &Point) -> bool {
        self.facets.iter().all(|f| f.slack(p).is_negative())
    }

    /// Mean of the vertices.
    pub fn vertex_centroid(&self) -> Point {
        let n = int(self.vertices.len() as i64);
        let mut sum = Point::origin(self.dim);
        for v in &self.vertices {
            sum = sum.add(v);
        }
        sum.scaled(&(Rational::one() / n))
    }

    /// Coordinate-wise bounds `(lo, hi)` of the vertices.
    pub fn bounding_box(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut lo = self.vertices[0].0.clone();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for i in 0..self.dim {
                if v.0[i] < lo[i] {
                    lo[i] = v.0[i].clone();
                }
                if v.0[i] > hi[i] {
                    hi[i] = v.0[i].clone();
                }
            }
        }
        (lo, hi)
    }

    /// Vertex index pairs spanning edges of the polytope.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.dim == 2 {
            let n = self.vertices.len();
            return (0..n).map(|i| (i, (i + 1) % n)).collect();
        }
        let incidence: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| {
                (0..self.facets.len())
                    .filter(|&f| self.facets[f].slack(v).is_zero())
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                let common: Vec<Vec<Rational>> = incidence[i]
                    .iter()
                    .filter(|f| incidence[j].contains(f))
                    .map(|&f| self.facets[f].normal.clone())
                    .collect();
                if common.len() + 1 >= self.dim && rank(&common) + 1 == self.dim {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Simplices (as vertex indices) of a fan triangulation from vertex 0.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        match self.dim {
            1 => vec![vec![0, 1]],
            2 => (1..self.vertices.len() - 1).map(|i| vec![0, i, i + 1]).collect(),
            _ => self.triangulate_cone(),
        }
    }

    fn triangulate_cone(&self) -> Vec<Vec<usize>> {
        let apex = &self.vertices[0];
        let mut simplices = Vec::new();
        for facet in &self.facets {
            if facet.slack(apex).is_zero() {
                continue;
            }
            let members: Vec<usize> = (0..self.vertices.len())
                .filter(|&i| facet.slack(&self.vertices[i]).is_zero())
                .collect();
            // Dropping a coordinate with nonzero normal entry is injective on the facet.
            let axis = facet.normal.iter().position(|c| !c.is_zero()).expect("nonzero normal");
            let projected: Vec<Point> = members.iter().map(|&i| self.vertices[i].project_out(axis)).collect();
            let lookup: HashMap<&Point, usize> = projected.iter().zip(&members).map(|(p, &i)| (p, i)).collect();
            let face = Polytope::hull(self.dim - 1, &projected)
                .expect("facet of a full-dimensional polytope is full-dimensional in its hyperplane");
            for simplex in face.triangulate() {
                let mut s: Vec<usize> = vec![0];
                s.extend(simplex.iter().map(|&k| lookup[&face.vertices[k]]));
                simplices.push(s);
            }
        }
        simplices
    }

    /// Exact volume via the fan triangulation; each simplex contributes |det| / d!.
    pub fn volume(&self) -> Rational {
        let total = self
            .triangulate()
            .iter()
            .fold(Rational::zero(), |acc, s| acc + self.simplex_det(s).abs());
        total / Rational::from_integer(factorial(self.dim))
    }

    /// Determinant of the edge vectors of a simplex given by vertex indices.
    pub(crate) fn simplex_det(&self, simplex: &[usize]) -> Rational {
        let base = &self.vertices[simplex[0]];
        let rows: Vec<Vec<Rational>> = simplex[1..].iter().map(|&i| self.vertices[i].sub(base).0).collect();
        determinant(rows)
    }

    pub fn translate(&self, t: &Point) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v.add(t)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Halfspace {
                normal: f.normal.clone(),
                offset: &f.offset + t.dot(&f.normal),
            })
            .collect();
        Self::from_parts(self.dim, vertices, facets)
    }

    /// Point reflection `v ↦ 2c − v`.
    pub fn reflect(&self, center: &Point) -> Polytope {
        let two_c = center.scaled(&int(2));
        let vertices = self.vertices.iter().map(|v| two_c.sub(v)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Halfspace {
                normal: f.normal.iter().map(|c| -c).collect(),
                offset: &f.offset - two_c.dot(&f.normal),
            })
            .collect();
        Self::from_parts(self.dim, vertices, facets)
    }

    /// Homothety `v ↦ c + ρ (v − c)` with `ρ > 0`.
    pub fn scale(&self, rho: &Rational, center: &Point) -> Result<Polytope, GeometryError> {
        if !rho.is_positive() {
            return Err(GeometryError::NonpositiveScale(rho.to_string()));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| center.add(&v.sub(center).scaled(rho)))
            .collect();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let nc = center.dot(&f.normal);
                Halfspace {
                    normal: f.normal.clone(),
                    offset: &nc + rho * (&f.offset - &nc),
                }
            })
            .collect();
        Ok(Self::from_parts(self.dim, vertices, facets))
    }

    /// Image under `x ↦ M x` for a nonsingular square matrix (rows of `M`).
    pub fn linear_image(&self, m: &[Vec<Rational>]) -> Result<Polytope, GeometryError> {
        let image: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| Point(m.iter().map(|row| v.dot(row)).collect()))
            .collect();
        Polytope::hull(self.dim, &image)
    }

    /// `P + Q`, the hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope, GeometryError> {
        self.check_dim(other)?;
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.add(b));
            }
        }
        Polytope::hull(self.dim, &sums)
    }

    /// The difference body `P − P`.
    pub fn difference_body(&self) -> Polytope {
        self.minkowski_sum(&self.reflect(&Point::origin(self.dim)))
            .expect("same dimension")
    }

    /// `P ∩ Q`; `None` when the intersection has empty interior.
    pub fn intersection(&self, other: &Polytope) -> Result<Option<Polytope>, GeometryError> {
        self.check_dim(other)?;
        if self.dim == 2 {
            let clipped = clip_polygon(&self.vertices, &other.facets);
            return Ok(hull_or_none(2, &clipped));
        }
        let mut current = self.clone();
        for facet in &other.facets {
            match current.clip(facet) {
                Some(p) => current = p,
                None => return Ok(None),
            }
        }
        Ok(Some(current))
    }

    /// `P ∩ {x : n·x <= b}`.
    fn clip(&self, h: &Halfspace) -> Option<Polytope> {
        let slack: Vec<Rational> = self.vertices.iter().map(|v| h.slack(v)).collect();
        if slack.iter().all(|s| !s.is_positive()) {
            return Some(self.clone());
        }
        let mut points: Vec<Point> = self
            .vertices
            .iter()
            .zip(&slack)
            .filter(|(_, s)| !s.is_positive())
            .map(|(v, _)| v.clone())
            .collect();
        for (i, j) in self.edges() {
            let (si, sj) = (&slack[i], &slack[j]);
            if (si.is_negative() && sj.is_positive()) || (si.is_positive() && sj.is_negative()) {
                let t = si / (si - sj);
                let vi = &self.vertices[i];
                points.push(vi.add(&self.vertices[j].sub(vi).scaled(&t)));
            }
        }
        hull_or_none(self.dim, &points)
    }

    fn check_dim(&self, other: &Polytope) -> Result<(), GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

fn hull_or_none(dim: usize, points: &[Point]) -> Option<Polytope> {
    if points.len() <= dim {
        return None;
    }
    Polytope::hull(dim, points).ok()
}

/// Sutherland–Hodgman clipping of a convex polygon by halfspaces, in exact arithmetic.
/// The output may contain repeated or collinear points.
pub(crate) fn clip_polygon(polygon: &[Point], halfspaces: &[Halfspace]) -> Vec<Point> {
    let mut current = polygon.to_vec();
    for h in halfspaces {
        if current.is_empty() {
            break;
        }
        let slack: Vec<Rational> = current.iter().map(|p| h.slack(p)).collect();
        if slack.iter().all(|s| !s.is_positive()) {
            continue;
        }
        let n = current.len();
        let mut next = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (si, sj) = (&slack[i], &slack[j]);
            if !si.is_positive() {
                next.push(current[i].clone());
            }
            if (si.is_negative() && sj.is_positive()) || (si.is_positive() && sj.is_negative()) {
                let t = si / (si - sj);
                next.push(current[i].add(&current[j].sub(&current[i]).scaled(&t)));
            }
        }
        current = next;
    }
    current
}

/// Shoelace area of a polygon given in counter-clockwise order.
pub(crate) fn shoelace(polygon: &[Point]) -> Rational {
    let n = polygon.len();
    if n < 3 {
        return Rational::zero();
    }
    let mut twice = Rational::zero();
    for i in 0..n {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % n];
        twice += &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0];
    }
    twice / int(2)
}

/// Exact determinant by Gaussian elimination over ℚ.
pub fn determinant(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &p;
            for c in col..n {
                let delta = &factor * &rows[col][c];
                rows[r][c] -= delta;
            }
        }
    }
    det
}
