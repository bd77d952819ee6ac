//! Exact convex hulls.
//!
//! Hulls are computed in exact arithmetic and return both representations:
//! the extreme points and the facet halfspaces. In the plane this is Andrew's
//! monotone chain; in three and more dimensions facets are found by scanning
//! affinely independent d-subsets for supporting hyperplanes, which is cubic
//! in the point count for d = 3 and is only meant for the small bodies this
//! crate works with.

use std::collections::HashSet;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::point::{Halfspace, Point};
use super::GeometryError;
use crate::number::{common_denominator, Rational};

pub(crate) struct Hull {
    pub vertices: Vec<Point>,
    pub facets: Vec<Halfspace>,
}

/// Rank of a set of vectors over ℚ.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    row_reduce(vectors.to_vec()).len()
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => {
            let diffs: Vec<Vec<Rational>> = rest.iter().map(|p| p.sub(first).0).collect();
            rank(&diffs)
        }
    }
}

/// Gaussian elimination; returns the nonzero rows of an echelon form.
fn row_reduce(mut rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let pivot = rows[pivot_row][col].clone();
        for value in rows[pivot_row].iter_mut() {
            *value /= &pivot;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let delta = &factor * &rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// A nonzero vector orthogonal to all `rows`, if their rank is exactly `cols - 1`.
fn normal_vector(rows: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
    let reduced = row_reduce(rows);
    if reduced.len() + 1 != cols {
        return None;
    }
    // Reduced rows are in RREF; find the free column.
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|row| row.iter().position(|v| !v.is_zero()).expect("nonzero row"))
        .collect();
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut normal = vec![Rational::zero(); cols];
    normal[free] = Rational::one();
    for (row, &p) in reduced.iter().zip(&pivots) {
        normal[p] = -row[free].clone();
    }
    Some(normal)
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub(crate) fn primitive(v: &[Rational]) -> Vec<Rational> {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

pub(crate) fn hull(dim: usize, points: &[Point]) -> Result<Hull, GeometryError> {
    if dim == 0 {
        return Err(GeometryError::ZeroDimension);
    }
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(GeometryError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let rank = affine_rank(&pts);
    if rank < dim {
        return Err(GeometryError::DegenerateBody { dim, rank });
    }
    Ok(match dim {
        1 => hull_1d(pts),
        2 => hull_2d(pts),
        _ if pts.len() == dim + 1 => hull_simplex(dim, pts),
        3 => hull_3d(pts),
        _ => hull_general(dim, pts),
    })
}

fn hull_1d(pts: Vec<Point>) -> Hull {
    let lo = pts.first().expect("nonempty").clone();
    let hi = pts.last().expect("nonempty").clone();
    let facets = vec![
        Halfspace {
            normal: vec![-Rational::one()],
            offset: -lo.0[0].clone(),
        },
        Halfspace {
            normal: vec![Rational::one()],
            offset: hi.0[0].clone(),
        },
    ];
    Hull {
        vertices: vec![lo, hi],
        facets,
    }
}

fn cross2(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.0[0] - &o.0[0]) * (&b.0[1] - &o.0[1]) - (&a.0[1] - &o.0[1]) * (&b.0[0] - &o.0[0])
}

/// Counter-clockwise hull starting at the lexicographically smallest point;
/// collinear boundary points are dropped. Input must be sorted and deduplicated.
pub(crate) fn monotone_chain(pts: &[Point]) -> Vec<Point> {
    let mut chain: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for p in pts {
        while chain.len() >= 2 && cross2(&chain[chain.len() - 2], &chain[chain.len() - 1], p) <= Rational::zero() {
            chain.pop();
        }
        chain.push(p.clone());
    }
    let lower_len = chain.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while chain.len() >= lower_len
            && cross2(&chain[chain.len() - 2], &chain[chain.len() - 1], p) <= Rational::zero()
        {
            chain.pop();
        }
        chain.push(p.clone());
    }
    chain.pop();
    chain
}

/// Outward facets of a counter-clockwise polygon.
pub(crate) fn polygon_facets(ccw: &[Point]) -> Vec<Halfspace> {
    let n = ccw.len();
    (0..n)
        .map(|i| {
            let a = &ccw[i];
            let b = &ccw[(i + 1) % n];
            let normal = primitive(&[&b.0[1] - &a.0[1], &a.0[0] - &b.0[0]]);
            let offset = a.dot(&normal);
            Halfspace { normal, offset }
        })
        .collect()
}

fn hull_2d(pts: Vec<Point>) -> Hull {
    let vertices = monotone_chain(&pts);
    let facets = polygon_facets(&vertices);
    Hull { vertices, facets }
}

fn hull_simplex(dim: usize, mut pts: Vec<Point>) -> Hull {
    pts.sort();
    let mut facets = Vec::with_capacity(dim + 1);
    for omit in 0..=dim {
        let others: Vec<&Point> = (0..=dim).filter(|&i| i != omit).map(|i| &pts[i]).collect();
        let rows: Vec<Vec<Rational>> = others[1..].iter().map(|p| p.sub(others[0]).0).collect();
        let mut normal = primitive(&normal_vector(rows, dim).expect("simplex facet is a hyperplane"));
        let mut offset = others[0].dot(&normal);
        if pts[omit].dot(&normal) > offset {
            normal.iter_mut().for_each(|c| *c = -c.clone());
            offset = -offset;
        }
        facets.push(Halfspace { normal, offset });
    }
    facets.sort();
    Hull { vertices: pts, facets }
}

/// Minimal integer-like scalar needed by the facet scan.
trait Exact: Clone + Eq + Hash + Ord + Signed + Integer {}
impl<T: Clone + Eq + Hash + Ord + Signed + Integer> Exact for T {}

fn dot3<T: Exact>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn facet_scan_3d<T: Exact>(pts: &[[T; 3]]) -> Vec<([T; 3], T)> {
    let n = pts.len();
    let mut seen: HashSet<[T; 3]> = HashSet::new();
    let mut out = Vec::new();
    let sub = |a: &[T; 3], b: &[T; 3]| -> [T; 3] {
        [
            a[0].clone() - b[0].clone(),
            a[1].clone() - b[1].clone(),
            a[2].clone() - b[2].clone(),
        ]
    };
    for i in 0..n {
        for j in i + 1..n {
            let u = sub(&pts[j], &pts[i]);
            for k in j + 1..n {
                let v = sub(&pts[k], &pts[i]);
                let mut normal = [
                    u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
                    u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
                    u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
                ];
                if normal.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut offset = dot3(&normal, &pts[i]);
                let (mut above, mut below) = (false, false);
                for p in pts {
                    let s = dot3(&normal, p) - offset.clone();
                    if s.is_positive() {
                        above = true;
                    } else if s.is_negative() {
                        below = true;
                    }
                    if above && below {
                        break;
                    }
                }
                if above && below {
                    continue;
                }
                if above {
                    normal = [-normal[0].clone(), -normal[1].clone(), -normal[2].clone()];
                    offset = -offset;
                }
                let g = normal[0].gcd(&normal[1]).gcd(&normal[2]);
                let normal = [
                    normal[0].clone() / g.clone(),
                    normal[1].clone() / g.clone(),
                    normal[2].clone() / g.clone(),
                ];
                let offset = offset / g;
                if seen.insert(normal.clone()) {
                    out.push((normal, offset));
                }
            }
        }
    }
    out
}

/// Points scaled by the common denominator, as integers.
fn integer_coords(pts: &[Point]) -> (BigInt, Vec<Vec<BigInt>>) {
    let den = common_denominator(pts.iter().flat_map(|p| p.0.iter()));
    let ints = pts
        .iter()
        .map(|p| p.0.iter().map(|c| (c * &den).to_integer()).collect())
        .collect();
    (den, ints)
}

fn hull_3d(pts: Vec<Point>) -> Hull {
    let (den, ints) = integer_coords(&pts);
    let small = ints.iter().flatten().all(|c| c.abs() < BigInt::from(1u64 << 40));
    let raw: Vec<(Vec<BigInt>, BigInt)> = if small {
        let pts128: Vec<[i128; 3]> = ints
            .iter()
            .map(|p| [0, 1, 2].map(|i| p[i].to_i128().expect("bounded")))
            .collect();
        facet_scan_3d(&pts128)
            .into_iter()
            .map(|(n, c)| (n.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(c)))
            .collect()
    } else {
        let ptsbig: Vec<[BigInt; 3]> = ints
            .iter()
            .map(|p| [p[0].clone(), p[1].clone(), p[2].clone()])
            .collect();
        facet_scan_3d(&ptsbig)
            .into_iter()
            .map(|(n, c)| (n.to_vec(), c))
            .collect()
    };
    let facets = raw
        .into_iter()
        .map(|(n, c)| Halfspace {
            normal: n.into_iter().map(Rational::from_integer).collect(),
            offset: Rational::new(c, den.clone()),
        })
        .collect();
    finish(3, pts, facets)
}

fn hull_general(dim: usize, pts: Vec<Point>) -> Hull {
    let n = pts.len();
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    let mut facets = Vec::new();
    let mut combo: Vec<usize> = (0..dim).collect();
    loop {
        let base = &pts[combo[0]];
        let rows: Vec<Vec<Rational>> = combo[1..].iter().map(|&i| pts[i].sub(base).0).collect();
        if let Some(normal) = normal_vector(rows, dim) {
            let mut normal = primitive(&normal);
            let mut offset = base.dot(&normal);
            let (mut above, mut below) = (false, false);
            for p in &pts {
                let s = p.dot(&normal) - &offset;
                if s.is_positive() {
                    above = true;
                } else if s.is_negative() {
                    below = true;
                }
                if above && below {
                    break;
                }
            }
            if !(above && below) {
                if above {
                    normal.iter_mut().for_each(|c| *c = -c.clone());
                    offset = -offset;
                }
                if seen.insert(normal.clone()) {
                    facets.push(Halfspace { normal, offset });
                }
            }
        }
        // next combination in lexicographic order
        let mut i = dim;
        loop {
            if i == 0 {
                return finish(dim, pts, facets);
            }
            i -= 1;
            if combo[i] < n - dim + i {
                combo[i] += 1;
                for j in i + 1..dim {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Keeps the points that are vertices: those lying on facets whose normals span ℝᵈ.
fn finish(dim: usize, pts: Vec<Point>, mut facets: Vec<Halfspace>) -> Hull {
    facets.sort();
    let vertices = pts
        .into_iter()
        .filter(|p| {
            let active: Vec<Vec<Rational>> = facets
                .iter()
                .filter(|f| f.slack(p).is_zero())
                .map(|f| f.normal.clone())
                .collect();
            active.len() >= dim && rank(&active) == dim
        })
        .collect();
    Hull { vertices, facets }
}
