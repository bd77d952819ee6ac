//! Full-rank lattices `Λ = Aℤᵈ` with rational bases, and finite windows into them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::{determinant, Point};
use crate::number::{common_denominator, to_f64, Rational};

/// Default cap on the number of points a window enumeration may return.
pub const DEFAULT_POINT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("basis must be a non-empty square matrix")]
    NotSquare,
    #[error("basis is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty box: lower corner exceeds upper corner on axis {axis}")]
    EmptyBox { axis: usize },
    #[error("window holds about {estimate} points, over the cap of {cap}")]
    WindowTooLarge { estimate: u128, cap: usize },
}

/// Closed axis-aligned box `[lo, hi]` with exact corners.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisBox {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl AxisBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self, LatticeError> {
        if lo.len() != hi.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if lo.is_empty() {
            return Err(LatticeError::NotSquare);
        }
        if let Some(axis) = lo.iter().zip(&hi).position(|(a, b)| a > b) {
            return Err(LatticeError::EmptyBox { axis });
        }
        Ok(AxisBox { lo, hi })
    }

    /// `[−r, r]ᵈ`.
    pub fn cube(dim: usize, r: &Rational) -> Result<Self, LatticeError> {
        AxisBox::new(vec![-r.clone(); dim], vec![r.clone(); dim])
    }

    /// `[lo, hi]ᵈ`.
    pub fn uniform(dim: usize, lo: &Rational, hi: &Rational) -> Result<Self, LatticeError> {
        AxisBox::new(vec![lo.clone(); dim], vec![hi.clone(); dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && p.0
                .iter()
                .zip(&self.lo)
                .zip(&self.hi)
                .all(|((x, a), b)| a <= x && x <= b)
    }

    pub fn translate(&self, t: &Point) -> AxisBox {
        AxisBox {
            lo: self.lo.iter().zip(&t.0).map(|(a, s)| a + s).collect(),
            hi: self.hi.iter().zip(&t.0).map(|(a, s)| a + s).collect(),
        }
    }

    /// Grows every side by `m` (shrinks for negative `m`; may become empty).
    pub fn expand(&self, m: &Rational) -> Result<AxisBox, LatticeError> {
        AxisBox::new(
            self.lo.iter().map(|a| a - m).collect(),
            self.hi.iter().map(|b| b + m).collect(),
        )
    }

    /// Box hull of `{x − y : x ∈ self, y ∈ other}`.
    pub fn minus(&self, other: &AxisBox) -> AxisBox {
        AxisBox {
            lo: self.lo.iter().zip(&other.hi).map(|(a, b)| a - b).collect(),
            hi: self.hi.iter().zip(&other.lo).map(|(a, b)| a - b).collect(),
        }
    }

    /// True iff `other ⊆ self`.
    pub fn covers(&self, other: &AxisBox) -> bool {
        self.dim() == other.dim()
            && self.lo.iter().zip(&other.lo).all(|(a, b)| a <= b)
            && self.hi.iter().zip(&other.hi).all(|(a, b)| a >= b)
    }

    pub fn volume(&self) -> Rational {
        self.lo
            .iter()
            .zip(&self.hi)
            .fold(Rational::one(), |acc, (a, b)| acc * (b - a))
    }

    pub fn lo_f64(&self) -> Vec<f64> {
        self.lo.iter().map(to_f64).collect()
    }

    pub fn hi_f64(&self) -> Vec<f64> {
        self.hi.iter().map(to_f64).collect()
    }
}

/// A finite point set together with the box it was drawn from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<Point>,
    pub window: AxisBox,
}

impl PointSet {
    /// Wraps `points`; the window is their bounding box (or `window`, which
    /// must contain them all).
    pub fn new(dim: usize, points: Vec<Point>, window: Option<AxisBox>) -> Result<Self, LatticeError> {
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(LatticeError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        let window = match window {
            Some(w) => {
                if w.dim() != dim {
                    return Err(LatticeError::DimensionMismatch {
                        expected: dim,
                        found: w.dim(),
                    });
                }
                if let Some(axis) = points
                    .iter()
                    .find_map(|p| (0..dim).find(|&a| p.0[a] < w.lo[a] || p.0[a] > w.hi[a]))
                {
                    return Err(LatticeError::EmptyBox { axis });
                }
                w
            }
            None => bounding_box(dim, &points),
        };
        Ok(PointSet { dim, points, window })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(Point::to_f64).collect()
    }

    pub fn translate(&self, t: &Point) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.add(t)).collect(),
            window: self.window.translate(t),
        }
    }
}

fn bounding_box(dim: usize, points: &[Point]) -> AxisBox {
    if points.is_empty() {
        return AxisBox {
            lo: vec![Rational::zero(); dim],
            hi: vec![Rational::zero(); dim],
        };
    }
    let mut lo = points[0].0.clone();
    let mut hi = points[0].0.clone();
    for p in &points[1..] {
        for a in 0..dim {
            if p.0[a] < lo[a] {
                lo[a] = p.0[a].clone();
            }
            if p.0[a] > hi[a] {
                hi[a] = p.0[a].clone();
            }
        }
    }
    AxisBox { lo, hi }
}

/// `Λ = Aℤᵈ`; the columns of `A` generate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    /// Row-major `A`.
    basis: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
    det: Rational,
}

impl Lattice {
    /// From the matrix `A` given row by row.
    pub fn from_matrix(rows: Vec<Vec<Rational>>) -> Result<Self, LatticeError> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(LatticeError::NotSquare);
        }
        let det = determinant(rows.clone());
        if det.is_zero() {
            return Err(LatticeError::Singular);
        }
        let inverse = invert(&rows).ok_or(LatticeError::Singular)?;
        Ok(Lattice {
            basis: rows,
            inverse,
            det,
        })
    }

    /// From a list of generators (the columns of `A`).
    pub fn from_generators(vectors: &[Point]) -> Result<Self, LatticeError> {
        let d = vectors.len();
        if d == 0 || vectors.iter().any(|v| v.dim() != d) {
            return Err(LatticeError::NotSquare);
        }
        Lattice::from_matrix(transpose(&vectors.iter().map(|v| v.0.clone()).collect::<Vec<_>>()))
    }

    /// `ℤᵈ`.
    pub fn integer(dim: usize) -> Self {
        Lattice::diagonal(&vec![Rational::one(); dim]).expect("identity is nonsingular")
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self, LatticeError> {
        let d = entries.len();
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { entries[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Lattice::from_matrix(rows)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Row-major `A`.
    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Columns of `A`.
    pub fn generators(&self) -> Vec<Point> {
        transpose(&self.basis).into_iter().map(Point).collect()
    }

    pub fn determinant(&self) -> &Rational {
        &self.det
    }

    /// `1/|det A|`.
    pub fn density(&self) -> Rational {
        self.det.abs().recip()
    }

    /// `Λ* = A^{−⊤}ℤᵈ`.
    pub fn dual(&self) -> Lattice {
        let basis = transpose(&self.inverse);
        Lattice {
            inverse: transpose(&self.basis),
            det: self.det.recip(),
            basis,
        }
    }

    /// `A n`.
    pub fn point(&self, n: &[BigInt]) -> Point {
        Point(
            self.basis
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(n)
                        .map(|(a, k)| a * Rational::from_integer(k.clone()))
                        .sum()
                })
                .collect(),
        )
    }

    /// `A⁻¹ p`.
    pub fn coordinates(&self, p: &Point) -> Vec<Rational> {
        self.inverse.iter().map(|row| p.dot(row)).collect()
    }

    /// Exact membership: `A⁻¹ p ∈ ℤᵈ`.
    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim() && self.coordinates(p).iter().all(|c| c.is_integer())
    }

    /// `sΛ`.
    pub fn scaled(&self, s: &Rational) -> Result<Lattice, LatticeError> {
        Lattice::from_matrix(self.basis.iter().map(|r| r.iter().map(|a| a * s).collect()).collect())
    }

    /// `MΛ` for a nonsingular `M`.
    pub fn transformed(&self, m: &[Vec<Rational>]) -> Result<Lattice, LatticeError> {
        Lattice::from_matrix(mat_mul(m, &self.basis))
    }

    /// Euclidean length of the longest generator.
    pub fn longest_generator(&self) -> f64 {
        self.generators()
            .iter()
            .map(|g| to_f64(&g.norm_squared()).sqrt())
            .fold(0.0, f64::max)
    }

    /// Lattice points in `window`, lexicographically sorted.
    pub fn enumerate_window(&self, window: &AxisBox) -> Result<PointSet, LatticeError> {
        self.enumerate_window_capped(window, DEFAULT_POINT_CAP)
    }

    pub fn enumerate_window_capped(&self, window: &AxisBox, cap: usize) -> Result<PointSet, LatticeError> {
        let d = self.dim();
        if window.dim() != d {
            return Err(LatticeError::DimensionMismatch {
                expected: d,
                found: window.dim(),
            });
        }
        // Cheap upfront estimate: volume times density, plus slack for the boundary.
        let estimate = to_f64(&(window.volume() * self.density()));
        if estimate > 2.0 * cap as f64 {
            return Err(LatticeError::WindowTooLarge {
                estimate: estimate.min(u128::MAX as f64) as u128,
                cap,
            });
        }
        let (scale, lower) = self.triangular();
        let lo: Vec<Rational> = window.lo.iter().map(|x| x * &scale).collect();
        let hi: Vec<Rational> = window.hi.iter().map(|x| x * &scale).collect();
        let mut out = Vec::new();
        let mut partial = vec![BigInt::zero(); d];
        let mut over = false;
        walk(&lower, &lo, &hi, 0, &mut partial, &mut out, cap, &mut over);
        if over {
            return Err(LatticeError::WindowTooLarge {
                estimate: out.len() as u128,
                cap,
            });
        }
        let scale_inv = scale.recip();
        let mut points: Vec<Point> = out
            .into_iter()
            .map(|v| Point(v.into_iter().map(|x| Rational::from_integer(x) * &scale_inv).collect()))
            .collect();
        points.sort();
        Ok(PointSet {
            dim: d,
            points,
            window: window.clone(),
        })
    }

    /// A lower-triangular integer basis `L` (columns) with `D·Λ = Lℤᵈ`,
    /// where `D` is the common denominator of `A`. Diagonal entries positive.
    fn triangular(&self) -> (Rational, Vec<Vec<BigInt>>) {
        let denom = common_denominator(self.basis.iter().flatten());
        let scale = Rational::from_integer(denom.clone());
        let mut m: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|a| (a * &scale).to_integer()).collect())
            .collect();
        let d = m.len();
        for i in 0..d {
            for j in i + 1..d {
                if m[i][j].is_zero() {
                    continue;
                }
                // Unimodular column operation sending (m[i][i], m[i][j]) to (g, 0).
                let (a, b) = (m[i][i].clone(), m[i][j].clone());
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let (p, q) = (&a / &g, &b / &g);
                for row in m.iter_mut() {
                    let (ci, cj) = (row[i].clone(), row[j].clone());
                    row[i] = &x * &ci + &y * &cj;
                    row[j] = &p * &cj - &q * &ci;
                }
            }
            if m[i][i].is_negative() {
                for row in m.iter_mut() {
                    row[i] = -row[i].clone();
                }
            }
        }
        (scale, m)
    }
}

/// Depth-first walk over the triangular basis: coordinate `i` of `L n` only
/// depends on `n_0..n_i`, so each level is a single interval.
#[allow(clippy::too_many_arguments)]
fn walk(
    lower: &[Vec<BigInt>],
    lo: &[Rational],
    hi: &[Rational],
    i: usize,
    partial: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    cap: usize,
    over: &mut bool,
) {
    if *over {
        return;
    }
    let d = lower.len();
    if i == d {
        if out.len() >= cap {
            *over = true;
            return;
        }
        out.push(partial.clone());
        return;
    }
    // Coordinate i: partial[i] + L[i][i]·n_i must land in [lo_i, hi_i].
    let diag = Rational::from_integer(lower[i][i].clone());
    let base = Rational::from_integer(partial[i].clone());
    let first = ((&lo[i] - &base) / &diag).ceil().to_integer();
    let last = ((&hi[i] - &base) / &diag).floor().to_integer();
    let mut n = first;
    while n <= last {
        let saved: Vec<BigInt> = partial[i..].to_vec();
        for (r, p) in partial.iter_mut().enumerate().skip(i) {
            *p += &lower[r][i] * &n;
        }
        walk(lower, lo, hi, i + 1, partial, out, cap, over);
        partial[i..].clone_from_slice(&saved);
        if *over {
            return;
        }
        n += 1;
    }
}

/// All differences `λ − μ` with `λ ≠ μ`, deduplicated and sorted.
pub fn difference_set(s: &PointSet) -> PointSet {
    let mut seen = BTreeSet::new();
    for (i, a) in s.points.iter().enumerate() {
        for (j, b) in s.points.iter().enumerate() {
            if i != j {
                let diff = a.sub(b);
                if !diff.is_zero() {
                    seen.insert(diff);
                }
            }
        }
    }
    PointSet {
        dim: s.dim,
        points: seen.into_iter().collect(),
        window: s.window.minus(&s.window),
    }
}

pub fn dual(l: &Lattice) -> Lattice {
    l.dual()
}

pub fn density(l: &Lattice) -> Rational {
    l.density()
}

pub fn enumerate_window(l: &Lattice, window: &AxisBox) -> Result<PointSet, LatticeError> {
    l.enumerate_window(window)
}

pub(crate) fn transpose(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub(crate) fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Gauss–Jordan inverse; `None` if singular.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let d = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, p) in aug[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[d..].to_vec()).collect())
}
