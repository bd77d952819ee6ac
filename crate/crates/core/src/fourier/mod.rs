//! Fourier transforms of polytope indicators and of their autocorrelations.
//!
//! Convention: `f̂(ξ) = ∫ f(x) e^{−2πi⟨ξ,x⟩} dx`, frequencies in cycles per
//! unit length, no normalising constants. With this choice
//! `⟨e_λ, e_μ⟩_Ω = 1̂_Ω(μ − λ)`.

mod divided;
mod grid;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

pub use divided::{exp_divided_difference, SERIES_RADIUS};
pub use grid::{GridDomain, GridError, GridFunction, GridValue, MAX_SAMPLES};

use crate::geometry::{clip_polygon, shoelace, Halfspace, Point, Polytope};
use crate::number::{to_f64, Rational};

/// Default relative tolerance of [`zero_test`] for closed-form values.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum FourierError {
    #[error("grid spacing {h} leaves fewer than 2 samples across axis {axis}")]
    GridTooCoarse { h: f64, axis: usize },
    #[error("dimension mismatch: body has {body}, argument has {arg}")]
    DimensionMismatch { body: usize, arg: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A frequency `ξ ∈ ℝᵈ` for the kernel `e^{2πi⟨ξ,x⟩}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPoint(pub Vec<f64>);

impl FrequencyPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        FrequencyPoint(coords)
    }

    pub fn zero(dim: usize) -> Self {
        FrequencyPoint(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl From<&Point> for FrequencyPoint {
    fn from(p: &Point) -> Self {
        FrequencyPoint(p.to_f64())
    }
}

/// Closed-form transform of a polytope indicator, with the triangulation
/// done once so the transform can be evaluated cheaply many times.
#[derive(Debug, Clone)]
pub struct IndicatorTransform {
    dim: usize,
    volume: f64,
    /// (vertices, |det|) per simplex; `d! · vol(S) = |det|`.
    simplices: Vec<(Vec<Vec<f64>>, f64)>,
}

impl IndicatorTransform {
    pub fn new(p: &Polytope) -> Self {
        let simplices: Vec<(Vec<Vec<f64>>, f64)> = p
            .triangulate()
            .into_iter()
            .map(|s| {
                let det = to_f64(&p.simplex_det(&s)).abs();
                let verts = s.iter().map(|&i| p.vertices()[i].to_f64()).collect();
                (verts, det)
            })
            .collect();
        IndicatorTransform {
            dim: p.dim(),
            volume: to_f64(&p.volume()),
            simplices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// `1̂_P(ξ)`. Each simplex contributes `d!·vol(S)·exp[z_0,…,z_d]` with
    /// `z_j = −2πi⟨ξ, v_j⟩`.
    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        assert_eq!(xi.len(), self.dim, "frequency dimension");
        let mut phases = Vec::with_capacity(self.dim + 1);
        self.simplices
            .iter()
            .map(|(verts, det)| {
                phases.clear();
                phases.extend(
                    verts
                        .iter()
                        .map(|v| -std::f64::consts::TAU * v.iter().zip(xi).map(|(a, b)| a * b).sum::<f64>()),
                );
                exp_divided_difference(&phases) * *det
            })
            .sum()
    }

    /// `|1̂_P(ξ)|²`, the transform of the autocorrelation of `1_P`.
    pub fn eval_power(&self, xi: &[f64]) -> f64 {
        self.eval(xi).norm_sqr()
    }

    pub fn is_zero(&self, xi: &[f64], tolerance: f64) -> bool {
        self.eval(xi).norm() <= tolerance * self.volume
    }
}

/// `1̂_P(ξ) = ∫_P e^{−2πi⟨ξ,x⟩} dx`.
pub fn ft_indicator(p: &Polytope, xi: &FrequencyPoint) -> Complex64 {
    IndicatorTransform::new(p).eval(&xi.0)
}

/// `|1̂_H(ξ)|²`, the transform of `1_H ∗ 1̃_H`.
pub fn ft_autocorrelation(h: &Polytope, xi: &FrequencyPoint) -> f64 {
    IndicatorTransform::new(h).eval_power(&xi.0)
}

/// True iff `|1̂_P(ξ)| ≤ τ · vol(P)`.
pub fn zero_test(p: &Polytope, xi: &FrequencyPoint, tolerance: f64) -> bool {
    IndicatorTransform::new(p).is_zero(&xi.0, tolerance)
}

/// `(1_H ∗ 1̃_H)(x) = vol(H ∩ (H + x))`, exactly.
pub fn autocorrelation(h: &Polytope, x: &Point) -> Rational {
    assert_eq!(h.dim(), x.dim(), "shift dimension");
    if h.dim() == 2 {
        let shifted: Vec<Halfspace> = h
            .facets()
            .iter()
            .map(|f| Halfspace {
                normal: f.normal.clone(),
                offset: &f.offset + x.dot(&f.normal),
            })
            .collect();
        return shoelace(&clip_polygon(h.vertices(), &shifted));
    }
    match h.intersection(&h.translate(x)).expect("same dimension") {
        Some(overlap) => overlap.volume(),
        None => Rational::zero(),
    }
}

/// Samples `x ↦ vol(H ∩ (H + x))` on the grid `h·ℤᵈ` over the bounding box
/// of `H − H`.
///
/// Planar bodies are clipped in floating point (relative error near machine
/// precision, which is what a sampled grid keeps anyway); other dimensions go
/// through the exact [`autocorrelation`] and are rounded.
pub fn autocorrelation_grid(body: &Polytope, h: &Rational) -> Result<GridFunction<f64>, FourierError> {
    let (lo, hi) = body.bounding_box();
    let dim = body.dim();
    let mut first = Vec::with_capacity(dim);
    let mut extent = Vec::with_capacity(dim);
    for a in 0..dim {
        let width = &hi[a] - &lo[a];
        // K = H − H spans [−width, width] on this axis.
        let steps = (&width / h).floor().to_integer().to_i64().unwrap_or(i64::MAX / 4);
        first.push(-steps);
        extent.push((2 * steps + 1) as usize);
    }
    let hf = to_f64(h);
    let domain = GridDomain::new(
        first.iter().map(|&k| k as f64 * hf).collect(),
        vec![hf; dim],
        extent.clone(),
    )?;
    if dim == 2 {
        let polygon = FloatPolygon::new(body);
        return Ok(GridFunction::sample(domain, |x| polygon.overlap_area(x)));
    }
    let values: Vec<f64> = (0..domain.len())
        .into_par_iter()
        .map(|flat| {
            let idx = domain.multi_index(flat);
            let x = Point(
                idx.iter()
                    .zip(&first)
                    .map(|(&i, &k0)| h * Rational::from_integer((k0 + i as i64).into()))
                    .collect(),
            );
            to_f64(&autocorrelation(body, &x))
        })
        .collect();
    Ok(GridFunction::new(domain, values)?)
}

/// Convex polygon in floating point, for bulk overlap-area sampling.
struct FloatPolygon {
    vertices: Vec<[f64; 2]>,
    facets: Vec<([f64; 2], f64)>,
}

impl FloatPolygon {
    fn new(p: &Polytope) -> Self {
        let vertices = p
            .vertices()
            .iter()
            .map(|v| [to_f64(&v.0[0]), to_f64(&v.0[1])])
            .collect();
        let facets = p
            .facets()
            .iter()
            .map(|f| ([to_f64(&f.normal[0]), to_f64(&f.normal[1])], to_f64(&f.offset)))
            .collect();
        FloatPolygon { vertices, facets }
    }

    /// Area of `P ∩ (P + x)` by Sutherland–Hodgman.
    fn overlap_area(&self, x: &[f64]) -> f64 {
        let mut current = self.vertices.clone();
        let mut next = Vec::with_capacity(current.len() + self.facets.len());
        for (n, b) in &self.facets {
            let offset = b + n[0] * x[0] + n[1] * x[1];
            let slack = |p: &[f64; 2]| n[0] * p[0] + n[1] * p[1] - offset;
            next.clear();
            let len = current.len();
            for i in 0..len {
                let a = current[i];
                let c = current[(i + 1) % len];
                let (sa, sc) = (slack(&a), slack(&c));
                if sa <= 0.0 {
                    next.push(a);
                }
                if (sa < 0.0 && sc > 0.0) || (sa > 0.0 && sc < 0.0) {
                    let t = sa / (sa - sc);
                    next.push([a[0] + t * (c[0] - a[0]), a[1] + t * (c[1] - a[1])]);
                }
            }
            std::mem::swap(&mut current, &mut next);
            if current.len() < 3 {
                return 0.0;
            }
        }
        let len = current.len();
        let twice: f64 = (0..len)
            .map(|i| {
                let a = current[i];
                let c = current[(i + 1) % len];
                a[0] * c[1] - a[1] * c[0]
            })
            .sum();
        (0.5 * twice).max(0.0)
    }
}

/// Riemann-sum transform of `1_P` over a raster of spacing `h`.
///
/// Cells are `h`-cubes aligned to `h·ℤᵈ`; each cell centre inside `P` counts
/// fully, centres on one facet hyperplane count half. The error is O(h) in
/// general (boundary cells) and closer to O(h²) when facets run through cell
/// centres symmetrically, as for lattice-aligned simplices.
pub fn dft_oracle(p: &Polytope, xi: &FrequencyPoint, h: f64) -> Result<Complex64, FourierError> {
    let dim = p.dim();
    if xi.dim() != dim {
        return Err(FourierError::DimensionMismatch {
            body: dim,
            arg: xi.dim(),
        });
    }
    let (lo, hi) = p.bounding_box();
    let mut start = Vec::with_capacity(dim);
    let mut counts = Vec::with_capacity(dim);
    for a in 0..dim {
        let l = to_f64(&lo[a]);
        let u = to_f64(&hi[a]);
        if !(h > 0.0) || (u - l) / h < 2.0 {
            return Err(FourierError::GridTooCoarse { h, axis: a });
        }
        let k0 = (l / h).floor();
        let k1 = (u / h).ceil();
        start.push(k0);
        counts.push((k1 - k0) as usize);
    }
    let total = counts.iter().fold(1u128, |acc, &c| acc.saturating_mul(c as u128));
    if total > MAX_SAMPLES {
        return Err(GridError::TooLarge(total).into());
    }
    let facets: Vec<(Vec<f64>, f64, f64)> = p
        .facets()
        .iter()
        .map(|f| {
            let n = f.normal_f64();
            let scale = n.iter().map(|x| x.abs()).sum::<f64>();
            (n, to_f64(&f.offset), scale)
        })
        .collect();
    let cell = h.powi(dim as i32);
    let inner = counts[dim - 1];
    let outer = total as usize / inner;
    let sum: Complex64 = (0..outer)
        .into_par_iter()
        .map(|row| {
            let mut x = vec![0.0; dim];
            let mut rem = row;
            for a in (0..dim - 1).rev() {
                x[a] = (start[a] + (rem % counts[a]) as f64 + 0.5) * h;
                rem /= counts[a];
            }
            let mut acc = Complex64::zero();
            for j in 0..inner {
                x[dim - 1] = (start[dim - 1] + j as f64 + 0.5) * h;
                let mut weight = 1.0;
                for (n, b, scale) in &facets {
                    let s = n.iter().zip(&x).map(|(a, c)| a * c).sum::<f64>() - b;
                    let eps = 1e-12 * (scale * (1.0 + x.iter().fold(0.0f64, |m, c| m.max(c.abs()))));
                    if s > eps {
                        weight = 0.0;
                        break;
                    } else if s >= -eps {
                        weight *= 0.5;
                    }
                }
                if weight > 0.0 {
                    let phase = -std::f64::consts::TAU * x.iter().zip(&xi.0).map(|(a, b)| a * b).sum::<f64>();
                    acc += Complex64::from_polar(weight, phase);
                }
            }
            acc
        })
        .sum();
    Ok(sum * cell)
}
