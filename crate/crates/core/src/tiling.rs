//! Translational tilings `f + Λ = w` checked on finite windows, and the
//! dual-lattice support conditions for lattice `Λ`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fourier::{GridFunction, IndicatorTransform};
use crate::geometry::{Point, Polytope};
use crate::lattice::{AxisBox, Lattice, LatticeError, PointSet};
use crate::number::{from_f64, to_f64, Rational};

/// Dual points are checked out to this many generator lengths by default.
pub const DEFAULT_RADIUS_FACTOR: f64 = 8.0;

/// Core grids larger than this are rejected.
pub const MAX_CORE_SAMPLES: usize = 1 << 26;

#[derive(Debug, Error)]
pub enum TilingError {
    #[error("translate window misses translates reaching the core on axis {axis} (needs [{needed_lo}, {needed_hi}])")]
    InsufficientWindow {
        axis: usize,
        needed_lo: String,
        needed_hi: String,
    },
    #[error("every core sample lies within one spacing of a tile boundary")]
    NoUsableSamples,
    #[error("grid spacing must be positive")]
    BadSpacing,
    #[error("core grid of {0} samples is too large")]
    CoreTooLarge(u128),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The function being translated.
#[derive(Debug, Clone, Copy)]
pub enum Tile<'a> {
    /// `1_P`; evaluated exactly away from `∂P`.
    Indicator(&'a Polytope),
    /// Multilinear interpolant of samples, zero off the grid.
    Grid(&'a GridFunction<f64>),
}

impl Tile<'_> {
    pub fn dim(&self) -> usize {
        match self {
            Tile::Indicator(p) => p.dim(),
            Tile::Grid(g) => g.dim(),
        }
    }

    /// A box containing the support.
    pub fn support_box(&self) -> AxisBox {
        match self {
            Tile::Indicator(p) => {
                let (lo, hi) = p.bounding_box();
                AxisBox { lo, hi }
            }
            Tile::Grid(g) => {
                let lo: Vec<Rational> = g
                    .origin()
                    .iter()
                    .map(|&x| from_f64(x).expect("finite origin"))
                    .collect();
                let hi = g
                    .origin()
                    .iter()
                    .zip(g.spacing())
                    .zip(g.extent())
                    .map(|((&o, &s), &n)| from_f64(o + s * (n - 1) as f64).expect("finite grid"))
                    .collect();
                AxisBox { lo, hi }
            }
        }
    }

    /// `∫ f`.
    pub fn integral(&self) -> f64 {
        match self {
            Tile::Indicator(p) => to_f64(&p.volume()),
            Tile::Grid(g) => g.integral(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingReport {
    /// Mean of `Σ_λ f(x − λ)` over the usable core samples.
    pub level_estimate: f64,
    /// `max |Σ_λ f(x − λ) − level_estimate|` over the usable core samples.
    pub max_deviation: f64,
    pub min_value: f64,
    pub max_value: f64,
    pub core_window: AxisBox,
    #[serde(with = "crate::io::rational")]
    pub spacing: Rational,
    pub samples: usize,
    /// Samples dropped for lying within one spacing of a translate's boundary.
    pub boundary_excluded: usize,
    /// Translates whose support box meets the core.
    pub translate_count: usize,
    /// Smallest gap between the core and the edge of the translate window.
    pub margin: f64,
}

/// Evaluates `Σ_{λ∈S} f(x − λ)` on the grid `core.lo + hℤᵈ` inside `core`.
///
/// Almost-everywhere equality is read as: for indicators, samples within one
/// spacing of any translate's boundary are skipped, and everything else has
/// to agree.
pub fn verify_tiling(f: Tile<'_>, s: &PointSet, core: &AxisBox, h: &Rational) -> Result<TilingReport, TilingError> {
    let d = f.dim();
    for found in [s.dim, core.dim()] {
        if found != d {
            return Err(TilingError::DimensionMismatch { expected: d, found });
        }
    }
    if *h <= Rational::zero() {
        return Err(TilingError::BadSpacing);
    }
    // Every λ with (λ + supp f) ∩ core ≠ ∅ lies in core − supp f.
    let support = f.support_box();
    let needed = core.minus(&support);
    if let Some(axis) = (0..d).find(|&a| s.window.lo[a] > needed.lo[a] || s.window.hi[a] < needed.hi[a]) {
        return Err(TilingError::InsufficientWindow {
            axis,
            needed_lo: needed.lo[axis].to_string(),
            needed_hi: needed.hi[axis].to_string(),
        });
    }
    let margin = (0..d)
        .map(|a| to_f64(&(&core.lo[a] - &s.window.lo[a])).min(to_f64(&(&s.window.hi[a] - &core.hi[a]))))
        .fold(f64::INFINITY, f64::min);

    let axes: Vec<Vec<f64>> = (0..d)
        .map(|a| {
            let steps = ((&core.hi[a] - &core.lo[a]) / h).floor().to_integer();
            let steps: usize = steps.try_into().unwrap_or(usize::MAX);
            (0..=steps.min(MAX_CORE_SAMPLES))
                .map(|k| to_f64(&(&core.lo[a] + h * Rational::from_integer(k.into()))))
                .collect()
        })
        .collect();
    let total: u128 = axes.iter().map(|v| v.len() as u128).product();
    if total > MAX_CORE_SAMPLES as u128 {
        return Err(TilingError::CoreTooLarge(total));
    }

    let relevant: Vec<Vec<f64>> = s
        .points
        .iter()
        .filter(|lam| (0..d).all(|a| lam.0[a] >= needed.lo[a] && lam.0[a] <= needed.hi[a]))
        .map(Point::to_f64)
        .collect();
    let hf = to_f64(h);
    let evaluator = Evaluator::new(f, hf);

    let sums: Vec<Option<f64>> = (0..total as usize)
        .into_par_iter()
        .map(|flat| {
            let x = grid_point(&axes, flat);
            let mut y = vec![0.0; d];
            let mut sum = 0.0;
            for lam in &relevant {
                for a in 0..d {
                    y[a] = x[a] - lam[a];
                }
                sum += evaluator.eval(&y)?;
            }
            Some(sum)
        })
        .collect();

    let usable: Vec<f64> = sums.iter().flatten().copied().collect();
    if usable.is_empty() {
        return Err(TilingError::NoUsableSamples);
    }
    let level = usable.iter().sum::<f64>() / usable.len() as f64;
    let min_value = usable.iter().copied().fold(f64::INFINITY, f64::min);
    let max_value = usable.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_deviation = usable.iter().map(|v| (v - level).abs()).fold(0.0, f64::max);
    Ok(TilingReport {
        level_estimate: level,
        max_deviation,
        min_value,
        max_value,
        core_window: core.clone(),
        spacing: h.clone(),
        samples: sums.len(),
        boundary_excluded: sums.len() - usable.len(),
        translate_count: relevant.len(),
        margin,
    })
}

fn grid_point(axes: &[Vec<f64>], mut flat: usize) -> Vec<f64> {
    let mut x = vec![0.0; axes.len()];
    for a in (0..axes.len()).rev() {
        let n = axes[a].len();
        x[a] = axes[a][flat % n];
        flat /= n;
    }
    x
}

enum Evaluator<'a> {
    /// Unit outward normals and offsets; `y ∈ P` iff every `n·y ≤ b`.
    Indicator {
        facets: Vec<(Vec<f64>, f64)>,
        h: f64,
    },
    Grid(&'a GridFunction<f64>),
}

impl<'a> Evaluator<'a> {
    fn new(f: Tile<'a>, h: f64) -> Self {
        match f {
            Tile::Indicator(p) => {
                let facets = p
                    .facets()
                    .iter()
                    .map(|facet| {
                        let n = facet.normal_f64();
                        let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
                        (n.iter().map(|x| x / len).collect(), to_f64(&facet.offset) / len)
                    })
                    .collect();
                Evaluator::Indicator { facets, h }
            }
            Tile::Grid(g) => Evaluator::Grid(g),
        }
    }

    /// `None` when `y` is too close to the boundary to call.
    fn eval(&self, y: &[f64]) -> Option<f64> {
        match self {
            Evaluator::Indicator { facets, h } => {
                // Largest signed facet distance: < 0 inside, and a lower
                // bound on the distance to P outside.
                let g = facets
                    .iter()
                    .map(|(n, b)| n.iter().zip(y).map(|(a, c)| a * c).sum::<f64>() - b)
                    .fold(f64::NEG_INFINITY, f64::max);
                if g.abs() < *h {
                    None
                } else if g < 0.0 {
                    Some(1.0)
                } else {
                    Some(0.0)
                }
            }
            Evaluator::Grid(gf) => Some(gf.interpolate(y)),
        }
    }
}

/// `w = ∫f · dens Λ`.
pub fn tiling_level(f_integral: f64, l: &Lattice) -> f64 {
    f_integral * to_f64(&l.density())
}

pub fn tiling_level_exact(f_integral: &Rational, l: &Lattice) -> Rational {
    f_integral * l.density()
}

/// Default check radius for dual-lattice scans.
pub fn default_radius(l: &Lattice) -> f64 {
    DEFAULT_RADIUS_FACTOR * l.dual().longest_generator()
}

/// Nonzero points of `Λ` with `|ξ| ≤ radius`, shortest first (ties broken
/// lexicographically).
pub fn lattice_points_in_ball(l: &Lattice, radius: f64) -> Result<Vec<Point>, LatticeError> {
    let d = l.dim();
    let r = from_f64(radius.max(0.0).ceil()).unwrap_or_else(Rational::zero);
    let window = AxisBox::cube(d, &r)?;
    let r2 = radius * radius;
    let mut pts: Vec<(Rational, Point)> = l
        .enumerate_window(&window)?
        .points
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| (p.norm_squared(), p))
        .filter(|(n2, _)| to_f64(n2) <= r2)
        .collect();
    pts.sort();
    Ok(pts.into_iter().map(|(_, p)| p).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecessaryReport {
    pub holds: bool,
    /// First (shortest) nonzero dual point where the transform is not zero.
    pub witness: Option<Point>,
    /// `|1̂_P(witness)|`.
    pub witness_magnitude: Option<f64>,
    pub radius: f64,
    pub checked: usize,
}

/// For `1_P + Λ` to tile, `1̂_P` must vanish on `Λ* \ {0}`; this scans the
/// dual points with `|ξ| ≤ radius` (default [`default_radius`]).
pub fn support_condition_necessary(
    body: &Polytope,
    l: &Lattice,
    tolerance: f64,
    radius: Option<f64>,
) -> Result<NecessaryReport, TilingError> {
    if body.dim() != l.dim() {
        return Err(TilingError::DimensionMismatch {
            expected: body.dim(),
            found: l.dim(),
        });
    }
    let radius = radius.unwrap_or_else(|| default_radius(l));
    let dual = l.dual();
    let points = lattice_points_in_ball(&dual, radius)?;
    let ft = IndicatorTransform::new(body);
    let coords: Vec<Vec<f64>> = points.iter().map(Point::to_f64).collect();
    let hit = coords.par_iter().position_first(|xi| !ft.is_zero(xi, tolerance));
    Ok(NecessaryReport {
        holds: hit.is_none(),
        witness: hit.map(|i| points[i].clone()),
        witness_magnitude: hit.map(|i| ft.eval(&coords[i]).norm()),
        radius,
        checked: points.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SufficientReport {
    pub holds: bool,
    /// `f̂(0) · dens Λ`, the level the tiling would have; set when `holds`.
    pub implied_level: Option<f64>,
    /// Dual point whose δ-ball is not a zero region, and the failing probe.
    pub witness: Option<(Point, Vec<f64>)>,
    pub radius: f64,
    pub checked: usize,
}

/// Probe offsets for a δ-ball: center, `±δ/2` on each axis, and the `2ᵈ`
/// diagonals at distance `δ/2`.
pub fn ball_probes(dim: usize, delta: f64) -> Vec<Vec<f64>> {
    let r = 0.5 * delta;
    let mut out = vec![vec![0.0; dim]];
    for a in 0..dim {
        for sign in [1.0, -1.0] {
            let mut v = vec![0.0; dim];
            v[a] = sign * r;
            out.push(v);
        }
    }
    let c = r / (dim as f64).sqrt();
    for mask in 0..(1usize << dim) {
        out.push((0..dim).map(|a| if mask >> a & 1 == 1 { -c } else { c }).collect());
    }
    out
}

/// Checks that `f̂` vanishes on a δ-ball around every nonzero dual point with
/// `|ξ| ≤ radius`. `transform` returns `|f̂(ξ)|`; a probe counts as zero when
/// it is at most `tolerance · |f̂(0)|`.
pub fn support_condition_sufficient(
    transform: &(dyn Fn(&[f64]) -> f64 + Sync),
    l: &Lattice,
    delta: f64,
    radius: Option<f64>,
    tolerance: f64,
) -> Result<SufficientReport, TilingError> {
    let d = l.dim();
    let radius = radius.unwrap_or_else(|| default_radius(l));
    let at_zero = transform(&vec![0.0; d]);
    let threshold = tolerance * at_zero.abs();
    let points = lattice_points_in_ball(&l.dual(), radius)?;
    let probes = ball_probes(d, delta);
    let failure = points.par_iter().find_map_first(|xi| {
        let center = xi.to_f64();
        probes.iter().find_map(|offset| {
            let p: Vec<f64> = center.iter().zip(offset).map(|(a, b)| a + b).collect();
            (transform(&p).abs() > threshold).then(|| (xi.clone(), p))
        })
    });
    let holds = failure.is_none();
    Ok(SufficientReport {
        holds,
        implied_level: holds.then(|| at_zero * to_f64(&l.density())),
        witness: failure,
        radius,
        checked: points.len(),
    })
}
