//! Orthogonality of exponentials on a polytope and the completeness sum
//! `Σ_λ |1̂_Ω(x − λ)|²` on finite windows of a candidate spectrum.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fourier::{FrequencyPoint, GridDomain, IndicatorTransform, DEFAULT_ZERO_TOLERANCE};
use crate::geometry::{Point, Polytope};
use crate::lattice::{AxisBox, Lattice, LatticeError, PointSet};
use crate::number::{to_f64, Rational};

/// Default tolerance on the completeness deviation.
pub const DEFAULT_COMPLETENESS_TOLERANCE: f64 = 1e-6;

/// Multiplier applied to the fitted tail estimate.
pub const TAIL_SAFETY: f64 = 4.0;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("candidate set is empty")]
    EmptyCandidates,
    #[error("probe box is not strictly inside the candidate window on axis {axis}")]
    InsufficientWindow { axis: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `⟨e_λ, e_μ⟩_Ω = 1̂_Ω(μ − λ)`.
pub fn inner_product(omega: &Polytope, lambda: &FrequencyPoint, mu: &FrequencyPoint) -> Complex64 {
    let diff: Vec<f64> = mu.0.iter().zip(&lambda.0).map(|(a, b)| a - b).collect();
    IndicatorTransform::new(omega).eval(&diff)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityGraph {
    pub nodes: PointSet,
    /// Pairs `i < j` whose exponentials are orthogonal on `Ω`.
    pub edges: Vec<(usize, usize)>,
    pub tolerance: f64,
}

impl OrthogonalityGraph {
    pub fn is_complete(&self) -> bool {
        let n = self.nodes.len();
        self.edges.len() == n * n.saturating_sub(1) / 2
    }
}

pub fn orthogonality_graph(omega: &Polytope, candidates: &PointSet, tolerance: f64) -> OrthogonalityGraph {
    let ft = IndicatorTransform::new(omega);
    let pts = candidates.to_f64();
    let n = pts.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let ft = &ft;
            let pts = &pts;
            (i + 1..n).filter_map(move |j| ft.is_zero(&difference(&pts[i], &pts[j]), tolerance).then_some((i, j)))
        })
        .collect();
    OrthogonalityGraph {
        nodes: candidates.clone(),
        edges,
        tolerance,
    }
}

fn difference(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    VerifiedOnWindow,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::VerifiedOnWindow => "verified-on-window",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
// Externally tagged: internal tags buffer numbers, which loses exact literals.
#[serde(rename_all = "kebab-case")]
pub enum SpectrumWitness {
    /// Two candidates whose exponentials are not orthogonal.
    NonOrthogonalPair { lambda: Point, mu: Point, magnitude: f64 },
    /// A probe where the normalized completeness sum misses 1 by more than
    /// the tolerance plus the tail bound.
    Probe { x: Vec<f64>, sum: f64 },
}

/// Empirical decay of `|1̂_Ω|²`: the mass on `R ≤ |ξ| ≤ 2R` behaves like
/// `C/(2R)`, so the mass outside `R` is about `C/R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    /// Max over the sampled radii of `2R · mass(R ≤ |ξ| ≤ 2R) / vol(Ω)²`.
    pub constant: f64,
    pub radii: Vec<f64>,
    pub per_radius: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub is_orthogonal: bool,
    /// `max_x |Σ_λ |1̂_Ω(x − λ)|² / vol(Ω)² − 1|` over the probes.
    pub completeness_deviation: f64,
    /// Largest value of the normalized sum above 1 (0 if none).
    pub max_excess: f64,
    /// Largest shortfall of the normalized sum below 1 (0 if none).
    pub max_deficit: f64,
    pub probe_lo: Vec<f64>,
    pub probe_hi: Vec<f64>,
    pub probe_count: usize,
    pub candidate_count: usize,
    pub verdict: Verdict,
    pub witness: Option<SpectrumWitness>,
    /// Bound on the normalized sum over candidates outside the window.
    pub tail_bound: f64,
    /// Distance from the probe box to the edge of the candidate window.
    pub tail_radius: f64,
    /// Candidates per unit volume used for the tail.
    pub tail_density: f64,
    pub tail_fit: TailFit,
    pub tolerance_zero: f64,
    pub tolerance_completeness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTolerances {
    pub zero: f64,
    pub completeness: f64,
}

impl Default for SpectrumTolerances {
    fn default() -> Self {
        SpectrumTolerances {
            zero: DEFAULT_ZERO_TOLERANCE,
            completeness: DEFAULT_COMPLETENESS_TOLERANCE,
        }
    }
}

/// Fits the tail constant from annulus masses at radii `2^k / w`, where `w`
/// is the largest axis width of `Ω`. The annuli are integrated on a grid fine
/// enough that `|1̂_Ω|²`, whose inverse transform lives in `Ω − Ω`, does not
/// alias.
pub fn fit_tail(omega: &Polytope) -> TailFit {
    let d = omega.dim();
    let ft = IndicatorTransform::new(omega);
    let (lo, hi) = omega.bounding_box();
    let width = lo.iter().zip(&hi).map(|(a, b)| to_f64(&(b - a))).fold(0.0, f64::max);
    let unit = 1.0 / width;
    let step = unit / 4.0;
    let top = match d {
        1 => 7,
        2 => 5,
        _ => 2,
    };
    let vol2 = ft.volume() * ft.volume();
    let radii: Vec<f64> = (1..=top).map(|k| unit * f64::from(1u32 << k)).collect();
    let per_radius: Vec<f64> = radii
        .iter()
        .map(|&r| {
            let n = (2.0 * r / step).ceil() as i64;
            let side = (2 * n + 1) as usize;
            let total = side.pow(d as u32);
            let mass: f64 = (0..total)
                .into_par_iter()
                .map(|flat| {
                    let mut rest = flat;
                    let mut xi = vec![0.0; d];
                    for c in xi.iter_mut() {
                        *c = ((rest % side) as i64 - n) as f64 * step;
                        rest /= side;
                    }
                    let norm = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm >= r && norm <= 2.0 * r {
                        ft.eval_power(&xi)
                    } else {
                        0.0
                    }
                })
                .sum();
            2.0 * r * mass * step.powi(d as i32) / vol2
        })
        .collect();
    TailFit {
        constant: per_radius.iter().copied().fold(0.0, f64::max),
        radii,
        per_radius,
    }
}

/// Checks orthogonality on `candidates` and evaluates the normalized
/// completeness sum at every probe point.
///
/// Verdicts: `Refuted` carries a witness (a non-orthogonal pair, or a probe
/// whose sum is off by more than the tolerance plus the tail bound);
/// `Inconclusive` means the tail bound is at least 1, too large to say anything;
/// otherwise `VerifiedOnWindow`.
///
/// For a plain point set the candidate density used in the tail bound is
/// estimated as count over window volume.
pub fn verify_spectrum_window(
    omega: &Polytope,
    candidates: &PointSet,
    probes: &GridDomain,
    tolerances: SpectrumTolerances,
) -> Result<SpectrumReport, SpectralError> {
    verify_with_density(omega, candidates, None, probes, tolerances)
}

/// [`verify_spectrum_window`] on the window `[−r, r]ᵈ` of a lattice, with the
/// exact lattice density in the tail bound.
pub fn verify_lattice_spectrum(
    omega: &Polytope,
    lattice: &Lattice,
    radius: &Rational,
    point_cap: usize,
    probes: &GridDomain,
    tolerances: SpectrumTolerances,
) -> Result<SpectrumReport, SpectralError> {
    let window = AxisBox::cube(lattice.dim(), radius)?;
    let candidates = lattice.enumerate_window_capped(&window, point_cap)?;
    verify_with_density(omega, &candidates, Some(to_f64(&lattice.density())), probes, tolerances)
}

fn verify_with_density(
    omega: &Polytope,
    candidates: &PointSet,
    density: Option<f64>,
    probes: &GridDomain,
    tolerances: SpectrumTolerances,
) -> Result<SpectrumReport, SpectralError> {
    let d = omega.dim();
    for found in [candidates.dim, probes.dim()] {
        if found != d {
            return Err(SpectralError::DimensionMismatch { expected: d, found });
        }
    }
    if candidates.is_empty() {
        return Err(SpectralError::EmptyCandidates);
    }
    let probe_lo = probes.origin.clone();
    let probe_hi: Vec<f64> = (0..d)
        .map(|a| probes.origin[a] + probes.spacing[a] * (probes.extent[a] - 1) as f64)
        .collect();
    let win_lo = candidates.window.lo_f64();
    let win_hi = candidates.window.hi_f64();
    let mut gap = f64::INFINITY;
    for a in 0..d {
        let g = (probe_lo[a] - win_lo[a]).min(win_hi[a] - probe_hi[a]);
        if g <= 0.0 {
            return Err(SpectralError::InsufficientWindow { axis: a });
        }
        gap = gap.min(g);
    }

    let ft = IndicatorTransform::new(omega);
    let pts = candidates.to_f64();
    let n = pts.len();
    let pair = (0..n).into_par_iter().find_map_first(|i| {
        (i + 1..n).find_map(|j| {
            let v = ft.eval(&difference(&pts[j], &pts[i]));
            (v.norm() > tolerances.zero * ft.volume()).then_some((i, j, v.norm()))
        })
    });

    let vol2 = ft.volume() * ft.volume();
    let sums: Vec<f64> = (0..probes.len())
        .into_par_iter()
        .map(|flat| {
            let x = probes.point(flat);
            pts.iter().map(|lam| ft.eval_power(&difference(&x, lam))).sum::<f64>() / vol2
        })
        .collect();
    let max_excess = sums.iter().map(|s| s - 1.0).fold(0.0, f64::max);
    let max_deficit = sums.iter().map(|s| 1.0 - s).fold(0.0, f64::max);
    let completeness_deviation = max_excess.max(max_deficit);

    let fit = fit_tail(omega);
    let density = density.unwrap_or_else(|| n as f64 / to_f64(&candidates.window.volume()).max(f64::MIN_POSITIVE));
    // Normalized mass of |1̂|² outside radius `gap`, scaled by the candidate
    // density (the tail sum is a Riemann sum of that integral).
    let tail_bound = TAIL_SAFETY * density * fit.constant / gap;
    let allowance = tolerances.completeness + tail_bound;

    let worst_probe = |pred: &dyn Fn(f64) -> bool| {
        sums.iter().position(|&s| pred(s)).map(|k| SpectrumWitness::Probe {
            x: probes.point(k),
            sum: sums[k],
        })
    };

    let (verdict, witness) = if let Some((i, j, magnitude)) = pair {
        (
            Verdict::Refuted,
            Some(SpectrumWitness::NonOrthogonalPair {
                lambda: candidates.points[i].clone(),
                mu: candidates.points[j].clone(),
                magnitude,
            }),
        )
    } else if max_excess > tolerances.completeness {
        // Bessel: an orthogonal family never sums above 1.
        (Verdict::Refuted, worst_probe(&|s| s - 1.0 > tolerances.completeness))
    } else if tail_bound >= 1.0 {
        (Verdict::Inconclusive, None)
    } else if max_deficit <= allowance {
        (Verdict::VerifiedOnWindow, None)
    } else {
        (Verdict::Refuted, worst_probe(&|s| 1.0 - s > allowance))
    };

    Ok(SpectrumReport {
        is_orthogonal: pair.is_none(),
        completeness_deviation,
        max_excess,
        max_deficit,
        probe_lo,
        probe_hi,
        probe_count: probes.len(),
        candidate_count: n,
        verdict,
        witness,
        tail_bound,
        tail_radius: gap,
        tail_density: density,
        tail_fit: fit,
        tolerance_zero: tolerances.zero,
        tolerance_completeness: tolerances.completeness,
    })
}
