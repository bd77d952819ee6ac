//! Non-spectrality certificates for non-symmetric convex bodies.
//!
//! With `H = ½(Ω − Ω)`, `K = Ω − Ω` and `f = 1_H ∗ 1̃_H`: a spectrum `Λ` of a
//! measure-one `Ω` would make `g(x) = f(x/ρ)` tile with `Λ` at level
//! `g(0) = vol H` for every `ρ < 1` with `ρK` strictly inside `K`, while the
//! same tiling has level `∫g = ρᵈ (vol H)²`. Brunn–Minkowski gives
//! `vol H > 1` for non-symmetric `Ω`, so any `ρᵈ ∈ (1/vol H, 1)` makes the
//! two levels disagree. Everything here is exact; `ρ` itself is never formed,
//! only `ρᵈ`.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fourier::autocorrelation;
use crate::geometry::{symmetry_report, GeometryError, Point, Polytope, SymmetryReport};
use crate::number::{exact_root, pow, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("body is centrally symmetric about {center:?}; try a lattice spectrum analysis instead")]
    SymmetricBody { center: Point },
    #[error("degenerate body: {0}")]
    DegenerateBody(#[from] GeometryError),
    #[error("inconsistent certificate field `{field}`: {detail}")]
    InconsistentCertificate { field: &'static str, detail: String },
}

/// How the body was brought to unit volume.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum Normalization {
    /// Scaled about its vertex centroid by `factor`; the body has volume 1.
    Exact {
        #[serde(with = "crate::io::rational")]
        factor: Rational,
    },
    /// The root was irrational, so the body is kept as is. Every volume in
    /// the certificate is divided by `volume^k` for its degree `k`, which is
    /// what the unit-volume body would report.
    ScaleInvariant {
        #[serde(with = "crate::io::rational")]
        volume: Rational,
    },
}

/// Scales `p` about its vertex centroid to volume 1 when the needed factor
/// `vol^{−1/d}` is rational; otherwise returns `p` unchanged with the
/// scale-invariant marker.
pub fn normalize_volume(p: &Polytope) -> Result<(Polytope, Normalization), CertifyError> {
    let vol = p.volume();
    if !vol.is_positive() {
        return Err(CertifyError::DegenerateBody(GeometryError::DegenerateBody {
            dim: p.dim(),
            rank: 0,
        }));
    }
    if vol.is_one() {
        return Ok((
            p.clone(),
            Normalization::Exact {
                factor: Rational::one(),
            },
        ));
    }
    match exact_root(&vol.recip(), p.dim() as u32) {
        Some(factor) => {
            let scaled = p.scale(&factor, &p.vertex_centroid())?;
            Ok((scaled, Normalization::Exact { factor }))
        }
        None => Ok((p.clone(), Normalization::ScaleInvariant { volume: vol })),
    }
}

/// `H = ½(P − P)`.
pub fn half_difference_body(p: &Polytope) -> Polytope {
    p.difference_body()
        .scale(&Rational::new(1.into(), 2.into()), &Point::origin(p.dim()))
        .expect("positive factor")
}

/// `(vol H, vol H − vol P)`; the gap is zero exactly for symmetric bodies.
pub fn brunn_minkowski_gap(p: &Polytope) -> (Rational, Rational) {
    let vol_h = half_difference_body(p).volume();
    let gap = &vol_h - p.volume();
    (vol_h, gap)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSpectralityCertificate {
    /// The body the numbers refer to: unit volume under `Exact`, the input
    /// body under `ScaleInvariant`.
    pub body: Polytope,
    pub normalization: Normalization,
    /// `vol H` of the unit-volume body.
    #[serde(with = "crate::io::rational")]
    pub vol_h: Rational,
    /// `vol H − 1`.
    #[serde(with = "crate::io::rational")]
    pub bm_gap: Rational,
    /// `ρᵈ`, the midpoint of `(1/vol H, 1)`.
    #[serde(with = "crate::io::rational")]
    pub rho_pow_d: Rational,
    /// `g(0) = vol H`.
    #[serde(with = "crate::io::rational")]
    pub level_from_tiling: Rational,
    /// `ĝ(0) = ∫g = ρᵈ (vol H)²`.
    #[serde(with = "crate::io::rational")]
    pub level_from_value_at_zero: Rational,
    /// `level_from_value_at_zero − level_from_tiling`.
    #[serde(with = "crate::io::rational")]
    pub contradiction_margin: Rational,
    pub symmetry: SymmetryReport,
}

pub fn certify_nonspectral(p: &Polytope) -> Result<NonSpectralityCertificate, CertifyError> {
    let symmetry = symmetry_report(p);
    if let Some(center) = &symmetry.center {
        return Err(CertifyError::SymmetricBody { center: center.clone() });
    }
    let (body, normalization) = normalize_volume(p)?;
    let (vol_h_raw, _) = brunn_minkowski_gap(&body);
    let vol_h = match &normalization {
        Normalization::Exact { .. } => vol_h_raw,
        Normalization::ScaleInvariant { volume } => vol_h_raw / volume,
    };
    let one = Rational::one();
    let rho_pow_d = (&one + &vol_h) / (Rational::from_integer(2.into()) * &vol_h);
    let level_from_tiling = vol_h.clone();
    let level_from_value_at_zero = &rho_pow_d * &vol_h * &vol_h;
    let contradiction_margin = &level_from_value_at_zero - &level_from_tiling;
    let cert = NonSpectralityCertificate {
        body,
        normalization,
        bm_gap: &vol_h - &one,
        vol_h,
        rho_pow_d,
        level_from_tiling,
        level_from_value_at_zero,
        contradiction_margin,
        symmetry,
    };
    // A non-symmetric body always has a strict gap; anything else is a bug
    // upstream, and an invalid certificate must not leave this function.
    certificate_consistency_check(&cert)?;
    Ok(cert)
}

fn fail(field: &'static str, detail: impl Into<String>) -> CertifyError {
    CertifyError::InconsistentCertificate {
        field,
        detail: detail.into(),
    }
}

/// Re-derives every field from the stored body.
pub fn certificate_consistency_check(c: &NonSpectralityCertificate) -> Result<(), CertifyError> {
    let one = Rational::one();
    let d = c.body.dim() as u32;
    if c.vol_h <= one {
        return Err(fail("vol_h", format!("{} is not above 1", c.vol_h)));
    }
    if c.rho_pow_d >= one || &c.rho_pow_d * &c.vol_h <= one {
        return Err(fail("rho_pow_d", format!("{} is outside (1/vol_h, 1)", c.rho_pow_d)));
    }
    if c.bm_gap != &c.vol_h - &one {
        return Err(fail("bm_gap", "differs from vol_h − 1"));
    }

    let vol_omega = c.body.volume();
    let scale = match &c.normalization {
        Normalization::Exact { .. } => {
            if !vol_omega.is_one() {
                return Err(fail("body", format!("volume {vol_omega} is not 1")));
            }
            one.clone()
        }
        Normalization::ScaleInvariant { volume } => {
            if *volume != vol_omega {
                return Err(fail("normalization", "recorded volume differs from the body"));
            }
            vol_omega.clone()
        }
    };
    let symmetry = symmetry_report(&c.body);
    if symmetry.is_symmetric || symmetry != c.symmetry {
        return Err(fail("symmetry", "body is symmetric or report does not match"));
    }

    let h = half_difference_body(&c.body);
    // g(0) = f(0) = vol(H ∩ H).
    let g0 = autocorrelation(&h, &Point::origin(c.body.dim())) / &scale;
    if g0 != c.vol_h || c.level_from_tiling != g0 {
        return Err(fail("level_from_tiling", format!("recomputed g(0) = {g0}")));
    }
    // ∫g = ρᵈ ∫f = ρᵈ (vol H)².
    let vol_h = h.volume() / &scale;
    let integral = &c.rho_pow_d * &vol_h * &vol_h;
    if c.level_from_value_at_zero != integral {
        return Err(fail("level_from_value_at_zero", format!("recomputed ∫g = {integral}")));
    }
    if c.contradiction_margin != &integral - &g0 || !c.contradiction_margin.is_positive() {
        return Err(fail(
            "contradiction_margin",
            "not the positive difference of the two levels",
        ));
    }

    // supp g = ρK must sit strictly inside K. K is symmetric about 0 with
    // positive offsets, so ρv is interior iff ρ (n·v) < b for every facet
    // with n·v > 0, i.e. ρᵈ < (b / n·v)ᵈ.
    let k = c.body.difference_body();
    for v in k.vertices() {
        for f in k.facets() {
            let nv = v.dot(&f.normal);
            if nv.is_positive() && c.rho_pow_d >= pow(&(&f.offset / &nv), d) {
                return Err(fail("rho_pow_d", format!("ρ·{v:?} is not interior to K")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, ratio};

    fn unit_triangle() -> Polytope {
        Polytope::from_int_vertices(2, &[&[0, 0], &[2, 0], &[0, 1]])
    }

    #[test]
    fn normalization_examples() {
        let big = Polytope::centered_cube(2).scale(&int(2), &Point::origin(2)).unwrap();
        let (n, how) = normalize_volume(&big).unwrap();
        assert_eq!(n, Polytope::centered_cube(2));
        assert_eq!(how, Normalization::Exact { factor: ratio(1, 2) });
        let t = unit_triangle();
        assert_eq!(normalize_volume(&t).unwrap().0, t);
        let half = Polytope::from_int_vertices(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(
            normalize_volume(&half).unwrap().1,
            Normalization::ScaleInvariant { volume: ratio(1, 2) }
        );
    }

    #[test]
    fn gap_examples() {
        assert_eq!(brunn_minkowski_gap(&Polytope::centered_cube(2)), (int(1), int(0)));
        assert_eq!(brunn_minkowski_gap(&unit_triangle()), (ratio(3, 2), ratio(1, 2)));
    }

    #[test]
    fn triangle_certificate() {
        let c = certify_nonspectral(&unit_triangle()).unwrap();
        assert_eq!(c.vol_h, ratio(3, 2));
        assert_eq!(c.bm_gap, ratio(1, 2));
        assert_eq!(c.rho_pow_d, ratio(5, 6));
        assert_eq!(c.level_from_tiling, ratio(3, 2));
        assert_eq!(c.level_from_value_at_zero, ratio(15, 8));
        assert_eq!(c.contradiction_margin, ratio(3, 8));
        assert!(certificate_consistency_check(&c).is_ok());
    }

    #[test]
    fn square_is_refused() {
        assert!(matches!(
            certify_nonspectral(&Polytope::unit_cube(2)),
            Err(CertifyError::SymmetricBody { .. })
        ));
    }

    #[test]
    fn simplex_in_three_dimensions() {
        let tetra = Polytope::from_int_vertices(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let c = certify_nonspectral(&tetra).unwrap();
        // vol(T − T) = C(6,3) vol T, so vol H = 20/8 in unit-volume units.
        assert_eq!(c.vol_h, ratio(5, 2));
        assert!(c.contradiction_margin.is_positive());
        assert!(matches!(c.normalization, Normalization::ScaleInvariant { .. }));
        // A lattice simplex of volume 1 normalizes exactly.
        let unit = Polytope::from_int_vertices(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let c = certify_nonspectral(&unit).unwrap();
        assert!(matches!(c.normalization, Normalization::Exact { .. }));
        assert_eq!(c.vol_h, ratio(5, 2));
    }

    #[test]
    fn tampering_is_detected() {
        let c = certify_nonspectral(&unit_triangle()).unwrap();
        let mut bad = c.clone();
        bad.rho_pow_d = int(1);
        assert!(matches!(
            certificate_consistency_check(&bad),
            Err(CertifyError::InconsistentCertificate { field: "rho_pow_d", .. })
        ));
        let mut bad = c.clone();
        bad.vol_h = ratio(9, 10);
        assert!(matches!(
            certificate_consistency_check(&bad),
            Err(CertifyError::InconsistentCertificate { field: "vol_h", .. })
        ));
        let mut bad = c.clone();
        bad.contradiction_margin = ratio(1, 8);
        assert!(certificate_consistency_check(&bad).is_err());
        let mut bad = c;
        bad.vol_h = ratio(7, 4);
        bad.bm_gap = ratio(3, 4);
        assert!(matches!(
            certificate_consistency_check(&bad),
            Err(CertifyError::InconsistentCertificate {
                field: "level_from_tiling",
                ..
            })
        ));
    }

    #[test]
    fn rho_just_below_one_still_fits_inside() {
        let mut c = certify_nonspectral(&unit_triangle()).unwrap();
        c.rho_pow_d = ratio(99, 100);
        c.level_from_value_at_zero = &c.rho_pow_d * &c.vol_h * &c.vol_h;
        c.contradiction_margin = &c.level_from_value_at_zero - &c.level_from_tiling;
        assert!(certificate_consistency_check(&c).is_ok());
    }
}
