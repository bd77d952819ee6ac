//! Property tests spanning several modules.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use crate::certify::{brunn_minkowski_gap, certify_nonspectral};
use crate::fourier::{autocorrelation, GridDomain, IndicatorTransform};
use crate::geometry::{Point, Polytope};
use crate::lattice::{difference_set, AxisBox, Lattice, PointSet};
use crate::number::{int, ratio, to_f64, Rational};
use crate::spectral::{verify_spectrum_window, SpectrumTolerances};

fn polygon() -> impl Strategy<Value = Polytope> {
    prop::collection::vec((-6i64..=6, -6i64..=6), 3..9).prop_filter_map("degenerate", |pts| {
        let pts: Vec<Point> = pts.iter().map(|&(x, y)| Point::from_ints(&[x, y])).collect();
        Polytope::hull(2, &pts).ok()
    })
}

fn polytope3() -> impl Strategy<Value = Polytope> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3), 4..8).prop_filter_map("degenerate", |pts| {
        let pts: Vec<Point> = pts.iter().map(|&(x, y, z)| Point::from_ints(&[x, y, z])).collect();
        Polytope::hull(3, &pts).ok()
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn nonsingular2() -> impl Strategy<Value = Lattice> {
    [small_rational(), small_rational(), small_rational(), small_rational()]
        .prop_filter_map("singular", |[a, b, c, d]| {
            Lattice::from_matrix(vec![vec![a, b], vec![c, d]]).ok()
        })
        .prop_filter("too skewed", |l| {
            l.longest_generator() < 6.0 && to_f64(l.determinant()).abs() > 0.2
        })
}

fn unimodular2() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec((0usize..4, -2i64..=2), 1..5).prop_map(|ops| {
        let mut m = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        for (op, k) in ops {
            let (r, s) = if op % 2 == 0 { (0, 1) } else { (1, 0) };
            if op < 2 {
                for c in 0..2 {
                    let add = &m[s][c] * int(k);
                    m[r][c] += add;
                }
            } else {
                m.swap(0, 1);
            }
        }
        m
    })
}

fn assert_close(a: num_complex::Complex64, b: num_complex::Complex64, scale: f64) {
    assert!((a - b).norm() <= 1e-12 * scale.max(1.0), "{a} vs {b}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflection_preserves_volume(p in polygon(), cx in small_rational(), cy in small_rational()) {
        let r = p.reflect(&Point(vec![cx, cy]));
        prop_assert_eq!(r.volume(), p.volume());
    }

    #[test]
    fn brunn_minkowski_gap_nonnegative(p in polygon()) {
        let (vol_h, gap) = brunn_minkowski_gap(&p);
        prop_assert!(!gap.is_negative());
        prop_assert!(vol_h >= p.volume());
    }

    #[test]
    fn brunn_minkowski_gap_nonnegative_3d(p in polytope3()) {
        let (_, gap) = brunn_minkowski_gap(&p);
        prop_assert!(!gap.is_negative());
    }

    #[test]
    fn minkowski_sum_commutes(p in polygon(), q in polygon()) {
        let pq = p.minkowski_sum(&q).unwrap();
        let qp = q.minkowski_sum(&p).unwrap();
        prop_assert!(pq.same_body(&qp));
        prop_assert!(pq.volume() >= p.volume() + q.volume());
    }

    #[test]
    fn intersection_lies_in_both(p in polygon(), q in polygon()) {
        if let Some(i) = p.intersection(&q).unwrap() {
            for v in i.vertices() {
                prop_assert!(p.contains(v) && q.contains(v));
            }
            prop_assert!(i.volume() <= p.volume() && i.volume() <= q.volume());
        }
    }

    #[test]
    fn scaling_round_trips(p in polygon(), k in 1i64..6) {
        let c = p.vertex_centroid();
        let s = p.scale(&int(k), &c).unwrap();
        prop_assert_eq!(s.volume(), p.volume() * int(k * k));
        let back = s.scale(&ratio(1, k), &c).unwrap();
        prop_assert!(back.same_body(&p));
    }

    #[test]
    fn transform_is_conjugate_symmetric(p in polygon(), x in -8.0f64..8.0, y in -8.0f64..8.0) {
        let ft = IndicatorTransform::new(&p);
        assert_close(ft.eval(&[-x, -y]), ft.eval(&[x, y]).conj(), ft.volume());
    }

    #[test]
    fn transform_translation_rule(p in polygon(), tx in -4i64..4, ty in 1i64..4, x in -6.0f64..6.0, y in -6.0f64..6.0) {
        let t = Point(vec![int(tx), ratio(1, ty)]);
        let shifted = IndicatorTransform::new(&p.translate(&t)).eval(&[x, y]);
        let tf = t.to_f64();
        let phase = num_complex::Complex64::from_polar(1.0, -std::f64::consts::TAU * (tf[0] * x + tf[1] * y));
        assert_close(shifted, IndicatorTransform::new(&p).eval(&[x, y]) * phase, to_f64(&p.volume()));
    }

    #[test]
    fn transform_scaling_rule(p in polygon(), k in 2i64..4, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let s = p.scale(&int(k), &Point::origin(2)).unwrap();
        let lhs = IndicatorTransform::new(&s).eval(&[x, y]);
        let kf = k as f64;
        let rhs = IndicatorTransform::new(&p).eval(&[kf * x, kf * y]) * (kf * kf);
        assert_close(lhs, rhs, to_f64(&s.volume()));
    }

    #[test]
    fn autocorrelation_is_even_and_supported_on_difference_body(
        p in polygon(), x in small_rational(), y in small_rational()
    ) {
        let v = Point(vec![x, y]);
        let g = autocorrelation(&p, &v);
        prop_assert_eq!(&g, &autocorrelation(&p, &v.neg()));
        let k = p.difference_body();
        if !k.contains(&v) {
            prop_assert!(g.is_zero());
        }
        if k.contains_interior(&v) {
            prop_assert!(g.is_positive());
        }
        prop_assert_eq!(autocorrelation(&p, &Point::origin(2)), p.volume());
    }

    #[test]
    fn lattice_windows_translate(l in nonsingular2(), n0 in -3i64..=3, n1 in -3i64..=3) {
        let w = AxisBox::cube(2, &int(4)).unwrap();
        let v = l.point(&[BigInt::from(n0), BigInt::from(n1)]);
        let a = l.enumerate_window(&w).unwrap().translate(&v);
        let b = l.enumerate_window(&w.translate(&v)).unwrap();
        let mut ap = a.points;
        ap.sort();
        prop_assert_eq!(ap, b.points);
    }

    #[test]
    fn lattice_count_matches_density(l in nonsingular2()) {
        let r = 50i64;
        let count = l.enumerate_window(&AxisBox::cube(2, &int(r)).unwrap()).unwrap().len() as f64;
        let density = to_f64(&l.density());
        let expected = density * (2.0 * r as f64).powi(2);
        // Cells meeting the boundary: perimeter × cell diameter × density.
        let slack = 8.0 * r as f64 * 2.0 * l.longest_generator() * density + 4.0;
        prop_assert!((count - expected).abs() <= slack, "{count} vs {expected}");
    }

    #[test]
    fn dual_is_an_involution(l in nonsingular2()) {
        let dd = l.dual().dual();
        for g in l.generators() {
            prop_assert!(dd.contains(&g));
        }
        for g in dd.generators() {
            prop_assert!(l.contains(&g));
        }
        prop_assert_eq!(l.density() * l.dual().density(), int(1));
    }

    #[test]
    fn unimodular_change_of_basis_keeps_lattice(l in nonsingular2(), u in unimodular2()) {
        let a = l.matrix();
        let au: Vec<Vec<Rational>> = (0..2)
            .map(|i| (0..2).map(|j| &a[i][0] * &u[0][j] + &a[i][1] * &u[1][j]).collect())
            .collect();
        let m = Lattice::from_matrix(au).unwrap();
        for g in m.generators() {
            prop_assert!(l.contains(&g));
        }
        for g in l.generators() {
            prop_assert!(m.contains(&g));
        }
    }

    #[test]
    fn difference_sets_are_symmetric(pts in prop::collection::vec((-5i64..=5, -5i64..=5), 1..12)) {
        let pts: Vec<Point> = pts.iter().map(|&(x, y)| Point::from_ints(&[x, y])).collect();
        let s = PointSet::new(2, pts, None).unwrap();
        let d = difference_set(&s);
        for p in &d.points {
            prop_assert!(d.points.binary_search(&p.neg()).is_ok());
            prop_assert!(!p.is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn certificate_is_invariant_under_unimodular_maps(u in unimodular2()) {
        let t = Polytope::from_int_vertices(2, &[&[0, 0], &[2, 0], &[0, 1]]);
        let base = certify_nonspectral(&t).unwrap();
        let image = certify_nonspectral(&t.linear_image(&u).unwrap()).unwrap();
        prop_assert_eq!(image.vol_h, base.vol_h);
        prop_assert_eq!(image.rho_pow_d, base.rho_pow_d);
        prop_assert_eq!(image.contradiction_margin, base.contradiction_margin);
    }
}

fn cube_spectrum(shift: &Point) -> (Polytope, PointSet) {
    let q2 = Polytope::centered_cube(2);
    let s = Lattice::integer(2)
        .enumerate_window(&AxisBox::cube(2, &int(4)).unwrap())
        .unwrap();
    (q2, s.translate(shift))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn spectral_verdict_ignores_body_translation(tx in small_rational(), ty in small_rational()) {
        let (q2, s) = cube_spectrum(&Point::origin(2));
        let probes = GridDomain::cube(2, -0.5, 0.5, 5).unwrap();
        let tol = SpectrumTolerances::default();
        let a = verify_spectrum_window(&q2, &s, &probes, tol).unwrap();
        let moved = q2.translate(&Point(vec![tx, ty]));
        let b = verify_spectrum_window(&moved, &s, &probes, tol).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert!((a.completeness_deviation - b.completeness_deviation).abs() < 1e-12);
    }

    #[test]
    fn spectral_verdict_follows_spectrum_shift(sx in small_rational(), sy in small_rational()) {
        let shift = Point(vec![sx, sy]);
        let (q2, s) = cube_spectrum(&Point::origin(2));
        let (_, shifted) = cube_spectrum(&shift);
        let tol = SpectrumTolerances::default();
        let probes = GridDomain::cube(2, -0.5, 0.5, 5).unwrap();
        let f = shift.to_f64();
        let moved = GridDomain::new(vec![-0.5 + f[0], -0.5 + f[1]], probes.spacing.clone(), probes.extent.clone()).unwrap();
        let a = verify_spectrum_window(&q2, &s, &probes, tol).unwrap();
        let b = verify_spectrum_window(&q2, &shifted, &moved, tol).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert!((a.completeness_deviation - b.completeness_deviation).abs() < 1e-9);
    }
}
