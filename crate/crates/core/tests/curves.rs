mod common;

use common::{non_null_fixtures, samples};
use curvekit::catalog;
use curvekit::manifold::{example1, example2, minkowski3_ppm};
use curvekit::{
    covariant_jet, curvatures_direct, curvatures_frenet, curvatures_structural, equiaffine_speed, frenet_apparatus,
    reparametrize_arclength, scalar_derivative, CurveSpec, Sign, Vec3,
};

#[test]
fn frenet_frame_invariants() {
    for fx in non_null_fixtures() {
        for (i, t) in samples(fx.window, 100, 1).into_iter().enumerate() {
            let f = frenet_apparatus(&fx.metric, &fx.conn, &fx.curve, t).unwrap();
            let at = f.jet.metric;
            let (tt, n, b) = (f.tangent, f.normal, f.binormal);
            let ctx = format!("{} t={t}", fx.name);
            assert!((at.dot(&tt, &tt) - f.eps1.value()).abs() < 1e-8, "{ctx}");
            assert!((at.dot(&n, &n) - f.eps2.value()).abs() < 1e-8, "{ctx}");
            assert!((at.dot(&b, &b) - f.eps3.value()).abs() < 1e-8, "{ctx}");
            assert!(
                at.dot(&tt, &n).abs() + at.dot(&tt, &b).abs() + at.dot(&n, &b).abs() < 1e-8,
                "{ctx}"
            );
            assert!((at.volume(&tt, &n, &b) - 1.0).abs() < 1e-8, "{ctx}");
            assert_eq!(f.eps3, at.omega * f.eps1 * f.eps2, "{ctx}");

            let omega3 = f.eps3.value() * f.curvature.powi(2) * f.torsion;
            assert!((f.volume_triple - omega3).abs() <= 1e-6 * omega3.abs(), "{ctx}");

            let s = equiaffine_speed(&fx.metric, &fx.conn, &fx.curve, t).unwrap();
            assert_eq!(Sign::of(f.torsion), s.orientation * f.eps3, "{ctx}");
            let phi = f.curvature.powf(-1.0 / 3.0) * f.torsion.abs().powf(-1.0 / 6.0);
            assert!((s.phi - phi).abs() <= 1e-7 * phi, "{ctx}");

            if i < 20 {
                let d1 = f.jet.d1;
                let c = at.cross(&d1, &f.jet.cd1);
                let lag = at.omega.value()
                    * (at.dot(&d1, &d1) * at.dot(&f.jet.cd1, &f.jet.cd1) - at.dot(&d1, &f.jet.cd1).powi(2));
                assert!((at.dot(&c, &c) - lag).abs() <= 1e-8 * lag.abs().max(1.0), "{ctx}");
            }
        }
    }
}

#[test]
fn three_routes_agree() {
    for fx in non_null_fixtures() {
        for t in samples(fx.window, 50, 2) {
            let f = frenet_apparatus(&fx.metric, &fx.conn, &fx.curve, t).unwrap();
            let d = curvatures_direct(&fx.metric, &fx.conn, &fx.curve, t).unwrap();
            let s = curvatures_structural(&fx.metric, &fx.conn, &fx.curve, t).unwrap();
            let r = curvatures_frenet(&fx.source, f.eps1, f.eps2, f.eps3, t).unwrap();
            let worst = d.max_abs_diff(&s).max(d.max_abs_diff(&r)).max(s.max_abs_diff(&r));
            assert!(worst <= 1e-4, "{} t={t}: {d:?} {s:?} {r:?}", fx.name);
        }
    }
}

#[test]
fn helix_curvatures_are_constant() {
    for fx in non_null_fixtures().into_iter().filter(|f| f.name.contains("helix")) {
        let values: Vec<_> = samples(fx.window, 20, 3)
            .into_iter()
            .map(|t| curvatures_direct(&fx.metric, &fx.conn, &fx.curve, t).unwrap())
            .collect();
        let spread = |g: fn(&curvekit::EquiaffineCurvatures) -> f64| {
            let v: Vec<f64> = values.iter().map(g).collect();
            v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
        };
        assert!(
            spread(|k| k.first) <= 1e-6 && spread(|k| k.second) <= 1e-6,
            "{}",
            fx.name
        );
        assert!(values.iter().all(|k| k.first.abs() <= 1e-6), "{}", fx.name);
    }
}

#[test]
fn constant_curvatures_do_not_force_constant_frenet_data() {
    let m = example1();
    let conn = m.levi_civita();
    let c = catalog::example1_curve(2.0, 2.0, 1.0).unwrap();
    let k = curvatures_direct(&m, &conn, &c, 1.0).unwrap();
    assert!(k.first.abs() <= 1e-5 && k.second.abs() <= 1e-5, "{k:?}");
    let kappa_prime =
        scalar_derivative(|t| frenet_apparatus(&m, &conn, &c, t).unwrap().curvature, 1.0, 1, 0.25).unwrap();
    assert!(kappa_prime.abs() > 0.1, "{kappa_prime}");
}

#[test]
fn finite_difference_jets_match_analytic_on_catalog_curves() {
    for fx in non_null_fixtures() {
        let fd = CurveSpec::sampled("fd", fx.curve.domain(), {
            let c = fx.curve.clone();
            move |t| c.position(t).unwrap()
        });
        for t in samples(fx.window, 5, 4) {
            let a = covariant_jet(&fx.metric, &fx.conn, &fx.curve, t, 3).unwrap();
            let b = covariant_jet(&fx.metric, &fx.conn, &fd, t, 3).unwrap();
            for (x, y) in [(a.d1, b.d1), (a.cd1, b.cd1), (a.cd2, b.cd2), (a.cd3, b.cd3)] {
                let rel = (x - y).norm() / x.norm();
                assert!(rel <= 1e-6, "{} t={t}: {rel:e}", fx.name);
            }
        }
    }
}

#[test]
fn arclength_output_has_unit_speed() {
    let m = example2();
    let slow = CurveSpec::from_taylor("slow", (0.5, 4.0), |t| [t * t * 0.5, t.ln() * 0.3, t * 0.1]);
    let beta = reparametrize_arclength(&m, &slow, 1.0).unwrap();
    let (lo, hi) = beta.domain();
    let span = hi - lo;
    for s in samples((lo + 0.05 * span, hi - 0.05 * span), 100, 5) {
        let v = beta.velocity(s).unwrap();
        let at = m.at(&beta.position(s).unwrap()).unwrap();
        assert!((at.dot(&v, &v).abs() - 1.0).abs() <= 1e-9, "s={s}");
    }
    let m = minkowski3_ppm();
    let timelike = CurveSpec::from_taylor("timelike", (-2.0, 2.0), |t| [t.sin() * 0.5, t * 0.2, t * 2.0]);
    let beta = reparametrize_arclength(&m, &timelike, 0.0).unwrap();
    let (lo, hi) = beta.domain();
    for s in samples((0.9 * lo, 0.9 * hi), 100, 6) {
        let v = beta.velocity(s).unwrap();
        assert!((m.at(&Vec3::zeros()).unwrap().dot(&v, &v) + 1.0).abs() <= 1e-9);
    }
}
