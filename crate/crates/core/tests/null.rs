mod common;

use common::samples;
use curvekit::manifold::{example1, minkowski3_ppm};
use curvekit::nullcurve::null_frame_ode_residual;
use curvekit::{
    covariant_jet, curvatures_structural, minkowski_null_from_f, null_equiaffine_curvatures, null_frame,
    pseudo_torsion, reparametrize_pseudo_arclength, schwarzian, CurveSpec, GeneratorFunction, Sign, Vec3,
};

fn generators() -> Vec<(GeneratorFunction, f64, (f64, f64))> {
    vec![
        (GeneratorFunction::linear(), 0.0, (-2.0, 2.0)),
        (GeneratorFunction::exponential(), 0.0, (-1.5, 1.5)),
        (GeneratorFunction::power(2.0).unwrap(), 1.0, (0.5, 2.5)),
        (
            GeneratorFunction::moebius(1.0, 2.0, 1.0, 3.0).unwrap(),
            0.0,
            (-1.5, 2.0),
        ),
        (GeneratorFunction::tan(), 0.0, (-1.0, 1.0)),
    ]
}

fn build(f: &GeneratorFunction, t0: f64) -> CurveSpec {
    minkowski_null_from_f(f, t0, Vec3::new(0.5, -1.0, 2.0), Sign::Plus).unwrap()
}

#[test]
fn pseudo_torsion_is_the_schwarzian() {
    let m = minkowski3_ppm();
    let conn = m.levi_civita();
    for (f, t0, window) in generators() {
        let c = build(&f, t0);
        for t in samples(window, 20, 11) {
            let tau = pseudo_torsion(&m, &conn, &c, t).unwrap();
            let s = schwarzian(&f, t).unwrap();
            assert!((tau - s).abs() <= 1e-6, "{} t={t}: {tau} vs {s}", f.label());
        }
    }
}

#[test]
fn constructed_curves_are_null_and_normalized() {
    let m = minkowski3_ppm();
    let conn = m.levi_civita();
    for (f, t0, window) in generators() {
        let c = build(&f, t0);
        for t in samples(window, 20, 12) {
            let jet = covariant_jet(&m, &conn, &c, t, 2).unwrap();
            let at = jet.metric;
            assert!(at.dot(&jet.d1, &jet.d1).abs() <= 1e-10, "{} t={t}", f.label());
            assert!((at.dot(&jet.cd1, &jet.cd1) - 1.0).abs() <= 1e-8, "{} t={t}", f.label());
            let tau = 0.5 * at.dot(&jet.cd2, &jet.cd2);
            assert!((at.dot(&jet.d1, &jet.cd2) + 1.0).abs() <= 1e-6);
            assert!((at.dot(&jet.cd2, &jet.cd2) - 2.0 * tau).abs() <= 1e-6);
        }
    }
}

#[test]
fn null_frame_products_and_equations() {
    let m = minkowski3_ppm();
    let conn = m.levi_civita();
    for (f, t0, window) in generators() {
        let c = build(&f, t0);
        for t in samples(window, 10, 13) {
            let nf = null_frame(&m, &conn, &c, t).unwrap();
            let at = nf.jet.metric;
            let table = [
                (at.dot(&nf.l, &nf.l), 0.0),
                (at.dot(&nf.n, &nf.n), 0.0),
                (at.dot(&nf.w, &nf.w), 1.0),
                (at.dot(&nf.l, &nf.n), 1.0),
                (at.dot(&nf.l, &nf.w), 0.0),
                (at.dot(&nf.n, &nf.w), 0.0),
            ];
            for (got, want) in table {
                assert!((got - want).abs() <= 1e-7, "{} t={t}: {got} vs {want}", f.label());
            }
            for r in null_frame_ode_residual(&m, &conn, &c, t).unwrap() {
                assert!(r.norm() <= 1e-5, "{} t={t}: {r:?}", f.label());
            }
        }
    }
}

#[test]
fn null_curvatures_match_structural_route() {
    let m = minkowski3_ppm();
    let conn = m.levi_civita();
    for (f, t0, window) in generators() {
        let c = build(&f, t0);
        for t in samples(window, 10, 14) {
            let a = null_equiaffine_curvatures(&m, &conn, &c, t).unwrap();
            let b = curvatures_structural(&m, &conn, &c, t).unwrap();
            assert!(a.max_abs_diff(&b) <= 1e-4, "{} t={t}: {a:?} vs {b:?}", f.label());
        }
    }
}

#[test]
fn pseudo_arc_reparametrization_in_curved_metric() {
    let m = example1();
    let conn = m.levi_civita();
    let g = GeneratorFunction::tan().with_domain(-1.0, 1.0).unwrap();
    let base = minkowski_null_from_f(&g, 0.0, Vec3::zeros(), Sign::Minus).unwrap();
    let beta = reparametrize_pseudo_arclength(&m, &conn, &base, 0.0).unwrap();
    let (lo, hi) = beta.domain();
    let w = hi - lo;
    for s in samples((lo + 0.1 * w, hi - 0.1 * w), 20, 15) {
        let jet = covariant_jet(&m, &conn, &beta, s, 2).unwrap();
        let at = jet.metric;
        let scale = jet.d1.norm_squared();
        assert!(at.dot(&jet.d1, &jet.d1).abs() <= 1e-9 * scale.max(1.0));
        assert!(at.dot(&jet.d1, &jet.cd1).abs() <= 1e-9 * scale.max(1.0));
        assert!((at.dot(&jet.cd1, &jet.cd1) - 1.0).abs() <= 1e-7);
        assert!((at.dot(&jet.cd2, &jet.d1) + 1.0).abs() <= 1e-6);
        let a = null_equiaffine_curvatures(&m, &conn, &beta, s).unwrap();
        let b = curvatures_structural(&m, &conn, &beta, s).unwrap();
        assert!(a.max_abs_diff(&b) <= 1e-4, "s={s}: {a:?} vs {b:?}");
    }
}
