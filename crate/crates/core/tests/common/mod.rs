#![allow(dead_code)]

use curvekit::catalog;
use curvekit::manifold::{euclidean3, example1, example2, minkowski3_ppm};
use curvekit::{ChartMetric, ClosedFormCurvatureTorsion, Connection, CurveSpec};

pub struct Fixture {
    pub name: String,
    pub metric: ChartMetric,
    pub conn: Connection,
    pub curve: CurveSpec,
    pub source: ClosedFormCurvatureTorsion,
    /// Interior sampling window.
    pub window: (f64, f64),
}

fn fixture(metric: ChartMetric, curve: CurveSpec, source: ClosedFormCurvatureTorsion, window: (f64, f64)) -> Fixture {
    Fixture {
        name: format!("{} in {}", curve.label(), metric.name()),
        conn: metric.levi_civita(),
        metric,
        curve,
        source,
        window,
    }
}

fn helix(metric: ChartMetric, r: f64, h: f64, lorentzian: bool) -> Fixture {
    let (k, t) = catalog::circular_helix_curvature_torsion(r, h, lorentzian).unwrap();
    fixture(
        metric,
        catalog::circular_helix(r, h, lorentzian).unwrap(),
        ClosedFormCurvatureTorsion::constant(k, t),
        (-4.0, 4.0),
    )
}

/// Non-null, non-degenerate catalog curves with closed-form `κ, τ`.
pub fn non_null_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (a, b, l) in [(2.0, 2.0, 1.0), (1.5, 2.0, -1.0), (2.0, 3.0, 1.0)] {
        out.push(fixture(
            example1(),
            catalog::example1_curve(a, b, l).unwrap(),
            catalog::example1_curvature_torsion(a, b, l).unwrap(),
            (0.4, 5.0),
        ));
    }
    for (a, b) in [(0.5, 0.5), (0.8, 0.52f64.sqrt())] {
        out.push(fixture(
            example2(),
            catalog::example2_curve(a, b).unwrap(),
            catalog::example2_curvature_torsion(a, b).unwrap(),
            (0.4, 5.0),
        ));
    }
    out.push(helix(euclidean3(), 1.5, 0.7, false));
    out.push(helix(minkowski3_ppm(), 2.0, 1.0, true));
    out.push(helix(minkowski3_ppm(), 0.5, 1.5, true));
    let (k, t) = catalog::hyperbolic_helix_curvature_torsion(1.0, 0.6);
    out.push(fixture(
        minkowski3_ppm(),
        catalog::hyperbolic_helix(1.0, 0.6).unwrap(),
        ClosedFormCurvatureTorsion::constant(k, t),
        (-2.0, 2.0),
    ));
    out
}

/// Deterministic samples in `window`.
pub fn samples(window: (f64, f64), n: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(window.0..window.1)).collect()
}
