//! Null curves: pseudo-torsion, the null frame `(L, N, W)`, their
//! equi-affine curvatures, and null curves in Minkowski space generated by a
//! real function through its Schwarzian derivative.

use std::fmt;
use std::sync::Arc;

use crate::curvejet::{covariant_jet, CovariantJet, CurveEval, CurveSpec, NULL_TOL};
use crate::equiaffine::EquiaffineCurvatures;
use crate::error::{GeometryError, Result};
use crate::manifold::{ChartMetric, Connection, Sign, Vec3};
use crate::numdiff::{central_derivative, five_point_first, scalar_derivative};
use crate::quadrature::integrate;
use crate::taylor::Taylor;

/// Allowed `|g(∇α′α′, ∇α′α′) − 1|` for a pseudo-arc parametrization.
pub const PSEUDO_ARC_TOL: f64 = 1e-5;
/// `|f′| ≤ GENERATOR_TOL` counts as a critical point of a generator.
pub const GENERATOR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct NullFrenetApparatus {
    pub t: f64,
    /// `L = α′`
    pub l: Vec3,
    /// `N = −∇²α′α′ − τα′`
    pub n: Vec3,
    /// `W = ∇α′α′`
    pub w: Vec3,
    pub pseudo_torsion: f64,
    pub pseudo_torsion_derivative: f64,
    pub jet: CovariantJet,
}

fn checked_jet(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
    order: usize,
) -> Result<CovariantJet> {
    let jet = covariant_jet(metric, conn, curve, t, order)?;
    let at = &jet.metric;
    let g11 = at.dot(&jet.d1, &jet.d1);
    if g11.abs() > NULL_TOL * jet.d1.norm_squared() {
        return Err(GeometryError::DegenerateCurve {
            t,
            reason: format!("tangent is not null (g(α′, α′) = {g11:e})"),
        });
    }
    let value = at.dot(&jet.cd1, &jet.cd1);
    if !(value > NULL_TOL * jet.cd1.norm_squared()) {
        return Err(GeometryError::DegenerateNullCurve { t, value });
    }
    if (value - 1.0).abs() > PSEUDO_ARC_TOL {
        return Err(GeometryError::NotPseudoArc { t, value });
    }
    Ok(jet)
}

/// `τ = ½ g(∇²α′α′, ∇²α′α′)` of a pseudo-arc parametrized null curve.
pub fn pseudo_torsion(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, t: f64) -> Result<f64> {
    let jet = checked_jet(metric, conn, curve, t, 2)?;
    Ok(0.5 * jet.metric.dot(&jet.cd2, &jet.cd2))
}

/// `τ′` from a five-point stencil whose step follows the distance to the
/// domain boundary.
pub fn pseudo_torsion_derivative(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, t: f64) -> Result<f64> {
    let h = 1e-2 * curve.step_scale(t);
    five_point_first(|u| pseudo_torsion(metric, conn, curve, u), t, h)
}

/// Null frame and pseudo-torsion at `t`.
pub fn null_frame(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, t: f64) -> Result<NullFrenetApparatus> {
    let jet = checked_jet(metric, conn, curve, t, 2)?;
    let tau = 0.5 * jet.metric.dot(&jet.cd2, &jet.cd2);
    Ok(NullFrenetApparatus {
        t,
        l: jet.d1,
        n: -jet.cd2 - jet.d1 * tau,
        w: jet.cd1,
        pseudo_torsion: tau,
        pseudo_torsion_derivative: pseudo_torsion_derivative(metric, conn, curve, t)?,
        jet,
    })
}

/// `ϰ₁ = −τ′`, `ϰ₂ = −2τ`.
pub fn null_equiaffine_curvatures(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
) -> Result<EquiaffineCurvatures> {
    let tau = pseudo_torsion(metric, conn, curve, t)?;
    let tau1 = pseudo_torsion_derivative(metric, conn, curve, t)?;
    Ok(EquiaffineCurvatures {
        first: -tau1,
        second: -2.0 * tau,
    })
}

/// Residuals `∇L − W`, `∇N − τW`, `∇W + τL + N`, with the frame fields
/// differentiated numerically along the curve.
pub fn null_frame_ode_residual(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
) -> Result<[Vec3; 3]> {
    let f = null_frame(metric, conn, curve, t)?;
    let scale = 0.5 * curve.step_scale(t);
    let fields = |u: f64| -> Result<[Vec3; 3]> {
        let jet = checked_jet(metric, conn, curve, u, 2)?;
        let tau = 0.5 * jet.metric.dot(&jet.cd2, &jet.cd2);
        Ok([jet.d1, -jet.cd2 - jet.d1 * tau, jet.cd1])
    };
    let gamma = conn.christoffel(&f.jet.point)?;
    let mut cov = [Vec3::zeros(); 3];
    for (k, (slot, v)) in cov.iter_mut().zip([f.l, f.n, f.w]).enumerate() {
        let d: Vec3 = central_derivative(|u| Ok(fields(u)?[k]), t, 1, scale)?;
        *slot = d + gamma.contract(&f.l, &v);
    }
    let tau = f.pseudo_torsion;
    Ok([cov[0] - f.w, cov[1] - f.w * tau, cov[2] + f.l * tau + f.n])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    Linear,
    Exponential,
    Power(f64),
    Moebius { a: f64, b: f64, c: f64, d: f64 },
    Tan,
    Custom,
}

type Series = dyn Fn(Taylor) -> Taylor + Send + Sync;

/// A real function `f` used to generate null curves.
#[derive(Clone)]
pub struct GeneratorFunction {
    kind: GeneratorKind,
    label: String,
    domain: (f64, f64),
    f: Arc<Series>,
}

impl fmt::Debug for GeneratorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorFunction")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .finish()
    }
}

impl GeneratorFunction {
    /// `f(u) = u`
    pub fn linear() -> Self {
        Self::build(
            GeneratorKind::Linear,
            "linear",
            (f64::NEG_INFINITY, f64::INFINITY),
            |u| u,
        )
    }

    /// `f(u) = eᵘ`
    pub fn exponential() -> Self {
        Self::build(
            GeneratorKind::Exponential,
            "exponential",
            (f64::NEG_INFINITY, f64::INFINITY),
            Taylor::exp,
        )
    }

    /// `f(u) = uᵖ` on `u > 0`, `p ≠ 0`.
    pub fn power(p: f64) -> Result<Self> {
        if p == 0.0 || !p.is_finite() {
            return Err(GeometryError::InvalidParameter(format!(
                "power generator needs p != 0, got {p}"
            )));
        }
        Ok(Self::build(
            GeneratorKind::Power(p),
            format!("power(p={p})"),
            (0.0, f64::INFINITY),
            move |u| u.powf(p),
        ))
    }

    /// `f(u) = (au + b)/(cu + d)`, `ad − bc ≠ 0`, on the side of the pole
    /// `u > −d/c` (the whole line when `c = 0`).
    pub fn moebius(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if a * d - b * c == 0.0 || ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(GeometryError::InvalidParameter(
                "moebius generator needs ad - bc != 0".into(),
            ));
        }
        let domain = if c == 0.0 {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else {
            (-d / c, f64::INFINITY)
        };
        Ok(Self::build(
            GeneratorKind::Moebius { a, b, c, d },
            format!("moebius(a={a}, b={b}, c={c}, d={d})"),
            domain,
            move |u| (u * a + b) / (u * c + d),
        ))
    }

    /// `f(u) = tan u` on `(−π/2, π/2)`.
    pub fn tan() -> Self {
        let h = std::f64::consts::FRAC_PI_2;
        Self::build(GeneratorKind::Tan, "tan", (-h, h), Taylor::tan)
    }

    pub fn custom<F>(label: impl Into<String>, domain: (f64, f64), f: F) -> Self
    where
        F: Fn(Taylor) -> Taylor + Send + Sync + 'static,
    {
        Self::build(GeneratorKind::Custom, label, domain, f)
    }

    fn build<F>(kind: GeneratorKind, label: impl Into<String>, domain: (f64, f64), f: F) -> Self
    where
        F: Fn(Taylor) -> Taylor + Send + Sync + 'static,
    {
        GeneratorFunction {
            kind,
            label: label.into(),
            domain,
            f: Arc::new(f),
        }
    }

    /// Restricts the generator to `(a, b)` inside its current domain.
    pub fn with_domain(mut self, a: f64, b: f64) -> Result<Self> {
        if !(a < b && a >= self.domain.0 && b <= self.domain.1) {
            return Err(GeometryError::InvalidParameter(format!(
                "({a}, {b}) is not inside the generator domain ({}, {})",
                self.domain.0, self.domain.1
            )));
        }
        self.domain = (a, b);
        Ok(self)
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// `[f, f′, f″, f‴, f⁗]` at `t`.
    pub fn derivatives(&self, t: f64) -> Result<[f64; 5]> {
        if !(t > self.domain.0 && t < self.domain.1) {
            return Err(GeometryError::ChartExit {
                t,
                radius: 0.0,
                min: self.domain.0,
                max: self.domain.1,
            });
        }
        let d = (self.f)(Taylor::variable(t)).derivatives();
        if !d.iter().all(|v| v.is_finite()) {
            return Err(GeometryError::InvalidParameter(format!(
                "generator {} is not finite at {t}",
                self.label
            )));
        }
        if d[1].abs() <= GENERATOR_TOL {
            return Err(GeometryError::GeneratorDegenerate { t });
        }
        Ok(d)
    }
}

/// `S(f) = f‴/f′ − (3/2)(f″/f′)²`, from the exact derivatives of `f`.
pub fn schwarzian(f: &GeneratorFunction, t: f64) -> Result<f64> {
    let d = f.derivatives(t)?;
    let r = d[2] / d[1];
    Ok(d[3] / d[1] - 1.5 * r * r)
}

/// Schwarzian of a plain function with numerically computed derivatives.
pub fn schwarzian_sampled<F: Fn(f64) -> f64>(f: F, t: f64, scale: f64) -> Result<f64> {
    let d1 = scalar_derivative(&f, t, 1, scale)?;
    if d1.abs() <= GENERATOR_TOL {
        return Err(GeometryError::GeneratorDegenerate { t });
    }
    let d2 = scalar_derivative(&f, t, 2, scale)?;
    let d3 = scalar_derivative(&f, t, 3, scale)?;
    let r = d2 / d1;
    Ok(d3 / d1 - 1.5 * r * r)
}

struct NullFromGenerator {
    generator: GeneratorFunction,
    t0: f64,
    origin: Vec3,
    sign: f64,
}

impl NullFromGenerator {
    /// `(ε/2)(1/f′)(2f, f² − 1, f² + 1)` as a series in `t`.
    fn velocity_series(&self, t: f64) -> Result<[Taylor; 3]> {
        let d = self.generator.derivatives(t)?;
        // f′ as a series needs f up to one order higher than Taylor carries,
        // so build f and f′ separately from the derivative list.
        let f = Taylor::from_derivatives(&d[..4]);
        let fp = Taylor::from_derivatives(&d[1..5]);
        let inv = fp.recip() * (0.5 * self.sign);
        let ff = f * f;
        Ok([f * 2.0 * inv, (ff - 1.0) * inv, (ff + 1.0) * inv])
    }

    fn velocity(&self, t: f64) -> Result<Vec3> {
        let v = self.velocity_series(t)?;
        Ok(Vec3::new(v[0].value(), v[1].value(), v[2].value()))
    }
}

impl CurveEval for NullFromGenerator {
    fn derivatives(&self, t: f64) -> Result<[Vec3; 5]> {
        let v = self.velocity_series(t)?;
        let mut out = [self.position(t)?; 5];
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = Vec3::new(v[0].derivative(k - 1), v[1].derivative(k - 1), v[2].derivative(k - 1));
        }
        Ok(out)
    }

    fn position(&self, t: f64) -> Result<Vec3> {
        let mut p = self.origin;
        for i in 0..3 {
            p[i] += integrate(|u| Ok(self.velocity(u)?[i]), self.t0, t, 1e-14, 1e-14)?;
        }
        Ok(p)
    }
}

/// `α(t) = α₀ + (ε/2)∫_{t₀}^{t} (1/f′)(2f, f² − 1, f² + 1) du`, a null curve
/// in `dx² + dy² − dz²` with `g(α″, α″) = 1`.
pub fn minkowski_null_from_f(f: &GeneratorFunction, t0: f64, origin: Vec3, sign: Sign) -> Result<CurveSpec> {
    f.derivatives(t0)?;
    let label = format!("nullfromf({})", f.label());
    Ok(CurveSpec::from_eval(
        label,
        f.domain(),
        NullFromGenerator {
            generator: f.clone(),
            t0,
            origin,
            sign: sign.value(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvejet::reparametrize_pseudo_arclength;
    use crate::equiaffine::{cartan_frame, curvatures_structural, equiaffine_speed};
    use crate::manifold::{example1, minkowski3_ppm};

    fn curve(g: &GeneratorFunction, t0: f64) -> CurveSpec {
        minkowski_null_from_f(g, t0, Vec3::zeros(), Sign::Plus).unwrap()
    }

    #[test]
    fn linear_generator_curve() {
        let m = minkowski3_ppm();
        let conn = m.levi_civita();
        let c = curve(&GeneratorFunction::linear(), 0.0);
        for t in [-1.0, 0.0, 0.5, 2.0] {
            let jet = covariant_jet(&m, &conn, &c, t, 2).unwrap();
            assert!((jet.d1 - Vec3::new(t, (t * t - 1.0) / 2.0, (t * t + 1.0) / 2.0)).norm() < 1e-14);
            assert!(jet.metric.dot(&jet.d1, &jet.d1).abs() < 1e-13);
            assert!((jet.metric.dot(&jet.cd1, &jet.cd1) - 1.0).abs() < 1e-13);
            assert!(pseudo_torsion(&m, &conn, &c, t).unwrap().abs() < 1e-13);
        }
        // position from quadrature: ∫_0^2 (u, (u² − 1)/2, (u² + 1)/2) du
        let p = c.position(2.0).unwrap();
        assert!((p - Vec3::new(2.0, 1.0 / 3.0, 7.0 / 3.0)).norm() < 1e-13);
    }

    #[test]
    fn pseudo_torsion_is_schwarzian() {
        let m = minkowski3_ppm();
        let conn = m.levi_civita();
        let gens = [
            (GeneratorFunction::exponential(), 0.0, vec![-1.0, 0.0, 1.5]),
            (GeneratorFunction::power(2.0).unwrap(), 1.0, vec![0.5, 1.0, 3.0]),
            (GeneratorFunction::tan(), 0.0, vec![-0.7, 0.0, 1.0]),
            (
                GeneratorFunction::moebius(2.0, 1.0, 1.0, 3.0).unwrap(),
                0.0,
                vec![-1.0, 0.0, 4.0],
            ),
        ];
        for (g, t0, ts) in gens {
            let c = curve(&g, t0);
            for t in ts {
                let tau = pseudo_torsion(&m, &conn, &c, t).unwrap();
                let s = schwarzian(&g, t).unwrap();
                assert!((tau - s).abs() < 1e-10, "{} at {t}: {tau} vs {s}", g.label());
            }
        }
    }

    #[test]
    fn schwarzian_values() {
        assert!((schwarzian(&GeneratorFunction::exponential(), 0.3).unwrap() + 0.5).abs() < 1e-15);
        assert!((schwarzian(&GeneratorFunction::tan(), 0.3).unwrap() - 2.0).abs() < 1e-13);
        let u = 1.7;
        let p2 = GeneratorFunction::power(2.0).unwrap();
        assert!((schwarzian(&p2, u).unwrap() + 1.5 / (u * u)).abs() < 1e-14);
        let mob = GeneratorFunction::moebius(1.0, 2.0, 3.0, 4.0).unwrap();
        assert!(schwarzian(&mob, 0.5).unwrap().abs() < 1e-12);
        let num = schwarzian_sampled(f64::exp, 0.3, 1.0).unwrap();
        assert!((num + 0.5).abs() < 1e-5);
    }

    #[test]
    fn degenerate_generators() {
        let flat = GeneratorFunction::custom("square", (-1.0, 1.0), |u| u * u);
        assert_eq!(
            schwarzian(&flat, 0.0),
            Err(GeometryError::GeneratorDegenerate { t: 0.0 })
        );
        assert!(minkowski_null_from_f(&flat, 0.0, Vec3::zeros(), Sign::Plus).is_err());
        assert!(GeneratorFunction::power(0.0).is_err());
        assert!(GeneratorFunction::moebius(1.0, 2.0, 2.0, 4.0).is_err());
    }

    #[test]
    fn exponential_curvatures() {
        let m = minkowski3_ppm();
        let conn = m.levi_civita();
        let c = curve(&GeneratorFunction::exponential(), 0.0);
        let k = null_equiaffine_curvatures(&m, &conn, &c, 0.4).unwrap();
        assert!(k.first.abs() < 1e-9 && (k.second - 1.0).abs() < 1e-12, "{k:?}");
        let s = curvatures_structural(&m, &conn, &c, 0.4).unwrap();
        assert!(k.max_abs_diff(&s) < 1e-4, "{s:?}");
    }

    #[test]
    fn frame_products_and_odes() {
        let m = minkowski3_ppm();
        let conn = m.levi_civita();
        let c = curve(&GeneratorFunction::power(2.0).unwrap(), 1.0);
        for t in [0.5, 1.0, 2.0] {
            let f = null_frame(&m, &conn, &c, t).unwrap();
            let at = f.jet.metric;
            assert!((at.dot(&f.l, &f.n) - 1.0).abs() < 1e-7);
            assert!((at.dot(&f.w, &f.w) - 1.0).abs() < 1e-7);
            for (x, y) in [(f.l, f.l), (f.l, f.w), (f.n, f.n), (f.n, f.w)] {
                assert!(at.dot(&x, &y).abs() < 1e-7);
            }
            assert!((at.volume(&f.l, &f.n, &f.w).abs() - 1.0).abs() < 1e-6);
            assert!((at.dot(&f.jet.d1, &f.jet.cd2) + 1.0).abs() < 1e-6);
            assert!((at.dot(&f.jet.cd2, &f.jet.cd2) - 2.0 * f.pseudo_torsion).abs() < 1e-6);
            assert!((f.pseudo_torsion_derivative - 3.0 / t.powi(3)).abs() < 1e-6);
            for r in null_frame_ode_residual(&m, &conn, &c, t).unwrap() {
                assert!(r.norm() < 1e-5, "{r:?}");
            }
        }
    }

    #[test]
    fn cartan_frame_of_null_curve() {
        let m = minkowski3_ppm();
        let conn = m.levi_civita();
        let c = curve(&GeneratorFunction::exponential(), 0.0);
        let s = equiaffine_speed(&m, &conn, &c, 0.2).unwrap();
        assert!((s.mu - 1.0).abs() < 1e-12 && (s.phi - 1.0).abs() < 1e-12);
        let cf = cartan_frame(&m, &conn, &c, 0.2).unwrap();
        let nf = null_frame(&m, &conn, &c, 0.2).unwrap();
        assert!((cf.e1 - nf.l).norm() < 1e-9);
        assert!((cf.e2 - nf.w).norm() < 1e-8);
        let expect = -nf.l * nf.pseudo_torsion - nf.n;
        assert!((cf.e3 - expect).norm() < 1e-7 * expect.norm());
    }

    #[test]
    fn not_pseudo_arc_is_reported() {
        let m = minkowski3_ppm();
        let conn = m.levi_civita();
        let fast = CurveSpec::from_taylor("fast", (-1.0, 1.0), |t| {
            let u = t * 2.0;
            let u3 = u * u * u / 3.0;
            [u * u * 0.5, (u3 - u) * 0.5, (u3 + u) * 0.5]
        });
        assert!(matches!(
            pseudo_torsion(&m, &conn, &fast, 0.1),
            Err(GeometryError::NotPseudoArc { .. })
        ));
        let line = crate::catalog::line(Vec3::zeros(), Vec3::new(1.0, 0.0, 1.0));
        assert!(matches!(
            pseudo_torsion(&m, &conn, &line, 0.1),
            Err(GeometryError::DegenerateNullCurve { .. })
        ));
    }

    #[test]
    fn null_curve_in_curved_metric() {
        // A Minkowski null curve stays null for any conformal factor.
        let m = example1();
        let conn = m.levi_civita();
        let g = GeneratorFunction::exponential().with_domain(-1.0, 1.0).unwrap();
        let base = minkowski_null_from_f(&g, 0.0, Vec3::zeros(), Sign::Plus).unwrap();
        let beta = reparametrize_pseudo_arclength(&m, &conn, &base, 0.0).unwrap();
        let (lo, hi) = beta.domain();
        for k in 1..4 {
            let s = lo + (hi - lo) * k as f64 / 4.0;
            let closed = null_equiaffine_curvatures(&m, &conn, &beta, s).unwrap();
            let structural = curvatures_structural(&m, &conn, &beta, s).unwrap();
            assert!(closed.max_abs_diff(&structural) < 1e-4, "{closed:?} vs {structural:?}");
        }
    }
}
