//! Equi-affine speed, arc length, Cartan frame and curvatures.
//!
//! The curvatures `ϰ₁, ϰ₂` are defined by `∇_{e₁}e₃ = ϰ₁e₁ + ϰ₂e₂`. They are
//! computed three ways:
//!
//! * [`curvatures_direct`]: closed expressions in `φ` and covariant jets of
//!   order 3, valid for any parametrization;
//! * [`curvatures_structural`]: numerical `∇_{α′}e₃` and volume-form
//!   projections;
//! * [`curvatures_frenet`]: polynomials in the Frenet curvature and torsion of
//!   a unit-speed curve and their derivatives.

use std::fmt;
use std::sync::Arc;

use crate::curvejet::{covariant_jet, CovariantJet, CurveSpec};
use crate::error::{GeometryError, Result};
use crate::frenet::{frenet_apparatus, FrenetApparatus};
use crate::manifold::{ChartMetric, Connection, Sign, Vec3};
use crate::numdiff::central_derivative;
use crate::quadrature::integrate;
use crate::taylor::Taylor;

/// `|Ω(α′, ∇α′α′, ∇²α′α′)|` below this fraction of the product of the
/// component norms (times `√|G|`) counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

// Step multipliers relative to `CurveSpec::step_scale` for φ (also κ, τ) and
// for the frame derivative. Nested stencils amplify round-off, so these sit
// well above the textbook optimum.
const PHI_STEP: f64 = 10.0;
const FRAME_STEP: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquiaffineSpeed {
    pub mu: f64,
    pub phi: f64,
    pub orientation: Sign,
    pub volume_triple: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquiaffineCurvatures {
    pub first: f64,
    pub second: f64,
}

impl EquiaffineCurvatures {
    pub fn max_abs_diff(&self, other: &EquiaffineCurvatures) -> f64 {
        (self.first - other.first).abs().max((self.second - other.second).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Direct,
    Structural,
    Frenet,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Direct, Route::Structural, Route::Frenet];

    pub fn as_str(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Structural => "structural",
            Route::Frenet => "frenet",
        }
    }

    pub fn parse(name: &str) -> Option<Route> {
        Route::ALL.into_iter().find(|r| r.as_str() == name)
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cartan frame at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct CartanFrame {
    pub t: f64,
    /// `[φ, φ′, φ″, φ‴]`; `φ‴` is NaN unless the frame was built for the
    /// direct curvature route.
    pub phi: [f64; 4],
    pub orientation: Sign,
    pub e1: Vec3,
    pub e2: Vec3,
    pub e3: Vec3,
    pub jet: CovariantJet,
}

/// Cartan frame together with the curvatures from one route.
#[derive(Debug, Clone, Copy)]
pub struct CartanApparatus {
    pub t: f64,
    pub mu: f64,
    pub phi: f64,
    pub orientation: Sign,
    pub e1: Vec3,
    pub e2: Vec3,
    pub e3: Vec3,
    pub curvatures: EquiaffineCurvatures,
    pub route: Route,
}

fn speed_from_jet(jet: &CovariantJet) -> Result<EquiaffineSpeed> {
    let triple = jet.volume_triple();
    let scale = jet.metric.sqrt_abs_det * jet.d1.norm() * jet.cd1.norm() * jet.cd2.norm();
    if !(triple.abs() > DEGENERACY_TOL * scale) {
        return Err(GeometryError::DegenerateCurve {
            t: jet.t,
            reason: format!("Ω(α′, ∇α′α′, ∇²α′α′) = {triple:e}"),
        });
    }
    let mu = triple.abs().powf(1.0 / 6.0);
    Ok(EquiaffineSpeed {
        mu,
        phi: 1.0 / mu,
        orientation: Sign::of(triple),
        volume_triple: triple,
    })
}

/// `μ = |Ω(α′, ∇α′α′, ∇²α′α′)|^{1/6}`, `φ = 1/μ` and the orientation `ε`.
pub fn equiaffine_speed(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, t: f64) -> Result<EquiaffineSpeed> {
    speed_from_jet(&covariant_jet(metric, conn, curve, t, 2)?)
}

/// `σ(t) = ∫_{t₀}^{t} μ(u) du`. The orientation must not change on the way.
pub fn equiaffine_arclength(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t0: f64,
    t: f64,
) -> Result<f64> {
    let start = equiaffine_speed(metric, conn, curve, t0)?.orientation;
    integrate(
        |u| {
            let s = equiaffine_speed(metric, conn, curve, u)?;
            if s.orientation != start {
                return Err(GeometryError::DegenerateCurve {
                    t: u,
                    reason: "orientation of (α′, ∇α′α′, ∇²α′α′) changes".into(),
                });
            }
            Ok(s.mu)
        },
        t0,
        t,
        1e-13,
        1e-13,
    )
}

fn phi_at(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, u: f64) -> Result<f64> {
    Ok(equiaffine_speed(metric, conn, curve, u)?.phi)
}

/// `[φ, φ′, φ″, φ‴]` at `t` (up to `order`) and the order-3 jet at `t`.
fn phi_derivatives(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
    order: usize,
) -> Result<([f64; 4], CovariantJet, Sign)> {
    let jet = covariant_jet(metric, conn, curve, t, 3)?;
    let speed = speed_from_jet(&jet)?;
    let scale = PHI_STEP * curve.step_scale(t);
    let mut phi = [speed.phi, f64::NAN, f64::NAN, f64::NAN];
    for (k, slot) in phi.iter_mut().enumerate().skip(1).take(order) {
        *slot = central_derivative(|u| phi_at(metric, conn, curve, u), t, k, scale)?;
    }
    Ok((phi, jet, speed.orientation))
}

fn frame_from(phi: [f64; 4], jet: &CovariantJet, orientation: Sign) -> CartanFrame {
    let [p, p1, p2, _] = phi;
    CartanFrame {
        t: jet.t,
        phi,
        orientation,
        e1: jet.d1 * p,
        e2: jet.d1 * (p * p1) + jet.cd1 * (p * p),
        e3: jet.d1 * (p * p1 * p1 + p * p * p2) + jet.cd1 * (3.0 * p * p * p1) + jet.cd2 * p.powi(3),
        jet: *jet,
    }
}

/// `e₁ = φα′`, `e₂ = φφ′α′ + φ²∇α′α′`,
/// `e₃ = (φφ′² + φ²φ″)α′ + 3φ²φ′∇α′α′ + φ³∇²α′α′`.
pub fn cartan_frame(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, t: f64) -> Result<CartanFrame> {
    let (phi, jet, orientation) = phi_derivatives(metric, conn, curve, t, 2)?;
    Ok(frame_from(phi, &jet, orientation))
}

/// Curvatures from `φ` and its derivatives and the jets up to order 3.
pub fn curvatures_direct(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
) -> Result<EquiaffineCurvatures> {
    let (phi, jet, orientation) = phi_derivatives(metric, conn, curve, t, 3)?;
    Ok(direct_from(phi, &jet, orientation))
}

fn direct_from(phi: [f64; 4], jet: &CovariantJet, orientation: Sign) -> EquiaffineCurvatures {
    let [p, p1, p2, p3] = phi;
    let eps = orientation.value();
    let at = &jet.metric;
    let outer = at.volume(&jet.d1, &jet.cd2, &jet.cd3);
    let inner = at.volume(&jet.cd1, &jet.cd2, &jet.cd3);
    EquiaffineCurvatures {
        first: p * p * p3 - 6.0 * p1.powi(3) + eps * p.powi(8) * p1 * outer + eps * p.powi(9) * inner,
        second: 4.0 * p * p2 + 7.0 * p1 * p1 - eps * p.powi(8) * outer,
    }
}

/// Curvatures by projecting a numerically differentiated `∇_{α′}e₃`, plus
/// the residual `∇_{e₁}e₃ − ϰ₁e₁ − ϰ₂e₂` of the decomposition.
pub fn structural_decomposition(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
) -> Result<(EquiaffineCurvatures, Vec3)> {
    let frame = cartan_frame(metric, conn, curve, t)?;
    let scale = FRAME_STEP * curve.step_scale(t);
    let de3: Vec3 = central_derivative(|u| Ok(cartan_frame(metric, conn, curve, u)?.e3), t, 1, scale)?;
    let gamma = conn.christoffel(&frame.jet.point)?;
    let cov_e3 = de3 + gamma.contract(&frame.jet.d1, &frame.e3);
    let at = &frame.jet.metric;
    let factor = frame.orientation.value() * frame.phi[0];
    let k = EquiaffineCurvatures {
        first: factor * at.volume(&cov_e3, &frame.e2, &frame.e3),
        second: factor * at.volume(&frame.e1, &cov_e3, &frame.e3),
    };
    let residual = cov_e3 * frame.phi[0] - frame.e1 * k.first - frame.e2 * k.second;
    Ok((k, residual))
}

/// `ϰ₁ = εφΩ(∇_{α′}e₃, e₂, e₃)`, `ϰ₂ = εφΩ(e₁, ∇_{α′}e₃, e₃)`.
pub fn curvatures_structural(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
) -> Result<EquiaffineCurvatures> {
    Ok(structural_decomposition(metric, conn, curve, t)?.0)
}

/// Frenet curvature and torsion of a unit-speed curve with derivative access.
pub trait CurvatureTorsion: Send + Sync {
    /// `([κ, κ′, κ″, κ‴], [τ, τ′, τ″, τ‴])` at `s`.
    fn derivatives(&self, s: f64) -> Result<([f64; 4], [f64; 4])>;
}

type ScalarSeries = dyn Fn(Taylor) -> Taylor + Send + Sync;

/// `κ` and `τ` given as formulas; derivatives are exact.
#[derive(Clone)]
pub struct ClosedFormCurvatureTorsion {
    curvature: Arc<ScalarSeries>,
    torsion: Arc<ScalarSeries>,
}

impl ClosedFormCurvatureTorsion {
    pub fn new<K, T>(curvature: K, torsion: T) -> Self
    where
        K: Fn(Taylor) -> Taylor + Send + Sync + 'static,
        T: Fn(Taylor) -> Taylor + Send + Sync + 'static,
    {
        ClosedFormCurvatureTorsion {
            curvature: Arc::new(curvature),
            torsion: Arc::new(torsion),
        }
    }

    /// Constant `κ` and `τ`.
    pub fn constant(kappa: f64, tau: f64) -> Self {
        Self::new(move |_| Taylor::constant(kappa), move |_| Taylor::constant(tau))
    }
}

impl CurvatureTorsion for ClosedFormCurvatureTorsion {
    fn derivatives(&self, s: f64) -> Result<([f64; 4], [f64; 4])> {
        let x = Taylor::variable(s);
        let k = (self.curvature)(x).derivatives();
        let t = (self.torsion)(x).derivatives();
        let out = ([k[0], k[1], k[2], k[3]], [t[0], t[1], t[2], t[3]]);
        if out.0.iter().chain(out.1.iter()).all(|v| v.is_finite()) {
            Ok(out)
        } else {
            Err(GeometryError::InvalidParameter(format!(
                "curvature or torsion not finite at {s}"
            )))
        }
    }
}

/// `κ` and `τ` computed from the Frenet apparatus of a unit-speed curve and
/// differentiated numerically.
#[derive(Clone)]
pub struct NumericCurvatureTorsion {
    metric: ChartMetric,
    conn: Connection,
    curve: CurveSpec,
}

impl NumericCurvatureTorsion {
    pub fn new(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec) -> Self {
        NumericCurvatureTorsion {
            metric: metric.clone(),
            conn: conn.clone(),
            curve: curve.clone(),
        }
    }

    fn values(&self, s: f64) -> Result<Vec3> {
        let f = frenet_apparatus(&self.metric, &self.conn, &self.curve, s)?;
        Ok(Vec3::new(f.curvature, f.torsion, 0.0))
    }
}

impl CurvatureTorsion for NumericCurvatureTorsion {
    fn derivatives(&self, s: f64) -> Result<([f64; 4], [f64; 4])> {
        let scale = PHI_STEP * self.curve.step_scale(s);
        let mut d = [self.values(s)?; 4];
        for (k, slot) in d.iter_mut().enumerate().skip(1) {
            *slot = central_derivative(|u| self.values(u), s, k, scale)?;
        }
        Ok((d.map(|v| v[0]), d.map(|v| v[1])))
    }
}

fn check_frenet_data(k: f64, tau: f64) -> Result<()> {
    if !(k > 0.0) {
        return Err(GeometryError::ZeroCurvature);
    }
    if tau == 0.0 || !tau.is_finite() {
        return Err(GeometryError::ZeroTorsion);
    }
    Ok(())
}

/// Curvatures from `κ, τ` and their derivatives up to order 3.
pub fn curvatures_frenet(
    source: &dyn CurvatureTorsion,
    eps1: Sign,
    eps2: Sign,
    eps3: Sign,
    s: f64,
) -> Result<EquiaffineCurvatures> {
    let (kd, td) = source.derivatives(s)?;
    curvatures_from_frenet_data(kd, td, eps1, eps2, eps3)
}

/// [`curvatures_frenet`] on explicit derivative arrays.
pub fn curvatures_from_frenet_data(
    kd: [f64; 4],
    td: [f64; 4],
    eps1: Sign,
    eps2: Sign,
    eps3: Sign,
) -> Result<EquiaffineCurvatures> {
    let [k, k1, k2, k3] = kd;
    let [t, t1, t2, t3] = td;
    check_frenet_data(k, t)?;
    let e12 = (eps1 * eps2).value();
    let e23 = (eps2 * eps3).value();
    let at = t.abs();

    let first = k.powi(-4) * t.powi(-3) * at.powf(-0.5) / 216.0
        * (-288.0 * e12 * k.powi(4) * t.powi(3) * k1
            - 72.0 * e23 * k.powi(2) * t.powi(5) * k1
            - 320.0 * t.powi(3) * k1.powi(3)
            + 180.0 * e12 * k.powi(5) * t.powi(2) * t1
            - 36.0 * e23 * k.powi(3) * t.powi(4) * t1
            - 120.0 * k * t.powi(2) * k1.powi(2) * t1
            - 42.0 * k.powi(2) * t * k1 * t1.powi(2)
            - 85.0 * k.powi(3) * t1.powi(3)
            + 360.0 * k * t.powi(3) * k1 * k2
            + 72.0 * k.powi(2) * t.powi(2) * t1 * k2
            + 36.0 * k.powi(2) * t.powi(2) * k1 * t2
            + 126.0 * k.powi(3) * t * t1 * t2
            - 72.0 * k.powi(2) * t.powi(3) * k3
            - 36.0 * k.powi(3) * t.powi(2) * t3);

    let second = k.powf(-8.0 / 3.0) * t.powi(-2) * at.powf(-1.0 / 3.0) / 36.0
        * (-36.0 * e12 * k.powi(4) * t.powi(2) - 36.0 * e23 * k.powi(2) * t.powi(4)
            + 20.0 * t.powi(2) * k1.powi(2)
            + 8.0 * k * t * k1 * t1
            + 35.0 * k.powi(2) * t1.powi(2)
            - 12.0 * k * t.powi(2) * k2
            - 24.0 * k.powi(2) * t * t2);

    Ok(EquiaffineCurvatures { first, second })
}

/// Cartan frame in terms of the Frenet frame and derivatives of `κ, τ`.
pub fn cartan_from_frenet(frenet: &FrenetApparatus, source: &dyn CurvatureTorsion) -> Result<[Vec3; 3]> {
    let (kd, td) = source.derivatives(frenet.t)?;
    cartan_from_frenet_data(frenet, kd, td)
}

/// [`cartan_from_frenet`] on explicit derivative arrays.
pub fn cartan_from_frenet_data(frenet: &FrenetApparatus, kd: [f64; 4], td: [f64; 4]) -> Result<[Vec3; 3]> {
    let [k, k1, k2, _] = kd;
    let [t, t1, t2, _] = td;
    check_frenet_data(k, t)?;
    let e12 = (frenet.eps1 * frenet.eps2).value();
    let e2s = frenet.eps2.value();
    let e23 = (frenet.eps2 * frenet.eps3).value();
    let at = t.abs();
    let (tv, nv, bv) = (frenet.tangent, frenet.normal, frenet.binormal);

    let e1 = tv * (k.powf(-1.0 / 3.0) * at.powf(-1.0 / 6.0));
    let e2 = tv * (-k.powf(-5.0 / 3.0) / t * at.powf(-1.0 / 3.0) * (2.0 * t * k1 + k * t1) / 6.0)
        + nv * (e2s * k.powf(1.0 / 3.0) * at.powf(-1.0 / 3.0));
    let t_coeff = k.powi(-3) * t.powi(-2) * at.powf(-0.5) / 18.0
        * (-18.0 * e12 * k.powi(4) * t.powi(2)
            + 10.0 * t.powi(2) * k1.powi(2)
            + 4.0 * k * t * k1 * t1
            + 4.0 * k.powi(2) * t1.powi(2)
            - 6.0 * k * t.powi(2) * k2
            - 3.0 * k.powi(2) * t * t2);
    let e3 = tv * t_coeff + nv * (-0.5 * e2s / t * at.powf(-0.5) * t1) + bv * (e23 * t * at.powf(-0.5));
    Ok([e1, e2, e3])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorollaryMode {
    /// Constant `κ` and `τ`.
    Constant { kappa: f64, tau: f64 },
    /// `κ = A/t`, `τ = B/t`.
    Reciprocal { a: f64, b: f64 },
}

/// Closed-form curvatures of the constant and reciprocal families.
pub fn corollary_curvatures(
    mode: CorollaryMode,
    eps1: Sign,
    eps2: Sign,
    eps3: Sign,
    t: f64,
) -> Result<EquiaffineCurvatures> {
    let (e1, e2, e3) = (eps1.value(), eps2.value(), eps3.value());
    match mode {
        CorollaryMode::Constant { kappa, tau } => {
            check_frenet_data(kappa, tau)?;
            Ok(EquiaffineCurvatures {
                first: 0.0,
                second: -e2 * (e1 * kappa * kappa + e3 * tau * tau) / (kappa.powf(2.0 / 3.0) * tau.abs().cbrt()),
            })
        }
        CorollaryMode::Reciprocal { a, b } => {
            if !(a > 0.0) || b == 0.0 || !b.is_finite() {
                return Err(GeometryError::InvalidParameter(format!(
                    "reciprocal family needs A > 0 and B != 0, got A = {a}, B = {b}"
                )));
            }
            if !(t > 0.0) {
                return Err(GeometryError::InvalidParameter(format!(
                    "reciprocal family needs t > 0, got {t}"
                )));
            }
            let factor = 1.0 + 4.0 * e2 * (e1 * a * a + e3 * b * b);
            Ok(EquiaffineCurvatures {
                first: factor / (8.0 * a * (b.abs() * t.powi(3)).sqrt()),
                second: -factor / (4.0 * (a * a * b.abs()).cbrt() * t),
            })
        }
    }
}

/// Cartan frame, `μ`, `φ` and the curvatures from `route` at `t`.
///
/// The Frenet route needs a unit-speed curve and differentiates `κ, τ`
/// numerically.
pub fn cartan_apparatus(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
    route: Route,
) -> Result<CartanApparatus> {
    let (phi, jet, orientation) = phi_derivatives(metric, conn, curve, t, 3)?;
    let frame = frame_from(phi, &jet, orientation);
    let (e1, e2, e3) = (frame.e1, frame.e2, frame.e3);
    let curvatures = match route {
        Route::Direct => direct_from(phi, &jet, orientation),
        Route::Structural => curvatures_structural(metric, conn, curve, t)?,
        Route::Frenet => {
            let f = frenet_apparatus(metric, conn, curve, t)?;
            let source = NumericCurvatureTorsion::new(metric, conn, curve);
            curvatures_frenet(&source, f.eps1, f.eps2, f.eps3, t)?
        }
    };
    Ok(CartanApparatus {
        t,
        mu: 1.0 / phi[0],
        phi: phi[0],
        orientation,
        e1,
        e2,
        e3,
        curvatures,
        route,
    })
}
