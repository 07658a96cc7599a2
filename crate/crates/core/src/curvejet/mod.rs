//! Parametric curves and their covariant derivative jets.
//!
//! A [`CurveSpec`] supplies `α(t)` and, in analytic mode, the ordinary
//! derivatives `α′ … α⁗`. [`covariant_jet`] turns these into
//! `∇_{α′}α′, ∇²_{α′}α′, ∇³_{α′}α′` for a given connection, using the
//! recursion `∇^{k+1}_{α′}α′ = ∇_{α′}(∇^k_{α′}α′)`.

mod reparam;

use std::fmt;
use std::sync::Arc;

use crate::error::{GeometryError, Result};
use crate::manifold::{contract_series, ChartMetric, Connection, JetPoint, MetricAt, Vec3};
use crate::numdiff::{central_derivative, five_point_first, five_point_second};
use crate::taylor::{Taylor, DEGREE};

pub use reparam::{reparametrize_arclength, reparametrize_pseudo_arclength, Density, Reparametrization};

/// `|α′|_aux ≤ REGULARITY_TOL` (Euclidean component norm) counts as singular.
pub const REGULARITY_TOL: f64 = 1e-10;
/// `|g(α′, α′)| ≤ NULL_TOL · |α′|²_aux` counts as null.
pub const NULL_TOL: f64 = 1e-9;

/// Source of a curve's position and ordinary derivatives.
pub trait CurveEval: Send + Sync {
    /// `[α, α′, α″, α‴, α⁗]` at `t`.
    fn derivatives(&self, t: f64) -> Result<[Vec3; 5]>;

    fn position(&self, t: f64) -> Result<Vec3> {
        Ok(self.derivatives(t)?[0])
    }
}

struct TaylorCurve<F>(F);

impl<F> CurveEval for TaylorCurve<F>
where
    F: Fn(Taylor) -> [Taylor; 3] + Send + Sync,
{
    fn derivatives(&self, t: f64) -> Result<[Vec3; 5]> {
        let c = (self.0)(Taylor::variable(t));
        let mut out = [Vec3::zeros(); 5];
        for (k, v) in out.iter_mut().enumerate() {
            *v = Vec3::new(c[0].derivative(k), c[1].derivative(k), c[2].derivative(k));
        }
        if out.iter().any(|v| !v.iter().all(|x| x.is_finite())) {
            return Err(GeometryError::InvalidParameter(format!(
                "curve is not finite at t = {t}"
            )));
        }
        Ok(out)
    }

    fn position(&self, t: f64) -> Result<Vec3> {
        let c = (self.0)(Taylor::constant(t));
        Ok(Vec3::new(c[0].value(), c[1].value(), c[2].value()))
    }
}

struct SampledCurve<F> {
    position: F,
    scale: f64,
}

impl<F> CurveEval for SampledCurve<F>
where
    F: Fn(f64) -> Vec3 + Send + Sync,
{
    fn derivatives(&self, t: f64) -> Result<[Vec3; 5]> {
        let p = |x: f64| Ok((self.position)(x));
        let d1 = central_derivative(p, t, 1, self.scale)?;
        let d2 = central_derivative(p, t, 2, self.scale)?;
        let d3 = central_derivative(p, t, 3, self.scale)?;
        let h = self.scale * f64::EPSILON.powf(1.0 / 8.0);
        let f = |x: f64| (self.position)(x);
        let d4 = (f(t + 2.0 * h) + f(t - 2.0 * h) - (f(t + h) + f(t - h)) * 4.0 + f(t) * 6.0) / h.powi(4);
        Ok([f(t), d1, d2, d3, d4])
    }

    fn position(&self, t: f64) -> Result<Vec3> {
        Ok((self.position)(t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference,
}

/// A parametrized curve on an open interval.
#[derive(Clone)]
pub struct CurveSpec {
    label: String,
    domain: (f64, f64),
    eval: Arc<dyn CurveEval>,
    mode: DerivativeMode,
}

impl fmt::Debug for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveSpec")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("mode", &self.mode)
            .finish()
    }
}

impl CurveSpec {
    /// Curve given by a formula over Taylor series; derivatives are exact.
    pub fn from_taylor<F>(label: impl Into<String>, domain: (f64, f64), f: F) -> Self
    where
        F: Fn(Taylor) -> [Taylor; 3] + Send + Sync + 'static,
    {
        Self::from_eval(label, domain, TaylorCurve(f))
    }

    pub fn from_eval(label: impl Into<String>, domain: (f64, f64), eval: impl CurveEval + 'static) -> Self {
        CurveSpec {
            label: label.into(),
            domain,
            eval: Arc::new(eval),
            mode: DerivativeMode::Analytic,
        }
    }

    /// Curve known only through its position; works in finite-difference
    /// mode.
    pub fn sampled<F>(label: impl Into<String>, domain: (f64, f64), position: F) -> Self
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        let width = domain.1 - domain.0;
        let scale = if width.is_finite() { (0.1 * width).min(1.0) } else { 1.0 };
        CurveSpec {
            label: label.into(),
            domain,
            eval: Arc::new(SampledCurve { position, scale }),
            mode: DerivativeMode::FiniteDifference,
        }
    }

    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        self.mode = mode;
        self
    }

    /// Restriction to the sub-interval `(a, b)`.
    pub fn restrict(&self, a: f64, b: f64) -> Result<Self> {
        if !(a < b && a >= self.domain.0 && b <= self.domain.1) {
            return Err(GeometryError::InvalidParameter(format!(
                "({a}, {b}) is not a sub-interval of ({}, {})",
                self.domain.0, self.domain.1
            )));
        }
        let mut c = self.clone();
        c.domain = (a, b);
        Ok(c)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    /// Errors unless `[t − radius, t + radius]` lies inside the open domain.
    pub fn check_inside(&self, t: f64, radius: f64) -> Result<()> {
        let (a, b) = self.domain;
        if t.is_finite() && t - radius > a && t + radius < b {
            Ok(())
        } else {
            Err(GeometryError::ChartExit {
                t,
                radius,
                min: a,
                max: b,
            })
        }
    }

    /// Step scale for numerical differentiation at `t`: at most 1, and small
    /// enough that every stencil used by the crate stays inside the domain.
    pub fn step_scale(&self, t: f64) -> f64 {
        let dist = (t - self.domain.0).min(self.domain.1 - t);
        (0.25 * dist).min(1.0)
    }

    pub fn position(&self, t: f64) -> Result<Vec3> {
        self.check_inside(t, 0.0)?;
        self.eval.position(t)
    }

    pub fn derivatives(&self, t: f64) -> Result<[Vec3; 5]> {
        self.check_inside(t, 0.0)?;
        self.eval.derivatives(t)
    }

    /// `α′(t)` (analytic or finite-difference according to the mode).
    pub fn velocity(&self, t: f64) -> Result<Vec3> {
        match self.mode {
            DerivativeMode::Analytic => Ok(self.derivatives(t)?[1]),
            DerivativeMode::FiniteDifference => {
                let h = fd_steps(self.step_scale(t))[0];
                self.check_inside(t, 2.0 * h)?;
                refined_first(|x| self.eval.position(x), t, h)
            }
        }
    }
}

/// `(α′, ∇_{α′}α′, ∇²_{α′}α′, ∇³_{α′}α′)` at one parameter value.
///
/// Fields above `order` are not computed and hold NaN.
#[derive(Debug, Clone, Copy)]
pub struct CovariantJet {
    pub t: f64,
    pub point: Vec3,
    pub d1: Vec3,
    pub cd1: Vec3,
    pub cd2: Vec3,
    pub cd3: Vec3,
    pub order: usize,
    pub metric: MetricAt,
}

impl CovariantJet {
    /// `Ω(α′, ∇α′α′, ∇²α′α′)`.
    pub fn volume_triple(&self) -> f64 {
        self.metric.volume(&self.d1, &self.cd1, &self.cd2)
    }
}

fn series_point(d: &[Vec3; 5]) -> JetPoint {
    let comp = |i: usize| {
        let vals: Vec<f64> = d.iter().map(|v| v[i]).collect();
        Taylor::from_derivatives(&vals)
    };
    [comp(0), comp(1), comp(2)]
}

fn series_derivative(v: &JetPoint) -> JetPoint {
    [v[0].differentiate(), v[1].differentiate(), v[2].differentiate()]
}

fn series_add(a: &JetPoint, b: &JetPoint) -> JetPoint {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn series_value(v: &JetPoint) -> Vec3 {
    Vec3::new(v[0].value(), v[1].value(), v[2].value())
}

/// Step sizes for the three nested difference levels in finite-difference
/// mode.
fn fd_steps(scale: f64) -> [f64; 3] {
    [scale * 0.1; 3]
}

fn check_regular(t: f64, d1: &Vec3) -> Result<()> {
    if d1.norm() <= REGULARITY_TOL || !d1.iter().all(|v| v.is_finite()) {
        Err(GeometryError::IrregularCurve { t })
    } else {
        Ok(())
    }
}

/// Covariant derivatives of `α′` along `α` up to `order` (1 to 3).
pub fn covariant_jet(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
    order: usize,
) -> Result<CovariantJet> {
    if !(1..=3).contains(&order) {
        return Err(GeometryError::InvalidParameter(format!(
            "jet order {order} not in 1..=3"
        )));
    }
    match curve.mode {
        DerivativeMode::Analytic => analytic_jet(metric, conn, curve, t, order),
        DerivativeMode::FiniteDifference => fd_jet(metric, conn, curve, t, order),
    }
}

fn analytic_jet(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t: f64,
    order: usize,
) -> Result<CovariantJet> {
    let d = curve.derivatives(t)?;
    check_regular(t, &d[1])?;
    let point = series_point(&d);
    let gamma = conn.christoffel_series(&point)?;
    let vel = series_derivative(&point);
    let mut fields = [
        series_value(&vel),
        Vec3::repeat(f64::NAN),
        Vec3::repeat(f64::NAN),
        Vec3::repeat(f64::NAN),
    ];
    // cd_{k+1}(u) = d/du cd_k(u) + Γ(α(u))(α′(u), cd_k(u)); the series loses
    // one valid degree per step, and DEGREE = 4 leaves exactly enough for cd3.
    const _: () = assert!(DEGREE >= 4);
    let mut current = vel;
    for field in fields.iter_mut().skip(1).take(order) {
        current = series_add(&series_derivative(&current), &contract_series(&gamma, &vel, &current));
        *field = series_value(&current);
    }
    Ok(CovariantJet {
        t,
        point: d[0],
        d1: fields[0],
        cd1: fields[1],
        cd2: fields[2],
        cd3: fields[3],
        order,
        metric: metric.at(&d[0])?,
    })
}

/// Five-point first derivative with one Richardson step (sixth order).
fn refined_first<F: FnMut(f64) -> Result<Vec3>>(mut f: F, x: f64, h: f64) -> Result<Vec3> {
    let coarse = five_point_first(&mut f, x, h)?;
    let fine = five_point_first(&mut f, x, 0.5 * h)?;
    Ok((fine * 16.0 - coarse) / 15.0)
}

fn refined_second<F: FnMut(f64) -> Result<Vec3>>(mut f: F, x: f64, h: f64) -> Result<Vec3> {
    let coarse = five_point_second(&mut f, x, h)?;
    let fine = five_point_second(&mut f, x, 0.5 * h)?;
    Ok((fine * 16.0 - coarse) / 15.0)
}

fn fd_jet(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, t: f64, order: usize) -> Result<CovariantJet> {
    let scale = curve.step_scale(t);
    let steps = fd_steps(scale);
    let radius = 2.0 * steps.iter().take(order).sum::<f64>();
    curve.check_inside(t, radius)?;
    let pos = |x: f64| curve.eval.position(x);

    // Level 1: α′ and ∇α′α′ straight from positions.
    let level1 = |x: f64| -> Result<(Vec3, Vec3)> {
        let d1 = refined_first(pos, x, steps[0])?;
        let d2 = refined_second(pos, x, steps[0])?;
        let gamma = conn.christoffel(&pos(x)?)?;
        Ok((d1, d2 + gamma.contract(&d1, &d1)))
    };
    let level2 = |x: f64| -> Result<(Vec3, Vec3, Vec3)> {
        let (d1, cd1) = level1(x)?;
        let dcd1 = refined_first(|y| Ok(level1(y)?.1), x, steps[1])?;
        let gamma = conn.christoffel(&pos(x)?)?;
        Ok((d1, cd1, dcd1 + gamma.contract(&d1, &cd1)))
    };

    let point = pos(t)?;
    let nan = Vec3::repeat(f64::NAN);
    let (d1, cd1, cd2, cd3) = match order {
        1 => {
            let (d1, cd1) = level1(t)?;
            (d1, cd1, nan, nan)
        }
        2 => {
            let (d1, cd1, cd2) = level2(t)?;
            (d1, cd1, cd2, nan)
        }
        _ => {
            let (d1, cd1, cd2) = level2(t)?;
            let dcd2 = refined_first(|y| Ok(level2(y)?.2), t, steps[2])?;
            let gamma = conn.christoffel(&point)?;
            (d1, cd1, cd2, dcd2 + gamma.contract(&d1, &cd2))
        }
    };
    check_regular(t, &d1)?;
    Ok(CovariantJet {
        t,
        point,
        d1,
        cd1,
        cd2,
        cd3,
        order,
        metric: metric.at(&point)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalTag {
    Spacelike,
    Timelike,
    Null,
}

impl CausalTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CausalTag::Spacelike => "spacelike",
            CausalTag::Timelike => "timelike",
            CausalTag::Null => "null",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalCharacter {
    pub tag: CausalTag,
    /// `g(α′, α′)`.
    pub value: f64,
    /// `sign g(α′, α′)` for non-null tangents.
    pub eps1: Option<crate::manifold::Sign>,
}

/// Classifies the tangent `α′(t)`.
pub fn causal_character(metric: &ChartMetric, curve: &CurveSpec, t: f64) -> Result<CausalCharacter> {
    let v = curve.velocity(t)?;
    check_regular(t, &v)?;
    let at = metric.at(&curve.position(t)?)?;
    Ok(classify(&at, &v))
}

pub(crate) fn classify(at: &MetricAt, v: &Vec3) -> CausalCharacter {
    use crate::manifold::Sign;
    let value = at.dot(v, v);
    if value.abs() <= NULL_TOL * v.norm_squared() {
        CausalCharacter {
            tag: CausalTag::Null,
            value,
            eps1: None,
        }
    } else if value > 0.0 {
        CausalCharacter {
            tag: CausalTag::Spacelike,
            value,
            eps1: Some(Sign::Plus),
        }
    } else {
        CausalCharacter {
            tag: CausalTag::Timelike,
            value,
            eps1: Some(Sign::Minus),
        }
    }
}
