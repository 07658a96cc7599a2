//! Arc-length and pseudo-arc-length reparametrization.
//!
//! The new curve is `β(s) = α(t(s))`. `s(t)` is the integral of a density
//! `ρ(t)` from the anchor `t₀`; `t(s)` is found by Newton iteration. The
//! derivatives of `β` follow from those of `α` by the chain rule, with the
//! derivatives of `t(s)` obtained from `q = 1/ρ`:
//! `t′ = q, t″ = q′q, t‴ = (q″q + q′²)q`, and so on.

use std::sync::Arc;

use super::{covariant_jet, CurveEval, CurveSpec, NULL_TOL};
use crate::error::{GeometryError, Result};
use crate::manifold::{ChartMetric, Connection, Vec3};
use crate::numdiff::central_derivative;
use crate::quadrature::{integrate, invert_increasing};

const QUAD_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    /// `ρ = |g(α′, α′)|^{1/2}`
    ArcLength,
    /// `ρ = g(∇α′α′, ∇α′α′)^{1/4}` for null curves.
    PseudoArc,
}

struct Inner {
    base: CurveSpec,
    metric: ChartMetric,
    conn: Connection,
    density: Density,
    t0: f64,
    s_domain: (f64, f64),
}

/// A parameter map `s ↔ t` together with the reparametrized curve.
#[derive(Clone)]
pub struct Reparametrization {
    inner: Arc<Inner>,
}

impl Inner {
    fn density(&self, t: f64) -> Result<f64> {
        match self.density {
            Density::ArcLength => {
                let v = self.base.velocity(t)?;
                let at = self.metric.at(&self.base.position(t)?)?;
                let q = at.dot(&v, &v).abs();
                if q <= NULL_TOL * v.norm_squared() {
                    return Err(GeometryError::NullPointEncountered { t });
                }
                Ok(q.sqrt())
            }
            Density::PseudoArc => {
                let jet = covariant_jet(&self.metric, &self.conn, &self.base, t, 1)?;
                let value = jet.metric.dot(&jet.cd1, &jet.cd1);
                if !(value > NULL_TOL * jet.cd1.norm_squared()) {
                    return Err(GeometryError::DegenerateNullCurve { t, value });
                }
                Ok(value.sqrt().sqrt())
            }
        }
    }

    fn integral(&self, from: f64, to: f64) -> Result<f64> {
        integrate(|u| self.density(u), from, to, QUAD_TOL, QUAD_TOL)
    }

    fn t_of_s(&self, s: f64) -> Result<f64> {
        let (lo, hi) = self.base.domain();
        if !(s > self.s_domain.0 && s < self.s_domain.1) {
            return Err(GeometryError::ChartExit {
                t: s,
                radius: 0.0,
                min: self.s_domain.0,
                max: self.s_domain.1,
            });
        }
        let margin = 1e-3 * (hi - lo);
        let guess = (self.t0 + s / self.density(self.t0)?).clamp(lo + margin, hi - margin);
        // Each Newton step integrates only from the previous iterate.
        let mut last: Option<(f64, f64)> = None;
        let map = |t: f64| -> Result<f64> {
            let value = match last {
                Some((tp, sp)) if (t - tp).abs() < 0.5 * (t - self.t0).abs() => sp + self.integral(tp, t)?,
                _ => self.integral(self.t0, t)?,
            };
            last = Some((t, value));
            Ok(value)
        };
        let tol = 1e-13 * s.abs().max(1.0);
        invert_increasing(map, |t| self.density(t), s, lo, hi, guess, tol)
    }
}

// Larger than the default step: the density is smooth and its third
// derivative feeds the fourth position derivative.
const DENSITY_STEP: f64 = 10.0;

impl CurveEval for Inner {
    fn derivatives(&self, s: f64) -> Result<[Vec3; 5]> {
        let t = self.t_of_s(s)?;
        let a = self.base.derivatives(t)?;
        let scale = DENSITY_STEP * self.base.step_scale(t);
        let q = |u: f64| Ok(1.0 / self.density(u)?);
        let q0 = q(t)?;
        let q1: f64 = central_derivative(q, t, 1, scale)?;
        let q2: f64 = central_derivative(q, t, 2, scale)?;
        let q3: f64 = central_derivative(q, t, 3, scale)?;
        let t1 = q0;
        let t2 = q1 * q0;
        let t3 = (q2 * q0 + q1 * q1) * q0;
        let t4 = q0 * q0 * (q3 * q0 + 3.0 * q1 * q2) + q0 * q1 * (q2 * q0 + q1 * q1);
        Ok([
            a[0],
            a[1] * t1,
            a[2] * (t1 * t1) + a[1] * t2,
            a[3] * t1.powi(3) + a[2] * (3.0 * t1 * t2) + a[1] * t3,
            a[4] * t1.powi(4) + a[3] * (6.0 * t1 * t1 * t2) + a[2] * (4.0 * t1 * t3 + 3.0 * t2 * t2) + a[1] * t4,
        ])
    }

    fn position(&self, s: f64) -> Result<Vec3> {
        self.base.position(self.t_of_s(s)?)
    }
}

struct Shared(Arc<Inner>);

impl CurveEval for Shared {
    fn derivatives(&self, s: f64) -> Result<[Vec3; 5]> {
        self.0.derivatives(s)
    }

    fn position(&self, s: f64) -> Result<Vec3> {
        self.0.position(s)
    }
}

impl std::fmt::Debug for Reparametrization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Reparametrization")
            .field("base", &self.inner.base)
            .field("density", &self.inner.density)
            .field("t0", &self.inner.t0)
            .field("s_domain", &self.inner.s_domain)
            .finish()
    }
}

impl Reparametrization {
    /// Builds the parameter map anchored at `t0` (where `s = 0`). The base
    /// curve must have a bounded domain.
    pub fn new(metric: &ChartMetric, conn: &Connection, base: &CurveSpec, t0: f64, density: Density) -> Result<Self> {
        let (a, b) = base.domain();
        if !(a.is_finite() && b.is_finite()) {
            return Err(GeometryError::InvalidParameter(format!(
                "reparametrization needs a bounded parameter interval, got ({a}, {b})"
            )));
        }
        base.check_inside(t0, 0.0)?;
        let mut inner = Inner {
            base: base.clone(),
            metric: metric.clone(),
            conn: conn.clone(),
            density,
            t0,
            s_domain: (f64::NEG_INFINITY, f64::INFINITY),
        };
        if density == Density::PseudoArc {
            let v = base.velocity(t0)?;
            let at = metric.at(&base.position(t0)?)?;
            let g = at.dot(&v, &v);
            if g.abs() > NULL_TOL * v.norm_squared() {
                return Err(GeometryError::InvalidParameter(format!(
                    "pseudo-arc length needs a null curve, g(α′, α′) = {g:e} at t = {t0}"
                )));
            }
        }
        inner.density(t0)?;
        inner.s_domain = (inner.integral(t0, a)?, inner.integral(t0, b)?);
        Ok(Reparametrization { inner: Arc::new(inner) })
    }

    /// `s(t)`.
    pub fn s_of_t(&self, t: f64) -> Result<f64> {
        self.inner.base.check_inside(t, 0.0)?;
        self.inner.integral(self.inner.t0, t)
    }

    /// `t(s)`.
    pub fn t_of_s(&self, s: f64) -> Result<f64> {
        self.inner.t_of_s(s)
    }

    /// The density `ds/dt` at `t`.
    pub fn density(&self, t: f64) -> Result<f64> {
        self.inner.density(t)
    }

    pub fn s_domain(&self) -> (f64, f64) {
        self.inner.s_domain
    }

    pub fn curve(&self) -> CurveSpec {
        let label = match self.inner.density {
            Density::ArcLength => format!("{} (arc length)", self.inner.base.label()),
            Density::PseudoArc => format!("{} (pseudo-arc length)", self.inner.base.label()),
        };
        CurveSpec::from_eval(label, self.inner.s_domain, Shared(self.inner.clone()))
    }
}

/// `β(s) = α(t(s))` with `|g(β′, β′)| = 1` and `s(t₀) = 0`.
pub fn reparametrize_arclength(metric: &ChartMetric, curve: &CurveSpec, t0: f64) -> Result<CurveSpec> {
    Ok(Reparametrization::new(metric, &metric.levi_civita(), curve, t0, Density::ArcLength)?.curve())
}

/// `β(s) = α(t(s))` with `g(∇β′β′, ∇β′β′) = 1` for a null curve `α`.
pub fn reparametrize_pseudo_arclength(
    metric: &ChartMetric,
    conn: &Connection,
    curve: &CurveSpec,
    t0: f64,
) -> Result<CurveSpec> {
    Ok(Reparametrization::new(metric, conn, curve, t0, Density::PseudoArc)?.curve())
}
