//! Frenet frame, curvature and torsion of non-null unit-speed curves.

use crate::curvejet::{covariant_jet, CovariantJet, CurveSpec, NULL_TOL};
use crate::error::{GeometryError, Result};
use crate::manifold::{ChartMetric, Connection, Sign, Vec3};
use crate::numdiff::central_derivative;

/// Tolerance on `| |g(α′, α′)| − 1 |`.
pub const UNIT_SPEED_TOL: f64 = 1e-6;
/// Relative threshold below which `α′ × ∇α′α′` counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct FrenetApparatus {
    pub t: f64,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub curvature: f64,
    pub torsion: f64,
    pub eps1: Sign,
    pub eps2: Sign,
    pub eps3: Sign,
    /// Sign of `Ω(α′, ∇α′α′, ∇²α′α′)`.
    pub orientation: Sign,
    /// `Ω(α′, ∇α′α′, ∇²α′α′)`.
    pub volume_triple: f64,
    pub jet: CovariantJet,
}

/// Frenet apparatus of a unit-speed curve at `t`.
pub fn frenet_apparatus(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, t: f64) -> Result<FrenetApparatus> {
    let jet = covariant_jet(metric, conn, curve, t, 2)?;
    from_jet(&jet)
}

/// Frenet apparatus from a precomputed jet of order at least 2.
pub fn from_jet(jet: &CovariantJet) -> Result<FrenetApparatus> {
    let t = jet.t;
    let at = &jet.metric;
    let d1 = jet.d1;
    let speed = at.dot(&d1, &d1);
    if speed.abs() <= NULL_TOL * d1.norm_squared() {
        return Err(GeometryError::NullPointEncountered { t });
    }
    if (speed.abs() - 1.0).abs() > UNIT_SPEED_TOL {
        return Err(GeometryError::NotUnitSpeed { t, speed: speed.abs() });
    }
    let eps1 = Sign::of(speed);

    let c = at.cross(&d1, &jet.cd1);
    let cc = at.dot(&c, &c);
    let scale = at.g.norm() * jet.cd1.norm_squared() * d1.norm_squared();
    if !(cc.abs() > DEGENERACY_TOL * scale) {
        return Err(GeometryError::DegenerateCurve {
            t,
            reason: format!("α′ × ∇α′α′ is zero or null (g = {cc:e})"),
        });
    }
    let norm = cc.abs().sqrt();
    let eps2 = Sign::of(at.dot(&jet.cd1, &jet.cd1));
    let eps3 = at.omega * eps1 * eps2;

    let normal = at.cross(&c, &d1) * (eps3.value() / norm);
    let binormal = c * ((at.omega * eps1).value() / norm);
    let volume_triple = at.volume(&d1, &jet.cd1, &jet.cd2);
    let torsion = eps3.value() * volume_triple / (norm * norm);
    Ok(FrenetApparatus {
        t,
        tangent: d1,
        normal,
        binormal,
        curvature: norm,
        torsion,
        eps1,
        eps2,
        eps3,
        orientation: Sign::of(volume_triple),
        volume_triple,
        jet: *jet,
    })
}

/// Residuals of the three Frenet equations at `t`:
/// `∇_T T − ε₂κN`, `∇_T N + ε₁κT − ε₃τB`, `∇_T B + ε₂τN`.
///
/// The frame fields are differentiated numerically along the curve.
pub fn frenet_ode_residual(metric: &ChartMetric, conn: &Connection, curve: &CurveSpec, t: f64) -> Result<[Vec3; 3]> {
    let f = frenet_apparatus(metric, conn, curve, t)?;
    let scale = 0.5 * curve.step_scale(t);
    let frame = |u: f64| -> Result<[Vec3; 3]> {
        let g = frenet_apparatus(metric, conn, curve, u)?;
        Ok([g.tangent, g.normal, g.binormal])
    };
    let mut derivs = [Vec3::zeros(); 3];
    for (k, d) in derivs.iter_mut().enumerate() {
        *d = central_derivative(|u| Ok(frame(u)?[k]), t, 1, scale)?;
    }
    let gamma = conn.christoffel(&f.jet.point)?;
    let cov = |k: usize, v: &Vec3| derivs[k] + gamma.contract(&f.tangent, v);
    let (e1, e2, e3) = (f.eps1.value(), f.eps2.value(), f.eps3.value());
    let (k, tau) = (f.curvature, f.torsion);
    Ok([
        cov(0, &f.tangent) - f.normal * (e2 * k),
        cov(1, &f.normal) + f.tangent * (e1 * k) - f.binormal * (e3 * tau),
        cov(2, &f.binormal) + f.normal * (e2 * tau),
    ])
}
