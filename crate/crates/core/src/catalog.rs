//! Built-in curves used by the CLI and the test suites.

use crate::curvejet::CurveSpec;
use crate::equiaffine::ClosedFormCurvatureTorsion;
use crate::error::{GeometryError, Result};
use crate::manifold::Vec3;
use crate::taylor::Taylor;

fn violations(conditions: &[(bool, &str)]) -> Vec<String> {
    conditions
        .iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, msg)| msg.to_string())
        .collect()
}

fn reject(curve: &str, failed: Vec<String>) -> Result<()> {
    if failed.is_empty() {
        Ok(())
    } else {
        Err(GeometryError::InvalidParameter(format!(
            "{curve}: {}",
            failed.join("; ")
        )))
    }
}

/// Every violated admissibility condition of the first example curve.
pub fn example1_violations(a: f64, b: f64, lambda: f64) -> Vec<String> {
    violations(&[
        (lambda == 1.0 || lambda == -1.0, "lambda must be 1 or -1"),
        (a > 0.0, "a > 0 is required"),
        (a * a + lambda > 0.0, "a^2 + lambda > 0 is required"),
        (b != 0.0 && b.is_finite(), "b != 0 is required"),
        (b * b - lambda > 0.0, "b^2 - lambda > 0 is required"),
    ])
}

/// Every violated admissibility condition of the second example curve.
pub fn example2_violations(a: f64, b: f64) -> Vec<String> {
    violations(&[
        (a > 0.0 && a < 1.0, "0 < a < 1 is required"),
        (b * b > 0.0 && b * b < 1.0, "0 < b^2 < 1 is required"),
    ])
}

/// `(√(a²+λ)/b · cos ψ, √(a²+λ)/b · sin ψ, ln(at))`, `ψ = (b/a) ln(at)`, on
/// `t > 0`. Unit speed with `g(α′, α′) = λ` in the `e^{2z}` metric.
pub fn example1_curve(a: f64, b: f64, lambda: f64) -> Result<CurveSpec> {
    reject("example1curve", example1_violations(a, b, lambda))?;
    let radius = (a * a + lambda).sqrt() / b;
    Ok(CurveSpec::from_taylor(
        format!("example1curve(a={a}, b={b}, lambda={lambda})"),
        (0.0, f64::INFINITY),
        move |t| {
            let z = (t * a).ln();
            let (s, c) = (z * (b / a)).sin_cos();
            [c * radius, s * radius, z]
        },
    ))
}

/// `(ln(at), √(1−a²)/b · sinh ψ, √(1−a²)/b · cosh ψ)`, `ψ = (b/a) ln(at)`, on
/// `t > 0`. Spacelike unit speed in the `e^{2x}` metric.
pub fn example2_curve(a: f64, b: f64) -> Result<CurveSpec> {
    reject("example2curve", example2_violations(a, b))?;
    let radius = (1.0 - a * a).sqrt() / b;
    Ok(CurveSpec::from_taylor(
        format!("example2curve(a={a}, b={b})"),
        (0.0, f64::INFINITY),
        move |t| {
            let x = (t * a).ln();
            let (sh, ch) = (x * (b / a)).sinh_cosh();
            [x, sh * radius, ch * radius]
        },
    ))
}

/// `κ = √((a²+λ)(b²−λ))/(at)`, `τ = −λb/t` for [`example1_curve`].
pub fn example1_curvature_torsion(a: f64, b: f64, lambda: f64) -> Result<ClosedFormCurvatureTorsion> {
    reject("example1curve", example1_violations(a, b, lambda))?;
    let k = ((a * a + lambda) * (b * b - lambda)).sqrt() / a;
    Ok(reciprocal_curvature_torsion(k, -lambda * b))
}

/// `κ = √((1−a²)(1−b²))/(at)`, `τ = −b/t` for [`example2_curve`].
pub fn example2_curvature_torsion(a: f64, b: f64) -> Result<ClosedFormCurvatureTorsion> {
    reject("example2curve", example2_violations(a, b))?;
    let k = ((1.0 - a * a) * (1.0 - b * b)).sqrt() / a;
    Ok(reciprocal_curvature_torsion(k, -b))
}

/// `κ = A/t`, `τ = B/t`.
pub fn reciprocal_curvature_torsion(big_a: f64, big_b: f64) -> ClosedFormCurvatureTorsion {
    ClosedFormCurvatureTorsion::new(move |t| big_a / t, move |t| big_b / t)
}

/// Speed normalization `c` of a circular helix, or an error if the helix is
/// null or degenerate.
fn helix_speed(r: f64, h: f64, lorentzian: bool) -> Result<f64> {
    let failed = violations(&[
        (r > 0.0, "r > 0 is required"),
        (h.is_finite() && r.is_finite(), "r and h must be finite"),
        (!lorentzian || r != h.abs(), "r = |h| gives a null helix"),
    ]);
    reject("helix", failed)?;
    let c2 = if lorentzian {
        (r * r - h * h).abs()
    } else {
        r * r + h * h
    };
    Ok(c2.sqrt())
}

/// Unit-speed circular helix `(r cos θ, r sin θ, hθ)`, `θ = s/c`.
///
/// With `lorentzian` the speed is normalized for `dx² + dy² − dz²`, where the
/// helix is spacelike for `r > |h|` and timelike for `r < |h|`.
pub fn circular_helix(r: f64, h: f64, lorentzian: bool) -> Result<CurveSpec> {
    let c = helix_speed(r, h, lorentzian)?;
    Ok(CurveSpec::from_taylor(
        format!("helix(r={r}, h={h})"),
        (f64::NEG_INFINITY, f64::INFINITY),
        move |s| {
            let theta = s / c;
            let (sn, cs) = theta.sin_cos();
            [cs * r, sn * r, theta * h]
        },
    ))
}

/// `(κ, τ)` of [`circular_helix`], both constant.
pub fn circular_helix_curvature_torsion(r: f64, h: f64, lorentzian: bool) -> Result<(f64, f64)> {
    let c = helix_speed(r, h, lorentzian)?;
    let c2 = c * c;
    let tau = if lorentzian && r > h.abs() { -h / c2 } else { h / c2 };
    Ok((r / c2, tau))
}

/// Unit-speed hyperbolic helix `(hθ, r sinh θ, r cosh θ)`, `θ = s/c`,
/// `c² = r² + h²`, spacelike in `dx² + dy² − dz²` with a timelike normal.
pub fn hyperbolic_helix(r: f64, h: f64) -> Result<CurveSpec> {
    reject(
        "hyperbolichelix",
        violations(&[(
            r > 0.0 && r.is_finite() && h.is_finite(),
            "r > 0 and finite h are required",
        )]),
    )?;
    let c = (r * r + h * h).sqrt();
    Ok(CurveSpec::from_taylor(
        format!("hyperbolichelix(r={r}, h={h})"),
        (f64::NEG_INFINITY, f64::INFINITY),
        move |s| {
            let theta = s / c;
            let (sh, ch) = theta.sinh_cosh();
            [theta * h, sh * r, ch * r]
        },
    ))
}

/// `(κ, τ)` of [`hyperbolic_helix`].
pub fn hyperbolic_helix_curvature_torsion(r: f64, h: f64) -> (f64, f64) {
    let c2 = r * r + h * h;
    (r / c2, -h / c2)
}

/// `p + t v`.
pub fn line(p: Vec3, v: Vec3) -> CurveSpec {
    CurveSpec::from_taylor("line", (f64::NEG_INFINITY, f64::INFINITY), move |t| {
        [t * v[0] + p[0], t * v[1] + p[1], t * v[2] + p[2]]
    })
}

/// Unit-speed circle of radius `r` in the plane `z = 0`.
pub fn circle(r: f64) -> CurveSpec {
    CurveSpec::from_taylor(format!("circle(r={r})"), (f64::NEG_INFINITY, f64::INFINITY), move |t| {
        let (s, c) = (t / r).sin_cos();
        [c * r, s * r, Taylor::ZERO]
    })
}

/// Adds smooth terms `amp ∘ sin(w t + phase)` to an analytic base curve, with
/// fixed per-component phases. `terms` holds `(amplitude, frequency)` pairs.
pub fn perturbed(base: &CurveSpec, terms: Vec<(Vec3, f64)>) -> Result<CurveSpec> {
    if base.mode() != crate::curvejet::DerivativeMode::Analytic {
        return Err(GeometryError::InvalidParameter(
            "perturbation needs an analytic base curve".into(),
        ));
    }
    let base = base.clone();
    let label = format!("{} perturbed", base.label());
    let domain = base.domain();
    Ok(CurveSpec::from_eval(label, domain, Perturbed { base, terms }))
}

struct Perturbed {
    base: CurveSpec,
    terms: Vec<(Vec3, f64)>,
}

impl crate::curvejet::CurveEval for Perturbed {
    fn derivatives(&self, t: f64) -> Result<[Vec3; 5]> {
        let mut d = self.base.derivatives(t)?;
        for (k, (amp, w)) in self.terms.iter().enumerate() {
            let phase = [0.0, std::f64::consts::FRAC_PI_2, k as f64 + 1.0];
            for (i, dk) in d.iter_mut().enumerate() {
                // d^i/dt^i sin(w t + φ) = w^i sin(w t + φ + iπ/2)
                let shift = i as f64 * std::f64::consts::FRAC_PI_2;
                for c in 0..3 {
                    dk[c] += amp[c] * w.powi(i as i32) * (w * t + phase[c] + shift).sin();
                }
            }
        }
        Ok(d)
    }
}
