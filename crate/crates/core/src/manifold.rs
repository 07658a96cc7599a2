//! Pseudo-Riemannian metrics on a single 3-dimensional chart.
//!
//! Vectors are coordinate components in the chart. The volume form is the
//! metric one, `Ω_ijk = √|det g| ε_ijk`, so `Ω(u, v, w) = √|det g| det[u v w]`
//! for the declared orientation and `±1` on orthonormal triples. The cross
//! product is the unique vector with `g(X × Y, Z) = Ω(X, Y, Z)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use nalgebra::{Matrix3, Vector3};

use crate::error::{GeometryError, Result};
use crate::numdiff::five_point_first;
use crate::taylor::Taylor;

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;
pub type JetPoint = [Taylor; 3];
pub type JetMatrix = [[Taylor; 3]; 3];
/// Christoffel symbols over Taylor coefficients, indexed `[k][i][j]`.
pub type JetChristoffel = [[[Taylor; 3]; 3]; 3];

type MetricJetFn = dyn Fn(&JetPoint) -> JetMatrix + Send + Sync;
type MetricFn = dyn Fn(&Vec3) -> Mat3 + Send + Sync;
type ConnectionJetFn = dyn Fn(&JetPoint) -> JetChristoffel + Send + Sync;

/// A causal or orientation sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign of a non-zero real; zero maps to `Plus`.
    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

/// Christoffel symbols `Γ^k_ij`, stored as `gamma[k][i][j]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel(pub [[[f64; 3]; 3]; 3]);

impl Christoffel {
    pub const ZERO: Christoffel = Christoffel([[[0.0; 3]; 3]; 3]);

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.0[k][i][j]
    }

    /// `Γ^k_ij u^i v^j`.
    pub fn contract(&self, u: &Vec3, v: &Vec3) -> Vec3 {
        let mut out = Vec3::zeros();
        for k in 0..3 {
            let mut s = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    s += self.0[k][i][j] * u[i] * v[j];
                }
            }
            out[k] = s;
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Christoffel) -> f64 {
        let mut m: f64 = 0.0;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    m = m.max((self.0[k][i][j] - other.0[k][i][j]).abs());
                }
            }
        }
        m
    }
}

/// `Γ^k_ij u^i v^j` for series-valued fields.
pub fn contract_series(gamma: &JetChristoffel, u: &JetPoint, v: &JetPoint) -> JetPoint {
    let mut out = [Taylor::ZERO; 3];
    for (k, o) in out.iter_mut().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                *o += gamma[k][i][j] * u[i] * v[j];
            }
        }
    }
    out
}

enum MetricSource {
    Analytic(Arc<MetricJetFn>),
    Sampled(Arc<MetricFn>),
}

impl Clone for MetricSource {
    fn clone(&self) -> Self {
        match self {
            MetricSource::Analytic(f) => MetricSource::Analytic(Arc::clone(f)),
            MetricSource::Sampled(f) => MetricSource::Sampled(Arc::clone(f)),
        }
    }
}

/// A metric `g_ij(x)` on one chart of a 3-manifold.
///
/// Metrics built with [`ChartMetric::analytic`] are evaluated over Taylor
/// coefficients, which yields exact partial derivatives. Metrics built with
/// [`ChartMetric::sampled`] take partials by fourth-order central differences.
#[derive(Clone)]
pub struct ChartMetric {
    name: String,
    source: MetricSource,
    orientation: Sign,
    closed_form: Option<Arc<ConnectionJetFn>>,
    omega: Arc<OnceLock<Sign>>,
}

impl fmt::Debug for ChartMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartMetric")
            .field("name", &self.name)
            .field("analytic", &matches!(self.source, MetricSource::Analytic(_)))
            .field("closed_form_connection", &self.closed_form.is_some())
            .finish()
    }
}

impl ChartMetric {
    pub fn analytic<F>(name: impl Into<String>, g: F) -> Self
    where
        F: Fn(&JetPoint) -> JetMatrix + Send + Sync + 'static,
    {
        Self::with_source(name, MetricSource::Analytic(Arc::new(g)))
    }

    pub fn sampled<F>(name: impl Into<String>, g: F) -> Self
    where
        F: Fn(&Vec3) -> Mat3 + Send + Sync + 'static,
    {
        Self::with_source(name, MetricSource::Sampled(Arc::new(g)))
    }

    fn with_source(name: impl Into<String>, source: MetricSource) -> Self {
        Self {
            name: name.into(),
            source,
            orientation: Sign::Plus,
            closed_form: None,
            omega: Arc::new(OnceLock::new()),
        }
    }

    /// Attaches closed-form Christoffel symbols used by [`levi_civita`](Self::levi_civita).
    pub fn with_closed_form_connection<F>(mut self, gamma: F) -> Self
    where
        F: Fn(&JetPoint) -> JetChristoffel + Send + Sync + 'static,
    {
        self.closed_form = Some(Arc::new(gamma));
        self
    }

    /// Declares the positively oriented coordinate order. Only the parity of
    /// the permutation matters.
    pub fn with_orientation(mut self, order: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &i in &order {
            if i > 2 || seen[i] {
                return Err(GeometryError::InvalidParameter(format!(
                    "orientation {order:?} is not a permutation of (0, 1, 2)"
                )));
            }
            seen[i] = true;
        }
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| order[i] > order[j])
            .count();
        self.orientation = if inversions % 2 == 0 { Sign::Plus } else { Sign::Minus };
        Ok(self)
    }

    /// Same metric with the analytic source hidden, so partial derivatives
    /// are taken by finite differences and no closed-form connection is
    /// attached.
    pub fn as_sampled(&self) -> ChartMetric {
        let source = match &self.source {
            MetricSource::Analytic(f) => {
                let f = Arc::clone(f);
                MetricSource::Sampled(Arc::new(move |p: &Vec3| {
                    let jp = [Taylor::constant(p[0]), Taylor::constant(p[1]), Taylor::constant(p[2])];
                    let m = f(&jp);
                    Mat3::from_fn(|i, j| m[i][j].value())
                }))
            }
            MetricSource::Sampled(f) => MetricSource::Sampled(Arc::clone(f)),
        };
        ChartMetric {
            name: format!("{}(sampled)", self.name),
            source,
            orientation: self.orientation,
            closed_form: None,
            omega: Arc::new(OnceLock::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_closed_form_connection(&self) -> bool {
        self.closed_form.is_some()
    }

    fn raw(&self, p: &Vec3) -> Mat3 {
        match &self.source {
            MetricSource::Analytic(f) => {
                let jp = [Taylor::constant(p[0]), Taylor::constant(p[1]), Taylor::constant(p[2])];
                let m = f(&jp);
                Mat3::from_fn(|i, j| m[i][j].value())
            }
            MetricSource::Sampled(f) => f(p),
        }
    }

    /// `[g_ij(p)]`, symmetrized.
    pub fn metric_eval(&self, p: &Vec3) -> Result<Mat3> {
        let raw = self.raw(p);
        let g = (raw + raw.transpose()) * 0.5;
        if !g.iter().all(|v| v.is_finite()) {
            return Err(GeometryError::SingularMetric {
                point: (*p).into(),
                det: f64::NAN,
            });
        }
        let det = g.determinant();
        let row_norm = (0..3).map(|i| g.row(i).norm()).fold(0.0, f64::max);
        if det.abs() <= 1e-12 * row_norm.powi(3) || row_norm == 0.0 {
            return Err(GeometryError::SingularMetric {
                point: (*p).into(),
                det,
            });
        }
        Ok(g)
    }

    fn check_signature(&self, det: f64) -> Result<Sign> {
        let found = Sign::of(det);
        let expected = *self.omega.get_or_init(|| found);
        if expected != found {
            return Err(GeometryError::SignatureChanged {
                expected: expected.as_i8(),
                found: found.as_i8(),
            });
        }
        Ok(found)
    }

    /// `ω = sign(det g)`. The first queried point fixes the sign for the
    /// lifetime of the metric (and its clones).
    pub fn signature_sign(&self, p: &Vec3) -> Result<Sign> {
        let g = self.metric_eval(p)?;
        self.check_signature(g.determinant())
    }

    /// Pointwise metric data.
    pub fn at(&self, p: &Vec3) -> Result<MetricAt> {
        let g = self.metric_eval(p)?;
        let det = g.determinant();
        let omega = self.check_signature(det)?;
        let g_inv = g.try_inverse().ok_or(GeometryError::SingularMetric {
            point: (*p).into(),
            det,
        })?;
        Ok(MetricAt {
            g,
            g_inv,
            det,
            sqrt_abs_det: det.abs().sqrt(),
            omega,
            orientation: self.orientation,
        })
    }

    pub fn volume(&self, p: &Vec3, u: &Vec3, v: &Vec3, w: &Vec3) -> Result<f64> {
        Ok(self.at(p)?.volume(u, v, w))
    }

    pub fn cross(&self, p: &Vec3, x: &Vec3, y: &Vec3) -> Result<Vec3> {
        Ok(self.at(p)?.cross(x, y))
    }

    /// Partial derivatives `∂g_ij/∂x^k`, returned as `[∂_1 g, ∂_2 g, ∂_3 g]`.
    pub fn partials(&self, p: &Vec3) -> Result<[Mat3; 3]> {
        let mut out = [Mat3::zeros(); 3];
        match &self.source {
            MetricSource::Analytic(f) => {
                for (k, dk) in out.iter_mut().enumerate() {
                    let mut jp = [Taylor::constant(p[0]), Taylor::constant(p[1]), Taylor::constant(p[2])];
                    jp[k] = Taylor::variable(p[k]);
                    let m = f(&jp);
                    *dk = Mat3::from_fn(|i, j| 0.5 * (m[i][j].derivative(1) + m[j][i].derivative(1)));
                }
            }
            MetricSource::Sampled(_) => {
                for (k, dk) in out.iter_mut().enumerate() {
                    let h = f64::EPSILON.powf(0.2) * p[k].abs().max(1.0);
                    *dk = five_point_first(
                        |x| {
                            let mut q = *p;
                            q[k] = x;
                            self.metric_eval(&q)
                        },
                        p[k],
                        h,
                    )
                    .map_err(|e| GeometryError::DifferentiationFailure(format!("metric partial ∂_{k}: {e}")))?;
                }
            }
        }
        if out.iter().any(|m| !m.iter().all(|v| v.is_finite())) {
            return Err(GeometryError::DifferentiationFailure(
                "non-finite metric partials".into(),
            ));
        }
        Ok(out)
    }

    /// Levi-Civita Christoffel symbols derived from the metric,
    /// `Γ^k_ij = ½ g^km (∂_i g_jm + ∂_j g_im − ∂_m g_ij)`.
    pub fn christoffel(&self, p: &Vec3) -> Result<Christoffel> {
        let at = self.at(p)?;
        let dg = self.partials(p)?;
        let mut gamma = [[[0.0; 3]; 3]; 3];
        for (k, gk) in gamma.iter_mut().enumerate() {
            for i in 0..3 {
                for j in i..3 {
                    let mut s = 0.0;
                    for m in 0..3 {
                        s += at.g_inv[(k, m)] * (dg[i][(j, m)] + dg[j][(i, m)] - dg[m][(i, j)]);
                    }
                    gk[i][j] = 0.5 * s;
                    gk[j][i] = 0.5 * s;
                }
            }
        }
        Ok(Christoffel(gamma))
    }

    /// Levi-Civita connection: closed form when attached, derived otherwise.
    pub fn levi_civita(&self) -> Connection {
        match &self.closed_form {
            Some(f) => Connection {
                provenance: Provenance::ClosedForm,
                source: ConnectionSource::ClosedForm(Arc::clone(f)),
            },
            None => Connection::derived(self),
        }
    }

    /// Largest entry of `∂_k g_ij − Γ^m_ki g_mj − Γ^m_kj g_im` for the given
    /// connection; zero for the Levi-Civita connection.
    pub fn compatibility_residual(&self, conn: &Connection, p: &Vec3) -> Result<f64> {
        let g = self.metric_eval(p)?;
        let dg = self.partials(p)?;
        let gamma = conn.christoffel(p)?;
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut r = dg[k][(i, j)];
                    for m in 0..3 {
                        r -= gamma.0[m][k][i] * g[(m, j)] + gamma.0[m][k][j] * g[(i, m)];
                    }
                    worst = worst.max(r.abs());
                }
            }
        }
        Ok(worst)
    }
}

/// Metric data at one point.
#[derive(Debug, Clone, Copy)]
pub struct MetricAt {
    pub g: Mat3,
    pub g_inv: Mat3,
    pub det: f64,
    pub sqrt_abs_det: f64,
    pub omega: Sign,
    orientation: Sign,
}

impl MetricAt {
    pub fn dot(&self, u: &Vec3, v: &Vec3) -> f64 {
        (self.g * v).dot(u)
    }

    /// `|g(v, v)|^{1/2}`.
    pub fn abs_norm(&self, v: &Vec3) -> f64 {
        self.dot(v, v).abs().sqrt()
    }

    /// `Ω(u, v, w)`.
    pub fn volume(&self, u: &Vec3, v: &Vec3, w: &Vec3) -> f64 {
        self.orientation.value() * self.sqrt_abs_det * u.cross(v).dot(w)
    }

    /// `X × Y` with `g(X × Y, Z) = Ω(X, Y, Z)`.
    pub fn cross(&self, x: &Vec3, y: &Vec3) -> Vec3 {
        self.g_inv * (x.cross(y) * (self.orientation.value() * self.sqrt_abs_det))
    }

    /// Gram determinant `det[g(U_i, V_j)]`.
    pub fn gram(&self, u: [&Vec3; 3], v: [&Vec3; 3]) -> f64 {
        Mat3::from_fn(|i, j| self.dot(u[i], v[j])).determinant()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    DerivedFromMetric,
}

#[derive(Clone)]
enum ConnectionSource {
    ClosedForm(Arc<ConnectionJetFn>),
    Derived(ChartMetric),
}

/// A torsion-free affine connection given by its Christoffel symbols.
#[derive(Clone)]
pub struct Connection {
    provenance: Provenance,
    source: ConnectionSource,
}

impl fmt::Debug for Connection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Connection")
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl Connection {
    pub fn derived(metric: &ChartMetric) -> Self {
        Connection {
            provenance: Provenance::DerivedFromMetric,
            source: ConnectionSource::Derived(metric.clone()),
        }
    }

    pub fn closed_form<F>(gamma: F) -> Self
    where
        F: Fn(&JetPoint) -> JetChristoffel + Send + Sync + 'static,
    {
        Connection {
            provenance: Provenance::ClosedForm,
            source: ConnectionSource::ClosedForm(Arc::new(gamma)),
        }
    }

    /// The flat connection of an affine chart.
    pub fn flat() -> Self {
        Self::closed_form(|_| [[[Taylor::ZERO; 3]; 3]; 3])
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn christoffel(&self, p: &Vec3) -> Result<Christoffel> {
        match &self.source {
            ConnectionSource::ClosedForm(f) => {
                let jp = [Taylor::constant(p[0]), Taylor::constant(p[1]), Taylor::constant(p[2])];
                let s = f(&jp);
                let mut gamma = [[[0.0; 3]; 3]; 3];
                for k in 0..3 {
                    for i in 0..3 {
                        for j in 0..3 {
                            gamma[k][i][j] = s[k][i][j].value();
                        }
                    }
                }
                Ok(Christoffel(gamma))
            }
            ConnectionSource::Derived(m) => m.christoffel(p),
        }
    }

    /// Christoffel symbols along a point-valued series `p(u)`, as series in
    /// `u`.
    ///
    /// Closed-form connections are evaluated exactly. Derived connections are
    /// sampled on the polynomial path and only carry coefficients up to
    /// degree 2.
    pub fn christoffel_series(&self, p: &JetPoint) -> Result<JetChristoffel> {
        match &self.source {
            ConnectionSource::ClosedForm(f) => Ok(f(p)),
            ConnectionSource::Derived(m) => {
                let base = Vec3::new(p[0].value(), p[1].value(), p[2].value());
                let speed = Vec3::new(p[0].derivative(1), p[1].derivative(1), p[2].derivative(1)).norm();
                let h = 2e-3 * base.norm().max(1.0) / speed.max(1e-3);
                let at_offset = |d: f64| -> Result<Vec3> {
                    Ok(Vec3::new(p[0].eval_offset(d), p[1].eval_offset(d), p[2].eval_offset(d)))
                };
                let g0 = m.christoffel(&base)?;
                let mut out = [[[Taylor::ZERO; 3]; 3]; 3];
                // Differentiate each component along the path.
                let sample = |d: f64| -> Result<[f64; 27]> {
                    let g = m.christoffel(&at_offset(d)?)?;
                    let mut flat = [0.0; 27];
                    for k in 0..3 {
                        for i in 0..3 {
                            for j in 0..3 {
                                flat[9 * k + 3 * i + j] = g.0[k][i][j];
                            }
                        }
                    }
                    Ok(flat)
                };
                let pts = [-2.0, -1.0, 1.0, 2.0].map(|c| sample(c * h));
                let [m2, m1, p1, p2] = pts;
                let (m2, m1, p1, p2) = (m2?, m1?, p1?, p2?);
                for k in 0..3 {
                    for i in 0..3 {
                        for j in 0..3 {
                            let n = 9 * k + 3 * i + j;
                            let c = g0.0[k][i][j];
                            let d1 = (m2[n] - p2[n] + 8.0 * (p1[n] - m1[n])) / (12.0 * h);
                            let d2 = (16.0 * (p1[n] + m1[n]) - (p2[n] + m2[n]) - 30.0 * c) / (12.0 * h * h);
                            out[k][i][j] = Taylor::from_derivatives(&[c, d1, d2]);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Largest `|Γ^k_ij − Γ^k_ji|`.
    pub fn torsion_residual(&self, p: &Vec3) -> Result<f64> {
        let g = self.christoffel(p)?;
        let mut worst: f64 = 0.0;
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max((g.0[k][i][j] - g.0[k][j][i]).abs());
                }
            }
        }
        Ok(worst)
    }
}

fn diagonal(scale: Taylor, signs: [f64; 3]) -> JetMatrix {
    let mut m = [[Taylor::ZERO; 3]; 3];
    for i in 0..3 {
        m[i][i] = scale * signs[i];
    }
    m
}

/// Names accepted by [`catalog_metric`].
pub const CATALOG_METRICS: [&str; 4] = ["euclidean3", "minkowski3_ppm", "example1", "example2"];

/// `dx² + dy² + dz²`.
pub fn euclidean3() -> ChartMetric {
    ChartMetric::analytic("euclidean3", |_| diagonal(Taylor::constant(1.0), [1.0, 1.0, 1.0]))
        .with_closed_form_connection(|_| [[[Taylor::ZERO; 3]; 3]; 3])
}

/// `dx² + dy² − dz²`.
pub fn minkowski3_ppm() -> ChartMetric {
    ChartMetric::analytic("minkowski3_ppm", |_| diagonal(Taylor::constant(1.0), [1.0, 1.0, -1.0]))
        .with_closed_form_connection(|_| [[[Taylor::ZERO; 3]; 3]; 3])
}

/// `e^{2z}(dx² + dy² − dz²)`.
pub fn example1() -> ChartMetric {
    ChartMetric::analytic("example1", |p| diagonal((p[2] * 2.0).exp(), [1.0, 1.0, -1.0])).with_closed_form_connection(
        |_| {
            let one = Taylor::constant(1.0);
            let mut g = [[[Taylor::ZERO; 3]; 3]; 3];
            // ∇_∂x ∂x = ∇_∂y ∂y = ∇_∂z ∂z = ∂z
            g[2][0][0] = one;
            g[2][1][1] = one;
            g[2][2][2] = one;
            // ∇_∂x ∂z = ∂x, ∇_∂y ∂z = ∂y
            g[0][0][2] = one;
            g[0][2][0] = one;
            g[1][1][2] = one;
            g[1][2][1] = one;
            g
        },
    )
}

/// `e^{2x}(dx² + dy² − dz²)`.
pub fn example2() -> ChartMetric {
    ChartMetric::analytic("example2", |p| diagonal((p[0] * 2.0).exp(), [1.0, 1.0, -1.0])).with_closed_form_connection(
        |_| {
            let one = Taylor::constant(1.0);
            let mut g = [[[Taylor::ZERO; 3]; 3]; 3];
            // ∇_∂x ∂x = −∇_∂y ∂y = ∇_∂z ∂z = ∂x
            g[0][0][0] = one;
            g[0][1][1] = -one;
            g[0][2][2] = one;
            // ∇_∂x ∂y = ∂y, ∇_∂x ∂z = ∂z
            g[1][0][1] = one;
            g[1][1][0] = one;
            g[2][0][2] = one;
            g[2][2][0] = one;
            g
        },
    )
}

/// Looks up a catalog metric. None of the catalog metrics take parameters.
pub fn catalog_metric(name: &str, params: &BTreeMap<String, f64>) -> Result<ChartMetric> {
    let metric = match name {
        "euclidean3" => euclidean3(),
        "minkowski3_ppm" | "minkowski3" => minkowski3_ppm(),
        "example1" => example1(),
        "example2" => example2(),
        other => return Err(GeometryError::UnknownCatalogEntry(other.to_string())),
    };
    if let Some(key) = params.keys().next() {
        return Err(GeometryError::InvalidParameter(format!(
            "metric `{name}` takes no parameters (got `{key}`)"
        )));
    }
    Ok(metric)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Vec3 {
        let mut v = Vec3::zeros();
        v[i] = 1.0;
        v
    }

    #[test]
    fn catalog_metric_values() {
        let p0 = Vec3::zeros();
        assert_eq!(
            minkowski3_ppm().metric_eval(&Vec3::new(3.0, -1.0, 7.0)).unwrap(),
            Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0))
        );
        assert_eq!(
            example1().metric_eval(&p0).unwrap(),
            Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0))
        );
        let g = example2().metric_eval(&Vec3::new(2f64.ln(), 0.0, 0.0)).unwrap();
        let expect = Mat3::from_diagonal(&Vec3::new(4.0, 4.0, -4.0));
        assert!((g - expect).abs().max() < 1e-14);
    }

    #[test]
    fn signature_signs() {
        assert_eq!(euclidean3().signature_sign(&Vec3::zeros()).unwrap(), Sign::Plus);
        assert_eq!(minkowski3_ppm().signature_sign(&Vec3::zeros()).unwrap(), Sign::Minus);
        let m = example1();
        for z in [-2.0, 0.0, 1.5] {
            assert_eq!(m.signature_sign(&Vec3::new(0.3, 0.1, z)).unwrap(), Sign::Minus);
        }
    }

    #[test]
    fn signature_change_is_detected() {
        let m = ChartMetric::sampled("flip", |p: &Vec3| {
            Mat3::from_diagonal(&Vec3::new(1.0, 1.0, p[2].signum()))
        });
        assert_eq!(m.signature_sign(&Vec3::new(0.0, 0.0, 1.0)).unwrap(), Sign::Plus);
        let err = m.signature_sign(&Vec3::new(0.0, 0.0, -1.0)).unwrap_err();
        assert_eq!(err, GeometryError::SignatureChanged { expected: 1, found: -1 });
    }

    #[test]
    fn singular_metric_is_rejected() {
        let m = ChartMetric::sampled("degenerate", |_| Mat3::from_diagonal(&Vec3::new(1.0, 1.0, 0.0)));
        assert!(matches!(
            m.metric_eval(&Vec3::zeros()),
            Err(GeometryError::SingularMetric { .. })
        ));
    }

    #[test]
    fn example_christoffels_match_closed_forms() {
        for metric in [example1(), example2()] {
            let closed = metric.levi_civita();
            assert_eq!(closed.provenance(), Provenance::ClosedForm);
            let derived = Connection::derived(&metric);
            let fd = Connection::derived(&metric.as_sampled());
            for p in [Vec3::new(0.1, -0.4, 0.3), Vec3::new(-1.0, 2.0, -0.7)] {
                let c = closed.christoffel(&p).unwrap();
                assert!(c.max_abs_diff(&derived.christoffel(&p).unwrap()) < 1e-12);
                assert!(c.max_abs_diff(&fd.christoffel(&p).unwrap()) < 1e-8);
            }
        }
    }

    #[test]
    fn example1_connection_entries() {
        let c = example1().levi_civita().christoffel(&Vec3::new(0.0, 0.0, 0.4)).unwrap();
        // ∇_∂x ∂x = ∂z, ∇_∂x ∂z = ∂x, ∇_∂y ∂z = ∂y, ∇_∂x ∂y = 0
        assert_eq!(c.contract(&e(0), &e(0)), e(2));
        assert_eq!(c.contract(&e(0), &e(2)), e(0));
        assert_eq!(c.contract(&e(1), &e(2)), e(1));
        assert_eq!(c.contract(&e(0), &e(1)), Vec3::zeros());
    }

    #[test]
    fn example2_connection_entries() {
        let c = example2().levi_civita().christoffel(&Vec3::new(0.2, 0.0, 0.0)).unwrap();
        assert_eq!(c.contract(&e(0), &e(0)), e(0));
        assert_eq!(c.contract(&e(1), &e(1)), -e(0));
        assert_eq!(c.contract(&e(2), &e(2)), e(0));
        assert_eq!(c.contract(&e(0), &e(1)), e(1));
        assert_eq!(c.contract(&e(0), &e(2)), e(2));
        assert_eq!(c.contract(&e(1), &e(2)), Vec3::zeros());
    }

    #[test]
    fn flat_metrics_have_zero_connection() {
        for m in [euclidean3(), minkowski3_ppm()] {
            let c = Connection::derived(&m).christoffel(&Vec3::new(1.0, 2.0, 3.0)).unwrap();
            assert_eq!(c, Christoffel::ZERO);
        }
    }

    #[test]
    fn volume_examples() {
        let m = minkowski3_ppm();
        assert_eq!(m.volume(&Vec3::zeros(), &e(0), &e(1), &e(2)).unwrap(), 1.0);
        let v = example1()
            .volume(&Vec3::new(0.0, 0.0, 2f64.ln()), &e(0), &e(1), &e(2))
            .unwrap();
        assert!((v - 8.0).abs() < 1e-13);
        let u = Vec3::new(0.3, -1.0, 2.0);
        assert_eq!(m.volume(&Vec3::zeros(), &u, &u, &e(2)).unwrap(), 0.0);
    }

    #[test]
    fn cross_examples() {
        let p = Vec3::zeros();
        assert_eq!(euclidean3().cross(&p, &e(0), &e(1)).unwrap(), e(2));
        assert_eq!(minkowski3_ppm().cross(&p, &e(0), &e(1)).unwrap(), -e(2));
        let x = Vec3::new(0.4, 1.0, -3.0);
        assert_eq!(
            example1().cross(&Vec3::new(0.0, 0.0, 0.5), &x, &x).unwrap(),
            Vec3::zeros()
        );
    }

    #[test]
    fn reversed_orientation_flips_volume() {
        let m = euclidean3().with_orientation([1, 0, 2]).unwrap();
        assert_eq!(m.volume(&Vec3::zeros(), &e(0), &e(1), &e(2)).unwrap(), -1.0);
        assert!(euclidean3().with_orientation([0, 0, 1]).is_err());
    }

    #[test]
    fn derived_connection_is_metric_compatible() {
        let m = example2().as_sampled();
        let conn = Connection::derived(&m);
        let p = Vec3::new(0.4, -0.2, 1.1);
        assert!(m.compatibility_residual(&conn, &p).unwrap() < 1e-8);
        assert!(conn.torsion_residual(&p).unwrap() == 0.0);
    }

    #[test]
    fn unknown_catalog_names_and_parameters() {
        let none = BTreeMap::new();
        assert!(matches!(
            catalog_metric("hyperbolic", &none),
            Err(GeometryError::UnknownCatalogEntry(_))
        ));
        let mut params = BTreeMap::new();
        params.insert("scale".to_string(), 2.0);
        assert!(matches!(
            catalog_metric("example1", &params),
            Err(GeometryError::InvalidParameter(_))
        ));
        assert_eq!(catalog_metric("minkowski3", &none).unwrap().name(), "minkowski3_ppm");
    }

    #[test]
    fn derived_series_tracks_closed_form() {
        let metric = example1();
        let closed = metric.levi_civita();
        let derived = Connection::derived(&metric);
        // constant Christoffels: derived series must have vanishing higher coefficients
        let t = Taylor::variable(0.3);
        let p = [t.sin(), t * t, t * 0.5];
        let a = closed.christoffel_series(&p).unwrap();
        let b = derived.christoffel_series(&p).unwrap();
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for d in 0..3 {
                        assert!((a[k][i][j].derivative(d) - b[k][i][j].derivative(d)).abs() < 1e-7);
                    }
                }
            }
        }
    }
}
