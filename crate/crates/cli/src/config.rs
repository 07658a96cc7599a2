//! Job configuration: a single JSON document, validated into a [`Job`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use curvekit::catalog;
use curvekit::{
    catalog_metric, minkowski_null_from_f, ChartMetric, ClosedFormCurvatureTorsion, Connection, CurveSpec,
    GeneratorFunction, Route, Sign, Vec3,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub metric: MetricConfig,
    pub curve: CurveConfig,
    pub grid: Grid,
    #[serde(default = "default_routes")]
    pub routes: Vec<String>,
    #[serde(default)]
    pub output: OutputConfig,
    /// Overrides for [`Tolerances`], by field name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

fn default_routes() -> Vec<String> {
    Route::ALL.iter().map(|r| r.as_str().to_string()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricConfig {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    /// Generator name for `nullfromf`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub t_start: f64,
    pub t_end: f64,
    pub samples: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.samples == 1 {
            return vec![self.t_start];
        }
        let step = (self.t_end - self.t_start) / (self.samples - 1) as f64;
        (0..self.samples)
            .map(|i| {
                if i + 1 == self.samples {
                    self.t_end
                } else {
                    self.t_start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// Tolerances used by `check`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub cross_product: f64,
    pub frame: f64,
    pub phi_relation: f64,
    pub volume_triple: f64,
    pub frenet_ode: f64,
    pub route_agreement: f64,
    pub decomposition: f64,
    pub null_normalization: f64,
    pub null_products: f64,
    pub null_ode: f64,
    pub schwarzian: f64,
    pub speed: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            cross_product: 1e-10,
            frame: 1e-8,
            phi_relation: 1e-7,
            volume_triple: 1e-6,
            frenet_ode: 1e-6,
            route_agreement: 1e-4,
            decomposition: 1e-4,
            null_normalization: 1e-6,
            null_products: 1e-7,
            null_ode: 1e-5,
            schwarzian: 1e-6,
            speed: 1e-9,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 12] = [
        "cross_product",
        "frame",
        "phi_relation",
        "volume_triple",
        "frenet_ode",
        "route_agreement",
        "decomposition",
        "null_normalization",
        "null_products",
        "null_ode",
        "schwarzian",
        "speed",
    ];

    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "cross_product" => &mut self.cross_product,
            "frame" => &mut self.frame,
            "phi_relation" => &mut self.phi_relation,
            "volume_triple" => &mut self.volume_triple,
            "frenet_ode" => &mut self.frenet_ode,
            "route_agreement" => &mut self.route_agreement,
            "decomposition" => &mut self.decomposition,
            "null_normalization" => &mut self.null_normalization,
            "null_products" => &mut self.null_products,
            "null_ode" => &mut self.null_ode,
            "schwarzian" => &mut self.schwarzian,
            "speed" => &mut self.speed,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    /// The document is not valid JSON or does not match the schema.
    Syntax(String),
    /// Every violated condition, in a stable order.
    Invalid(Vec<String>),
    Io(String),
}

impl ConfigError {
    pub fn kind(&self) -> &'static str {
        match self {
            ConfigError::Syntax(_) => "ConfigSyntax",
            ConfigError::Invalid(_) => "ConfigInvalid",
            ConfigError::Io(_) => "ConfigIo",
        }
    }

    pub fn violations(&self) -> Vec<String> {
        match self {
            ConfigError::Invalid(v) => v.clone(),
            ConfigError::Syntax(m) | ConfigError::Io(m) => vec![m.clone()],
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Syntax(m) => write!(f, "config syntax error: {m}"),
            ConfigError::Io(m) => write!(f, "cannot read config: {m}"),
            ConfigError::Invalid(v) => {
                write!(
                    f,
                    "invalid config ({} problem{}):",
                    v.len(),
                    if v.len() == 1 { "" } else { "s" }
                )?;
                for item in v {
                    write!(f, "\n  - {item}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

/// What kind of curve a job describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    NonNull,
    Null,
}

/// Curve-side routes. For null curves the Frenet route is replaced by the
/// null-frame formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum JobRoute {
    Direct,
    Structural,
    Frenet,
    Null,
}

impl JobRoute {
    pub fn as_str(self) -> &'static str {
        match self {
            JobRoute::Direct => "direct",
            JobRoute::Structural => "structural",
            JobRoute::Frenet => "frenet",
            JobRoute::Null => "null",
        }
    }
}

/// A validated configuration with its metric and curve built.
#[derive(Clone)]
pub struct Job {
    pub config: JobConfig,
    pub metric: ChartMetric,
    pub conn: Connection,
    pub curve: CurveSpec,
    pub class: CurveClass,
    pub routes: Vec<JobRoute>,
    /// Closed-form `κ, τ` when the catalog provides them.
    pub closed_form: Option<ClosedFormCurvatureTorsion>,
    pub generator: Option<GeneratorFunction>,
    pub tolerances: Tolerances,
    pub notes: Vec<String>,
}

impl fmt::Debug for Job {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Job")
            .field("config", &self.config)
            .field("curve", &self.curve.label())
            .field("class", &self.class)
            .field("routes", &self.routes)
            .finish_non_exhaustive()
    }
}

/// Parses and validates a JSON document.
pub fn parse(text: &str) -> Result<Job, ConfigError> {
    let config: JobConfig = serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    validate(config)
}

pub fn load(path: &str) -> Result<Job, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{path}: {e}")))?;
    parse(&text)
}

fn check_keys(
    problems: &mut Vec<String>,
    what: &str,
    params: &BTreeMap<String, f64>,
    required: &[&str],
    optional: &[&str],
) {
    for key in required {
        if !params.contains_key(*key) {
            problems.push(format!("{what}: missing parameter `{key}`"));
        }
    }
    for key in params.keys() {
        if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
            problems.push(format!("{what}: unknown parameter `{key}`"));
        }
    }
    for (key, v) in params {
        if !v.is_finite() {
            problems.push(format!("{what}: parameter `{key}` must be finite"));
        }
    }
}

fn get(params: &BTreeMap<String, f64>, key: &str) -> f64 {
    params.get(key).copied().unwrap_or(f64::NAN)
}

struct BuiltCurve {
    curve: CurveSpec,
    class: CurveClass,
    closed_form: Option<ClosedFormCurvatureTorsion>,
    generator: Option<GeneratorFunction>,
    /// Metrics the curve is meant for; empty means any.
    metrics: &'static [&'static str],
}

/// `(a, b, λ)` of an Example-1 curve with `κ = A/t`, `τ = B/t`, if one exists.
pub fn reciprocal_realization(big_a: f64, big_b: f64) -> Option<(f64, f64, f64)> {
    let (a2, b2) = (big_a * big_a, big_b * big_b);
    if a2 < b2 + 1.0 {
        // λ = −1, b = B
        let a = ((b2 + 1.0) / (b2 + 1.0 - a2)).sqrt();
        return Some((a, big_b, -1.0));
    }
    if b2 > 1.0 {
        // λ = 1, b = −B
        let a = ((b2 - 1.0) / (a2 - b2 + 1.0)).sqrt();
        return Some((a, -big_b, 1.0));
    }
    None
}

fn build_curve(cfg: &CurveConfig, problems: &mut Vec<String>) -> Option<BuiltCurve> {
    let p = &cfg.params;
    let name = cfg.name.as_str();
    let before = problems.len();
    if name != "nullfromf" && cfg.generator.is_some() {
        problems.push(format!("curve `{name}`: `generator` only applies to nullfromf"));
    }
    let built = match name {
        "example1curve" => {
            check_keys(problems, name, p, &["a", "b", "lambda"], &[]);
            let (a, b, l) = (get(p, "a"), get(p, "b"), get(p, "lambda"));
            if problems.len() == before {
                problems.extend(
                    catalog::example1_violations(a, b, l)
                        .into_iter()
                        .map(|v| format!("{name}: {v}")),
                );
            }
            if problems.len() > before {
                return None;
            }
            BuiltCurve {
                curve: catalog::example1_curve(a, b, l).ok()?,
                class: CurveClass::NonNull,
                closed_form: catalog::example1_curvature_torsion(a, b, l).ok(),
                generator: None,
                metrics: &["example1"],
            }
        }
        "example2curve" => {
            check_keys(problems, name, p, &["a", "b"], &[]);
            let (a, b) = (get(p, "a"), get(p, "b"));
            if problems.len() == before {
                problems.extend(
                    catalog::example2_violations(a, b)
                        .into_iter()
                        .map(|v| format!("{name}: {v}")),
                );
            }
            if problems.len() > before {
                return None;
            }
            BuiltCurve {
                curve: catalog::example2_curve(a, b).ok()?,
                class: CurveClass::NonNull,
                closed_form: catalog::example2_curvature_torsion(a, b).ok(),
                generator: None,
                metrics: &["example2"],
            }
        }
        "corollary2" => {
            check_keys(problems, name, p, &["A", "B"], &[]);
            let (big_a, big_b) = (get(p, "A"), get(p, "B"));
            if problems.len() == before {
                if !(big_a > 0.0) {
                    problems.push(format!("{name}: A > 0 is required"));
                }
                if big_b == 0.0 {
                    problems.push(format!("{name}: B != 0 is required"));
                }
            }
            if problems.len() > before {
                return None;
            }
            let Some((a, b, l)) = reciprocal_realization(big_a, big_b) else {
                problems.push(format!(
                    "{name}: κ = A/t, τ = B/t has no example1 realization when A² ≥ B² + 1 and B² ≤ 1"
                ));
                return None;
            };
            BuiltCurve {
                curve: catalog::example1_curve(a, b, l).ok()?,
                class: CurveClass::NonNull,
                closed_form: Some(catalog::reciprocal_curvature_torsion(big_a, big_b)),
                generator: None,
                metrics: &["example1"],
            }
        }
        "helix" => {
            check_keys(problems, name, p, &["r", "h"], &[]);
            if problems.len() > before {
                return None;
            }
            // Helix type follows the metric; both variants are validated
            // when the metric is known.
            BuiltCurve {
                curve: CurveSpec::from_taylor("helix", (f64::NEG_INFINITY, f64::INFINITY), |t| [t, t, t]),
                class: CurveClass::NonNull,
                closed_form: None,
                generator: None,
                metrics: &["euclidean3", "minkowski3_ppm", "minkowski3"],
            }
        }
        "line" => {
            check_keys(problems, name, p, &[], &["px", "py", "pz", "vx", "vy", "vz"]);
            if problems.len() > before {
                return None;
            }
            let v = |k: &str| p.get(k).copied().unwrap_or(0.0);
            let dir = Vec3::new(v("vx"), v("vy"), v("vz"));
            if dir.norm() == 0.0 {
                problems.push(format!("{name}: direction (vx, vy, vz) must be non-zero"));
                return None;
            }
            BuiltCurve {
                curve: catalog::line(Vec3::new(v("px"), v("py"), v("pz")), dir),
                class: CurveClass::NonNull,
                closed_form: None,
                generator: None,
                metrics: &[],
            }
        }
        "nullfromf" => {
            let generator = build_generator(cfg, problems)?;
            BuiltCurve {
                // Placeholder until the grid start is known.
                curve: catalog::line(Vec3::zeros(), Vec3::new(1.0, 0.0, 1.0)),
                class: CurveClass::Null,
                closed_form: None,
                generator: Some(generator),
                metrics: &["minkowski3_ppm", "minkowski3"],
            }
        }
        other => {
            problems.push(format!(
                "unknown curve `{other}` (expected example1curve, example2curve, corollary2, helix, line or nullfromf)"
            ));
            return None;
        }
    };
    Some(built)
}

fn build_generator(cfg: &CurveConfig, problems: &mut Vec<String>) -> Option<GeneratorFunction> {
    let p = &cfg.params;
    let Some(gname) = cfg.generator.as_deref() else {
        problems.push("nullfromf: missing `generator`".into());
        return None;
    };
    let what = format!("nullfromf generator `{gname}`");
    let before = problems.len();
    let result = match gname {
        "linear" => {
            check_keys(problems, &what, p, &[], &[]);
            Ok(GeneratorFunction::linear())
        }
        "exponential" => {
            check_keys(problems, &what, p, &[], &[]);
            Ok(GeneratorFunction::exponential())
        }
        "tan" => {
            check_keys(problems, &what, p, &[], &[]);
            Ok(GeneratorFunction::tan())
        }
        "power" => {
            check_keys(problems, &what, p, &["p"], &[]);
            GeneratorFunction::power(get(p, "p"))
        }
        "moebius" => {
            check_keys(problems, &what, p, &["a", "b", "c", "d"], &[]);
            GeneratorFunction::moebius(get(p, "a"), get(p, "b"), get(p, "c"), get(p, "d"))
        }
        other => {
            problems.push(format!(
                "unknown generator `{other}` (expected linear, exponential, power, moebius or tan)"
            ));
            return None;
        }
    };
    if problems.len() > before {
        return None;
    }
    match result {
        Ok(g) => Some(g),
        Err(e) => {
            problems.push(format!("{what}: {e}"));
            None
        }
    }
}

/// Validates a parsed configuration, collecting every problem.
pub fn validate(config: JobConfig) -> Result<Job, ConfigError> {
    let mut problems = Vec::new();

    let metric = match catalog_metric(&config.metric.name, &config.metric.params) {
        Ok(m) => Some(m),
        Err(e) => {
            problems.push(format!("metric: {e}"));
            None
        }
    };
    let mut built = build_curve(&config.curve, &mut problems);

    if let (Some(m), Some(b)) = (&metric, &built) {
        let ok = b.metrics.is_empty() || b.metrics.contains(&config.metric.name.as_str());
        if !ok {
            problems.push(format!(
                "curve `{}` needs metric {} (got `{}`)",
                config.curve.name,
                b.metrics.join(" or "),
                config.metric.name
            ));
        } else if config.curve.name == "helix" {
            let (r, h) = (get(&config.curve.params, "r"), get(&config.curve.params, "h"));
            let lorentzian = m.name() != "euclidean3";
            match (
                catalog::circular_helix(r, h, lorentzian),
                catalog::circular_helix_curvature_torsion(r, h, lorentzian),
            ) {
                (Ok(c), Ok((k, t))) => {
                    if let Some(b) = built.as_mut() {
                        b.curve = c;
                        // τ = 0 stays without closed form so the degeneracy
                        // is reported by the computation itself.
                        b.closed_form = (t != 0.0).then(|| ClosedFormCurvatureTorsion::constant(k, t));
                    }
                }
                (Err(e), _) | (_, Err(e)) => problems.push(format!("helix: {e}")),
            }
        }
    }

    let g = config.grid;
    let mut grid_ok = true;
    if !(g.t_start.is_finite() && g.t_end.is_finite()) {
        problems.push("grid: t_start and t_end must be finite".into());
        grid_ok = false;
    }
    if g.samples == 0 {
        problems.push("grid: samples must be at least 1".into());
        grid_ok = false;
    } else if g.samples > 100_000 {
        problems.push("grid: samples must not exceed 100000".into());
        grid_ok = false;
    }
    if grid_ok && g.samples > 1 && !(g.t_end > g.t_start) {
        problems.push("grid: t_end must exceed t_start when samples > 1".into());
        grid_ok = false;
    }
    if grid_ok {
        let domain = match built.as_ref() {
            Some(b) => match &b.generator {
                Some(gen) => Some(gen.domain()),
                None => Some(b.curve.domain()),
            },
            None => None,
        };
        if let Some((lo, hi)) = domain {
            let hi_t = if g.samples == 1 { g.t_start } else { g.t_end };
            if !(g.t_start > lo && hi_t < hi) {
                problems.push(format!(
                    "grid: [{}, {}] must lie strictly inside the curve domain ({lo}, {hi})",
                    g.t_start, hi_t
                ));
            }
        }
    }

    let mut routes = Vec::new();
    let mut seen = BTreeSet::new();
    if config.routes.is_empty() {
        problems.push("routes: at least one route is required".into());
    }
    for r in &config.routes {
        match Route::parse(r) {
            Some(route) => {
                if !seen.insert(route) {
                    problems.push(format!("routes: `{r}` listed twice"));
                }
                routes.push(route);
            }
            None => problems.push(format!(
                "routes: unknown route `{r}` (expected direct, structural or frenet)"
            )),
        }
    }

    let mut tolerances = Tolerances::default();
    for (name, v) in &config.tolerances {
        match tolerances.slot(name) {
            Some(slot) if v.is_finite() && *v > 0.0 => *slot = *v,
            Some(_) => problems.push(format!("tolerances: `{name}` must be positive and finite")),
            None => problems.push(format!(
                "tolerances: unknown key `{name}` (expected one of {})",
                Tolerances::NAMES.join(", ")
            )),
        }
    }

    if !problems.is_empty() {
        return Err(ConfigError::Invalid(problems));
    }
    let metric = metric.expect("validated");
    let mut built = built.expect("validated");
    let mut notes = Vec::new();

    if let Some(gen) = &built.generator {
        match minkowski_null_from_f(gen, g.t_start, Vec3::zeros(), Sign::Plus) {
            Ok(c) => built.curve = c,
            Err(e) => return Err(ConfigError::Invalid(vec![format!("nullfromf: {e}")])),
        }
    }

    let mut job_routes: Vec<JobRoute> = routes
        .iter()
        .map(|r| match r {
            Route::Direct => JobRoute::Direct,
            Route::Structural => JobRoute::Structural,
            Route::Frenet => JobRoute::Frenet,
        })
        .collect();
    if built.class == CurveClass::Null {
        if let Some(slot) = job_routes.iter_mut().find(|r| **r == JobRoute::Frenet) {
            *slot = JobRoute::Null;
            notes.push(
                "route `frenet` needs a non-null curve; replaced by the null-frame curvatures (−τ′, −2τ)".to_string(),
            );
        }
    }
    job_routes.sort();

    Ok(Job {
        conn: metric.levi_civita(),
        metric,
        curve: built.curve,
        class: built.class,
        routes: job_routes,
        closed_form: built.closed_form,
        generator: built.generator,
        tolerances,
        notes,
        config,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(metric: &str, curve: &str, grid: &str) -> String {
        format!(r#"{{"metric": {metric}, "curve": {curve}, "grid": {grid}}}"#)
    }

    #[test]
    fn accepts_example1_config() {
        let job = parse(&doc(
            r#"{"name": "example1"}"#,
            r#"{"name": "example1curve", "params": {"a": 2, "b": 2, "lambda": 1}}"#,
            r#"{"t_start": 0.5, "t_end": 5, "samples": 10}"#,
        ))
        .unwrap();
        assert_eq!(
            job.routes,
            vec![JobRoute::Direct, JobRoute::Structural, JobRoute::Frenet]
        );
        assert_eq!(job.config.grid.points().len(), 10);
        assert!(job.closed_form.is_some());
    }

    #[test]
    fn lists_every_violation() {
        let err = parse(&doc(
            r#"{"name": "example2"}"#,
            r#"{"name": "example1curve", "params": {"a": -1, "b": 0, "lambda": 2}}"#,
            r#"{"t_start": -1, "t_end": 5, "samples": 3}"#,
        ))
        .unwrap_err();
        let v = err.violations();
        assert!(v.iter().any(|s| s.contains("lambda")), "{v:?}");
        assert!(v.iter().any(|s| s.contains("a > 0")), "{v:?}");
        assert!(v.iter().any(|s| s.contains("b != 0") || s.contains("b ≠ 0")), "{v:?}");
        assert!(v.len() >= 3, "{v:?}");
    }

    #[test]
    fn grid_must_stay_inside_domain() {
        let err = parse(&doc(
            r#"{"name": "example1"}"#,
            r#"{"name": "example1curve", "params": {"a": 2, "b": 2, "lambda": 1}}"#,
            r#"{"t_start": 0, "t_end": 5, "samples": 3}"#,
        ))
        .unwrap_err();
        assert!(err.violations()[0].contains("strictly inside"));
    }

    #[test]
    fn metric_and_curve_must_match() {
        let err = parse(&doc(
            r#"{"name": "euclidean3"}"#,
            r#"{"name": "example2curve", "params": {"a": 0.5, "b": 0.5}}"#,
            r#"{"t_start": 1, "t_end": 2, "samples": 3}"#,
        ))
        .unwrap_err();
        assert!(err.violations()[0].contains("needs metric"));
    }

    #[test]
    fn null_curves_swap_the_frenet_route() {
        let job = parse(&doc(
            r#"{"name": "minkowski3_ppm"}"#,
            r#"{"name": "nullfromf", "generator": "exponential"}"#,
            r#"{"t_start": -1, "t_end": 1, "samples": 5}"#,
        ))
        .unwrap();
        assert_eq!(job.class, CurveClass::Null);
        assert!(job.routes.contains(&JobRoute::Null) && !job.routes.contains(&JobRoute::Frenet));
        assert_eq!(job.notes.len(), 1);
    }

    #[test]
    fn rejects_unknown_fields_and_tolerances() {
        assert!(matches!(
            parse(r#"{"metric": {"name": "euclidean3"}, "bogus": 1}"#),
            Err(ConfigError::Syntax(_))
        ));
        let err = parse(
            r#"{"metric": {"name": "euclidean3"}, "curve": {"name": "helix", "params": {"r": 0.5, "h": 0.5}},
                "grid": {"t_start": 0, "t_end": 1, "samples": 2}, "tolerances": {"nope": 1, "frame": -1}}"#,
        )
        .unwrap_err();
        assert_eq!(err.violations().len(), 2);
    }

    #[test]
    fn reciprocal_realization_reproduces_the_pair() {
        for (big_a, big_b) in [(1.5, 2.0), (0.5, -0.3), (3.0, 2.5), (2.0, -1.2)] {
            let (a, b, l) = reciprocal_realization(big_a, big_b).unwrap();
            let k = ((a * a + l) * (b * b - l)).sqrt() / a;
            assert!((k - big_a).abs() < 1e-12 && (-l * b - big_b).abs() < 1e-12);
        }
        assert!(reciprocal_realization(2.0, 0.5).is_none());
    }
}
