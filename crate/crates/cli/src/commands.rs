//! The `invariants`, `check` and `reparam` commands.

use std::collections::BTreeMap;

use curvekit::curvejet::Density;
use curvekit::equiaffine::structural_decomposition;
use curvekit::nullcurve::null_frame_ode_residual;
use curvekit::{
    cartan_frame, causal_character, covariant_jet, curvatures_direct, curvatures_frenet, curvatures_structural,
    equiaffine_arclength, equiaffine_speed, frenet_apparatus, frenet_ode_residual, null_equiaffine_curvatures,
    null_frame, pseudo_torsion, schwarzian, CurvatureTorsion, EquiaffineCurvatures, GeometryError, MetricAt,
    NumericCurvatureTorsion, Reparametrization, Sign, Vec3,
};
use rayon::prelude::*;

use crate::config::{CurveClass, Job, JobRoute};
use crate::table::{Cell, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub exit_code: i32,
}

type Row = Result<Vec<Cell>, GeometryError>;

fn error_cell(e: &GeometryError) -> Cell {
    Cell::Text(format!("{}: {e}", e.kind()))
}

fn sign_cell(s: Sign) -> Cell {
    Cell::Int(s.as_i8() as i64)
}

fn route_curvatures(job: &Job, route: JobRoute, t: f64) -> Result<EquiaffineCurvatures, GeometryError> {
    let (m, c, k) = (&job.metric, &job.conn, &job.curve);
    match route {
        JobRoute::Direct => curvatures_direct(m, c, k, t),
        JobRoute::Structural => curvatures_structural(m, c, k, t),
        JobRoute::Null => null_equiaffine_curvatures(m, c, k, t),
        JobRoute::Frenet => {
            let f = frenet_apparatus(m, c, k, t)?;
            let numeric;
            let source: &dyn CurvatureTorsion = match &job.closed_form {
                Some(cf) => cf,
                None => {
                    numeric = NumericCurvatureTorsion::new(m, c, k);
                    &numeric
                }
            };
            curvatures_frenet(source, f.eps1, f.eps2, f.eps3, t)
        }
    }
}

fn max_pairwise(values: &[EquiaffineCurvatures]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            worst = worst.max(a.max_abs_diff(b));
        }
    }
    worst
}

fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("CURVEKIT_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0);
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

fn invariant_columns(job: &Job) -> Vec<String> {
    let mut cols: Vec<String> = match job.class {
        CurveClass::NonNull => [
            "t", "sigma", "causal", "kappa", "tau", "eps1", "eps2", "eps3", "eps", "mu",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        CurveClass::Null => ["t", "sigma", "causal", "pseudo_torsion", "eps", "mu"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    };
    for r in &job.routes {
        cols.push(format!("k1_{}", r.as_str()));
        cols.push(format!("k2_{}", r.as_str()));
    }
    if job.routes.len() >= 2 {
        cols.push("discrepancy".into());
    }
    cols.push("error".into());
    cols
}

fn invariant_row(job: &Job, t: f64) -> Row {
    let (m, c, k) = (&job.metric, &job.conn, &job.curve);
    let t0 = job.config.grid.t_start;
    let causal = causal_character(m, k, t)?;
    let speed = equiaffine_speed(m, c, k, t)?;
    let sigma = equiaffine_arclength(m, c, k, t0, t)?;
    let mut row = vec![Cell::Num(t), Cell::Num(sigma), Cell::Text(causal.tag.as_str().into())];
    match job.class {
        CurveClass::NonNull => {
            let f = frenet_apparatus(m, c, k, t)?;
            row.extend([
                Cell::Num(f.curvature),
                Cell::Num(f.torsion),
                sign_cell(f.eps1),
                sign_cell(f.eps2),
                sign_cell(f.eps3),
            ]);
        }
        CurveClass::Null => row.push(Cell::Num(pseudo_torsion(m, c, k, t)?)),
    }
    row.extend([sign_cell(speed.orientation), Cell::Num(speed.mu)]);
    let mut values = Vec::new();
    for r in &job.routes {
        let v = route_curvatures(job, *r, t)?;
        row.extend([Cell::Num(v.first), Cell::Num(v.second)]);
        values.push(v);
    }
    if values.len() >= 2 {
        row.push(Cell::Num(max_pairwise(&values)));
    }
    row.push(Cell::Missing);
    Ok(row)
}

fn assemble(job: &Job, command: &'static str, columns: Vec<String>, rows: Vec<Row>) -> Outcome {
    let width = columns.len();
    let mut failed = false;
    let rows = rows
        .into_iter()
        .zip(job.config.grid.points())
        .map(|(r, t)| match r {
            Ok(row) => row,
            Err(e) => {
                failed = true;
                let mut row = vec![Cell::Missing; width];
                row[0] = Cell::Num(t);
                row[width - 1] = error_cell(&e);
                row
            }
        })
        .collect();
    Outcome {
        table: Table {
            command,
            columns,
            rows,
            notes: job.notes.clone(),
        },
        exit_code: if failed { EXIT_COMPUTATION } else { EXIT_OK },
    }
}

/// One row of invariants per grid sample.
pub fn cmd_invariants(job: &Job) -> Outcome {
    let points = job.config.grid.points();
    let rows: Vec<Row> = with_pool(|| points.par_iter().map(|&t| invariant_row(job, t)).collect());
    assemble(job, "invariants", invariant_columns(job), rows)
}

/// Largest normalized residual of the seven cross-product identities.
pub fn cross_identity_residual(at: &MetricAt, x: &Vec3, y: &Vec3, z: &Vec3, w: &Vec3) -> f64 {
    let om = at.omega.value();
    let gn = at.g.norm();
    let gb = |u: &Vec3, v: &Vec3| gn * u.norm() * v.norm();
    let cb = at.g_inv.norm() * at.sqrt_abs_det;
    let cross_scale = |u: &Vec3, v: &Vec3| cb * u.norm() * v.norm();
    let rel = |err: f64, scale: f64| if scale > 0.0 { err / scale } else { err };
    let xy = at.cross(x, y);
    let zw = at.cross(z, w);
    let double = at.cross(&xy, z);
    let double_scale = gb(y, z) * x.norm() + gb(x, z) * y.norm();
    let cyclic = double + at.cross(&at.cross(y, z), x) + at.cross(&at.cross(z, x), y);
    [
        rel((xy + at.cross(y, x)).norm(), cross_scale(x, y)),
        rel(at.dot(&xy, x).abs(), gn * cross_scale(x, y) * x.norm()),
        rel(
            (double - (x * -at.dot(y, z) + y * at.dot(x, z)) * om).norm(),
            double_scale,
        ),
        rel(cyclic.norm(), 3.0 * double_scale),
        rel(
            (at.dot(&xy, &xy) - om * (at.dot(x, x) * at.dot(y, y) - at.dot(x, y).powi(2))).abs(),
            2.0 * gb(x, x) * gb(y, y),
        ),
        rel(
            (at.dot(&xy, &zw) - om * (at.dot(x, z) * at.dot(y, w) - at.dot(x, w) * at.dot(y, z))).abs(),
            gb(x, z) * gb(y, w) + gb(x, w) * gb(y, z),
        ),
        rel(
            (at.cross(&xy, &zw) - (z * at.volume(x, y, w) - w * at.volume(x, y, z)) * om).norm(),
            2.0 * at.sqrt_abs_det * x.norm() * y.norm() * z.norm() * w.norm(),
        ),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Property name, tolerance and description.
struct Property {
    name: &'static str,
    tolerance: f64,
    what: &'static str,
}

fn properties(job: &Job) -> Vec<Property> {
    let tol = &job.tolerances;
    let mut out = vec![Property {
        name: "cross_product_identities",
        tolerance: tol.cross_product,
        what: "seven cross-product identities on the jet vectors (relative)",
    }];
    match job.class {
        CurveClass::NonNull => out.extend([
            Property {
                name: "frame_identities",
                tolerance: tol.frame,
                what: "Frenet orthonormality, Ω(T,N,B) = 1, Ω(e1,e2,e3) = ε, ε3 = ωε1ε2",
            },
            Property {
                name: "sign_relation",
                tolerance: 0.0,
                what: "sign τ = ε ε3 (count of violations)",
            },
            Property {
                name: "phi_relation",
                tolerance: tol.phi_relation,
                what: "φ = κ^(-1/3) |τ|^(-1/6) (relative)",
            },
            Property {
                name: "volume_triple",
                tolerance: tol.volume_triple,
                what: "Ω(α′, ∇α′α′, ∇²α′α′) = ε3 κ² τ (relative)",
            },
            Property {
                name: "frenet_ode",
                tolerance: tol.frenet_ode,
                what: "Frenet equation residual norms",
            },
        ]),
        CurveClass::Null => {
            out.extend([
                Property {
                    name: "null_normalization",
                    tolerance: tol.null_normalization,
                    what: "g(α′,α′) = 0, g(α′,∇α′α′) = 0, g(∇α′α′,∇α′α′) = 1, g(∇²α′α′,α′) = -1",
                },
                Property {
                    name: "null_products",
                    tolerance: tol.null_products,
                    what: "scalar products of the null frame (L, N, W)",
                },
                Property {
                    name: "null_ode",
                    tolerance: tol.null_ode,
                    what: "null frame equation residual norms",
                },
            ]);
            if job.generator.is_some() {
                out.push(Property {
                    name: "schwarzian",
                    tolerance: tol.schwarzian,
                    what: "pseudo-torsion equals the Schwarzian of the generator",
                });
            }
        }
    }
    out.push(Property {
        name: "decomposition",
        tolerance: tol.decomposition,
        what: "∇e1 e3 − ϰ1 e1 − ϰ2 e2 norm",
    });
    if job.routes.len() >= 2 {
        out.push(Property {
            name: "route_agreement",
            tolerance: tol.route_agreement,
            what: "max pairwise curvature difference across routes",
        });
    }
    out
}

fn check_point(job: &Job, t: f64) -> Result<BTreeMap<&'static str, f64>, GeometryError> {
    let (m, c, k) = (&job.metric, &job.conn, &job.curve);
    let mut r = BTreeMap::new();
    let jet = covariant_jet(m, c, k, t, 3)?;
    let at = jet.metric;
    r.insert(
        "cross_product_identities",
        cross_identity_residual(&at, &jet.d1, &jet.cd1, &jet.cd2, &jet.cd3),
    );

    let speed = equiaffine_speed(m, c, k, t)?;
    match job.class {
        CurveClass::NonNull => {
            let f = frenet_apparatus(m, c, k, t)?;
            let (tt, n, b) = (f.tangent, f.normal, f.binormal);
            let frame = cartan_frame(m, c, k, t)?;
            let mut worst = [
                at.dot(&tt, &tt) - f.eps1.value(),
                at.dot(&n, &n) - f.eps2.value(),
                at.dot(&b, &b) - f.eps3.value(),
                at.dot(&tt, &n),
                at.dot(&tt, &b),
                at.dot(&n, &b),
                at.volume(&tt, &n, &b) - 1.0,
                at.volume(&frame.e1, &frame.e2, &frame.e3) - speed.orientation.value(),
            ]
            .iter()
            .fold(0.0f64, |a, v| a.max(v.abs()));
            if f.eps3 != at.omega * f.eps1 * f.eps2 {
                worst = f64::INFINITY;
            }
            r.insert("frame_identities", worst);
            let sign_ok = Sign::of(f.torsion) == speed.orientation * f.eps3;
            r.insert("sign_relation", if sign_ok { 0.0 } else { 1.0 });
            let phi = f.curvature.powf(-1.0 / 3.0) * f.torsion.abs().powf(-1.0 / 6.0);
            r.insert("phi_relation", (speed.phi - phi).abs() / phi);
            let triple = f.eps3.value() * f.curvature.powi(2) * f.torsion;
            r.insert("volume_triple", (f.volume_triple - triple).abs() / triple.abs());
            let ode = frenet_ode_residual(m, c, k, t)?;
            r.insert("frenet_ode", ode.iter().map(|v| v.norm()).fold(0.0, f64::max));
        }
        CurveClass::Null => {
            let nf = null_frame(m, c, k, t)?;
            let tau = nf.pseudo_torsion;
            let norm = [
                at.dot(&jet.d1, &jet.d1),
                at.dot(&jet.d1, &jet.cd1),
                at.dot(&jet.cd1, &jet.cd1) - 1.0,
                at.dot(&jet.cd2, &jet.d1) + 1.0,
                at.dot(&jet.cd2, &jet.cd2) - 2.0 * tau,
            ];
            r.insert("null_normalization", norm.iter().fold(0.0f64, |a, v| a.max(v.abs())));
            let products = [
                at.dot(&nf.l, &nf.l),
                at.dot(&nf.n, &nf.n),
                at.dot(&nf.w, &nf.w) - 1.0,
                at.dot(&nf.l, &nf.n) - 1.0,
                at.dot(&nf.l, &nf.w),
                at.dot(&nf.n, &nf.w),
            ];
            r.insert("null_products", products.iter().fold(0.0f64, |a, v| a.max(v.abs())));
            let ode = null_frame_ode_residual(m, c, k, t)?;
            r.insert("null_ode", ode.iter().map(|v| v.norm()).fold(0.0, f64::max));
            if let Some(g) = &job.generator {
                r.insert("schwarzian", (tau - schwarzian(g, t)?).abs());
            }
        }
    }
    let (_, residual) = structural_decomposition(m, c, k, t)?;
    r.insert("decomposition", residual.norm());
    if job.routes.len() >= 2 {
        let values = job
            .routes
            .iter()
            .map(|route| route_curvatures(job, *route, t))
            .collect::<Result<Vec<_>, _>>()?;
        r.insert("route_agreement", max_pairwise(&values));
    }
    Ok(r)
}

/// Runs the property suite over the grid; one row per property.
pub fn cmd_check(job: &Job) -> Outcome {
    let points = job.config.grid.points();
    let results: Vec<_> = with_pool(|| points.par_iter().map(|&t| (t, check_point(job, t))).collect());
    let props = properties(job);
    let mut rows = Vec::new();
    let mut all_pass = true;
    let mut first_error = None;
    for (t, r) in &results {
        if let Err(e) = r {
            first_error.get_or_insert((*t, e.clone()));
        }
    }
    for p in &props {
        let mut worst = 0.0f64;
        let mut at_t = f64::NAN;
        let mut evaluated = 0usize;
        for (t, r) in &results {
            if let Ok(map) = r {
                evaluated += 1;
                let v = map.get(p.name).copied().unwrap_or(f64::NAN);
                if !(v <= worst) {
                    worst = v;
                    at_t = *t;
                }
            }
        }
        let status = if evaluated == 0 {
            "error"
        } else if worst <= p.tolerance {
            "pass"
        } else {
            "fail"
        };
        if status != "pass" {
            all_pass = false;
        }
        rows.push(vec![
            Cell::Text(p.name.into()),
            if evaluated == 0 {
                Cell::Missing
            } else {
                Cell::Num(worst)
            },
            Cell::Num(p.tolerance),
            if at_t.is_nan() { Cell::Missing } else { Cell::Num(at_t) },
            Cell::Int(evaluated as i64),
            Cell::Text(status.into()),
            Cell::Text(p.what.into()),
        ]);
    }
    if let Some((t, e)) = &first_error {
        all_pass = false;
        let failed = results.iter().filter(|(_, r)| r.is_err()).count();
        rows.push(vec![
            Cell::Text("evaluation".into()),
            Cell::Missing,
            Cell::Missing,
            Cell::Num(*t),
            Cell::Int(failed as i64),
            Cell::Text("error".into()),
            error_cell(e),
        ]);
    }
    Outcome {
        table: Table {
            command: "check",
            columns: [
                "property",
                "worst",
                "tolerance",
                "worst_t",
                "points",
                "status",
                "detail",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            rows,
            notes: job.notes.clone(),
        },
        exit_code: if all_pass { EXIT_OK } else { EXIT_COMPUTATION },
    }
}

/// Parameter map `t ↦ s` anchored at the first grid point, with the
/// normalization residual of the reparametrized curve.
pub fn cmd_reparam(job: &Job) -> Outcome {
    let columns: Vec<String> = ["t", "s", "residual", "error"].iter().map(|s| s.to_string()).collect();
    let grid = job.config.grid;
    let density = match job.class {
        CurveClass::NonNull => Density::ArcLength,
        CurveClass::Null => Density::PseudoArc,
    };
    let (lo, hi) = job.curve.domain();
    let t_end = if grid.samples == 1 { grid.t_start } else { grid.t_end };
    let pad = 0.1 * (t_end - grid.t_start).max(0.1);
    let a = grid.t_start - pad.min(0.5 * (grid.t_start - lo));
    let b = t_end + pad.min(0.5 * (hi - t_end));
    let built = job
        .curve
        .restrict(a, b)
        .and_then(|base| Reparametrization::new(&job.metric, &job.conn, &base, grid.t_start, density));
    let points = grid.points();
    let rows: Vec<Row> = match built {
        Err(e) => points.iter().map(|_| Err(e.clone())).collect(),
        Ok(map) => {
            let beta = map.curve();
            with_pool(|| {
                points
                    .par_iter()
                    .map(|&t| {
                        let s = map.s_of_t(t)?;
                        let jet = covariant_jet(&job.metric, &job.conn, &beta, s, 1)?;
                        let at = jet.metric;
                        let residual = match density {
                            Density::ArcLength => at.dot(&jet.d1, &jet.d1).abs() - 1.0,
                            Density::PseudoArc => at.dot(&jet.cd1, &jet.cd1) - 1.0,
                        };
                        Ok(vec![Cell::Num(t), Cell::Num(s), Cell::Num(residual), Cell::Missing])
                    })
                    .collect()
            })
        }
    };
    assemble(job, "reparam", columns, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse;

    fn job(metric: &str, curve: &str, grid: &str) -> Job {
        parse(&format!(r#"{{"metric": {metric}, "curve": {curve}, "grid": {grid}}}"#)).unwrap()
    }

    #[test]
    fn vanishing_example1_has_zero_curvatures() {
        let j = job(
            r#"{"name": "example1"}"#,
            r#"{"name": "example1curve", "params": {"a": 2, "b": 2, "lambda": 1}}"#,
            r#"{"t_start": 0.5, "t_end": 5, "samples": 10}"#,
        );
        let out = cmd_invariants(&j);
        assert_eq!(out.exit_code, EXIT_OK);
        for col in [
            "k1_direct",
            "k2_direct",
            "k1_structural",
            "k2_structural",
            "k1_frenet",
            "k2_frenet",
        ] {
            for v in out.table.values(col) {
                assert!(v.unwrap().abs() < 1e-5, "{col}: {v:?}");
            }
        }
        assert!(out.table.values("discrepancy").iter().all(|v| v.unwrap() <= 1e-4));
    }

    #[test]
    fn null_exponential_rows() {
        let j = job(
            r#"{"name": "minkowski3_ppm"}"#,
            r#"{"name": "nullfromf", "generator": "exponential"}"#,
            r#"{"t_start": -1, "t_end": 1, "samples": 5}"#,
        );
        let out = cmd_invariants(&j);
        assert_eq!(out.exit_code, EXIT_OK, "{:?}", out.table.rows);
        assert!(out.table.column("kappa").is_none());
        for v in out.table.values("pseudo_torsion") {
            assert!((v.unwrap() + 0.5).abs() < 1e-6);
        }
        for v in out.table.values("k1_null") {
            assert!(v.unwrap().abs() < 1e-6);
        }
        for v in out.table.values("k2_null") {
            assert!((v.unwrap() - 1.0).abs() < 1e-6);
        }
        assert!(!out.table.notes.is_empty());
    }

    #[test]
    fn degenerate_helix_is_reported() {
        let j = job(
            r#"{"name": "euclidean3"}"#,
            r#"{"name": "helix", "params": {"r": 1, "h": 0}}"#,
            r#"{"t_start": 0, "t_end": 1, "samples": 3}"#,
        );
        let out = cmd_check(&j);
        assert_eq!(out.exit_code, EXIT_COMPUTATION);
        let last = out.table.rows.last().unwrap();
        assert!(
            matches!(&last[6], Cell::Text(s) if s.starts_with("DegenerateCurve")),
            "{last:?}"
        );
    }

    #[test]
    fn reparam_of_scaled_line() {
        let j = job(
            r#"{"name": "euclidean3"}"#,
            r#"{"name": "line", "params": {"vx": 2}}"#,
            r#"{"t_start": 0, "t_end": 1, "samples": 5}"#,
        );
        let out = cmd_reparam(&j);
        assert_eq!(out.exit_code, EXIT_OK);
        for (t, s) in out.table.values("t").iter().zip(out.table.values("s")) {
            assert!((s.unwrap() - 2.0 * t.unwrap()).abs() < 1e-12);
        }
        assert!(out.table.values("residual").iter().all(|r| r.unwrap().abs() < 1e-9));
    }
}
