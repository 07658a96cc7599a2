//! Frenet and equi-affine invariants of curves in three-dimensional
//! pseudo-Riemannian manifolds.
//!
//! Metrics live on a single coordinate chart ([`ChartMetric`]); curves are
//! parametrized maps into that chart ([`CurveSpec`]). From these the crate
//! computes covariant jets, the Frenet apparatus of non-null curves, the
//! Cartan frame and equi-affine curvatures, and the null frame and
//! pseudo-torsion of null curves.

pub mod catalog;
pub mod curvejet;
pub mod equiaffine;
pub mod error;
pub mod frenet;
pub mod manifold;
pub mod nullcurve;
pub mod numdiff;
pub mod quadrature;
pub mod taylor;

pub use curvejet::{
    causal_character, covariant_jet, reparametrize_arclength, reparametrize_pseudo_arclength, CausalCharacter,
    CausalTag, CovariantJet, CurveEval, CurveSpec, DerivativeMode, Reparametrization,
};
pub use equiaffine::{
    cartan_apparatus, cartan_frame, cartan_from_frenet, corollary_curvatures, curvatures_direct, curvatures_frenet,
    curvatures_structural, equiaffine_arclength, equiaffine_speed, CartanApparatus, CartanFrame,
    ClosedFormCurvatureTorsion, CorollaryMode, CurvatureTorsion, EquiaffineCurvatures, EquiaffineSpeed,
    NumericCurvatureTorsion, Route,
};
pub use error::{GeometryError, Result};
pub use frenet::{frenet_apparatus, frenet_ode_residual, FrenetApparatus};
pub use manifold::{catalog_metric, ChartMetric, Christoffel, Connection, MetricAt, Provenance, Sign, Vec3};
pub use nullcurve::{
    minkowski_null_from_f, null_equiaffine_curvatures, null_frame, pseudo_torsion, schwarzian, GeneratorFunction,
    NullFrenetApparatus,
};
pub use numdiff::scalar_derivative;
pub use taylor::Taylor;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
