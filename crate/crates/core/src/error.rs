use thiserror::Error;

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("metric is singular at ({:.6}, {:.6}, {:.6}): det = {det:e}", point[0], point[1], point[2])]
    SingularMetric { point: [f64; 3], det: f64 },

    #[error("metric signature changed: sign(det g) was {expected}, found {found}")]
    SignatureChanged { expected: i8, found: i8 },

    #[error("numerical differentiation failed: {0}")]
    DifferentiationFailure(String),

    #[error("parameter {t} (with stencil radius {radius:e}) leaves the domain ({min}, {max})")]
    ChartExit { t: f64, radius: f64, min: f64, max: f64 },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("curve is not regular at t = {t}")]
    IrregularCurve { t: f64 },

    #[error("curve passes through a null point at t = {t}")]
    NullPointEncountered { t: f64 },

    #[error("null curve is degenerate at t = {t}: g(∇α′α′, ∇α′α′) = {value:e}")]
    DegenerateNullCurve { t: f64, value: f64 },

    #[error("curve is degenerate at t = {t}: {reason}")]
    DegenerateCurve { t: f64, reason: String },

    #[error("curve is not unit speed at t = {t}: |g(α′, α′)| = {speed}")]
    NotUnitSpeed { t: f64, speed: f64 },

    #[error("curve is not pseudo-arc parametrized at t = {t}: g(∇α′α′, ∇α′α′) = {value}")]
    NotPseudoArc { t: f64, value: f64 },

    #[error("torsion vanishes")]
    ZeroTorsion,

    #[error("curvature vanishes")]
    ZeroCurvature,

    #[error("generator derivative vanishes at t = {t}")]
    GeneratorDegenerate { t: f64 },

    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    #[error("parameter inversion failed for s = {s}")]
    InversionFailure { s: f64 },
}

impl GeometryError {
    /// Stable machine-readable identifier.
    pub fn kind(&self) -> &'static str {
        match self {
            GeometryError::SingularMetric { .. } => "SingularMetric",
            GeometryError::SignatureChanged { .. } => "SignatureChanged",
            GeometryError::DifferentiationFailure(_) => "DifferentiationFailure",
            GeometryError::ChartExit { .. } => "ChartExit",
            GeometryError::UnknownCatalogEntry(_) => "UnknownCatalogEntry",
            GeometryError::InvalidParameter(_) => "InvalidParameter",
            GeometryError::IrregularCurve { .. } => "IrregularCurve",
            GeometryError::NullPointEncountered { .. } => "NullPointEncountered",
            GeometryError::DegenerateNullCurve { .. } => "DegenerateNullCurve",
            GeometryError::DegenerateCurve { .. } => "DegenerateCurve",
            GeometryError::NotUnitSpeed { .. } => "NotUnitSpeed",
            GeometryError::NotPseudoArc { .. } => "NotPseudoArc",
            GeometryError::ZeroTorsion => "ZeroTorsion",
            GeometryError::ZeroCurvature => "ZeroCurvature",
            GeometryError::GeneratorDegenerate { .. } => "GeneratorDegenerate",
            GeometryError::QuadratureFailure(_) => "QuadratureFailure",
            GeometryError::InversionFailure { .. } => "InversionFailure",
        }
    }
}
