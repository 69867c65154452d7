use thiserror::Error;

/// Failures raised by the geometric constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inputs are proportional; their join/meet is undefined")]
    ProportionalInputs,
    #[error("polar line vanishes (point is singular for the conic)")]
    ZeroPolar,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("conics are proportional")]
    ProportionalConics,
    #[error("no pencil member could be split into lines")]
    SplitFailure,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("pair is incident (point lies on its curve)")]
    IncidentPair,
    #[error("sampled alpha-surface pair is incident; resample")]
    IncidentOutput,
    #[error("section point is incident (b = 1)")]
    IncidentPoint,
    #[error("surface point is the origin")]
    OriginPoint,
    #[error("no area-pi ellipse through the given point and direction")]
    NoRealEllipse,
    #[error("horocycle has no point with b > 0 at a = {0}")]
    NoBranch(f64),
    #[error("integration stopped: |y'| exceeded {bound} at x = {x}")]
    StepBlowUp { x: f64, bound: f64 },
    #[error("metric is degenerate at the evaluation point")]
    DegenerateMetric,
    #[error("covariant derivative of the two-form is not proportional to it (mismatch {0:e})")]
    InconsistentRecurrence(f64),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
