use thiserror::Error;

/// Errors reported by the library. Variants mirror the contract violations of
/// the individual modules; computation never panics on bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: only n = 1 and n = 2 are supported")]
    InvalidDimension(usize),
    #[error("grid size {0} is not a power of two >= 8")]
    NotPowerOfTwo(usize),
    #[error("half-width must be positive, got {0}")]
    NonpositiveHalfWidth(f64),
    #[error("grid mismatch: operands live on different grids")]
    GridMismatch,
    #[error("non-finite sample at index {0}")]
    NonFiniteSample(usize),
    #[error("ball radius {0} is below the grid spacing")]
    RadiusBelowGrid(f64),
    #[error("ball (center {0:?}, radius {1}) leaves the domain")]
    BallOutsideDomain([f64; 2], f64),
    #[error("scaled ball (center {0:?}, radius {1}) leaves the domain")]
    ScaledBallOutsideDomain([f64; 2], f64),
    #[error("dilated ball (center {0:?}, radius {1}) leaves the domain")]
    DilatedBallOutsideDomain([f64; 2], f64),
    #[error("dilation scale must be positive, got {0}")]
    NonpositiveScale(f64),
    #[error("ball family is empty")]
    EmptyFamily,
    #[error("radius set is empty")]
    EmptyRadii,
    #[error("no admissible centers: radius {0} is too large for the domain")]
    NoAdmissibleCenters(f64),
    #[error("exponent order violated: expected {0}")]
    ExponentOrder(String),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("truncation epsilon {0} is below h/2 = {1}")]
    EpsilonBelowGrid(f64, f64),
    #[error("operator requires dimension two, grid has n = {0}")]
    DimensionNotTwo(usize),
    #[error("t-grid is empty")]
    EmptyTGrid,
    #[error("R-set is empty")]
    EmptyRSet,
    #[error("Bochner-Riesz level R must be positive, got {0}")]
    NonpositiveR(f64),
    #[error("Bochner-Riesz order delta must be positive, got {0}")]
    NonpositiveDelta(f64),
    #[error("commutator base operator is not linear: {0}")]
    BaseNotLinear(String),
    #[error("E is not a subset of the ball (cell {0} lies outside)")]
    NotSubsetOfBall(usize),
    #[error("evaluation cell {0} lies inside or too close to the support")]
    EvaluationInsideSupport(usize),
    #[error("unknown corpus generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown weight spec `{0}`")]
    UnknownWeightSpec(String),
    #[error("unknown operator spec `{0}`")]
    UnknownOperatorSpec(String),
    #[error("unknown symbol generator `{0}`")]
    UnknownSymbol(String),
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("degenerate input: norm below 1e-14")]
    DegenerateInput,
    #[error("bad file format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
