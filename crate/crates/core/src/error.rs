use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid strip: lower bound {lower} must be below upper bound {upper}")]
    InvalidStrip { lower: f64, upper: f64 },

    #[error("strip must have finite bounds for grid operations")]
    UnboundedStrip,

    #[error("invalid rectangle [{x0}, {x1}] x [{y0}, {y1}]")]
    InvalidRectangle { x0: f64, x1: f64, y0: f64, y1: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid contains no sample points")]
    EmptyGrid,

    #[error("point {0} lies outside the function's domain")]
    OutsideDomain(Complex64),

    #[error("indeterminate value at {0}: common zero of numerator and denominator not resolved")]
    IndeterminatePoint(Complex64),

    #[error("denominator is the zero function")]
    ZeroDenominator,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("continued fraction of the input terminates after {} convergents", convergents.len())]
    RationalTermination { convergents: Vec<(i64, i64)> },

    #[error("function vanishes on the contour near {0}")]
    BoundaryZero(Complex64),

    #[error("argument principle did not produce an integer (winding {0})")]
    NonIntegerWinding(f64),

    #[error("Newton iteration stalled near {0}")]
    NewtonStall(Complex64),

    #[error("divisor windows do not overlap")]
    DisjointWindows,

    #[error("translated test-function support leaves the divisor window at t = {0}")]
    WindowOverrun(f64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("Im-axis map is not strictly increasing")]
    NonMonotone,

    #[error("matching margin exceeds the window")]
    WindowTooSmall,

    #[error("basis mismatch: dimension {left} vs {right}")]
    BasisMismatch { left: usize, right: usize },

    #[error("component `{0}` carries no class-bearing specification")]
    UnclassifiableComponent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error: {0}")]
    ConfigParse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
