use core::fmt;

/// Errors raised by the core library.
///
/// Element indices carried by variants are 1-based, matching how arrays are
/// numbered in user-facing output.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    EmptyArray,
    NoRadiatingElement,
    NegativeAmplitude { element: usize },
    NonFinite { element: usize, field: &'static str },
    PairIndexOutOfRange { index: usize, len: usize },
    PairOrder { m: usize, n: usize },
    ZeroCount,
    NonPositiveSpacing(f64),
    ThetaOutOfRange(f64),
    NonFiniteAngle,
    NonFiniteArgument,
    /// `eval_terms` was asked to evaluate below the series switch radius.
    RadiusBelowThreshold { r: f64, threshold: f64 },
    NonPositiveNormalization(f64),
    TooFewSteps { theta_steps: usize, phi_steps: usize },
    Quadrature(QuadratureError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadratureError {
    InvalidInterval { a: f64, b: f64 },
    InvalidTolerance(f64),
    /// The subdivision budget ran out; the best estimate is kept for diagnostics.
    NoConvergence { value: f64, error_estimate: f64, evaluations: usize },
    NonFiniteIntegrand,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyArray => write!(f, "array has no elements"),
            Error::NoRadiatingElement => write!(f, "every element has zero amplitude"),
            Error::NegativeAmplitude { element } => {
                write!(f, "negative amplitude at element {element}")
            }
            Error::NonFinite { element, field } => {
                write!(f, "non-finite value for `{field}` at element {element}")
            }
            Error::PairIndexOutOfRange { index, len } => {
                write!(f, "element index {index} out of range 1..={len}")
            }
            Error::PairOrder { m, n } => write!(f, "pair indices must satisfy m < n (got m={m}, n={n})"),
            Error::ZeroCount => write!(f, "element counts must be at least 1"),
            Error::NonPositiveSpacing(s) => write!(f, "spacing/radius must be positive (got {s})"),
            Error::ThetaOutOfRange(t) => write!(f, "theta {t} rad lies outside [0, pi]"),
            Error::NonFiniteAngle => write!(f, "direction angles must be finite"),
            Error::NonFiniteArgument => write!(f, "argument must be finite"),
            Error::RadiusBelowThreshold { r, threshold } => write!(
                f,
                "radius {r} is below the term-evaluation threshold {threshold}; use the series"
            ),
            Error::NonPositiveNormalization(t) => {
                write!(f, "normalization integral is not positive ({t})")
            }
            Error::TooFewSteps { theta_steps, phi_steps } => write!(
                f,
                "scan needs at least 2 steps per axis (got {theta_steps} x {phi_steps})"
            ),
            Error::Quadrature(e) => write!(f, "quadrature failed: {e}"),
        }
    }
}

impl fmt::Display for QuadratureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadratureError::InvalidInterval { a, b } => {
                write!(f, "invalid interval [{a}, {b}]")
            }
            QuadratureError::InvalidTolerance(t) => {
                write!(f, "relative tolerance {t} outside [1e-13, 1e-2]")
            }
            QuadratureError::NoConvergence { value, error_estimate, evaluations } => write!(
                f,
                "no convergence after {evaluations} evaluations (value {value}, error estimate {error_estimate})"
            ),
            QuadratureError::NonFiniteIntegrand => write!(f, "integrand returned a non-finite value"),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::Quadrature(e) => Some(e),
            _ => None,
        }
    }
}

impl core::error::Error for QuadratureError {}

impl From<QuadratureError> for Error {
    fn from(e: QuadratureError) -> Self {
        Error::Quadrature(e)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
