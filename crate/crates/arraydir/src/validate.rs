//! Closed-form normalization against the quadrature oracle.

use arraydir_core::quadrature::normalization_numeric;
use arraydir_core::{normalization, AntennaArray, ElementPattern};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub pattern: ElementPattern,
    pub closed: f64,
    pub numeric: f64,
    pub error_estimate: f64,
}

impl Comparison {
    pub fn relative_error(&self) -> f64 {
        (self.closed - self.numeric).abs() / self.numeric.abs()
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.relative_error() <= tolerance
    }
}

/// `corrupt` multiplies the closed-form value before comparing (failure-path testing).
pub fn compare(
    array: &AntennaArray,
    pattern: ElementPattern,
    rel_tol: f64,
    corrupt: Option<f64>,
) -> arraydir_core::Result<Comparison> {
    let closed = normalization(array, pattern)?.total * corrupt.unwrap_or(1.0);
    let numeric = normalization_numeric(array, pattern, rel_tol)?;
    Ok(Comparison { pattern, closed, numeric: numeric.value, error_estimate: numeric.error_estimate })
}
