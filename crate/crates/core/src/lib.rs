//! Closed-form directivity of arbitrary volumetric antenna arrays whose
//! elements radiate with the pattern sin^u(θ)·cos^v(θ), u and v nonnegative
//! integers.
//!
//! The normalization integral over the sphere reduces to a self term carrying
//! an exact Beta coefficient and a cross term built from even z-derivatives of
//! sin(r)/r. The [`quadrature`] module integrates the same quantities
//! numerically and serves as an independent check.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod array;
pub mod derivative;
pub mod directivity;
pub mod error;
pub mod math;
pub mod pattern;
pub mod quadrature;
pub mod special;

pub use array::{generate_array, AntennaArray, ArrayElement, ElementPattern, Layout, PairGeometry, WAVENUMBER};
pub use derivative::{derive_terms, eval_series, eval_terms, sinc_derivative, Term, TermSum, Trig};
pub use directivity::{
    directivity, normalization, normalization_cross, normalization_self, scan, specialized_normalization,
    DirectivityResult, NormalizationBreakdown, ScanGrid, SpecializedCase,
};
pub use error::{Error, QuadratureError, Result};
pub use pattern::{array_factor, element_factor, omega, radiation_intensity, unit_vector, ComplexValue, Direction};
pub use special::{bessel_j0, beta_half, sinc_radius, ExactRational};
