//! Adaptive Gauss–Kronrod quadrature and the numerical counterparts of every
//! integral the closed form replaces.
//!
//! Nothing here calls into the derivative engine or the Beta coefficient;
//! the only shared code with the closed form is the pair-sum evaluation of
//! the radiation intensity.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;
use core::f64::consts::{PI, TAU};

use crate::array::{AntennaArray, ElementPattern};
use crate::directivity::normalization;
use crate::error::{QuadratureError, Result};
use crate::math::{abs, cos, hypot, powi, sin, sqrt, CompensatedSum};
use crate::pattern::{element_power, Direction, IntensityEvaluator};
use crate::special::bessel_j0;

pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Outcome of a converged integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    /// Absolute error that is always accepted.
    pub abs_tol: f64,
    /// Bisection depth at which a panel may no longer be split.
    pub max_depth: u32,
    pub max_panels: usize,
    /// Equal panels the interval is cut into before adapting.
    pub initial_panels: usize,
}

impl QuadratureOptions {
    pub fn new(rel_tol: f64) -> Self {
        Self { rel_tol, abs_tol: 0.0, max_depth: 60, max_panels: 50_000, initial_panels: 1 }
    }
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self::new(DEFAULT_REL_TOL)
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525103958,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
// Gauss weights for the odd-indexed XGK nodes.
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    l1: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, depth: u32) -> core::result::Result<Panel, QuadratureError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(QuadratureError::NonFiniteIntegrand);
    }
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut l1 = WGK[10] * abs(fc);
    let mut fv = [(0.0, 0.0); 10];
    for i in 0..10 {
        let dx = half * XGK[i];
        let (f1, f2) = (f(center - dx), f(center + dx));
        if !f1.is_finite() || !f2.is_finite() {
            return Err(QuadratureError::NonFiniteIntegrand);
        }
        fv[i] = (f1, f2);
        kronrod += WGK[i] * (f1 + f2);
        l1 += WGK[i] * (abs(f1) + abs(f2));
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    // ∫|f − mean|, used to rescale the raw |K − G| estimate
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * abs(fc - mean);
    for (i, (f1, f2)) in fv.iter().enumerate() {
        asc += WGK[i] * (abs(f1 - mean) + abs(f2 - mean));
    }
    let h = abs(half);
    let (value, l1, asc) = (kronrod * half, l1 * h, asc * h);
    let mut error = abs((kronrod - gauss) * half);
    if asc != 0.0 && error != 0.0 {
        let scale = libm::pow(200.0 * error / asc, 1.5);
        error = if scale < 1.0 { asc * scale } else { asc };
    }
    if l1 > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * l1);
    }
    Ok(Panel { a, b, value, error, l1, depth })
}

/// Integrates `f` over [a, b] to relative tolerance `rel_tol` ∈ [1e-13, 1e-2].
pub fn integrate_1d<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> core::result::Result<QuadratureResult, QuadratureError> {
    integrate_with(f, a, b, &QuadratureOptions::new(rel_tol))
}

/// Globally adaptive bisection: the panel with the largest error is split
/// until Σ error <= max(rel_tol·|I|, abs_tol, 100·ε·∫|f|).
pub fn integrate_with<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: &QuadratureOptions,
) -> core::result::Result<QuadratureResult, QuadratureError> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadratureError::InvalidInterval { a, b });
    }
    if !(1e-13..=1e-2).contains(&opts.rel_tol) {
        return Err(QuadratureError::InvalidTolerance(opts.rel_tol));
    }
    let n0 = opts.initial_panels.max(1);
    let width = (b - a) / n0 as f64;
    let mut heap = BinaryHeap::with_capacity(n0 * 4);
    for i in 0..n0 {
        let lo = a + width * i as f64;
        let hi = if i + 1 == n0 { b } else { a + width * (i + 1) as f64 };
        heap.push(gauss_kronrod(&mut f, lo, hi, 0)?);
    }
    let mut evaluations = 21 * n0;
    loop {
        let mut value = CompensatedSum::new();
        let mut error = 0.0;
        let mut l1 = 0.0;
        for p in heap.iter() {
            value.add(p.value);
            error += p.error;
            l1 += p.l1;
        }
        let value = value.value();
        let tolerance = (opts.rel_tol * abs(value)).max(opts.abs_tol).max(100.0 * f64::EPSILON * l1);
        if error <= tolerance {
            return Ok(QuadratureResult { value, error_estimate: error, evaluations });
        }
        let worst = heap.pop().expect("at least one panel");
        if worst.depth >= opts.max_depth || heap.len() + 2 > opts.max_panels {
            return Err(QuadratureError::NoConvergence { value, error_estimate: error, evaluations });
        }
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gauss_kronrod(&mut f, worst.a, mid, worst.depth + 1)?);
        heap.push(gauss_kronrod(&mut f, mid, worst.b, worst.depth + 1)?);
        evaluations += 42;
    }
}

/// T = (1/4π)∫₀^π∫₀^{2π} |F|² sinθ dφ dθ by iterated adaptive quadrature
/// (φ inner, θ outer).
pub fn normalization_numeric(array: &AntennaArray, pattern: ElementPattern, rel_tol: f64) -> Result<QuadratureResult> {
    let evaluator = IntensityEvaluator::new(array, pattern);
    // enough starting panels in φ to resolve the fastest transverse oscillation
    let extent = array
        .pairs()
        .map(|(_, p)| p.beta)
        .fold(0.0, f64::max);
    let inner_opts = QuadratureOptions {
        initial_panels: 2 + (extent / PI) as usize,
        ..QuadratureOptions::new((0.1 * rel_tol).max(1e-13))
    };
    let axial = array.pairs().map(|(_, p)| abs(p.z_mn)).fold(extent, f64::max);
    let outer_opts = QuadratureOptions { initial_panels: 2 + (axial / PI) as usize, ..QuadratureOptions::new(rel_tol) };

    let mut inner_evals = 0usize;
    let mut inner_failure = None;
    let outer = integrate_with(
        |theta| {
            let weight = element_power(pattern, theta) * sin(theta);
            if weight == 0.0 || inner_failure.is_some() {
                return 0.0;
            }
            let ring = integrate_with(
                |phi| evaluator.array_power(Direction::new(theta, phi).expect("in range")),
                0.0,
                TAU,
                &inner_opts,
            );
            match ring {
                Ok(r) => {
                    inner_evals += r.evaluations;
                    weight * r.value
                }
                Err(e) => {
                    inner_failure = Some(e);
                    0.0
                }
            }
        },
        0.0,
        PI,
        &outer_opts,
    );
    if let Some(e) = inner_failure {
        return Err(e.into());
    }
    let outer = outer?;
    let scale = 1.0 / (4.0 * PI);
    Ok(QuadratureResult {
        value: outer.value * scale,
        error_estimate: outer.error_estimate * scale,
        evaluations: outer.evaluations + inner_evals,
    })
}

/// (1/4π)∮ D(θ, φ) dΩ with D from the closed-form normalization; equals 1 when
/// closed form and quadrature agree.
pub fn sphere_average_directivity(array: &AntennaArray, pattern: ElementPattern, rel_tol: f64) -> Result<f64> {
    let total = normalization(array, pattern)?.total;
    let numeric = normalization_numeric(array, pattern, rel_tol)?;
    Ok(numeric.value / total)
}

/// Both sides of ∫₀^{2π} cos(a cosφ + b sinφ + c) dφ = 2π cos(c) J₀(√(a² + b²)):
/// (quadrature, identity).
pub fn phi_identity_check(a: f64, b: f64, c: f64) -> Result<(f64, f64)> {
    let mut opts = QuadratureOptions::new(1e-12);
    opts.initial_panels = 4 + (hypot(a, b) / PI) as usize;
    let lhs = integrate_with(|phi| cos(a * cos(phi) + b * sin(phi) + c), 0.0, TAU, &opts)?;
    Ok((lhs.value, TAU * cos(c) * bessel_j0(hypot(a, b))))
}

fn oscillation_panels(beta: f64, z: f64) -> usize {
    2 + (hypot(beta, z) / PI) as usize
}

/// ∫₀¹ x^{2v}(1−x²)^u cos(zx) J₀(β√(1−x²)) dx by direct quadrature.
pub fn cross_integral_numeric(u: u32, v: u32, beta: f64, z: f64, rel_tol: f64) -> Result<QuadratureResult> {
    let opts = QuadratureOptions { initial_panels: oscillation_panels(beta, z), ..QuadratureOptions::new(rel_tol) };
    let f = |x: f64| {
        let s2 = (1.0 - x * x).max(0.0);
        powi(x * x, v) * powi(s2, u) * cos(z * x) * bessel_j0(beta * sqrt(s2))
    };
    Ok(integrate_with(f, 0.0, 1.0, &opts)?)
}

/// ∫₋₁¹ x^{2v}(1−x²)^u sin(zx) J₀(β√(1−x²)) dx, which vanishes by odd symmetry.
pub fn parity_check(u: u32, v: u32, beta: f64, z: f64, rel_tol: f64) -> Result<f64> {
    let opts = QuadratureOptions { initial_panels: 2 * oscillation_panels(beta, z), ..QuadratureOptions::new(rel_tol) };
    let f = |x: f64| {
        let s2 = (1.0 - x * x).max(0.0);
        powi(x * x, v) * powi(s2, u) * sin(z * x) * bessel_j0(beta * sqrt(s2))
    };
    Ok(integrate_with(f, -1.0, 1.0, &opts)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{generate_array, ArrayElement, Layout};
    use alloc::vec;

    #[test]
    fn sine_over_half_period() {
        let r = integrate_1d(sin, 0.0, PI, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
        assert!(r.error_estimate <= 1e-10 * 2.0);
    }

    #[test]
    fn polynomials_up_to_degree_ten_are_exact() {
        for deg in 0..=10u32 {
            let r = integrate_1d(|x| powi(x, deg) - 0.5 * powi(x, deg / 2), -0.3, 1.7, 1e-12).unwrap();
            let anti = |x: f64| powi(x, deg + 1) / f64::from(deg + 1) - 0.5 * powi(x, deg / 2 + 1) / f64::from(deg / 2 + 1);
            let want = anti(1.7) - anti(-0.3);
            assert!(((r.value - want) / want).abs() < 1e-14, "deg {deg}");
        }
    }

    #[test]
    fn bessel_ring_integral() {
        let r = integrate_1d(|phi| cos(3.0 * cos(phi)), 0.0, TAU, 1e-12).unwrap();
        assert!((r.value - TAU * bessel_j0(3.0)).abs() < 1e-10);
    }

    #[test]
    fn tabulated_sinc_transform() {
        // ∫₀¹ cos(cx) J₀(b√(1−x²)) dx = sin(√(b²+c²))/√(b²+c²) at b = 3, c = 2
        let r = cross_integral_numeric(0, 0, 3.0, 2.0, 1e-12).unwrap();
        let s = sqrt(13.0);
        assert!((r.value - sin(s) / s).abs() < 1e-10);
        let r = cross_integral_numeric(0, 0, 3.0, 4.0, 1e-12).unwrap();
        assert!((r.value - sin(5.0) / 5.0).abs() < 1e-10);
        let one = cross_integral_numeric(0, 0, 0.0, 0.0, 1e-12).unwrap();
        assert!((one.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cross_integral_hand_case() {
        // ∫₀¹(1−x²)cos(zx)dx = 2 sin z/z³ − 2 cos z/z²
        for z in [0.7, 3.0, 11.0] {
            let r = cross_integral_numeric(1, 0, 0.0, z, 1e-12).unwrap();
            let want = 2.0 * sin(z) / (z * z * z) - 2.0 * cos(z) / (z * z);
            assert!((r.value - want).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_identity_examples() {
        let (l, r) = phi_identity_check(0.0, 0.0, 0.0).unwrap();
        assert!((l - TAU).abs() < 1e-13 && (r - TAU).abs() < 1e-15);
        let (l, r) = phi_identity_check(3.0, 4.0, 0.0).unwrap();
        assert!((l - r).abs() < 1e-10 && (r - TAU * bessel_j0(5.0)).abs() < 1e-15);
        let (l, r) = phi_identity_check(1.0, 1.0, PI / 2.0).unwrap();
        assert!(l.abs() < 1e-10 && r.abs() < 1e-10);
    }

    #[test]
    fn parity_examples() {
        assert!(parity_check(0, 0, 0.0, 5.0, 1e-10).unwrap().abs() < 1e-10);
        assert!(parity_check(2, 1, 7.0, 13.0, 1e-10).unwrap().abs() < 1e-10);
    }

    #[test]
    fn numeric_normalization_simple_arrays() {
        let single = AntennaArray::new(vec![ArrayElement::new(0.0, 0.0, 0.0, 1.0, 0.0)]).unwrap();
        let r = normalization_numeric(&single, ElementPattern::ISOTROPIC, 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        // two-element half-wave array: T = 2 + 2 sin(π)/π = 2
        let pair = generate_array(Layout::LinearZ { count: 2, spacing: 0.5 }, 1.0, 0.0).unwrap();
        let r = normalization_numeric(&pair, ElementPattern::ISOTROPIC, 1e-10).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn argument_validation() {
        assert_eq!(
            integrate_1d(sin, 1.0, 1.0, 1e-8).unwrap_err(),
            QuadratureError::InvalidInterval { a: 1.0, b: 1.0 }
        );
        assert_eq!(integrate_1d(sin, 0.0, 1.0, 0.1).unwrap_err(), QuadratureError::InvalidTolerance(0.1));
        assert_eq!(integrate_1d(|x| 1.0 / x, -1.0, 1.0, 1e-8).unwrap_err(), QuadratureError::NonFiniteIntegrand);
    }

    #[test]
    fn divergent_integrand_hits_the_depth_limit() {
        let err = integrate_1d(|x| 1.0 / sqrt(x) / x.max(1e-300), 0.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, QuadratureError::NoConvergence { .. }));
    }
}
